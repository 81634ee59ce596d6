#pragma once

// Set files: UTF-8 text, one word per line in the word grammar.  "#" starts a
// comment, blank lines are ignored, and an optional trailing "| label" field
// annotates the element.

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "nup/product_sets.hpp"

namespace nup {

class SetFileError : public std::runtime_error {
 public:
  SetFileError(std::size_t line, const std::string& message);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

MakeSetResult read_set(std::istream& in, GroupParams params);
MakeSetResult read_set_file(const std::string& path, GroupParams params);

void write_set(std::ostream& out, const GroupSet& set, const std::string& header = {});
void write_set_file(const std::string& path, const GroupSet& set, const std::string& header = {});

}  // namespace nup
