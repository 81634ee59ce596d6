#include "nup/set_file.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace nup {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

SetFileError::SetFileError(std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

MakeSetResult read_set(std::istream& in, GroupParams params) {
  const Group group(params);
  std::vector<NormalForm> words;
  std::vector<std::string> labels;
  bool any_label = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::string label;
    if (auto bar = line.find('|'); bar != std::string::npos) {
      label = trim(line.substr(bar + 1));
      line.erase(bar);
      any_label = true;
    }
    const std::string word = trim(line);
    if (word.empty()) {
      if (!label.empty()) throw SetFileError(lineno, "label without a word");
      continue;
    }
    try {
      words.push_back(group.eval(word));
    } catch (const ParseError& e) {
      throw SetFileError(lineno, e.what());
    }
    labels.push_back(std::move(label));
  }
  if (!any_label) labels.clear();
  return make_set(params, std::move(words), std::move(labels));
}

MakeSetResult read_set_file(const std::string& path, GroupParams params) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open set file '" + path + "'");
  return read_set(in, params);
}

void write_set(std::ostream& out, const GroupSet& set, const std::string& header) {
  const Group group(set.params());
  if (!header.empty()) {
    std::istringstream lines(header);
    std::string l;
    while (std::getline(lines, l)) out << "# " << l << '\n';
  }
  for (std::size_t i = 0; i < set.size(); ++i) {
    out << group.to_string(set[i]);
    if (set.has_labels() && !set.labels()[i].empty()) out << " | " << set.labels()[i];
    out << '\n';
  }
}

void write_set_file(const std::string& path, const GroupSet& set, const std::string& header) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write set file '" + path + "'");
  write_set(out, set, header);
}

}  // namespace nup
