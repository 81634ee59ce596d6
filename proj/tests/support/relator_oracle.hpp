#pragma once

// Bounded equality oracle for P_k that knows nothing about normal forms.
// Starting from every freely reduced word up to a seed length, it explores
// the graph whose moves insert or delete a cyclic permutation of a relator
// (or its inverse) followed by free reduction.  Two words connected in that
// graph are equal in the group.  It is one-sided: words it fails to connect
// may still be equal.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "nup/word.hpp"

namespace nup::testing {

/// Letters 0..3 are a, A, b, B; a letter's inverse is letter ^ 1.
using Letters = std::vector<std::uint8_t>;

struct OracleConfig {
  int k = 1;
  std::size_t seed_length = 8;
  std::size_t length_cap = 16;
  std::size_t node_budget = 1'000'000;
};

struct OracleResult {
  std::vector<Letters> words;         // every discovered word
  std::vector<std::size_t> klass;     // representative index per word
  std::size_t seeds = 0;              // the first `seeds` words are the seed set
  std::size_t edges = 0;
  bool budget_exhausted = false;
};

Letters free_reduce(const Letters& w);
std::vector<Letters> relator_variants(int k);
std::vector<Letters> reduced_words_up_to(std::size_t length);

OracleResult explore(const OracleConfig& config);

GeneratorWord to_generator_word(const Letters& w);
std::string letters_text(const Letters& w);

}  // namespace nup::testing
