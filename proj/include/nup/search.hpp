#pragma once

// Simulated annealing over fixed-size subsets of P_k, scored by the number of
// uniquely represented elements of the square.  A score of 0 is a non-unique
// product set.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "nup/product_sets.hpp"
#include "nup/word.hpp"

namespace nup {

enum class Neighborhood { SwapOne, MutateOne };
enum class InitMode { Random, Construction };

const char* to_string(Neighborhood n);
const char* to_string(InitMode m);

struct SearchStep {
  std::size_t restart;
  std::uint64_t iteration;  // within the restart
  const GroupSet& candidate;
  std::size_t score;
  bool accepted;
};

struct SearchConfig {
  int k = 1;
  std::size_t size = 14;
  int max_len = 4;
  bool symmetric = false;
  std::uint64_t seed = 1;
  std::uint64_t budget = 10000;  // total iterations, split over restarts
  std::size_t restarts = 1;
  double t0 = 2.0;        // initial temperature
  double cooling = 0.999; // per-iteration geometric factor
  Neighborhood neighborhood = Neighborhood::SwapOne;
  InitMode init = InitMode::Random;
  unsigned threads = 1;   // parallel restarts

  /// Called on every evaluated candidate, in order, for restart 0..n-1.
  /// Forces sequential restarts.
  std::function<void(const SearchStep&)> observer;

  /// Throws ParameterError.
  void validate() const;
};

struct SearchResult {
  GroupSet best{GroupParams(1)};
  std::size_t best_score = 0;
  std::uint64_t iterations = 0;  // summed over restarts
  std::size_t best_restart = 0;
  std::uint64_t seed = 0;
  /// (global iteration, best score) whenever the best score improves.
  std::vector<std::pair<std::uint64_t, std::size_t>> history;

  friend bool operator==(const SearchResult& l, const SearchResult& r) {
    return l.best.same_elements(r.best) && l.best_score == r.best_score &&
           l.iterations == r.iterations && l.best_restart == r.best_restart && l.seed == r.seed &&
           l.history == r.history;
  }
};

/// |unique_products(S, S)|.  Throws on an empty set.
std::size_t score(const GroupSet& s);

/// Distinct elements given by words of length <= max_len in a, A, b, B,
/// in canonical order.
std::vector<NormalForm> enumerate_ball(const Group& g, int max_len);

/// Seed of restart r derived from the master seed.
std::uint64_t restart_seed(std::uint64_t master, std::size_t restart);

SearchResult run_search(const SearchConfig& config);

}  // namespace nup
