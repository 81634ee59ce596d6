#include "nup/search.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "nup/constructions.hpp"

namespace nup {

namespace {

// Distribution objects in <random> are implementation-defined, so draws are
// made directly from the engine to keep trajectories portable.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::size_t below(std::size_t n) {
    const std::uint64_t bound = n;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do x = engine_(); while (x >= limit);
    return static_cast<std::size_t>(x % bound);
  }

  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

// A unit is what a move replaces: one element, or an inverse pair in
// symmetric mode.
struct Universe {
  std::vector<NormalForm> elements;
  std::unordered_map<NormalForm, std::size_t, NormalFormHash> index;
  std::vector<std::size_t> inverse;             // element index -> inverse index
  std::vector<std::size_t> unit_of;             // element index -> unit index
  std::vector<std::vector<std::size_t>> units;  // unit -> element indices
  std::size_t identity_unit = SIZE_MAX;
};

Universe make_universe(const Group& g, const SearchConfig& cfg) {
  Universe u;
  u.elements = enumerate_ball(g, cfg.max_len);
  for (std::size_t i = 0; i < u.elements.size(); ++i) u.index.emplace(u.elements[i], i);
  u.inverse.resize(u.elements.size());
  for (std::size_t i = 0; i < u.elements.size(); ++i) {
    u.inverse[i] = u.index.at(g.inv(u.elements[i]));
  }
  u.unit_of.assign(u.elements.size(), SIZE_MAX);
  for (std::size_t i = 0; i < u.elements.size(); ++i) {
    if (u.unit_of[i] != SIZE_MAX) continue;
    std::vector<std::size_t> unit{i};
    if (cfg.symmetric && u.inverse[i] != i) unit.push_back(u.inverse[i]);
    for (std::size_t e : unit) u.unit_of[e] = u.units.size();
    if (cfg.symmetric && u.inverse[i] == i) u.identity_unit = u.units.size();
    u.units.push_back(std::move(unit));
  }
  return u;
}

struct RestartOutcome {
  std::vector<std::size_t> best_units;
  std::size_t best_score = SIZE_MAX;
  std::uint64_t iterations = 0;
  std::vector<std::pair<std::uint64_t, std::size_t>> history;  // local iterations
};

class Annealer {
 public:
  Annealer(const SearchConfig& cfg, const Group& g, const Universe& u, std::size_t restart)
      : cfg_(cfg), g_(g), u_(u), restart_(restart), rng_(restart_seed(cfg.seed, restart)) {}

  RestartOutcome run(std::uint64_t budget, const std::vector<std::size_t>& seed_units) {
    std::vector<std::size_t> current = seed_units.empty() ? random_units() : seed_units;
    std::size_t current_score = evaluate(current, 0, true);
    RestartOutcome out;
    out.best_units = current;
    out.best_score = current_score;
    out.history.emplace_back(0, current_score);

    double temperature = cfg_.t0;
    for (std::uint64_t it = 1; it <= budget && out.best_score > 0; ++it) {
      std::vector<std::size_t> next = current;
      propose(next);
      out.iterations = it;
      const std::size_t s = score_of(next);
      const double delta = static_cast<double>(s) - static_cast<double>(current_score);
      const bool accept =
          delta <= 0 || (temperature > 0 && rng_.unit() < std::exp(-delta / temperature));
      notify(next, it, s, accept);
      if (accept) {
        current = std::move(next);
        current_score = s;
        if (s < out.best_score) {
          out.best_score = s;
          out.best_units = current;
          out.history.emplace_back(it, s);
        }
      }
      temperature *= cfg_.cooling;
    }
    return out;
  }

  GroupSet to_set(const std::vector<std::size_t>& units) const {
    std::vector<NormalForm> words;
    for (std::size_t unit : units) {
      for (std::size_t e : u_.units[unit]) words.push_back(u_.elements[e]);
    }
    return make_set(g_.params(), std::move(words)).set;
  }

 private:
  std::size_t score_of(const std::vector<std::size_t>& units) const {
    const GroupSet set = to_set(units);
    return count_unique_products(set, set);
  }

  std::size_t evaluate(const std::vector<std::size_t>& units, std::uint64_t it, bool accepted) {
    const std::size_t s = score_of(units);
    notify(units, it, s, accepted);
    return s;
  }

  void notify(const std::vector<std::size_t>& units, std::uint64_t it, std::size_t s, bool accepted) {
    if (!cfg_.observer) return;
    const GroupSet set = to_set(units);
    cfg_.observer(SearchStep{restart_, it, set, s, accepted});
  }

  // Movable units: everything except the identity kept for odd symmetric sizes.
  bool movable(std::size_t unit) const {
    return !(cfg_.symmetric && unit == u_.identity_unit);
  }

  std::vector<std::size_t> random_units() {
    std::vector<std::size_t> out;
    std::unordered_set<std::size_t> used;
    std::size_t need = cfg_.size;
    if (cfg_.symmetric) {
      if (cfg_.size % 2 == 1) {
        out.push_back(u_.identity_unit);
        used.insert(u_.identity_unit);
      }
      need = cfg_.size / 2;
    }
    while (out.size() < (cfg_.symmetric ? need + cfg_.size % 2 : need)) {
      const std::size_t unit = rng_.below(u_.units.size());
      if (!movable(unit) || used.count(unit)) continue;
      used.insert(unit);
      out.push_back(unit);
    }
    return out;
  }

  std::size_t random_fresh_unit(const std::vector<std::size_t>& current) {
    for (;;) {
      const std::size_t unit = rng_.below(u_.units.size());
      if (!movable(unit)) continue;
      if (std::find(current.begin(), current.end(), unit) == current.end()) return unit;
    }
  }

  void propose(std::vector<std::size_t>& units) {
    std::vector<std::size_t> slots;
    for (std::size_t i = 0; i < units.size(); ++i) {
      if (movable(units[i])) slots.push_back(i);
    }
    const std::size_t slot = slots[rng_.below(slots.size())];
    if (cfg_.neighborhood == Neighborhood::MutateOne) {
      static constexpr std::pair<Generator, int> kLetters[] = {
          {Generator::A, 1}, {Generator::A, -1}, {Generator::B, 1}, {Generator::B, -1}};
      const auto [gen, sign] = kLetters[rng_.below(4)];
      const NormalForm& x = u_.elements[u_.units[units[slot]].front()];
      auto it = u_.index.find(g_.mul_gen(x, gen, sign));
      if (it != u_.index.end()) {
        const std::size_t unit = u_.unit_of[it->second];
        if (movable(unit) && std::find(units.begin(), units.end(), unit) == units.end()) {
          units[slot] = unit;
          return;
        }
      }
      // Leaving the cap or colliding falls back to a swap.
    }
    units[slot] = random_fresh_unit(units);
  }

  const SearchConfig& cfg_;
  const Group& g_;
  const Universe& u_;
  std::size_t restart_;
  Rng rng_;
};

}  // namespace

const char* to_string(Neighborhood n) {
  return n == Neighborhood::SwapOne ? "swap-one" : "mutate-one";
}

const char* to_string(InitMode m) { return m == InitMode::Random ? "random" : "construction"; }

void SearchConfig::validate() const {
  (void)GroupParams(k);
  if (size < 2) throw ParameterError("set size must be at least 2");
  if (budget < 1) throw ParameterError("iteration budget must be at least 1");
  if (max_len < 1) throw ParameterError("word length cap must be at least 1");
  if (max_len > 12) throw ParameterError("word length cap above 12 is not supported");
  if (restarts < 1) throw ParameterError("restarts must be at least 1");
  if (!(t0 >= 0) || !std::isfinite(t0)) throw ParameterError("temperature must be finite and >= 0");
  if (!(cooling > 0 && cooling <= 1)) throw ParameterError("cooling factor must be in (0, 1]");
}

std::size_t score(const GroupSet& s) {
  if (s.empty()) throw std::invalid_argument("score: empty set");
  return count_unique_products(s, s);
}

std::vector<NormalForm> enumerate_ball(const Group& g, int max_len) {
  std::unordered_set<NormalForm, NormalFormHash> seen{g.identity()};
  std::vector<NormalForm> frontier{g.identity()};
  for (int len = 0; len < max_len; ++len) {
    std::vector<NormalForm> next;
    for (const auto& w : frontier) {
      for (Generator gen : {Generator::A, Generator::B}) {
        for (int sign : {1, -1}) {
          NormalForm x = g.mul_gen(w, gen, sign);
          if (seen.insert(x).second) next.push_back(std::move(x));
        }
      }
    }
    frontier = std::move(next);
  }
  std::vector<NormalForm> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t restart_seed(std::uint64_t master, std::size_t restart) {
  // splitmix64 step
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(restart) + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

SearchResult run_search(const SearchConfig& cfg) {
  cfg.validate();
  const Group g(cfg.k);
  const Universe u = make_universe(g, cfg);

  std::size_t available = 0;
  for (std::size_t i = 0; i < u.units.size(); ++i) {
    if (!(cfg.symmetric && i == u.identity_unit)) available += u.units[i].size();
  }
  if (available + (cfg.symmetric && cfg.size % 2 == 1 ? 1 : 0) < cfg.size) {
    throw ParameterError("only " + std::to_string(u.elements.size()) +
                         " elements within word length " + std::to_string(cfg.max_len));
  }

  std::vector<std::size_t> seed_units;
  if (cfg.init == InitMode::Construction) {
    const ConstructedSet t = build_T(cfg.k);
    if (t.size() != cfg.size) {
      throw ParameterError("construction init needs size " + std::to_string(t.size()) + " for k=" +
                           std::to_string(cfg.k));
    }
    for (const auto& w : t.set().elements()) {
      auto it = u.index.find(w);
      if (it == u.index.end()) {
        throw ParameterError("T(k=" + std::to_string(cfg.k) + ") is not inside word length " +
                             std::to_string(cfg.max_len) + "; raise max_len");
      }
      const std::size_t unit = u.unit_of[it->second];
      if (std::find(seed_units.begin(), seed_units.end(), unit) == seed_units.end()) {
        seed_units.push_back(unit);
      }
    }
    if (cfg.symmetric) {
      std::size_t n = 0;
      for (std::size_t unit : seed_units) n += u.units[unit].size();
      if (n != cfg.size) throw ParameterError("T(k) is not inverse-closed; drop symmetric mode");
    }
  }

  const std::size_t restarts = cfg.restarts;
  std::vector<std::uint64_t> budgets(restarts, cfg.budget / restarts);
  for (std::size_t r = 0; r < cfg.budget % restarts; ++r) ++budgets[r];

  std::vector<RestartOutcome> outcomes(restarts);
  std::vector<std::unique_ptr<Annealer>> annealers;
  for (std::size_t r = 0; r < restarts; ++r) annealers.push_back(std::make_unique<Annealer>(cfg, g, u, r));
  const unsigned workers = cfg.observer ? 1 : static_cast<unsigned>(std::min<std::size_t>(
                                                  resolve_threads(cfg.threads), restarts));
  if (workers <= 1) {
    for (std::size_t r = 0; r < restarts; ++r) {
      outcomes[r] = annealers[r]->run(budgets[r], seed_units);
      if (outcomes[r].best_score == 0) break;
    }
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t r = w; r < restarts; r += workers) {
          outcomes[r] = annealers[r]->run(budgets[r], seed_units);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  // Merge in restart order; restarts after the first success are discarded
  // so the result does not depend on the worker count.
  SearchResult result;
  result.best = GroupSet(g.params());
  result.seed = cfg.seed;
  result.best_score = SIZE_MAX;
  std::uint64_t offset = 0;
  for (std::size_t r = 0; r < restarts; ++r) {
    const RestartOutcome& o = outcomes[r];
    for (const auto& [it, s] : o.history) {
      if (s < result.best_score) {
        result.best_score = s;
        result.best_restart = r;
        result.history.emplace_back(offset + it, s);
      }
    }
    offset += o.iterations;
    if (o.best_score == 0) break;
  }
  result.iterations = offset;
  result.best = annealers[result.best_restart]->to_set(outcomes[result.best_restart].best_units);
  result.best_score = score(result.best);
  return result;
}

}  // namespace nup
