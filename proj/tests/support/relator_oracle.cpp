#include "relator_oracle.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <stdexcept>
#include <unordered_map>

namespace nup::testing {

namespace {

constexpr std::uint8_t kA = 0, kAinv = 1, kB = 2, kBinv = 3;

std::uint64_t pack(const Letters& w) {
  std::uint64_t key = static_cast<std::uint64_t>(w.size()) << 40;
  for (std::size_t i = 0; i < w.size(); ++i) key |= static_cast<std::uint64_t>(w[i]) << (2 * i);
  return key;
}

Letters inverse(const Letters& w) {
  Letters out(w.rbegin(), w.rend());
  for (auto& x : out) x ^= 1;
  return out;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  std::size_t add() {
    parent.push_back(parent.size());
    return parent.size() - 1;
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

Letters free_reduce(const Letters& w) {
  Letters out;
  out.reserve(w.size());
  for (auto x : w) {
    if (!out.empty() && out.back() == (x ^ 1)) {
      out.pop_back();
    } else {
      out.push_back(x);
    }
  }
  return out;
}

std::vector<Letters> relator_variants(int k) {
  const std::size_t m = std::size_t{1} << k;
  Letters r1{kA};
  r1.insert(r1.end(), m, kB);
  r1.push_back(kAinv);
  r1.insert(r1.end(), m, kB);
  const Letters r2{kB, kA, kA, kBinv, kA, kA};

  std::vector<Letters> out;
  for (const Letters& r : {r1, inverse(r1), r2, inverse(r2)}) {
    for (std::size_t s = 0; s < r.size(); ++s) {
      Letters rot(r.begin() + static_cast<std::ptrdiff_t>(s), r.end());
      rot.insert(rot.end(), r.begin(), r.begin() + static_cast<std::ptrdiff_t>(s));
      if (std::find(out.begin(), out.end(), rot) == out.end()) out.push_back(rot);
    }
  }
  return out;
}

std::vector<Letters> reduced_words_up_to(std::size_t length) {
  std::vector<Letters> out{Letters{}};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= length; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (std::uint8_t x = 0; x < 4; ++x) {
        if (!out[i].empty() && out[i].back() == (x ^ 1)) continue;
        Letters w = out[i];
        w.push_back(x);
        out.push_back(std::move(w));
      }
    }
    begin = end;
  }
  return out;
}

OracleResult explore(const OracleConfig& cfg) {
  if (cfg.length_cap > 20) throw std::invalid_argument("length cap above 20 does not pack");
  const std::vector<Letters> variants = relator_variants(cfg.k);

  OracleResult res;
  UnionFind uf;
  std::unordered_map<std::uint64_t, std::size_t> index;
  std::deque<std::size_t> queue;

  auto intern = [&](Letters w) -> std::optional<std::size_t> {
    const std::uint64_t key = pack(w);
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    if (res.words.size() >= cfg.node_budget) {
      res.budget_exhausted = true;
      return std::nullopt;
    }
    const std::size_t id = uf.add();
    index.emplace(key, id);
    res.words.push_back(std::move(w));
    queue.push_back(id);
    return id;
  };

  for (auto& w : reduced_words_up_to(cfg.seed_length)) intern(std::move(w));
  res.seeds = res.words.size();

  while (!queue.empty() && !res.budget_exhausted) {
    const std::size_t id = queue.front();
    queue.pop_front();
    const Letters w = res.words[id];
    auto link = [&](Letters next) {
      next = free_reduce(next);
      if (next.size() > cfg.length_cap) return;
      if (auto other = intern(std::move(next))) {
        uf.unite(id, *other);
        ++res.edges;
      }
    };
    for (const auto& r : variants) {
      for (std::size_t pos = 0; pos <= w.size(); ++pos) {
        Letters next(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(pos));
        next.insert(next.end(), r.begin(), r.end());
        next.insert(next.end(), w.begin() + static_cast<std::ptrdiff_t>(pos), w.end());
        link(std::move(next));
      }
      for (std::size_t pos = 0; pos + r.size() <= w.size(); ++pos) {
        if (!std::equal(r.begin(), r.end(), w.begin() + static_cast<std::ptrdiff_t>(pos))) continue;
        Letters next(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(pos));
        next.insert(next.end(), w.begin() + static_cast<std::ptrdiff_t>(pos + r.size()), w.end());
        link(std::move(next));
      }
    }
  }

  res.klass.resize(res.words.size());
  for (std::size_t i = 0; i < res.words.size(); ++i) res.klass[i] = uf.find(i);
  return res;
}

GeneratorWord to_generator_word(const Letters& w) {
  GeneratorWord out;
  for (auto x : w) {
    const Generator g = (x < 2) ? Generator::A : Generator::B;
    out.tokens.push_back({g, (x & 1) ? -1 : 1});
  }
  return out;
}

std::string letters_text(const Letters& w) {
  if (w.empty()) return "1";
  static constexpr char kNames[] = {'a', 'A', 'b', 'B'};
  std::string s;
  for (auto x : w) s += kNames[x];
  return s;
}

}  // namespace nup::testing
