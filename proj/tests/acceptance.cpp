// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "nup/constructions.hpp"
#include "nup/product_sets.hpp"
#include "nup/proof_checker.hpp"
#include "nup/search.hpp"
#include "nup/word.hpp"
#include "support/random_words.hpp"
#include "support/relator_oracle.hpp"

using namespace nup;
using nup::testing::random_element;
using nup::testing::random_word;

namespace {

struct Triple {
  int k;
  std::int64_t p, q;
};

// Outcome of a criterion body: empty string means pass.
using Body = std::function<std::string()>;

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  Body body;
};

std::string relator1(int k) {
  const std::string m = std::to_string(std::int64_t{1} << k);
  return "a b^" + m + " a^-1 b^" + m;
}
const char* const kRelator2 = "b a^2 b^-1 a^2";

std::string relators() {
  for (int k = 1; k <= 5; ++k) {
    const Group g(k);
    if (!g.eval(relator1(k)).is_identity()) return "relator 1 at k=" + std::to_string(k);
    if (!g.eval(kRelator2).is_identity()) return "relator 2 at k=" + std::to_string(k);
  }
  return {};
}

std::string group_axioms() {
  std::mt19937_64 rng(20261014);
  for (int i = 0; i < 10000; ++i) {
    const Group g(1 + i % 3);
    const NormalForm x = random_element(g, rng, 30);
    const NormalForm y = random_element(g, rng, 30);
    const NormalForm z = random_element(g, rng, 30);
    const std::string at = " at triple " + std::to_string(i);
    if (g.mul(g.mul(x, y), z) != g.mul(x, g.mul(y, z))) return "associativity" + at;
    if (!g.mul(x, g.inv(x)).is_identity() || !g.mul(g.inv(y), y).is_identity()) return "inverse" + at;
    if (g.mul(x, g.identity()) != x || g.mul(g.identity(), z) != z) return "identity" + at;
    for (const NormalForm* w : {&x, &y, &z}) {
      if (g.eval(g.to_string(*w)) != *w) return "round trip" + at;
    }
  }
  return {};
}

std::string oracle_agreement() {
  const nup::testing::OracleConfig cfg;  // k=1, seeds up to length 8, cap 16, budget 10^6
  const auto res = nup::testing::explore(cfg);
  const Group g(1);
  std::vector<NormalForm> nfs;
  nfs.reserve(res.words.size());
  for (const auto& w : res.words) nfs.push_back(g.from_word(nup::testing::to_generator_word(w)));
  std::size_t proved = 0;
  for (std::size_t i = 0; i < res.words.size(); ++i) {
    const std::size_t r = res.klass[i];
    if (r == i) continue;
    ++proved;
    if (nfs[i] != nfs[r]) {
      return "oracle proves " + nup::testing::letters_text(res.words[i]) + " = " +
             nup::testing::letters_text(res.words[r]) + " but normal forms differ";
    }
  }
  // A run that proves nothing would pass vacuously.
  if (proved == 0) return "oracle proved no equalities";
  std::printf("    oracle: %zu seeds, %zu words, %zu edges, %zu equalities%s\n", res.seeds,
              res.words.size(), res.edges, proved, res.budget_exhausted ? ", budget reached" : "");
  return {};
}

std::string homomorphisms() {
  std::mt19937_64 rng(4);
  for (int k = 1; k <= 4; ++k) {
    const Group g(k);
    const std::int64_t m2 = 2 * g.modulus();
    for (const std::string& rel : {relator1(k), std::string(kRelator2)}) {
      const GeneratorWord w = parse_word(rel);
      const NormalForm r = g.from_word(w);
      if (!(g.abelianization(r) == Abelianization{0, 0})) return "relator abelianization";
      if (sigma_a(r) != 1 || sigma_b(r) != 1) return "relator sigma";
      // Degrees straight off the relator word must be neutral too.
      const std::int64_t da = nup::testing::exponent_sum(w, Generator::A);
      const std::int64_t db = nup::testing::exponent_sum(w, Generator::B);
      if (da % 4 != 0 || db % m2 != 0) return "relator degrees";
    }
    for (int i = 0; i < 10000 / 4; ++i) {
      const NormalForm x = random_element(g, rng, 20);
      const NormalForm y = random_element(g, rng, 20);
      const NormalForm xy = g.mul(x, y);
      if (sigma_a(xy) != sigma_a(x) * sigma_a(y)) return "sigma_a k=" + std::to_string(k);
      if (sigma_b(xy) != sigma_b(x) * sigma_b(y)) return "sigma_b k=" + std::to_string(k);
      const auto ax = g.abelianization(x), ay = g.abelianization(y), axy = g.abelianization(xy);
      if (axy.a_mod4 != (ax.a_mod4 + ay.a_mod4) % 4 || axy.b_mod2M != (ax.b_mod2M + ay.b_mod2M) % m2) {
        return "abelianization k=" + std::to_string(k);
      }
    }
  }
  return {};
}

std::string reproduce_T(int kmax) {
  for (int k = 1; k <= kmax; ++k) {
    const ConstructedSet t = build_T(k);
    const std::int64_t expect = (std::int64_t{1} << (2 * k + 1)) + (std::int64_t{1} << (k + 2)) + 1;
    if (static_cast<std::int64_t>(t.size()) != expect) return "size at k=" + std::to_string(k);
    if (t.duplicates() != 0) return "duplicates at k=" + std::to_string(k);
    if (!unique_products(t.set(), t.set()).empty()) return "unique products at k=" + std::to_string(k);
  }
  return {};
}

std::string reproduce_T_pq() {
  for (auto [k, p, q] : std::vector<Triple>{
           {1, 1, 3}, {1, 3, 3}, {1, 1, 5}, {2, 1, 5}, {2, 3, 5}}) {
    const std::int64_t m = std::int64_t{1} << k;
    const std::int64_t expect = (2 * m * m + 5 * m + 2) * q - (m + 1);
    const ConstructedSet t = build_T_pq(k, p, q);
    const std::string at = " at " + TFamilySpec::with_pq(k, p, q).describe();
    if (static_cast<std::int64_t>(t.size()) != expect) return "size" + at;
    if (t.duplicates() != 0) return "duplicates" + at;
    if (!unique_products(t.set(), t.set()).empty()) return "unique products" + at;
  }
  return {};
}

std::string degenerate() {
  for (int k = 1; k <= 3; ++k) {
    const GroupSet a = build_T_pq(k, 1, 1).set();
    const GroupSet b = build_T(k).set();
    if (a.size() != b.size()) return "size at k=" + std::to_string(k);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] != b[i]) return "element " + std::to_string(i) + " at k=" + std::to_string(k);
    }
  }
  return {};
}

std::string checker() {
  std::vector<ConstructedSet> sets;
  for (int k = 1; k <= 3; ++k) sets.push_back(build_T(k));
  sets.push_back(build_T_pq(1, 1, 3));
  sets.push_back(build_T_pq(2, 1, 5));
  for (const auto& cs : sets) {
    const std::string at = " in " + cs.spec().describe();
    const auto table = product_table(cs.set(), cs.set());
    const auto claims = check_all_claims(cs);
    for (const auto& r : claims) {
      if (r.status == ClaimStatus::Fail) return "failed claim '" + r.claim.source + "'" + at;
      if (r.status == ClaimStatus::TypoSuspect) {
        if (!r.pattern || !r.observed || !(*r.pattern == *r.observed) || !r.witness) {
          return "typo-suspect '" + r.claim.source + "' not pattern-consistent" + at;
        }
        std::printf("    typo-suspect %s%s: printed %s, observed %s\n", r.claim.source.c_str(),
                    at.c_str(), r.claim.expected ? r.claim.expected->to_string().c_str() : "?",
                    r.observed->to_string().c_str());
      }
    }
    const Coverage cov = claim_coverage(cs, claims, table);
    if (!cov.complete()) {
      return "coverage " + std::to_string(cov.entries_covered) + "/" + std::to_string(cov.entries_total) + at;
    }
    if (cov.unsound_pairs) return "unsound coverage" + at;
  }
  return {};
}

std::string controls() {
  const Group g(1);
  auto set_of = [&](std::vector<NormalForm> v) { return make_set(g.params(), std::move(v)).set; };
  if (unique_products(set_of({g.identity()}), set_of({g.identity()})).empty()) return "{1}";
  const GroupSet s2 = set_of({g.identity(), g.eval("a")});
  if (unique_products(s2, s2).empty()) return "{1, a}";
  const GroupSet s3 = set_of({g.identity(), g.eval("a"), g.eval("b")});
  if (unique_products(s3, s3).empty()) return "{1, a, b}";
  std::mt19937_64 rng(99);
  int done = 0;
  while (done < 100) {
    const GroupSet s = set_of({random_element(g, rng, 10), random_element(g, rng, 10)});
    if (s.size() != 2) continue;
    if (unique_products(s, s).empty()) return "random 2-element set " + std::to_string(done);
    ++done;
  }
  return {};
}

std::string search_checks() {
  SearchConfig c;
  c.k = 1;
  c.size = 8;
  c.max_len = 4;
  c.budget = 3000;
  c.restarts = 3;
  c.seed = 2026;
  const SearchResult a = run_search(c);
  const SearchResult b = run_search(c);
  if (!(a == b)) return "same seed, different results";
  c.threads = 3;
  if (!(run_search(c) == a)) return "thread count changed the result";

  std::size_t sampled = 0;
  std::string bad;
  for (bool symmetric : {false, true}) {
    SearchConfig o = c;
    o.symmetric = symmetric;
    o.size = symmetric ? 9 : 8;
    o.budget = 2000;
    o.threads = 1;
    o.neighborhood = symmetric ? Neighborhood::MutateOne : Neighborhood::SwapOne;
    std::uint64_t step = 0;
    o.observer = [&](const SearchStep& s) {
      if (step++ % 7 != 0 || !bad.empty()) return;
      ++sampled;
      const std::size_t truth = unique_products(s.candidate, s.candidate).size();
      if (truth != s.score) bad = "score " + std::to_string(s.score) + " vs " + std::to_string(truth);
    };
    run_search(o);
  }
  if (!bad.empty()) return bad;
  if (sampled < 500) return "too few sampled candidates";
  return {};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "relator sanity", 1.0, relators},
      {2, "group axioms", 30.0, group_axioms},
      {3, "bounded oracle agreement", 300.0, oracle_agreement},
      {4, "homomorphisms", 30.0, homomorphisms},
      {5, "T for k=1..3", 10.0, [] { return reproduce_T(3); }},
      {5, "T for k=4 (extended)", 60.0,
       [] {
         const ConstructedSet t = build_T(4);
         if (t.size() != 577 || t.duplicates() != 0) return std::string("size");
         return unique_products(t.set(), t.set()).empty() ? std::string() : std::string("unique products");
       }},
      {6, "T(p,q) reproduction", 60.0, reproduce_T_pq},
      {7, "degenerate T(1,1)", 10.0, degenerate},
      {8, "proof checker completeness", 120.0, checker},
      {9, "controls", 5.0, controls},
      {10, "search determinism and oracle", 30.0, search_checks},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string why;
    try {
      why = c.body();
    } catch (const std::exception& e) {
      why = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (why.empty() && secs > c.limit_s) why = "over time limit " + std::to_string(c.limit_s) + " s";
    const bool ok = why.empty();
    failed += !ok;
    std::printf("[%s] %2d %s (%.2f s)%s%s\n", ok ? "PASS" : "FAIL", c.id, c.name, secs,
                ok ? "" : ": ", why.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu checks failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
