#include <doctest.h>

#include <algorithm>

#include "nup/constructions.hpp"
#include "nup/proof_checker.hpp"
#include "nup/report.hpp"

using namespace nup;

namespace {

std::vector<NormalForm> slice(const ConstructedSet& cs, Family lf, std::int64_t lrow, std::int64_t lj,
                              Family wf, std::int64_t wrow) {
  const Group& g = cs.group();
  const Progression w = cs.progression(wf, wrow);
  std::vector<NormalForm> out;
  for (std::int64_t j = w.lo; j <= w.hi; ++j) {
    out.push_back(g.mul(cs.element(lf, lrow, lj), cs.element(wf, wrow, j)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

const ClaimReport* find_claim(const std::vector<ClaimReport>& claims, const std::string& source,
                              std::int64_t index = -1) {
  for (const auto& r : claims) {
    if (r.claim.source != source) continue;
    if (index < 0) return &r;
    for (const auto& [name, value] : r.claim.params) {
      if (name != "k" && name != "p" && name != "q" && name != "row" && value == index) return &r;
    }
  }
  return nullptr;
}

bool all_ok(const std::vector<ClaimReport>& claims) {
  return std::all_of(claims.begin(), claims.end(),
                     [](const ClaimReport& r) { return r.status == ClaimStatus::Pass; });
}

}  // namespace

TEST_CASE("diagonal equalities") {
  const ConstructedSet t1 = build_T(1);
  // x_(1,1) Y_0 = x_(1,0) Y_1 as sets.
  CHECK(slice(t1, Family::X, 1, 1, Family::Y, 0) == slice(t1, Family::X, 1, 0, Family::Y, 1));
  CHECK(all_ok(check_diagonals(DiagonalKind::Y, t1)));
  CHECK(all_ok(check_diagonals(DiagonalKind::Z, t1)));

  const ConstructedSet t2 = build_T(2);
  const auto x = check_diagonals(DiagonalKind::X, t2);
  CHECK(all_ok(x));
  std::size_t containments = 0;
  for (const auto& r : x) containments += r.claim.kind == ClaimKind::X0Containment;
  CHECK(containments == 2 * t2.progressions().size());
}

TEST_CASE("X_0 containment holds slice by slice") {
  const ConstructedSet t = build_T(2);
  const std::int64_t m = t.modulus();
  for (const auto& u : t.progressions()) {
    auto lo = slice(t, u.family, u.row, u.lo, Family::X, 0);
    auto hi = slice(t, u.family, u.row, u.lo + 1, Family::X, m - 1);
    CHECK(std::includes(hi.begin(), hi.end(), lo.begin(), lo.end()));
  }
}

TEST_CASE("Z_0 endpoints") {
  const ConstructedSet t = build_T(1);
  const Group& g = t.group();
  // b^4 in x_(1,0) Y_0 and b^-4 in y_(0,3) X_1.
  const auto s1 = slice(t, Family::X, 1, 0, Family::Y, 0);
  CHECK(std::binary_search(s1.begin(), s1.end(), g.b_power(4)));
  const auto s2 = slice(t, Family::Y, 0, 3, Family::X, 1);
  CHECK(std::binary_search(s2.begin(), s2.end(), g.b_power(-4)));
  CHECK(all_ok(check_z_endpoints(t)));

  const auto e2 = check_z_endpoints(build_T(2));
  CHECK(all_ok(e2));
  std::size_t corners = 0;
  for (const auto& r : e2) {
    if (r.claim.source.find("Z_0 endpoints") != std::string::npos && r.claim.source != "Z_0Z_0 endpoints") {
      corners += r.count;
    }
  }
  CHECK(corners == 2 * 2 * 4);  // two corners for each of the 2^(k+1) progressions other than Z_0
}

TEST_CASE("chart rows for T") {
  const auto c1 = check_chart(build_T(1));
  const ClaimReport* first = find_claim(c1, "chart T row 1");
  REQUIRE(first);
  CHECK(first->status == ClaimStatus::Pass);
  CHECK(first->observed == JRange{2, 3});

  const auto c2 = check_chart(build_T(2));
  const ClaimReport* row18 = find_claim(c2, "chart T row 18");
  REQUIRE(row18);
  CHECK(row18->status == ClaimStatus::Pass);
  CHECK(row18->observed == JRange{-4, 0});
  CHECK(row18->claim.description.find("X_0 X_3") != std::string::npos);

  for (int k = 1; k <= 4; ++k) CHECK(all_ok(check_chart(build_T(k))));

  // x_(n, 2^k+1) Y_(2^k-1) has no n = 0 instance.
  const auto c3 = check_chart(build_T(3));
  std::size_t row21 = 0;
  for (const auto& r : c3) row21 += r.claim.source == "chart T row 21";
  CHECK(row21 == 7);
  CHECK(find_claim(c3, "chart T row 21", 0) == nullptr);
}

TEST_CASE("chart rows for T(p, q)") {
  const auto c = check_chart(build_T_pq(1, 1, 3));
  const ClaimReport* last = find_claim(c, "chart T(p,q) row 21");
  REQUIRE(last);
  CHECK(last->status == ClaimStatus::Pass);

  // Printed upper end 2^q + 2q - 1 disagrees with its neighbours.
  const ClaimReport* row17 = find_claim(c, "chart T(p,q) row 17");
  REQUIRE(row17);
  CHECK(row17->status == ClaimStatus::TypoSuspect);
  CHECK(row17->claim.expected == JRange{1, 13});
  CHECK(row17->observed == JRange{1, 11});
  CHECK(row17->pattern == JRange{1, 11});
  CHECK(row17->witness.has_value());

  // Printed upper end 2^k + 2q - 1 for the x_(m, -q+1) X_1 row.
  auto c2 = check_chart(build_T_pq(2, 1, 5));
  const ClaimReport* row5 = find_claim(c2, "chart T(p,q) row 5");
  REQUIRE(row5);
  CHECK(row5->status == ClaimStatus::TypoSuspect);
  CHECK(row5->claim.expected == JRange{26, 13});
  CHECK(row5->observed == JRange{26, 29});

  for (const auto& r : c2) {
    CHECK(r.ok());
    if (r.claim.source != "chart T(p,q) row 5" && r.claim.source != "chart T(p,q) row 17") {
      CHECK(r.status == ClaimStatus::Pass);
    }
  }
}

TEST_CASE("at q = 1 the parametrized chart reduces to the plain one") {
  // Only the two suspect rows differ from the T chart once q = 1 and k >= 2.
  for (int k = 1; k <= 3; ++k) {
    const auto plain = check_chart(build_T(k));
    const auto pq = check_chart(build_T_pq(k, 1, 1));
    REQUIRE(plain.size() == pq.size());
    for (std::size_t i = 0; i < plain.size(); ++i) {
      CHECK(plain[i].observed == pq[i].observed);
      CHECK(pq[i].ok());
      if (pq[i].status == ClaimStatus::Pass) CHECK(plain[i].claim.expected == pq[i].claim.expected);
    }
  }
}

TEST_CASE("chart identities hold as group equalities") {
  for (int k = 1; k <= 4; ++k) {
    const Group g(k);
    const std::int64_t m = g.modulus();
    for (std::int64_t p : {1, 3, 5}) {
      for (int eps : {1, -1}) {
        const std::int64_t e = eps * p;
        for (std::int64_t n = 0; n < m; ++n) {
          for (std::int64_t i : {-3, 0, 2, 7}) {
            const NormalForm lhs = g.mul(g.mul(g.mul(g.mul(g.b_power(n), g.a_power(e)), g.b_power(1)), g.a_power(e)), g.b_power(i));
            const NormalForm rhs = g.mul(g.mul(g.mul(g.mul(g.b_power(n), g.a_power(-e)), g.b_power(1)), g.a_power(-e)), g.b_power(i));
            CHECK(lhs == rhs);
          }
        }
        // b^(2^k) a^e = a^e b^(-2^k) and b a^(2e) = a^(-2e) b
        CHECK(g.mul(g.b_power(m), g.a_power(e)) == g.mul(g.a_power(e), g.b_power(-m)));
        CHECK(g.mul(g.b_power(1), g.a_power(2 * e)) == g.mul(g.a_power(-2 * e), g.b_power(1)));
      }
    }
  }
}

TEST_CASE("coverage is complete and sound") {
  for (int k = 1; k <= 3; ++k) {
    const ConstructedSet t = build_T(k);
    const auto table = product_table(t.set(), t.set());
    const auto claims = check_all_claims(t);
    const Coverage cov = claim_coverage(t, claims, table);
    CHECK(cov.complete());
    CHECK(cov.pairs_total == t.size() * t.size());
    CHECK(cov.unsound_pairs == 0);
    for (const auto& r : claims) {
      for (const auto& f : r.covered) {
        CHECK(table.multiplicity(t.group().mul(t.set()[f.left], t.set()[f.right])) >= 2);
      }
    }

    // Without the chart the matching is incomplete.
    std::vector<ClaimReport> partial;
    for (const auto& r : claims) {
      if (r.claim.kind != ClaimKind::ChartRow) partial.push_back(r);
    }
    CHECK_FALSE(claim_coverage(t, partial, table).complete());
  }
}

TEST_CASE("verify_theorem") {
  for (int k : {1, 3}) {
    const TheoremSummary s = verify_theorem(TFamilySpec::plain(k));
    CHECK(s.unique_count() == 0);
    CHECK(s.claims_failed == 0);
    CHECK(s.claims_typo_suspect == 0);
    CHECK(s.coverage.complete());
    CHECK(s.consistent());
  }
  const TheoremSummary s = verify_theorem(TFamilySpec::with_pq(1, 3, 3));
  CHECK(s.unique_count() == 0);
  CHECK(s.claims_failed == 0);
  CHECK(s.claims_typo_suspect == 1);
  CHECK(s.coverage.complete());
  CHECK(s.set_size == 57);
}

TEST_CASE("claims report JSON") {
  const auto claims = check_all_claims(build_T_pq(1, 1, 3));
  const auto j = claims_to_json(claims);
  REQUIRE(j.size() == claims.size());
  for (std::size_t i = 0; i < claims.size(); ++i) {
    CHECK(j[i].contains("source"));
    CHECK(j[i].contains("kind"));
    CHECK(j[i].contains("params"));
    CHECK(j[i].contains("status"));
    CHECK(j[i].contains("count"));
    CHECK(j[i].contains("witness") == (claims[i].status != ClaimStatus::Pass));
  }
}
