#pragma once

// Machine check of the matching argument that T(p, q) T(p, q) has no uniquely
// represented element.  Every product in the square lies in a slice t * W
// (t in the set, W one of the progressions).  Each claim below certifies that
// the elements of some slice have a second factorization, either because two
// slices coincide, because a slice sits inside another one, or because a
// rewrite through the Klein bottle relations lands the slice in a different
// product set.  Coverage then confirms every factorization of the square is
// accounted for by a passing claim.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nup/constructions.hpp"
#include "nup/product_sets.hpp"

namespace nup {

enum class ClaimKind { DiagonalEquality, X0Containment, ZEndpoint, ChartRow };
enum class ClaimStatus { Pass, Fail, TypoSuspect };

const char* to_string(ClaimKind kind);
const char* to_string(ClaimStatus status);

struct JRange {
  std::int64_t lo;
  std::int64_t hi;

  friend bool operator==(const JRange&, const JRange&) = default;
  std::string to_string() const;
};

struct Claim {
  ClaimKind kind;
  std::string source;       // which diagonal, endpoint or chart row
  std::string description;  // the statement being checked
  std::vector<std::pair<std::string, std::int64_t>> params;
  std::optional<JRange> expected;  // printed j-range, chart rows only
};

struct Witness {
  std::string element;
  std::string rewritten;
  std::string explanation;
};

struct ClaimReport {
  Claim claim;
  ClaimStatus status = ClaimStatus::Pass;
  std::optional<Witness> witness;  // present unless status is Pass
  std::size_t count = 0;           // elements (or slice equalities) checked
  std::optional<JRange> observed;  // j-range actually produced, chart rows
  std::optional<JRange> pattern;   // pattern-consistent range tried after a mismatch
  std::vector<Factorization> covered;  // pairs of the square certified by this claim

  bool ok() const noexcept { return status != ClaimStatus::Fail; }
};

enum class DiagonalKind { Y, X, Z };

/// Diagonal matchings inside U_i Y, U_i X and U_i Z_0 for every
/// progression U_i.  The X kind also returns the X_0 containments.
std::vector<ClaimReport> check_diagonals(DiagonalKind kind, const ConstructedSet& cs);

/// The two unmatched corners of each U_i Z_0 table, plus the leftover slices
/// of Z_0 X and Z_0 Y.
std::vector<ClaimReport> check_z_endpoints(const ConstructedSet& cs);

/// Remaining-element chart.  Uses the T chart for the plain construction and
/// the T(p, q) chart when p and q are given.
std::vector<ClaimReport> check_chart(const ConstructedSet& cs);

std::vector<ClaimReport> check_all_claims(const ConstructedSet& cs);

struct Coverage {
  std::size_t pairs_total = 0;
  std::size_t pairs_covered = 0;
  std::size_t entries_total = 0;
  std::size_t entries_covered = 0;
  std::size_t unsound_pairs = 0;  // covered pairs whose product is unique in the table

  bool complete() const noexcept {
    return pairs_covered == pairs_total && entries_covered == entries_total && unsound_pairs == 0;
  }
};

/// Only claims that did not fail contribute.
Coverage claim_coverage(const ConstructedSet& cs, const std::vector<ClaimReport>& claims,
                        const FactorizationTable& square);

struct TheoremSummary {
  TFamilySpec spec;
  std::size_t set_size = 0;
  std::int64_t formula_size = 0;
  std::size_t duplicates = 0;
  std::size_t product_size = 0;  // distinct elements of the square
  std::size_t pairs = 0;
  std::vector<UniqueProduct> uniques;
  std::vector<ClaimReport> claims;
  std::size_t claims_passed = 0;
  std::size_t claims_failed = 0;
  std::size_t claims_typo_suspect = 0;
  Coverage coverage;

  std::size_t unique_count() const noexcept { return uniques.size(); }
  /// Passing claims with full coverage must mean no unique products.
  bool consistent() const noexcept;
};

TheoremSummary verify_theorem(const TFamilySpec& spec, unsigned threads = 0);

}  // namespace nup
