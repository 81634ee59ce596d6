#pragma once

// The non-unique product sets T and T(p, q) in P_k, built from left
// b-progressions
//
//   X_0 = { a^-p b^j }          X_i = { b^i a^-p b^j }   1 <= i <= 2^k - 1
//   Y_l = { b^l a^p b^j }       Z_0 = { b^j }            0 <= l <= 2^k - 1
//
// with the j-ranges returned by ConstructedSet::progression().  T is the case
// p = q = 1.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nup/product_sets.hpp"
#include "nup/word.hpp"

namespace nup {

enum class Family : std::uint8_t { X, Y, Z };

char family_letter(Family f);

/// Position of an element inside the construction: family, row index (i or
/// l, 0 for Z) and b-exponent j.
struct SliceLabel {
  Family family;
  std::int64_t row;
  std::int64_t j;

  std::string to_string() const;  // "X 2 5"
  static std::optional<SliceLabel> parse(const std::string& text);

  friend bool operator==(const SliceLabel&, const SliceLabel&) = default;
};

struct TFamilySpec {
  int k = 1;
  std::optional<std::int64_t> p;
  std::optional<std::int64_t> q;

  static TFamilySpec plain(int k) { return {k, std::nullopt, std::nullopt}; }
  static TFamilySpec with_pq(int k, std::int64_t p, std::int64_t q) { return {k, p, q}; }

  bool parametrized() const noexcept { return p.has_value() || q.has_value(); }
  std::int64_t p_or_one() const noexcept { return p.value_or(1); }
  std::int64_t q_or_one() const noexcept { return q.value_or(1); }

  /// Throws ParameterError naming the violated condition.
  void validate() const;
  std::string describe() const;  // "T(k=1)" or "T(k=1,p=1,q=3)"
};

/// Closed-form size: 2^(2k+1) + 2^(k+2) + 1 for T,
/// (2^(2k+1) + 5*2^k + 2) q - (2^k + 1) for T(p, q).
std::int64_t cardinality_formula(const TFamilySpec& spec);

struct Progression {
  Family family;
  std::int64_t row;
  std::int64_t lo;  // j-range, inclusive
  std::int64_t hi;

  std::int64_t size() const noexcept { return hi - lo + 1; }
  std::string name() const;  // "X_2", "Z_0"
};

class ConstructedSet {
 public:
  ConstructedSet(TFamilySpec spec, MakeSetResult made);

  const TFamilySpec& spec() const noexcept { return spec_; }
  const GroupSet& set() const noexcept { return set_; }
  const Group& group() const noexcept { return group_; }
  std::size_t duplicates() const noexcept { return duplicates_; }
  std::size_t size() const noexcept { return set_.size(); }
  std::int64_t modulus() const noexcept { return group_.modulus(); }

  /// Slice label of set()[i].
  const std::vector<SliceLabel>& slice_labels() const noexcept { return slice_labels_; }

  /// In emission order X_0, ..., X_{2^k-1}, Y_0, ..., Y_{2^k-1}, Z_0.
  std::vector<Progression> progressions() const;
  Progression progression(Family family, std::int64_t row) const;

  /// The element with the given label, whether or not j is in range.
  NormalForm element(Family family, std::int64_t row, std::int64_t j) const;
  std::optional<std::size_t> index_of(Family family, std::int64_t row, std::int64_t j) const;

 private:
  TFamilySpec spec_;
  Group group_;
  GroupSet set_;
  std::size_t duplicates_;
  std::vector<SliceLabel> slice_labels_;
};

ConstructedSet build_T(int k);
ConstructedSet build_T_pq(int k, std::int64_t p, std::int64_t q);
ConstructedSet build(const TFamilySpec& spec);

}  // namespace nup
