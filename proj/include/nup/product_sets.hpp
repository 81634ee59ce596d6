#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nup/word.hpp"

namespace nup {

class GroupSet;
struct MakeSetResult;

/// Sorts and deduplicates.  When labels are given they must match the words
/// one-to-one; a duplicate keeps the label of its first occurrence.
MakeSetResult make_set(GroupParams params, std::vector<NormalForm> words,
                       std::vector<std::string> labels = {});

/// A finite subset of P_k in canonical order, with optional free-form labels
/// in bijection with the elements.
class GroupSet {
 public:
  explicit GroupSet(GroupParams params) : params_(params) {}

  const GroupParams& params() const noexcept { return params_; }
  const std::vector<NormalForm>& elements() const noexcept { return elements_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  bool has_labels() const noexcept { return !labels_.empty(); }

  std::size_t size() const noexcept { return elements_.size(); }
  bool empty() const noexcept { return elements_.empty(); }
  const NormalForm& operator[](std::size_t i) const { return elements_[i]; }

  std::optional<std::size_t> index_of(const NormalForm& w) const;
  bool contains(const NormalForm& w) const { return index_of(w).has_value(); }

  /// Same elements, ignoring labels.
  bool same_elements(const GroupSet& other) const {
    return params_ == other.params_ && elements_ == other.elements_;
  }

 private:
  friend MakeSetResult make_set(GroupParams, std::vector<NormalForm>,
                                std::vector<std::string>);

  GroupParams params_;
  std::vector<NormalForm> elements_;
  std::vector<std::string> labels_;
};

struct MakeSetResult {
  GroupSet set;
  std::size_t duplicates_removed = 0;
};

struct Factorization {
  std::uint32_t left;
  std::uint32_t right;

  friend bool operator==(const Factorization&, const Factorization&) = default;
  friend auto operator<=>(const Factorization&, const Factorization&) = default;
};

struct TableEntry {
  NormalForm product;
  std::vector<Factorization> pairs;  // sorted by (left, right)
};

/// Every product X[i] * Y[j] with all of its factorizations.  Entries are in
/// canonical order of the product element.
class FactorizationTable {
 public:
  FactorizationTable() = default;
  explicit FactorizationTable(std::vector<TableEntry> entries);

  const std::vector<TableEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  std::size_t total_pairs() const noexcept;

  const TableEntry* find(const NormalForm& z) const;
  std::size_t multiplicity(const NormalForm& z) const;

 private:
  std::vector<TableEntry> entries_;
};

/// 0 selects the available hardware parallelism.
FactorizationTable product_table(const GroupSet& x, const GroupSet& y, unsigned threads = 0);

struct UniqueProduct {
  NormalForm product;
  Factorization factors;
};

std::vector<UniqueProduct> unique_products(const GroupSet& x, const GroupSet& y,
                                           unsigned threads = 0);
std::vector<UniqueProduct> unique_products(const FactorizationTable& table);

/// Number of uniquely represented elements of XY.  Counts only, without
/// building a FactorizationTable.
std::size_t count_unique_products(const GroupSet& x, const GroupSet& y);

struct NonUniqueResult {
  bool nonunique = false;
  std::size_t unique_count = 0;
  std::optional<UniqueProduct> witness;
};

NonUniqueResult is_nonunique_square(const GroupSet& s, unsigned threads = 0);

/// g * X, elementwise.
GroupSet left_translate(const NormalForm& g, const GroupSet& x);
/// { x^-1 : x in X }.
GroupSet inverse_set(const GroupSet& x);

unsigned resolve_threads(unsigned requested);

}  // namespace nup
