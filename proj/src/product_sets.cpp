#include "nup/product_sets.hpp"

#include <algorithm>
#include <numeric>
#include <thread>
#include <unordered_map>

namespace nup {

namespace {

using PartialTable = std::unordered_map<NormalForm, std::vector<Factorization>, NormalFormHash>;

void check_same_group(const GroupSet& x, const GroupSet& y) {
  if (!(x.params() == y.params())) {
    throw ParameterError("product of sets over different groups (k=" +
                         std::to_string(x.params().k()) + " vs k=" +
                         std::to_string(y.params().k()) + ")");
  }
}

void fill_rows(const Group& g, const GroupSet& x, const GroupSet& y, std::size_t row_begin,
               std::size_t row_end, PartialTable& out) {
  for (std::size_t i = row_begin; i < row_end; ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) {
      out[g.mul(x[i], y[j])].push_back(
          {static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
    }
  }
}

}  // namespace

unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

std::optional<std::size_t> GroupSet::index_of(const NormalForm& w) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), w);
  if (it == elements_.end() || *it != w) return std::nullopt;
  return static_cast<std::size_t>(it - elements_.begin());
}

MakeSetResult make_set(GroupParams params, std::vector<NormalForm> words,
                       std::vector<std::string> labels) {
  if (!labels.empty() && labels.size() != words.size()) {
    throw std::invalid_argument("make_set: " + std::to_string(labels.size()) +
                                " labels for " + std::to_string(words.size()) + " elements");
  }
  const Group group(params);
  for (const auto& w : words) {
    if (!group.is_valid(w)) throw std::invalid_argument("make_set: invalid normal form");
  }

  std::vector<std::size_t> order(words.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t l, std::size_t r) { return words[l] < words[r]; });

  MakeSetResult result{GroupSet(params), 0};
  GroupSet& set = result.set;
  set.elements_.reserve(words.size());
  if (!labels.empty()) set.labels_.reserve(words.size());
  for (std::size_t idx : order) {
    if (!set.elements_.empty() && set.elements_.back() == words[idx]) {
      ++result.duplicates_removed;
      continue;
    }
    set.elements_.push_back(std::move(words[idx]));
    if (!labels.empty()) set.labels_.push_back(std::move(labels[idx]));
  }
  return result;
}

FactorizationTable::FactorizationTable(std::vector<TableEntry> entries)
    : entries_(std::move(entries)) {}

std::size_t FactorizationTable::total_pairs() const noexcept {
  std::size_t n = 0;
  for (const auto& e : entries_) n += e.pairs.size();
  return n;
}

const TableEntry* FactorizationTable::find(const NormalForm& z) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), z,
                             [](const TableEntry& e, const NormalForm& w) { return e.product < w; });
  if (it == entries_.end() || it->product != z) return nullptr;
  return &*it;
}

std::size_t FactorizationTable::multiplicity(const NormalForm& z) const {
  const TableEntry* e = find(z);
  return e ? e->pairs.size() : 0;
}

FactorizationTable product_table(const GroupSet& x, const GroupSet& y, unsigned threads) {
  check_same_group(x, y);
  const Group group(x.params());
  const std::size_t rows = x.size();
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(rows, 1)));

  std::vector<PartialTable> partials(workers);
  if (workers <= 1) {
    fill_rows(group, x, y, 0, rows, partials[0]);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t begin = rows * w / workers;
      const std::size_t end = rows * (w + 1) / workers;
      pool.emplace_back(fill_rows, std::cref(group), std::cref(x), std::cref(y), begin, end,
                        std::ref(partials[w]));
    }
    for (auto& t : pool) t.join();
  }

  PartialTable& merged = partials[0];
  for (std::size_t w = 1; w < partials.size(); ++w) {
    for (auto& [z, pairs] : partials[w]) {
      auto& dst = merged[z];
      dst.insert(dst.end(), pairs.begin(), pairs.end());
    }
    partials[w].clear();
  }

  std::vector<TableEntry> entries;
  entries.reserve(merged.size());
  for (auto& [z, pairs] : merged) {
    std::sort(pairs.begin(), pairs.end());
    entries.push_back({z, std::move(pairs)});
  }
  std::sort(entries.begin(), entries.end(),
            [](const TableEntry& l, const TableEntry& r) { return l.product < r.product; });
  return FactorizationTable(std::move(entries));
}

std::vector<UniqueProduct> unique_products(const FactorizationTable& table) {
  std::vector<UniqueProduct> out;
  for (const auto& e : table.entries()) {
    if (e.pairs.size() == 1) out.push_back({e.product, e.pairs.front()});
  }
  return out;
}

std::vector<UniqueProduct> unique_products(const GroupSet& x, const GroupSet& y,
                                           unsigned threads) {
  return unique_products(product_table(x, y, threads));
}

std::size_t count_unique_products(const GroupSet& x, const GroupSet& y) {
  check_same_group(x, y);
  const Group group(x.params());
  std::unordered_map<NormalForm, std::uint32_t, NormalFormHash> counts;
  counts.reserve(x.size() * y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) ++counts[group.mul(x[i], y[j])];
  }
  std::size_t unique = 0;
  for (const auto& [z, n] : counts) unique += (n == 1);
  return unique;
}

NonUniqueResult is_nonunique_square(const GroupSet& s, unsigned threads) {
  if (s.empty()) throw std::invalid_argument("is_nonunique_square: empty set");
  const auto uniques = unique_products(s, s, threads);
  NonUniqueResult r;
  r.unique_count = uniques.size();
  r.nonunique = uniques.empty();
  if (!uniques.empty()) r.witness = uniques.front();
  return r;
}

GroupSet left_translate(const NormalForm& g, const GroupSet& x) {
  const Group group(x.params());
  std::vector<NormalForm> words;
  words.reserve(x.size());
  for (const auto& w : x.elements()) words.push_back(group.mul(g, w));
  return make_set(x.params(), std::move(words), x.labels()).set;
}

GroupSet inverse_set(const GroupSet& x) {
  const Group group(x.params());
  std::vector<NormalForm> words;
  words.reserve(x.size());
  for (const auto& w : x.elements()) words.push_back(group.inv(w));
  return make_set(x.params(), std::move(words), x.labels()).set;
}

}  // namespace nup
