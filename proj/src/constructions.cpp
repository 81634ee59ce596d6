#include "nup/constructions.hpp"

#include <sstream>

namespace nup {

namespace {

std::int64_t mul_checked(std::int64_t x, std::int64_t y) {
  std::int64_t out;
  if (__builtin_mul_overflow(x, y, &out)) throw ParameterError("set size overflows");
  return out;
}

// j-range of a progression for T(p, q); T is p = q = 1.
Progression range_of(std::int64_t m, std::int64_t q, Family family, std::int64_t row) {
  switch (family) {
    case Family::X:
      if (row == 0) return {family, row, -q + 1, (m + 1) * q - m};
      return {family, row, -q + 1, (m + 1) * q};
    case Family::Y:
      return {family, row, -q + 2, (m + 1) * q};
    case Family::Z: {
      const std::int64_t r = m * ((q + 1) / 2) + (q - 1);
      return {family, row, -r, r};
    }
  }
  throw std::logic_error("unknown family");
}

}  // namespace

char family_letter(Family f) {
  switch (f) {
    case Family::X: return 'X';
    case Family::Y: return 'Y';
    case Family::Z: return 'Z';
  }
  return '?';
}

std::string SliceLabel::to_string() const {
  std::ostringstream out;
  out << family_letter(family) << ' ' << row << ' ' << j;
  return out.str();
}

std::optional<SliceLabel> SliceLabel::parse(const std::string& text) {
  std::istringstream in(text);
  char f = 0;
  SliceLabel label{Family::X, 0, 0};
  if (!(in >> f >> label.row >> label.j)) return std::nullopt;
  std::string rest;
  if (in >> rest) return std::nullopt;
  switch (f) {
    case 'X': label.family = Family::X; break;
    case 'Y': label.family = Family::Y; break;
    case 'Z': label.family = Family::Z; break;
    default: return std::nullopt;
  }
  return label;
}

void TFamilySpec::validate() const {
  const GroupParams params(k);
  const std::int64_t m = params.modulus();
  if (p) {
    if (*p < 1) throw ParameterError("p must be a positive odd integer (got " + std::to_string(*p) + ")");
    if (*p % 2 == 0) throw ParameterError("p must be odd (got " + std::to_string(*p) + ")");
  }
  if (q) {
    if (*q < 1) throw ParameterError("q must be a positive odd integer (got " + std::to_string(*q) + ")");
    if (*q % 2 == 0) throw ParameterError("q must be odd (got " + std::to_string(*q) + ")");
    if ((*q - 1) % m != 0) {
      throw ParameterError("q - 1 must be a multiple of 2^k = " + std::to_string(m) + " (got q = " +
                           std::to_string(*q) + ")");
    }
  }
  if (p.has_value() != q.has_value()) throw ParameterError("p and q must be given together");
}

std::string TFamilySpec::describe() const {
  std::ostringstream out;
  out << "T(k=" << k;
  if (p) out << ",p=" << *p;
  if (q) out << ",q=" << *q;
  out << ')';
  return out.str();
}

std::int64_t cardinality_formula(const TFamilySpec& spec) {
  spec.validate();
  const std::int64_t m = GroupParams(spec.k).modulus();
  if (!spec.parametrized()) return 2 * m * m + 4 * m + 1;
  const std::int64_t per_q = 2 * mul_checked(m, m) + 5 * m + 2;
  return mul_checked(per_q, *spec.q) - (m + 1);
}

std::string Progression::name() const {
  return std::string(1, family_letter(family)) + "_" + std::to_string(row);
}

ConstructedSet::ConstructedSet(TFamilySpec spec, MakeSetResult made)
    : spec_(spec),
      group_(made.set.params()),
      set_(std::move(made.set)),
      duplicates_(made.duplicates_removed) {
  slice_labels_.reserve(set_.size());
  for (const auto& text : set_.labels()) {
    auto label = SliceLabel::parse(text);
    if (!label) throw std::logic_error("malformed slice label '" + text + "'");
    slice_labels_.push_back(*label);
  }
}

std::vector<Progression> ConstructedSet::progressions() const {
  const std::int64_t m = modulus();
  std::vector<Progression> out;
  for (std::int64_t i = 0; i < m; ++i) out.push_back(progression(Family::X, i));
  for (std::int64_t l = 0; l < m; ++l) out.push_back(progression(Family::Y, l));
  out.push_back(progression(Family::Z, 0));
  return out;
}

Progression ConstructedSet::progression(Family family, std::int64_t row) const {
  const std::int64_t m = modulus();
  if (family == Family::Z ? row != 0 : (row < 0 || row >= m)) {
    throw std::out_of_range("no progression " + std::string(1, family_letter(family)) + "_" +
                            std::to_string(row));
  }
  return range_of(m, spec_.q_or_one(), family, row);
}

NormalForm ConstructedSet::element(Family family, std::int64_t row, std::int64_t j) const {
  const std::int64_t p = spec_.p_or_one();
  NormalForm w = group_.b_power(row);
  if (family == Family::X) group_.right_mul_a_power(w, -p);
  if (family == Family::Y) group_.right_mul_a_power(w, p);
  group_.right_mul_b_power(w, j);
  return w;
}

std::optional<std::size_t> ConstructedSet::index_of(Family family, std::int64_t row,
                                                    std::int64_t j) const {
  const std::int64_t m = modulus();
  if (family == Family::Z ? row != 0 : (row < 0 || row >= m)) return std::nullopt;
  const Progression prog = progression(family, row);
  if (j < prog.lo || j > prog.hi) return std::nullopt;
  return set_.index_of(element(family, row, j));
}

ConstructedSet build(const TFamilySpec& spec) {
  spec.validate();
  const GroupParams params(spec.k);
  const std::int64_t m = params.modulus();
  const std::int64_t q = spec.q_or_one();
  const std::int64_t p = spec.p_or_one();
  const Group group(params);

  std::vector<NormalForm> words;
  std::vector<std::string> labels;
  words.reserve(static_cast<std::size_t>(cardinality_formula(spec)));
  auto emit = [&](Family family, std::int64_t row) {
    const Progression prog = range_of(m, q, family, row);
    NormalForm w = group.b_power(row);
    if (family == Family::X) group.right_mul_a_power(w, -p);
    if (family == Family::Y) group.right_mul_a_power(w, p);
    group.right_mul_b_power(w, prog.lo);
    for (std::int64_t j = prog.lo; j <= prog.hi; ++j) {
      words.push_back(w);
      labels.push_back(SliceLabel{family, row, j}.to_string());
      group.right_mul_b_power(w, 1);
    }
  };
  for (std::int64_t i = 0; i < m; ++i) emit(Family::X, i);
  for (std::int64_t l = 0; l < m; ++l) emit(Family::Y, l);
  emit(Family::Z, 0);

  return ConstructedSet(spec, make_set(params, std::move(words), std::move(labels)));
}

ConstructedSet build_T(int k) { return build(TFamilySpec::plain(k)); }

ConstructedSet build_T_pq(int k, std::int64_t p, std::int64_t q) {
  return build(TFamilySpec::with_pq(k, p, q));
}

}  // namespace nup
