#include "nup/proof_checker.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <tuple>
#include <unordered_map>

namespace nup {

namespace {

using ProductMap = std::unordered_map<NormalForm, std::vector<Factorization>, NormalFormHash>;

struct SliceElem {
  Factorization pair;
  NormalForm z;
};

std::string word_text(const GeneratorWord& w) {
  if (w.tokens.empty()) return "1";
  std::ostringstream out;
  bool first = true;
  for (const auto& t : w.tokens) {
    if (!first) out << ' ';
    first = false;
    out << (t.gen == Generator::A ? 'a' : 'b');
    if (t.exponent != 1) out << '^' << t.exponent;
  }
  return out.str();
}

// Small builder for the rewritten forms; zero exponents are dropped.
struct WordBuilder {
  GeneratorWord w;
  WordBuilder& a(std::int64_t e) {
    if (e != 0) w.tokens.push_back({Generator::A, e});
    return *this;
  }
  WordBuilder& b(std::int64_t e) {
    if (e != 0) w.tokens.push_back({Generator::B, e});
    return *this;
  }
};

std::int64_t add_sat(std::int64_t x, std::int64_t y) {
  std::int64_t out;
  if (__builtin_add_overflow(x, y, &out)) return y > 0 ? INT64_MAX : INT64_MIN;
  return out;
}

std::int64_t pow2_sat(std::int64_t e) {
  if (e >= 62) return INT64_MAX;
  return std::int64_t{1} << e;
}

class Checker {
 public:
  explicit Checker(const ConstructedSet& cs) : cs_(cs), g_(cs.group()), m_(cs.modulus()) {}

  const ConstructedSet& cs() const { return cs_; }
  const Group& group() const { return g_; }
  std::int64_t m() const { return m_; }

  std::uint32_t idx(Family f, std::int64_t row, std::int64_t j) const {
    auto i = cs_.index_of(f, row, j);
    if (!i) {
      throw std::logic_error("missing element " + std::string(1, family_letter(f)) + " " +
                             std::to_string(row) + " " + std::to_string(j));
    }
    return static_cast<std::uint32_t>(*i);
  }

  // t * W restricted to j in [lo, hi].
  std::vector<SliceElem> slice(std::uint32_t left, Family wf, std::int64_t wrow, std::int64_t lo,
                               std::int64_t hi) const {
    std::vector<SliceElem> out;
    if (hi < lo) return out;
    out.reserve(static_cast<std::size_t>(hi - lo + 1));
    const NormalForm& t = cs_.set()[left];
    for (std::int64_t j = lo; j <= hi; ++j) {
      const std::uint32_t r = idx(wf, wrow, j);
      out.push_back({{left, r}, g_.mul(t, cs_.set()[r])});
    }
    return out;
  }

  std::vector<SliceElem> slice(std::uint32_t left, const Progression& w) const {
    return slice(left, w.family, w.row, w.lo, w.hi);
  }

  const ProductMap& product(Family uf, std::int64_t urow, Family wf, std::int64_t wrow) {
    auto key = std::make_tuple(uf, urow, wf, wrow);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    ProductMap map;
    const Progression u = cs_.progression(uf, urow);
    const Progression w = cs_.progression(wf, wrow);
    for (std::int64_t i = u.lo; i <= u.hi; ++i) {
      const std::uint32_t l = idx(uf, urow, i);
      for (const auto& e : slice(l, w)) map[e.z].push_back(e.pair);
    }
    return cache_.emplace(key, std::move(map)).first->second;
  }

  std::string pair_text(const Factorization& f) const {
    const auto& labels = cs_.slice_labels();
    auto name = [&](std::uint32_t i) {
      const SliceLabel& s = labels[i];
      std::ostringstream out;
      out << static_cast<char>(family_letter(s.family) - 'A' + 'a') << "_(" << s.row << ',' << s.j
          << ')';
      return out.str();
    };
    return name(f.left) + " * " + name(f.right);
  }

  std::string elem_text(const SliceElem& e) const {
    return g_.to_string(e.z) + " = " + pair_text(e.pair);
  }

  // Does z have a factorization in `map` other than `except`?
  static bool has_other(const ProductMap& map, const NormalForm& z, const Factorization& except,
                        Factorization* found = nullptr) {
    auto it = map.find(z);
    if (it == map.end()) return false;
    for (const auto& f : it->second) {
      if (f != except) {
        if (found) *found = f;
        return true;
      }
    }
    return false;
  }

 private:
  const ConstructedSet& cs_;
  const Group& g_;
  std::int64_t m_;
  std::map<std::tuple<Family, std::int64_t, Family, std::int64_t>, ProductMap> cache_;
};

ClaimReport fail(ClaimReport r, std::string element, std::string rewritten, std::string why) {
  r.status = ClaimStatus::Fail;
  r.witness = Witness{std::move(element), std::move(rewritten), std::move(why)};
  r.covered.clear();
  return r;
}

std::vector<std::pair<std::string, std::int64_t>> base_params(const ConstructedSet& cs) {
  std::vector<std::pair<std::string, std::int64_t>> out{{"k", cs.spec().k}};
  if (cs.spec().parametrized()) {
    out.emplace_back("p", cs.spec().p_or_one());
    out.emplace_back("q", cs.spec().q_or_one());
  }
  return out;
}

// Slices A and B must hold the same elements.  Both sides are covered.
bool equal_slices(const Checker& c, const std::vector<SliceElem>& a,
                  const std::vector<SliceElem>& b, ClaimReport& r) {
  std::vector<NormalForm> za, zb;
  for (const auto& e : a) za.push_back(e.z);
  for (const auto& e : b) zb.push_back(e.z);
  std::sort(za.begin(), za.end());
  std::sort(zb.begin(), zb.end());
  if (za != zb) {
    const auto& [from, other] = za.size() >= zb.size() ? std::tie(a, zb) : std::tie(b, za);
    for (const auto& e : from) {
      if (!std::binary_search(other.begin(), other.end(), e.z)) {
        r = fail(std::move(r), c.elem_text(e), c.group().to_string(e.z),
                 "element missing from the matched slice");
        return false;
      }
    }
    r = fail(std::move(r), "", "", "slices differ in size");
    return false;
  }
  for (const auto& e : a) r.covered.push_back(e.pair);
  for (const auto& e : b) r.covered.push_back(e.pair);
  ++r.count;
  return true;
}

// Slice A must lie inside slice B.  A and the matched part of B are covered.
bool contained_slice(const Checker& c, const std::vector<SliceElem>& a,
                     const std::vector<SliceElem>& b, ClaimReport& r) {
  std::unordered_map<NormalForm, Factorization, NormalFormHash> in_b;
  for (const auto& e : b) in_b.emplace(e.z, e.pair);
  for (const auto& e : a) {
    auto it = in_b.find(e.z);
    if (it == in_b.end() || it->second == e.pair) {
      r = fail(std::move(r), c.elem_text(e), c.group().to_string(e.z),
               "element not found in the containing slice");
      return false;
    }
    r.covered.push_back(e.pair);
    r.covered.push_back(it->second);
  }
  ++r.count;
  return true;
}

std::vector<ClaimReport> diagonals_y(Checker& c) {
  std::vector<ClaimReport> out;
  const std::int64_t m = c.m();
  for (const auto& u : c.cs().progressions()) {
    ClaimReport r;
    r.claim.kind = ClaimKind::DiagonalEquality;
    r.claim.source = u.name() + "Y diagonals";
    r.claim.description = "(v+1, Y_c) = (v, Y_(c+1)) in " + u.name() + "Y for c in [0, " +
                          std::to_string(m - 2) + "]";
    r.claim.params = base_params(c.cs());
    for (std::int64_t v = u.lo; v < u.hi && r.ok(); ++v) {
      const std::uint32_t hi = c.idx(u.family, u.row, v + 1);
      const std::uint32_t lo = c.idx(u.family, u.row, v);
      for (std::int64_t col = 0; col + 1 < m && r.ok(); ++col) {
        equal_slices(c, c.slice(hi, c.cs().progression(Family::Y, col)),
                     c.slice(lo, c.cs().progression(Family::Y, col + 1)), r);
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<ClaimReport> diagonals_x(Checker& c) {
  std::vector<ClaimReport> out;
  const std::int64_t m = c.m();
  const Progression x0 = c.cs().progression(Family::X, 0);
  const Progression x1 = c.cs().progression(Family::X, 1);
  const Progression xl = c.cs().progression(Family::X, m - 1);
  for (const auto& u : c.cs().progressions()) {
    if (m > 2) {
      ClaimReport r;
      r.claim.kind = ClaimKind::DiagonalEquality;
      r.claim.source = u.name() + "X diagonals";
      r.claim.description = "(v+1, X_c) = (v, X_(c+1)) in " + u.name() + "X for c in [1, " +
                            std::to_string(m - 2) + "]";
      r.claim.params = base_params(c.cs());
      for (std::int64_t v = u.lo; v < u.hi && r.ok(); ++v) {
        const std::uint32_t hi = c.idx(u.family, u.row, v + 1);
        const std::uint32_t lo = c.idx(u.family, u.row, v);
        for (std::int64_t col = 1; col + 1 < m && r.ok(); ++col) {
          equal_slices(c, c.slice(hi, c.cs().progression(Family::X, col)),
                       c.slice(lo, c.cs().progression(Family::X, col + 1)), r);
        }
      }
      out.push_back(std::move(r));
    }

    ClaimReport up;
    up.claim.kind = ClaimKind::X0Containment;
    up.claim.source = u.name() + "X containments";
    up.claim.description = "(v+1, X_0) in (v, X_1) for v in [" + std::to_string(u.lo) + ", " +
                           std::to_string(u.hi - 1) + "]";
    up.claim.params = base_params(c.cs());
    ClaimReport down = up;
    down.claim.description = "(v, X_0) in (v+1, X_" + std::to_string(m - 1) + ") for v in [" +
                             std::to_string(u.lo) + ", " + std::to_string(u.hi - 1) + "]";
    for (std::int64_t v = u.lo; v < u.hi; ++v) {
      const std::uint32_t hi = c.idx(u.family, u.row, v + 1);
      const std::uint32_t lo = c.idx(u.family, u.row, v);
      if (up.ok()) contained_slice(c, c.slice(hi, x0), c.slice(lo, x1), up);
      if (down.ok()) contained_slice(c, c.slice(lo, x0), c.slice(hi, xl), down);
    }
    out.push_back(std::move(up));
    out.push_back(std::move(down));
  }
  return out;
}

std::vector<ClaimReport> diagonals_z(Checker& c) {
  std::vector<ClaimReport> out;
  const Progression z = c.cs().progression(Family::Z, 0);
  for (const auto& u : c.cs().progressions()) {
    ClaimReport r;
    r.claim.kind = ClaimKind::DiagonalEquality;
    r.claim.source = u.name() + "Z_0 diagonals";
    r.claim.description = "(v+1, w) = (v, w+1) in " + u.name() + "Z_0";
    r.claim.params = base_params(c.cs());
    std::vector<std::uint32_t> zi;
    for (std::int64_t w = z.lo; w <= z.hi; ++w) zi.push_back(c.idx(Family::Z, 0, w));
    for (std::int64_t v = u.lo; v < u.hi && r.ok(); ++v) {
      const std::uint32_t hi = c.idx(u.family, u.row, v + 1);
      const std::uint32_t lo = c.idx(u.family, u.row, v);
      for (std::size_t w = 0; w + 1 < zi.size(); ++w) {
        const NormalForm z1 = c.group().mul(c.cs().set()[hi], c.cs().set()[zi[w]]);
        const NormalForm z2 = c.group().mul(c.cs().set()[lo], c.cs().set()[zi[w + 1]]);
        if (z1 != z2) {
          r = fail(std::move(r), c.elem_text({{hi, zi[w]}, z1}), c.elem_text({{lo, zi[w + 1]}, z2}),
                   "diagonal entries differ");
          break;
        }
        r.covered.push_back({hi, zi[w]});
        r.covered.push_back({lo, zi[w + 1]});
        ++r.count;
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

const char* to_string(ClaimKind kind) {
  switch (kind) {
    case ClaimKind::DiagonalEquality: return "diagonal_equality";
    case ClaimKind::X0Containment: return "x0_containment";
    case ClaimKind::ZEndpoint: return "z_endpoint";
    case ClaimKind::ChartRow: return "chart_row";
  }
  return "?";
}

const char* to_string(ClaimStatus status) {
  switch (status) {
    case ClaimStatus::Pass: return "pass";
    case ClaimStatus::Fail: return "fail";
    case ClaimStatus::TypoSuspect: return "typo_suspect";
  }
  return "?";
}

std::string JRange::to_string() const {
  return "[" + std::to_string(lo) + ", " + std::to_string(hi) + "]";
}

std::vector<ClaimReport> check_diagonals(DiagonalKind kind, const ConstructedSet& cs) {
  Checker c(cs);
  switch (kind) {
    case DiagonalKind::Y: return diagonals_y(c);
    case DiagonalKind::X: return diagonals_x(c);
    case DiagonalKind::Z: return diagonals_z(c);
  }
  return {};
}

std::vector<ClaimReport> check_z_endpoints(const ConstructedSet& cs) {
  Checker c(cs);
  const Group& g = c.group();
  const std::int64_t m = c.m();
  const Progression z = cs.progression(Family::Z, 0);
  const std::int64_t r = z.hi;
  const std::uint32_t z_lo = c.idx(Family::Z, 0, -r);
  const std::uint32_t z_hi = c.idx(Family::Z, 0, r);
  std::vector<ClaimReport> out;

  auto make = [&](std::string source, std::string description) {
    ClaimReport rep;
    rep.claim.kind = ClaimKind::ZEndpoint;
    rep.claim.source = std::move(source);
    rep.claim.description = std::move(description);
    rep.claim.params = base_params(cs);
    return rep;
  };
  // Single element e must have a second factorization in `map`.
  auto single = [&](ClaimReport& rep, const SliceElem& e, const ProductMap& map) {
    Factorization other{};
    if (!Checker::has_other(map, e.z, e.pair, &other)) {
      rep = fail(std::move(rep), c.elem_text(e), g.to_string(e.z),
                 "no second factorization in the target product set");
      return;
    }
    rep.covered.push_back(e.pair);
    rep.covered.push_back(other);
    ++rep.count;
  };

  for (const auto& u : cs.progressions()) {
    if (u.family == Family::Z) continue;
    ClaimReport rep = make(u.name() + "Z_0 endpoints",
                           "u_s b^-R and u_e b^R lie in Z_0 " + u.name() + ", R = " +
                               std::to_string(r));
    const ProductMap& map = c.product(Family::Z, 0, u.family, u.row);
    const std::uint32_t us = c.idx(u.family, u.row, u.lo);
    const std::uint32_t ue = c.idx(u.family, u.row, u.hi);
    single(rep, {{us, z_lo}, g.mul(cs.set()[us], cs.set()[z_lo])}, map);
    if (rep.ok()) single(rep, {{ue, z_hi}, g.mul(cs.set()[ue], cs.set()[z_hi])}, map);
    out.push_back(std::move(rep));
  }

  {
    const Progression y0 = cs.progression(Family::Y, 0);
    const Progression xl = cs.progression(Family::X, m - 1);
    ClaimReport rep = make("Z_0Z_0 endpoints", "b^-2R in y_(0," + std::to_string(y0.hi) +
                                                   ") X_" + std::to_string(m - 1) +
                                                   " and b^2R in x_(" + std::to_string(m - 1) +
                                                   "," + std::to_string(xl.lo) + ") Y_0");
    auto in_slice = [&](const SliceElem& e, const std::vector<SliceElem>& s) {
      for (const auto& t : s) {
        if (t.z == e.z && t.pair != e.pair) {
          rep.covered.push_back(e.pair);
          rep.covered.push_back(t.pair);
          ++rep.count;
          return;
        }
      }
      rep = fail(std::move(rep), c.elem_text(e), g.to_string(e.z), "not found in the slice");
    };
    in_slice({{z_lo, z_lo}, g.mul(cs.set()[z_lo], cs.set()[z_lo])},
             c.slice(c.idx(Family::Y, 0, y0.hi), xl));
    if (rep.ok()) {
      in_slice({{z_hi, z_hi}, g.mul(cs.set()[z_hi], cs.set()[z_hi])},
               c.slice(c.idx(Family::X, m - 1, xl.lo), y0));
    }
    out.push_back(std::move(rep));
  }

  // Leftover slices of Z_0 W: the first and last rows of the Z_0 Y and
  // Z_0 X tables not reached by the diagonals.
  struct Extension {
    std::uint32_t left;
    std::string left_name;
    Family wf;
    std::int64_t wrow;
    std::int64_t lo, hi;
  };
  const Progression x0 = cs.progression(Family::X, 0);
  const Progression x1 = cs.progression(Family::X, 1);
  const Progression ym = cs.progression(Family::Y, m - 1);
  const Progression y0 = cs.progression(Family::Y, 0);
  const Progression xm = cs.progression(Family::X, m - 1);
  const std::vector<Extension> extensions{
      {z_lo, "z_-R", Family::Y, 0, y0.lo, y0.hi},
      {z_hi, "z_R", Family::Y, m - 1, ym.lo, ym.hi},
      {z_lo, "z_-R", Family::X, 1, x0.hi + 1, x1.hi},
      {z_hi, "z_R", Family::X, m - 1, xm.lo, xm.hi},
  };
  for (const auto& ext : extensions) {
    const std::string w = std::string(1, family_letter(ext.wf)) + "_" + std::to_string(ext.wrow);
    ClaimReport rep = make("Z_0" + w + " extension",
                           ext.left_name + " " + w + " (j in [" + std::to_string(ext.lo) + ", " +
                               std::to_string(ext.hi) + "]) in " + w + " Z_0");
    const ProductMap& map = c.product(ext.wf, ext.wrow, Family::Z, 0);
    for (const auto& e : c.slice(ext.left, ext.wf, ext.wrow, ext.lo, ext.hi)) {
      single(rep, e, map);
      if (!rep.ok()) break;
    }
    out.push_back(std::move(rep));
  }
  return out;
}

namespace {

enum class IndexSet { Zero, Odd, Even, Last, Any };
enum class RightSlice { X1Shortened, XLast, Y0, YLast };

struct Ctx {
  std::int64_t m, p, q, n;  // n is the row index of the left element
};

using IntFn = std::function<std::int64_t(const Ctx&)>;
using RangeFn = std::function<JRange(const Ctx&)>;
using WordFn = std::function<GeneratorWord(const Ctx&)>;

struct ChartRow {
  int number;
  Family left_family;
  IndexSet index;
  IntFn left_j;
  RightSlice right;
  WordFn prefix;  // F(j) = prefix b^j
  Family t1;
  IntFn t1_row;
  Family t2;
  IntFn t2_row;
  RangeFn printed;
  RangeFn pattern;  // empty when the printed range has no alternative reading
};

const char* index_name(IndexSet s) {
  switch (s) {
    case IndexSet::Zero: return "0";
    case IndexSet::Odd: return "l";
    case IndexSet::Even: return "m";
    case IndexSet::Last: return "2^k-1";
    case IndexSet::Any: return "n";
  }
  return "?";
}

std::vector<std::int64_t> indices(IndexSet s, std::int64_t m) {
  std::vector<std::int64_t> out;
  switch (s) {
    case IndexSet::Zero: out.push_back(0); break;
    case IndexSet::Odd:
      for (std::int64_t l = 1; l <= m - 3; l += 2) out.push_back(l);
      break;
    case IndexSet::Even:
      for (std::int64_t e = 2; e <= m - 2; e += 2) out.push_back(e);
      break;
    case IndexSet::Last: out.push_back(m - 1); break;
    case IndexSet::Any:
      for (std::int64_t n = 0; n < m; ++n) out.push_back(n);
      break;
  }
  return out;
}

IntFn konst(std::int64_t v) {
  return [v](const Ctx&) { return v; };
}
IntFn at_n(std::int64_t d) {
  return [d](const Ctx& c) { return c.n + d; };
}
IntFn at_last(std::int64_t d) {
  return [d](const Ctx& c) { return c.m - 1 + d; };
}

// prefix b^n (a^e1 b a^e2 | a^e) with exponents in units of p.
WordFn form_bab(bool lead_b, int e1, int bexp, int e2) {
  return [=](const Ctx& c) {
    WordBuilder w;
    if (lead_b) w.b(c.n);
    w.a(e1 * c.p).b(bexp).a(e2 * c.p);
    return w.w;
  };
}
WordFn form_a(int e) {
  return [=](const Ctx& c) { return WordBuilder{}.a(e * c.p).w; };
}
WordFn form_id() {
  return [](const Ctx&) { return GeneratorWord{}; };
}

// Left-element positions.
std::int64_t x_start(const Ctx& c) { return -c.q + 1; }
std::int64_t x0_end(const Ctx& c) { return (c.m + 1) * c.q - c.m; }
std::int64_t full_end(const Ctx& c) { return (c.m + 1) * c.q; }
std::int64_t y_start(const Ctx& c) { return -c.q + 2; }

// Shorthands for the chart ranges in terms of S = Mq + 2q.
std::int64_t S(const Ctx& c) { return c.m * c.q + 2 * c.q; }

std::vector<ChartRow> plain_chart() {
  using F = Family;
  using R = RightSlice;
  using I = IndexSet;
  auto rng = [](std::function<std::int64_t(const Ctx&)> lo, std::function<std::int64_t(const Ctx&)> hi) {
    return RangeFn([=](const Ctx& c) { return JRange{lo(c), hi(c)}; });
  };
  auto two = [](const Ctx&) { return std::int64_t{2}; };
  auto mp1 = [](const Ctx& c) { return c.m + 1; };
  auto one = [](const Ctx&) { return std::int64_t{1}; };
  auto zero = [](const Ctx&) { return std::int64_t{0}; };
  auto lo_nm2 = [](const Ctx& c) { return c.n - 2 * c.m; };
  auto hi_n1m = [](const Ctx& c) { return c.n + 1 - c.m; };
  auto lo_n1m2 = [](const Ctx& c) { return c.n + 1 - 2 * c.m; };
  const IntFn j0 = konst(0), j1 = konst(1);
  const IntFn jend = [](const Ctx& c) { return c.m + 1; };

  return {
      {1, F::X, I::Zero, j0, R::X1Shortened, form_bab(false, 1, 1, 1), F::Y, konst(0), F::Y, konst(0), rng(two, mp1), {}},
      {2, F::X, I::Zero, j1, R::XLast, form_a(-2), F::Y, at_last(0), F::Y, at_last(0),
       rng([](const Ctx& c) { return -c.m; }, one), {}},
      {3, F::X, I::Odd, j0, R::X1Shortened, form_bab(true, 1, 1, 1), F::Y, at_n(0), F::Y, konst(0), rng(two, mp1), {}},
      {4, F::X, I::Odd, jend, R::XLast, form_a(2), F::Y, at_n(-1), F::Y, at_last(0),
       rng([](const Ctx& c) { return c.n - 2 * c.m; }, [](const Ctx& c) { return c.n + 1 - c.m; }), {}},
      {5, F::X, I::Even, j0, R::X1Shortened, form_bab(true, 1, 1, 1), F::Y, at_n(0), F::Y, konst(0), rng(two, mp1), {}},
      {6, F::X, I::Even, jend, R::XLast, form_a(-2), F::Y, at_n(-1), F::Y, at_last(0), rng(lo_nm2, hi_n1m), {}},
      {7, F::X, I::Last, j0, R::X1Shortened, form_bab(true, 1, 1, 1), F::Y, at_last(0), F::Y, konst(0), rng(two, mp1), {}},
      {8, F::X, I::Last, jend, R::XLast, form_a(2), F::Y, at_last(-1), F::Y, at_last(0),
       rng([](const Ctx& c) { return -1 - c.m; }, zero), {}},
      {9, F::Y, I::Any, j1, R::X1Shortened, form_bab(true, -1, 2, 1), F::X, at_n(0), F::Y, konst(1), rng(two, mp1), {}},
      {10, F::Y, I::Any, jend, R::XLast, form_id(), F::Z, konst(0), F::Z, konst(0), rng(lo_nm2, hi_n1m), {}},
      {11, F::Y, I::Zero, j1, R::Y0, form_bab(false, 1, 1, 1), F::X, konst(0), F::X, konst(1), rng(one, mp1), {}},
      {12, F::Y, I::Zero, jend, R::YLast, form_a(2), F::X, konst(1), F::X, at_last(0),
       rng([](const Ctx& c) { return 1 - 2 * c.m; }, [](const Ctx& c) { return 1 - c.m; }), {}},
      {13, F::Y, I::Odd, j1, R::Y0, form_bab(true, 1, 1, 1), F::X, at_n(0), F::X, konst(1), rng(one, mp1), {}},
      {14, F::Y, I::Odd, jend, R::YLast, form_a(-2), F::X, at_n(1), F::X, at_last(0), rng(lo_n1m2, hi_n1m), {}},
      {15, F::Y, I::Even, j1, R::Y0, form_bab(true, 1, 1, 1), F::X, at_n(0), F::X, konst(1), rng(one, mp1), {}},
      {16, F::Y, I::Even, jend, R::YLast, form_a(2), F::X, at_n(1), F::X, at_last(0), rng(lo_n1m2, hi_n1m), {}},
      {17, F::Y, I::Last, j1, R::Y0, form_bab(true, 1, 1, 1), F::X, at_last(0), F::X, konst(1), rng(one, mp1), {}},
      {18, F::Y, I::Last, jend, R::YLast, form_a(-2), F::X, konst(0), F::X, at_last(0),
       rng([](const Ctx& c) { return -c.m; }, zero), {}},
      {19, F::X, I::Any, j0, R::Y0, form_id(), F::Z, konst(0), F::Z, konst(0),
       rng([](const Ctx& c) { return c.n + 1; }, [](const Ctx& c) { return c.n + 1 + c.m; }), {}},
      {20, F::X, I::Zero, j1, R::YLast, form_id(), F::Z, konst(0), F::Z, konst(0),
       rng([](const Ctx& c) { return 1 - c.m; }, one), {}},
      {21, F::X, I::Any, jend, R::YLast, form_id(), F::Z, konst(0), F::Z, konst(0), rng(lo_n1m2, hi_n1m), {}},
  };
}

std::vector<ChartRow> pq_chart() {
  using F = Family;
  using R = RightSlice;
  using I = IndexSet;
  auto rng = [](std::function<std::int64_t(const Ctx&)> lo, std::function<std::int64_t(const Ctx&)> hi) {
    return RangeFn([=](const Ctx& c) { return JRange{lo(c), hi(c)}; });
  };
  const IntFn xs = x_start, x0e = x0_end, fe = full_end, ys = y_start;
  auto top_lo = [](const Ctx& c) { return S(c) - c.m; };
  auto top_hi = [](const Ctx& c) { return S(c) - 1; };
  auto one = [](const Ctx&) { return std::int64_t{1}; };
  auto zero = [](const Ctx&) { return std::int64_t{0}; };
  auto lo_n2 = [](const Ctx& c) { return c.n + 2 - S(c) - c.m; };
  auto lo_n3 = [](const Ctx& c) { return c.n + 3 - S(c) - c.m; };
  auto hi_n1m = [](const Ctx& c) { return c.n + 1 - c.m; };
  const RangeFn top = rng(top_lo, top_hi);
  const RangeFn low = rng(one, top_hi);

  return {
      {1, F::X, I::Zero, xs, R::X1Shortened, form_bab(false, 1, 1, 1), F::Y, konst(0), F::Y, konst(0), top, {}},
      {2, F::X, I::Zero, x0e, R::XLast, form_a(-2), F::Y, at_last(0), F::Y, at_last(0),
       rng([](const Ctx& c) { return 2 - S(c); }, one), {}},
      {3, F::X, I::Odd, xs, R::X1Shortened, form_bab(true, 1, 1, 1), F::Y, at_n(0), F::Y, konst(0), top, {}},
      {4, F::X, I::Odd, fe, R::XLast, form_a(2), F::Y, at_n(-1), F::Y, at_last(0), rng(lo_n2, hi_n1m), {}},
      {5, F::X, I::Even, xs, R::X1Shortened, form_bab(true, -1, 1, -1), F::Y, at_n(0), F::Y, konst(0),
       rng(top_lo, [](const Ctx& c) { return add_sat(c.m, 2 * c.q - 1); }), top},
      {6, F::X, I::Even, fe, R::XLast, form_a(-2), F::Y, at_n(-1), F::Y, at_last(0), rng(lo_n2, hi_n1m), {}},
      {7, F::X, I::Last, xs, R::X1Shortened, form_bab(true, 1, 1, 1), F::Y, at_last(0), F::Y, konst(0), top, {}},
      {8, F::X, I::Last, fe, R::XLast, form_a(2), F::Y, at_last(-1), F::Y, at_last(0),
       rng([](const Ctx& c) { return 1 - S(c); }, zero), {}},
      {9, F::Y, I::Any, ys, R::X1Shortened, form_bab(true, 1, 2, -1), F::X, at_n(0), F::Y, konst(1), top, {}},
      {10, F::Y, I::Any, fe, R::XLast, form_id(), F::Z, konst(0), F::Z, konst(0), rng(lo_n2, hi_n1m), {}},
      {11, F::Y, I::Zero, ys, R::Y0, form_bab(false, 1, 1, 1), F::X, konst(0), F::X, konst(1), low, {}},
      {12, F::Y, I::Zero, fe, R::YLast, form_a(2), F::X, konst(1), F::X, at_last(0),
       rng([](const Ctx& c) { return 3 - S(c) - c.m; }, [](const Ctx& c) { return 1 - c.m; }), {}},
      {13, F::Y, I::Odd, ys, R::Y0, form_bab(true, 1, 1, 1), F::X, at_n(0), F::X, konst(1), low, {}},
      {14, F::Y, I::Odd, fe, R::YLast, form_a(-2), F::X, at_n(1), F::X, at_last(0), rng(lo_n3, hi_n1m), {}},
      {15, F::Y, I::Even, ys, R::Y0, form_bab(true, 1, 1, 1), F::X, at_n(0), F::X, konst(1), low, {}},
      {16, F::Y, I::Even, fe, R::YLast, form_a(2), F::X, at_n(1), F::X, at_last(0), rng(lo_n3, hi_n1m), {}},
      {17, F::Y, I::Last, ys, R::Y0, form_bab(true, 1, 1, 1), F::X, at_last(0), F::X, konst(1),
       rng(one, [](const Ctx& c) { return add_sat(pow2_sat(c.q), 2 * c.q - 1); }), low},
      {18, F::Y, I::Last, fe, R::YLast, form_a(-2), F::X, konst(0), F::X, at_last(0),
       rng([](const Ctx& c) { return 2 - S(c); }, zero), {}},
      {19, F::X, I::Any, xs, R::Y0, form_id(), F::Z, konst(0), F::Z, konst(0),
       rng([](const Ctx& c) { return c.n + 1; }, [](const Ctx& c) { return c.n + S(c) - 1; }), {}},
      {20, F::X, I::Zero, x0e, R::YLast, form_id(), F::Z, konst(0), F::Z, konst(0),
       rng([](const Ctx& c) { return 3 - S(c); }, one), {}},
      {21, F::X, I::Any, fe, R::YLast, form_id(), F::Z, konst(0), F::Z, konst(0), rng(lo_n3, hi_n1m), {}},
  };
}

struct RightRange {
  Family family;
  std::int64_t row;
  std::int64_t lo, hi;
};

RightRange right_range(const ConstructedSet& cs, RightSlice r) {
  const std::int64_t m = cs.modulus();
  switch (r) {
    case RightSlice::X1Shortened: {
      const Progression x0 = cs.progression(Family::X, 0);
      const Progression x1 = cs.progression(Family::X, 1);
      return {Family::X, 1, x0.hi + 1, x1.hi};
    }
    case RightSlice::XLast: {
      const Progression p = cs.progression(Family::X, m - 1);
      return {Family::X, m - 1, p.lo, p.hi};
    }
    case RightSlice::Y0: {
      const Progression p = cs.progression(Family::Y, 0);
      return {Family::Y, 0, p.lo, p.hi};
    }
    case RightSlice::YLast: {
      const Progression p = cs.progression(Family::Y, m - 1);
      return {Family::Y, m - 1, p.lo, p.hi};
    }
  }
  throw std::logic_error("unknown right slice");
}

std::string prog_name(Family f, std::int64_t row) {
  return std::string(1, family_letter(f)) + "_" + std::to_string(row);
}

}  // namespace

std::vector<ClaimReport> check_chart(const ConstructedSet& cs) {
  Checker c(cs);
  const Group& g = c.group();
  const bool pq = cs.spec().parametrized();
  const std::vector<ChartRow> rows = pq ? pq_chart() : plain_chart();
  const std::string table = pq ? "chart T(p,q)" : "chart T";
  std::vector<ClaimReport> out;

  for (const auto& row : rows) {
    for (std::int64_t n : indices(row.index, c.m())) {
      const Ctx ctx{c.m(), cs.spec().p_or_one(), cs.spec().q_or_one(), n};
      const std::int64_t lj = row.left_j(ctx);
      auto left = cs.index_of(row.left_family, n, lj);
      if (!left) continue;  // the chart only speaks about elements of the set

      const RightRange rr = right_range(cs, row.right);
      const GeneratorWord prefix = row.prefix(ctx);
      const Family t1 = row.t1, t2 = row.t2;
      const std::int64_t r1 = row.t1_row(ctx), r2 = row.t2_row(ctx);

      ClaimReport rep;
      rep.claim.kind = ClaimKind::ChartRow;
      rep.claim.source = table + " row " + std::to_string(row.number);
      rep.claim.params = base_params(cs);
      rep.claim.params.emplace_back("row", row.number);
      rep.claim.params.emplace_back(index_name(row.index), n);
      rep.claim.expected = row.printed(ctx);
      {
        std::ostringstream d;
        d << static_cast<char>(family_letter(row.left_family) - 'A' + 'a') << "_(" << n << ','
          << lj << ") " << prog_name(rr.family, rr.row) << " j in [" << rr.lo << ", " << rr.hi
          << "] = " << word_text(prefix) << " b^j, j in " << rep.claim.expected->to_string()
          << ", in " << prog_name(t1, r1) << ' ' << prog_name(t2, r2);
        rep.claim.description = d.str();
      }

      const bool rows_ok = (t1 == Family::Z ? r1 == 0 : r1 >= 0 && r1 < c.m()) &&
                           (t2 == Family::Z ? r2 == 0 : r2 >= 0 && r2 < c.m());
      if (!rows_ok) {
        out.push_back(fail(std::move(rep), "", "", "target product set does not exist"));
        continue;
      }
      const ProductMap& target = c.product(t1, r1, t2, r2);
      const NormalForm pinv = g.inv(g.from_word(prefix));

      std::vector<std::int64_t> js;
      for (const auto& e : c.slice(static_cast<std::uint32_t>(*left), rr.family, rr.row, rr.lo, rr.hi)) {
        const NormalForm d = g.mul(pinv, e.z);
        if (d.u != 0 || d.alpha != 0 || !d.syllables.empty()) {
          rep = fail(std::move(rep), c.elem_text(e), word_text(prefix) + " * " + g.to_string(d),
                     "element does not have the rewritten form");
          break;
        }
        Factorization other{};
        if (!Checker::has_other(target, e.z, e.pair, &other)) {
          rep = fail(std::move(rep), c.elem_text(e), word_text(prefix) + " b^" + std::to_string(d.v * c.m() + d.beta),
                     "not in " + prog_name(t1, r1) + " " + prog_name(t2, r2) +
                         " with another factorization");
          break;
        }
        js.push_back(d.v * c.m() + d.beta);
        rep.covered.push_back(e.pair);
        rep.covered.push_back(other);
        ++rep.count;
      }
      if (!rep.ok()) {
        out.push_back(std::move(rep));
        continue;
      }

      std::sort(js.begin(), js.end());
      bool contiguous = !js.empty();
      for (std::size_t i = 1; i < js.size(); ++i) contiguous = contiguous && js[i] == js[i - 1] + 1;
      if (!contiguous) {
        out.push_back(fail(std::move(rep), "", "", "rewritten exponents do not form an interval"));
        continue;
      }
      rep.observed = JRange{js.front(), js.back()};
      if (*rep.observed == *rep.claim.expected) {
        out.push_back(std::move(rep));
        continue;
      }
      const std::string mismatch = "printed range " + rep.claim.expected->to_string() +
                                   " but the slice gives " + rep.observed->to_string();
      if (row.pattern) {
        rep.pattern = row.pattern(ctx);
        if (*rep.pattern == *rep.observed) {
          rep.status = ClaimStatus::TypoSuspect;
          rep.witness = Witness{"", word_text(prefix) + " b^j",
                                mismatch + "; the range " + rep.pattern->to_string() +
                                    " following the neighbouring rows matches"};
          out.push_back(std::move(rep));
          continue;
        }
      }
      out.push_back(fail(std::move(rep), "", word_text(prefix) + " b^j", mismatch));
    }
  }
  return out;
}

std::vector<ClaimReport> check_all_claims(const ConstructedSet& cs) {
  std::vector<ClaimReport> out;
  auto append = [&](std::vector<ClaimReport> v) {
    for (auto& r : v) out.push_back(std::move(r));
  };
  append(check_diagonals(DiagonalKind::Y, cs));
  append(check_diagonals(DiagonalKind::X, cs));
  append(check_diagonals(DiagonalKind::Z, cs));
  append(check_z_endpoints(cs));
  append(check_chart(cs));
  return out;
}

Coverage claim_coverage(const ConstructedSet& cs, const std::vector<ClaimReport>& claims,
                        const FactorizationTable& square) {
  const std::size_t n = cs.size();
  std::vector<bool> seen(n * n, false);
  Coverage cov;
  cov.pairs_total = n * n;
  for (const auto& r : claims) {
    if (!r.ok()) continue;
    for (const auto& f : r.covered) {
      const std::size_t key = static_cast<std::size_t>(f.left) * n + f.right;
      if (!seen[key]) {
        seen[key] = true;
        ++cov.pairs_covered;
      }
    }
  }
  cov.entries_total = square.size();
  for (const auto& e : square.entries()) {
    bool any = false;
    for (const auto& f : e.pairs) {
      if (seen[static_cast<std::size_t>(f.left) * n + f.right]) {
        any = true;
        if (e.pairs.size() < 2) ++cov.unsound_pairs;
      }
    }
    cov.entries_covered += any;
  }
  return cov;
}

bool TheoremSummary::consistent() const noexcept {
  if (claims_failed == 0 && coverage.complete()) return uniques.empty();
  return true;
}

TheoremSummary verify_theorem(const TFamilySpec& spec, unsigned threads) {
  const ConstructedSet cs = build(spec);
  const FactorizationTable square = product_table(cs.set(), cs.set(), threads);

  TheoremSummary s;
  s.spec = spec;
  s.set_size = cs.size();
  s.formula_size = cardinality_formula(spec);
  s.duplicates = cs.duplicates();
  s.product_size = square.size();
  s.pairs = square.total_pairs();
  s.uniques = unique_products(square);
  s.claims = check_all_claims(cs);
  for (const auto& r : s.claims) {
    switch (r.status) {
      case ClaimStatus::Pass: ++s.claims_passed; break;
      case ClaimStatus::Fail: ++s.claims_failed; break;
      case ClaimStatus::TypoSuspect: ++s.claims_typo_suspect; break;
    }
  }
  s.coverage = claim_coverage(cs, s.claims, square);
  return s;
}

}  // namespace nup
