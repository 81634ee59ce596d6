#include "nup/word.hpp"

#include <cctype>
#include <limits>
#include <sstream>

namespace nup {

namespace {

std::int64_t checked_add(std::int64_t x, std::int64_t y) {
  std::int64_t out;
  if (__builtin_add_overflow(x, y, &out)) {
    throw std::overflow_error("normal form exponent overflow");
  }
  return out;
}

std::int64_t checked_mul(std::int64_t x, std::int64_t y) {
  std::int64_t out;
  if (__builtin_mul_overflow(x, y, &out)) {
    throw std::overflow_error("normal form exponent overflow");
  }
  return out;
}

std::int64_t checked_neg(std::int64_t x) {
  if (x == std::numeric_limits<std::int64_t>::min()) {
    throw std::overflow_error("normal form exponent overflow");
  }
  return -x;
}

std::int64_t floor_div(std::int64_t x, std::int64_t m) {
  std::int64_t q = x / m;
  if ((x % m != 0) && ((x < 0) != (m < 0))) --q;
  return q;
}

std::int64_t floor_mod(std::int64_t x, std::int64_t m) {
  std::int64_t r = x % m;
  return r < 0 ? r + m : r;
}

bool b_exponent_odd(const NormalForm& w) {
  std::int64_t parity = w.beta & 1;
  for (auto s : w.syllables) parity ^= (s & 1);
  return parity != 0;
}

bool a_count_odd(const NormalForm& w) {
  return ((w.alpha + w.syllables.size()) & 1u) != 0;
}

// The coset part ends in the letter a exactly when there is no trailing b
// power and at least one a is present.
bool ends_with_a(const NormalForm& w) {
  return w.beta == 0 && (w.alpha == 1 || !w.syllables.empty());
}

enum class Factor { K1, K2 };

struct Syllable {
  Factor factor;
  std::int64_t b_exponent;  // meaningful for K2 only
};

std::vector<Syllable> syllables_of(const NormalForm& w) {
  std::vector<Syllable> out;
  if (w.alpha) out.push_back({Factor::K1, 0});
  for (auto s : w.syllables) {
    out.push_back({Factor::K2, s});
    out.push_back({Factor::K1, 0});
  }
  if (w.beta != 0) out.push_back({Factor::K2, w.beta});
  return out;
}

}  // namespace

ParseError::ParseError(std::size_t position, const std::string& message)
    : std::invalid_argument("parse error at position " + std::to_string(position) +
                            ": " + message),
      position_(position) {}

GroupParams::GroupParams(int k) : k_(k), modulus_(0) {
  if (k < 1) throw ParameterError("k must be at least 1 (got " + std::to_string(k) + ")");
  if (k > kMaxK) {
    throw ParameterError("k must be at most " + std::to_string(kMaxK) + " (got " +
                         std::to_string(k) + ")");
  }
  modulus_ = std::int64_t{1} << k;
}

std::size_t GeneratorWord::letter_count() const {
  std::size_t n = 0;
  for (const auto& t : tokens) {
    n += static_cast<std::size_t>(t.exponent < 0 ? -t.exponent : t.exponent);
  }
  return n;
}

GeneratorWord concat(const GeneratorWord& lhs, const GeneratorWord& rhs) {
  GeneratorWord out = lhs;
  out.tokens.insert(out.tokens.end(), rhs.tokens.begin(), rhs.tokens.end());
  return out;
}

GeneratorWord parse_word(std::string_view text) {
  GeneratorWord word;
  std::size_t pos = 0;
  const std::size_t n = text.size();
  auto skip_ws = [&] {
    while (pos < n && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };

  skip_ws();
  if (pos == n) throw ParseError(pos, "empty word (use \"1\" for the identity)");
  if (text[pos] == '1') {
    ++pos;
    skip_ws();
    if (pos != n) throw ParseError(pos, "unexpected input after identity \"1\"");
    return word;
  }

  while (pos < n) {
    const char c = text[pos];
    Token tok{};
    std::int64_t sign = 1;
    switch (c) {
      case 'a': tok.gen = Generator::A; break;
      case 'b': tok.gen = Generator::B; break;
      case 'A': tok.gen = Generator::A; sign = -1; break;
      case 'B': tok.gen = Generator::B; sign = -1; break;
      default:
        throw ParseError(pos, std::string("expected generator a, b, A or B, found '") + c + "'");
    }
    ++pos;
    std::int64_t exponent = 1;
    if (pos < n && text[pos] == '^') {
      ++pos;
      const std::size_t exp_start = pos;
      bool negative = false;
      if (pos < n && text[pos] == '-') {
        negative = true;
        ++pos;
      }
      if (pos == n || !std::isdigit(static_cast<unsigned char>(text[pos]))) {
        throw ParseError(pos, "expected digits after '^'");
      }
      std::int64_t value = 0;
      while (pos < n && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        const int digit = text[pos] - '0';
        if (__builtin_mul_overflow(value, 10, &value) ||
            __builtin_add_overflow(value, digit, &value)) {
          throw ParseError(exp_start, "exponent out of range");
        }
        ++pos;
      }
      if (value == 0) throw ParseError(exp_start, "zero exponent is not allowed");
      exponent = negative ? -value : value;
    }
    tok.exponent = sign * exponent;
    word.tokens.push_back(tok);
    skip_ws();
  }
  return word;
}

std::strong_ordering operator<=>(const NormalForm& lhs, const NormalForm& rhs) {
  if (auto c = lhs.u <=> rhs.u; c != 0) return c;
  if (auto c = lhs.v <=> rhs.v; c != 0) return c;
  if (auto c = lhs.alpha <=> rhs.alpha; c != 0) return c;
  if (auto c = lhs.syllables.size() <=> rhs.syllables.size(); c != 0) return c;
  for (std::size_t i = 0; i < lhs.syllables.size(); ++i) {
    if (auto c = lhs.syllables[i] <=> rhs.syllables[i]; c != 0) return c;
  }
  return lhs.beta <=> rhs.beta;
}

std::size_t NormalFormHash::operator()(const NormalForm& w) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ull;
  auto mix = [&h](std::uint64_t x) {
    h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  };
  mix(static_cast<std::uint64_t>(w.u));
  mix(static_cast<std::uint64_t>(w.v));
  mix(static_cast<std::uint64_t>(w.alpha));
  for (auto s : w.syllables) mix(static_cast<std::uint64_t>(s));
  mix(static_cast<std::uint64_t>(w.beta) ^ (w.syllables.size() << 40));
  return static_cast<std::size_t>(h);
}

const char* to_string(ElementClass c) {
  return c == ElementClass::Elliptic ? "Elliptic" : "Hyperbolic";
}

int sigma_a(const NormalForm& w) { return a_count_odd(w) ? -1 : 1; }

int sigma_b(const NormalForm& w) { return b_exponent_odd(w) ? -1 : 1; }

std::size_t syllable_length(const NormalForm& w) {
  return static_cast<std::size_t>(w.alpha) + 2 * w.syllables.size() + (w.beta != 0 ? 1 : 0);
}

NormalForm Group::generator(Generator g) const {
  return mul_gen(identity(), g, 1);
}

bool Group::is_valid(const NormalForm& w) const noexcept {
  const auto m = modulus();
  if (w.alpha != 0 && w.alpha != 1) return false;
  if (w.beta < 0 || w.beta >= m) return false;
  for (auto s : w.syllables) {
    if (s < 1 || s >= m) return false;
  }
  return true;
}

// w * a^(2t): a^2 commutes with a and with b^(2^k), and b a^2 = a^-2 b, so it
// reaches the front with sign (-1)^(total b-exponent of the coset part).
void Group::right_mul_a_squared(NormalForm& w, std::int64_t t) const {
  if (t == 0) return;
  w.u = checked_add(w.u, b_exponent_odd(w) ? checked_neg(t) : t);
}

// w * b^(2^k t) with the trailing b power already split off.  a b^M = b^-M a.
void Group::right_mul_b_modulus(NormalForm& w, std::int64_t t) const {
  if (t == 0) return;
  w.v = checked_add(w.v, a_count_odd(w) ? checked_neg(t) : t);
}

void Group::right_mul_a(NormalForm& w) const {
  if (ends_with_a(w)) {
    // ... a * a = ... a^2: drop the last a and transport a^2 to the front.
    if (!w.syllables.empty()) {
      w.beta = w.syllables.back();
      w.syllables.pop_back();
    } else {
      w.alpha = 0;
    }
    right_mul_a_squared(w, 1);
  } else if (w.beta != 0) {
    w.syllables.push_back(w.beta);
    w.beta = 0;
  } else {
    w.alpha = 1;
  }
}

void Group::right_mul_a_power(NormalForm& w, std::int64_t e) const {
  const std::int64_t t = floor_div(e, 2);
  right_mul_a_squared(w, t);
  if (e - 2 * t != 0) right_mul_a(w);
}

void Group::right_mul_b_power(NormalForm& w, std::int64_t e) const {
  if (e == 0) return;
  const auto m = modulus();
  const std::int64_t total = checked_add(w.beta, e);
  const std::int64_t q = floor_div(total, m);
  w.beta = total - q * m;
  right_mul_b_modulus(w, q);
}

NormalForm Group::mul_gen(const NormalForm& w, Generator g, int sign) const {
  if (sign != 1 && sign != -1) throw std::invalid_argument("mul_gen: sign must be +1 or -1");
  NormalForm out = w;
  if (g == Generator::A) {
    right_mul_a_power(out, sign);
  } else {
    right_mul_b_power(out, sign);
  }
  return out;
}

NormalForm Group::mul(const NormalForm& lhs, const NormalForm& rhs) const {
  NormalForm out = lhs;
  out.syllables.reserve(lhs.syllables.size() + rhs.syllables.size() + 1);
  right_mul_a_squared(out, rhs.u);
  right_mul_b_modulus(out, rhs.v);
  if (rhs.alpha) right_mul_a(out);
  for (auto s : rhs.syllables) {
    right_mul_b_power(out, s);
    right_mul_a(out);
  }
  right_mul_b_power(out, rhs.beta);
  return out;
}

NormalForm Group::inv(const NormalForm& w) const {
  NormalForm out;
  out.syllables.reserve(w.syllables.size() + 1);
  right_mul_b_power(out, -w.beta);
  for (auto it = w.syllables.rbegin(); it != w.syllables.rend(); ++it) {
    right_mul_a_power(out, -1);
    right_mul_b_power(out, -*it);
  }
  if (w.alpha) right_mul_a_power(out, -1);
  right_mul_b_modulus(out, checked_neg(w.v));
  right_mul_a_squared(out, checked_neg(w.u));
  return out;
}

NormalForm Group::pow(const NormalForm& w, std::int64_t n) const {
  NormalForm base = n < 0 ? inv(w) : w;
  std::uint64_t e = n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
  NormalForm acc;
  while (e != 0) {
    if (e & 1) acc = mul(acc, base);
    e >>= 1;
    if (e != 0) base = mul(base, base);
  }
  return acc;
}

NormalForm Group::conjugate(const NormalForm& w, const NormalForm& by) const {
  return mul(mul(by, w), inv(by));
}

NormalForm Group::from_word(const GeneratorWord& word) const {
  NormalForm out;
  for (const auto& t : word.tokens) {
    if (t.gen == Generator::A) {
      right_mul_a_power(out, t.exponent);
    } else {
      right_mul_b_power(out, t.exponent);
    }
  }
  return out;
}

NormalForm Group::b_power(std::int64_t n) const {
  NormalForm out;
  right_mul_b_power(out, n);
  return out;
}

NormalForm Group::a_power(std::int64_t n) const {
  NormalForm out;
  right_mul_a_power(out, n);
  return out;
}

GeneratorWord Group::to_word(const NormalForm& w) const {
  GeneratorWord word;
  if (w.u != 0) word.tokens.push_back({Generator::A, checked_mul(2, w.u)});
  if (w.v != 0) word.tokens.push_back({Generator::B, checked_mul(modulus(), w.v)});
  if (w.alpha) word.tokens.push_back({Generator::A, 1});
  for (auto s : w.syllables) {
    word.tokens.push_back({Generator::B, s});
    word.tokens.push_back({Generator::A, 1});
  }
  if (w.beta != 0) word.tokens.push_back({Generator::B, w.beta});
  return word;
}

std::string Group::to_string(const NormalForm& w) const {
  const GeneratorWord word = to_word(w);
  if (word.tokens.empty()) return "1";
  std::ostringstream out;
  bool first = true;
  for (const auto& t : word.tokens) {
    if (!first) out << ' ';
    first = false;
    out << (t.gen == Generator::A ? 'a' : 'b');
    if (t.exponent != 1) out << '^' << t.exponent;
  }
  return out.str();
}

Abelianization Group::abelianization(const NormalForm& w) const {
  const auto m = modulus();
  const std::int64_t a_total =
      2 * floor_mod(w.u, 2) + w.alpha + static_cast<std::int64_t>(w.syllables.size() % 4);
  std::int64_t b_total = m * floor_mod(w.v, 2) + w.beta;
  for (auto s : w.syllables) b_total = (b_total + s) % (2 * m);
  return {floor_mod(a_total, 4), floor_mod(b_total, 2 * m)};
}

// Cyclic reduction: while the first and last coset factors lie in the same
// vertex group, conjugate the last one around to the front.  Each step
// shortens the syllable sequence, and the amalgam part is absorbed because
// A is normal in both K1 and K2.
ElementClass Group::classify(const NormalForm& w) const {
  NormalForm cur = w;
  for (;;) {
    const auto syl = syllables_of(cur);
    if (syl.size() <= 1) return ElementClass::Elliptic;
    if (syl.front().factor != syl.back().factor) return ElementClass::Hyperbolic;
    const NormalForm last = syl.back().factor == Factor::K1 ? a_power(1)
                                                            : b_power(syl.back().b_exponent);
    cur = conjugate(cur, last);
  }
}

}  // namespace nup
