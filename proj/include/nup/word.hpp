#pragma once

// Exact arithmetic in P_k = < a, b | a b^(2^k) a^-1 b^(2^k), b a^2 b^-1 a^2 >.
//
// P_k splits as K1 *_A K2 with K1 = <a, x>, K2 = <y, b> Klein bottle groups
// glued along A = <a^2, b^(2^k)> = Z^2.  With transversals {1, a} and
// {1, b, ..., b^(2^k - 1)} every element has exactly one normal form
//
//   a^(2u) b^(2^k v) a^alpha b^beta_1 a b^beta_2 a ... b^beta_l a b^beta
//
// NormalForm stores (u, v, alpha, beta_1..beta_l, beta).  Equality of fields
// is equality in the group.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nup {

class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by the word parser.  position() is the 0-based byte offset of the
/// offending character in the input text.
class ParseError : public std::invalid_argument {
 public:
  ParseError(std::size_t position, const std::string& message);
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// The parameter k of P_k.  The relator exponent M = 2^k is cached.
class GroupParams {
 public:
  static constexpr int kMaxK = 30;

  explicit GroupParams(int k);

  int k() const noexcept { return k_; }
  std::int64_t modulus() const noexcept { return modulus_; }

  friend bool operator==(const GroupParams&, const GroupParams&) = default;

 private:
  int k_;
  std::int64_t modulus_;
};

enum class Generator : std::uint8_t { A, B };

struct Token {
  Generator gen;
  std::int64_t exponent;  // nonzero

  friend bool operator==(const Token&, const Token&) = default;
};

/// A word in the generators.  Adjacent tokens may share a generator.
struct GeneratorWord {
  std::vector<Token> tokens;

  std::size_t letter_count() const;
  friend bool operator==(const GeneratorWord&, const GeneratorWord&) = default;
};

GeneratorWord concat(const GeneratorWord& lhs, const GeneratorWord& rhs);

/// Parses the word grammar:
///   word := "1" | term+ ;  term := gen exp? ;  gen := a | b | A | B
///   exp  := "^" "-"? digits   (zero exponent rejected)
/// A and B denote a^-1 and b^-1.  Whitespace between terms is ignored.
GeneratorWord parse_word(std::string_view text);

struct NormalForm {
  std::int64_t u = 0;
  std::int64_t v = 0;
  int alpha = 0;
  std::vector<std::int64_t> syllables;
  std::int64_t beta = 0;

  bool is_identity() const noexcept {
    return u == 0 && v == 0 && alpha == 0 && beta == 0 && syllables.empty();
  }

  friend bool operator==(const NormalForm&, const NormalForm&) = default;
  // Canonical order: lexicographic on (u, v, alpha, l, beta_1..beta_l, beta).
  friend std::strong_ordering operator<=>(const NormalForm& lhs,
                                          const NormalForm& rhs);
};

struct NormalFormHash {
  std::size_t operator()(const NormalForm& w) const noexcept;
};

enum class ElementClass { Elliptic, Hyperbolic };

const char* to_string(ElementClass c);

struct Abelianization {
  std::int64_t a_mod4;    // total a-exponent mod 4
  std::int64_t b_mod2M;   // total b-exponent mod 2^(k+1)

  friend bool operator==(const Abelianization&, const Abelianization&) = default;
};

/// Arithmetic in P_k for a fixed k.  All operations are pure; inputs are
/// assumed to satisfy is_valid().  Exponent overflow of u or v raises
/// std::overflow_error.
class Group {
 public:
  explicit Group(GroupParams params) : params_(params) {}
  explicit Group(int k) : params_(k) {}

  const GroupParams& params() const noexcept { return params_; }
  int k() const noexcept { return params_.k(); }
  std::int64_t modulus() const noexcept { return params_.modulus(); }

  NormalForm identity() const { return {}; }
  NormalForm generator(Generator g) const;

  bool is_valid(const NormalForm& w) const noexcept;

  /// w * g^sign, sign in {+1, -1}.
  NormalForm mul_gen(const NormalForm& w, Generator g, int sign) const;
  NormalForm mul(const NormalForm& lhs, const NormalForm& rhs) const;
  NormalForm inv(const NormalForm& w) const;
  NormalForm pow(const NormalForm& w, std::int64_t n) const;
  NormalForm conjugate(const NormalForm& w, const NormalForm& by) const;

  NormalForm from_word(const GeneratorWord& word) const;
  NormalForm eval(std::string_view text) const { return from_word(parse_word(text)); }

  /// b^n as a normal form.
  NormalForm b_power(std::int64_t n) const;
  NormalForm a_power(std::int64_t n) const;

  /// Canonical expansion, e.g. "a^2 b^-4 a b^2 a"; the identity prints "1".
  std::string to_string(const NormalForm& w) const;
  /// The canonical expansion as a generator word (parses back to w).
  GeneratorWord to_word(const NormalForm& w) const;

  Abelianization abelianization(const NormalForm& w) const;
  ElementClass classify(const NormalForm& w) const;

  // In-place right multiplication; these are the primitives everything else
  // is built on.
  void right_mul_a(NormalForm& w) const;
  void right_mul_a_power(NormalForm& w, std::int64_t e) const;
  void right_mul_b_power(NormalForm& w, std::int64_t e) const;

 private:
  void right_mul_a_squared(NormalForm& w, std::int64_t t) const;
  void right_mul_b_modulus(NormalForm& w, std::int64_t t) const;

  GroupParams params_;
};

/// +1 when the total a-exponent is even, -1 otherwise.
int sigma_a(const NormalForm& w);
/// +1 when the total b-exponent is even, -1 otherwise (2^k is even).
int sigma_b(const NormalForm& w);

/// Number of alternating coset factors after the amalgam part.
std::size_t syllable_length(const NormalForm& w);

}  // namespace nup
