#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace adelic {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Exponent pair of a monomial x^a y^b.
struct Monomial {
  int x = 0;
  int y = 0;

  int degree() const { return x + y; }
  bool divides(const Monomial& o) const { return x <= o.x && y <= o.y; }
  Monomial operator*(const Monomial& o) const { return {x + o.x, y + o.y}; }
  Monomial operator/(const Monomial& o) const { return {x - o.x, y - o.y}; }
  Monomial lcm(const Monomial& o) const { return {std::max(x, o.x), std::max(y, o.y)}; }
  bool operator==(const Monomial&) const = default;
};

// Degree-lexicographic order with x > y. Returns true when a is strictly larger.
inline bool deglex_greater(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() > b.degree();
  return a.x > b.x;
}

struct DegLexDesc {
  bool operator()(const Monomial& a, const Monomial& b) const { return deglex_greater(a, b); }
};

/// Polynomial in at most two variables x, y with coefficients in Q or F_p.
///
/// Integers and rationals are the constant polynomials over Q; this single
/// representation carries every ring element the engine manipulates. Terms are
/// stored in descending degree-lex order so `terms.begin()` is the leading term.
class Poly {
 public:
  using Terms = std::map<Monomial, Rat, DegLexDesc>;

  Poly() = default;
  // Zero polynomial in characteristic `charp`.
  explicit Poly(unsigned charp) : charp_(charp) {}
  // Integer constant over Q.
  Poly(int c) : Poly(Rat(c)) {}
  Poly(Rat c, unsigned charp = 0);
  static Poly constant(long long c, unsigned charp = 0) { return Poly(Rat(c), charp); }
  static Poly monomial(Monomial m, Rat c = 1, unsigned charp = 0);
  static Poly var_x(unsigned charp = 0) { return monomial({1, 0}, 1, charp); }
  static Poly var_y(unsigned charp = 0) { return monomial({0, 1}, 1, charp); }

  unsigned charp() const { return charp_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_one() const;
  // Constant term value (0 if absent).
  Rat constant_term() const;
  // Only valid when nonzero.
  const Monomial& lead_monomial() const { return terms_.begin()->first; }
  const Rat& lead_coeff() const { return terms_.begin()->second; }
  int total_degree() const;
  int degree_x() const;
  int degree_y() const;
  bool uses_y() const;
  bool uses_x() const;
  // Integer-valued constant: every term constant with denominator 1.
  bool is_integer() const;
  // For a constant polynomial over Q.
  Rat as_rational() const;

  void add_term(const Monomial& m, const Rat& c);

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly scaled(const Rat& c) const;
  Poly times_monomial(const Monomial& m, const Rat& c) const;
  // Divide by the leading coefficient.
  Poly monic() const;
  Poly pow(int e) const;
  // Substitute y := c (result is univariate in x).
  Poly eval_y(const Rat& c) const;
  Poly eval_x(const Rat& c) const;
  // Swap x and y.
  Poly swapped() const;

  bool operator==(const Poly& o) const { return charp_ == o.charp_ && terms_ == o.terms_; }

  std::string str() const;

 private:
  void normalize_coeff(Rat& c) const;
  unsigned charp_ = 0;
  Terms terms_;
};

/// Parse a canonical element string ("3", "-1/2", "x^2*y-3*x+1").
/// Throws ParseError on malformed input.
Poly parse_poly(std::string_view text, unsigned charp = 0);

Rat reduce_mod(const Rat& c, unsigned p);
Int rat_mod_inverse(const Int& a, const Int& p);

// Number theory over Z.
bool is_prime(const Int& n);
Int gcd(Int a, Int b);
Int abs_int(const Int& a);
// Largest e with p^e | n (n != 0).
int valuation(Int n, const Int& p);
// Distinct prime factors by trial division; n must be nonzero and small enough to factor.
std::vector<Int> prime_factors(Int n);
std::string int_str(const Int& n);
std::string rat_str(const Rat& r);

// Univariate division in x (y must not occur). Returns {quotient, remainder}.
std::pair<Poly, Poly> udivmod(const Poly& a, const Poly& b);
Poly ugcd(Poly a, Poly b);
// Extended gcd: returns {g, s, t} with s*a + t*b = g, g monic (or zero).
struct UExtGcd {
  Poly g, s, t;
};
UExtGcd uextgcd(const Poly& a, const Poly& b);
// Irreducibility certificate for univariate polynomials in x over F_p or Q.
// Returns false when the polynomial is reducible or irreducibility cannot be certified.
bool certify_irreducible_univariate(const Poly& f);
// Irreducibility certificate for bivariate polynomials: linear in one variable with coprime
// coefficients, or an irreducible specialization with constant leading coefficient.
bool certify_irreducible_bivariate(const Poly& f);

}  // namespace adelic
