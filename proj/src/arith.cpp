#include "adelic/arith.hpp"

#include "adelic/errors.hpp"

#include <boost/multiprecision/miller_rabin.hpp>

#include <cctype>
#include <sstream>

namespace adelic {

namespace mp = boost::multiprecision;

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::InvalidPrime: return "InvalidPrime";
    case ErrorKind::InvalidExpr: return "InvalidExpr";
    case ErrorKind::UnsupportedExpression: return "UnsupportedExpression";
    case ErrorKind::UnsupportedRing: return "UnsupportedRing";
    case ErrorKind::CompositionNonzero: return "CompositionNonzero";
    case ErrorKind::DegreeBoundExceeded: return "DegreeBoundExceeded";
    case ErrorKind::CarrierMismatch: return "CarrierMismatch";
    case ErrorKind::FamilyProductRemains: return "FamilyProductRemains";
    case ErrorKind::NotRepresentable: return "NotRepresentable";
    case ErrorKind::NonCommuting: return "NonCommuting";
    case ErrorKind::UnknownPrime: return "UnknownPrime";
    case ErrorKind::MissingGenerators: return "MissingGenerators";
    case ErrorKind::LawViolation: return "LawViolation";
    case ErrorKind::NotCocartesian: return "NotCocartesian";
    case ErrorKind::InvalidComplex: return "InvalidComplex";
    case ErrorKind::InvalidScenario: return "InvalidScenario";
  }
  return "Error";
}

// ---------------------------------------------------------------- integers

Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

Int gcd(Int a, Int b) {
  a = abs_int(a);
  b = abs_int(b);
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool is_prime(const Int& n) {
  if (n < 2) return false;
  for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  return mp::miller_rabin_test(n, 25);
}

int valuation(Int n, const Int& p) {
  if (n == 0) fail(ErrorKind::InvalidExpr, "valuation of zero");
  int e = 0;
  n = abs_int(n);
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

std::vector<Int> prime_factors(Int n) {
  std::vector<Int> out;
  n = abs_int(n);
  if (n == 0) fail(ErrorKind::InvalidExpr, "prime factors of zero");
  for (Int d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::string int_str(const Int& n) { return n.str(); }

std::string rat_str(const Rat& r) {
  if (mp::denominator(r) == 1) return mp::numerator(r).str();
  return mp::numerator(r).str() + "/" + mp::denominator(r).str();
}

Int rat_mod_inverse(const Int& a, const Int& p) {
  // Extended Euclid on (a mod p, p).
  Int r0 = ((a % p) + p) % p, r1 = p, s0 = 1, s1 = 0;
  if (r0 == 0) fail(ErrorKind::InvalidExpr, "division by zero modulo " + p.str());
  while (r1 != 0) {
    Int q = r0 / r1;
    Int t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  return ((s0 % p) + p) % p;
}

Rat reduce_mod(const Rat& c, unsigned p) {
  Int P = p;
  Int num = mp::numerator(c), den = mp::denominator(c);
  Int v = ((num % P) + P) % P;
  Int inv = rat_mod_inverse(den, P);
  return Rat((v * inv) % P);
}

// ---------------------------------------------------------------- Poly

void Poly::normalize_coeff(Rat& c) const {
  if (charp_ != 0) c = reduce_mod(c, charp_);
}

Poly::Poly(Rat c, unsigned charp) : charp_(charp) { add_term({0, 0}, c); }

Poly Poly::monomial(Monomial m, Rat c, unsigned charp) {
  Poly p(charp);
  p.add_term(m, c);
  return p;
}

void Poly::add_term(const Monomial& m, const Rat& c0) {
  Rat c = c0;
  normalize_coeff(c);
  if (c == 0) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
    return;
  }
  it->second += c;
  normalize_coeff(it->second);
  if (it->second == 0) terms_.erase(it);
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Monomial{});
}

bool Poly::is_one() const { return is_constant() && !is_zero() && lead_coeff() == 1; }

Rat Poly::constant_term() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Rat(0) : it->second;
}

int Poly::total_degree() const { return is_zero() ? -1 : lead_monomial().degree(); }

int Poly::degree_x() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.x);
  return d;
}

int Poly::degree_y() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.y);
  return d;
}

bool Poly::uses_y() const { return degree_y() > 0; }
bool Poly::uses_x() const { return degree_x() > 0; }

bool Poly::is_integer() const { return is_constant() && mp::denominator(constant_term()) == 1; }

Rat Poly::as_rational() const {
  if (!is_constant()) fail(ErrorKind::InvalidExpr, "expected a constant, got " + str());
  return constant_term();
}

Poly Poly::operator-() const {
  Poly r(charp_);
  for (const auto& [m, c] : terms_) r.add_term(m, -c);
  return r;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  if (r.charp_ == 0 && o.charp_ != 0) {
    r = Poly(o.charp_);
    for (const auto& [m, c] : terms_) r.add_term(m, c);
  }
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  Poly r = *this;
  if (r.charp_ == 0 && o.charp_ != 0) {
    r = Poly(o.charp_);
    for (const auto& [m, c] : terms_) r.add_term(m, c);
  }
  for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  Poly r(charp_ ? charp_ : o.charp_);
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : o.terms_) r.add_term(m1 * m2, c1 * c2);
  return r;
}

Poly Poly::scaled(const Rat& c) const {
  Poly r(charp_);
  for (const auto& [m, a] : terms_) r.add_term(m, a * c);
  return r;
}

Poly Poly::times_monomial(const Monomial& mono, const Rat& c) const {
  Poly r(charp_);
  for (const auto& [m, a] : terms_) r.add_term(m * mono, a * c);
  return r;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  Rat lc = lead_coeff();
  if (charp_ != 0) return scaled(Rat(rat_mod_inverse(mp::numerator(lc), charp_)));
  return scaled(1 / lc);
}

Poly Poly::pow(int e) const {
  Poly r = Poly(Rat(1), charp_);
  for (int i = 0; i < e; ++i) r *= *this;
  return r;
}

Poly Poly::eval_y(const Rat& v) const {
  Poly r(charp_);
  for (const auto& [m, c] : terms_) {
    Rat f = c;
    for (int i = 0; i < m.y; ++i) f *= v;
    r.add_term({m.x, 0}, f);
  }
  return r;
}

Poly Poly::eval_x(const Rat& v) const { return swapped().eval_y(v).swapped(); }

Poly Poly::swapped() const {
  Poly r(charp_);
  for (const auto& [m, c] : terms_) r.add_term({m.y, m.x}, c);
  return r;
}

namespace {

std::string coeff_str(const Rat& c) { return rat_str(c); }

std::string monomial_str(const Monomial& m) {
  std::string s;
  auto var = [&](char v, int e) {
    if (e == 0) return;
    if (!s.empty()) s += "*";
    s += v;
    if (e > 1) s += "^" + std::to_string(e);
  };
  var('x', m.x);
  var('y', m.y);
  return s;
}

}  // namespace

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string term;
    if (m == Monomial{}) {
      term = coeff_str(c);
    } else if (c == 1) {
      term = monomial_str(m);
    } else if (c == -1) {
      term = "-" + monomial_str(m);
    } else {
      term = coeff_str(c) + "*" + monomial_str(m);
    }
    if (!first && term[0] != '-') out += "+";
    out += term;
    first = false;
  }
  return out;
}

// ---------------------------------------------------------------- parser

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view t, unsigned charp) : text_(t), charp_(charp) {}

  Poly parse() {
    Poly p = expr();
    skip_ws();
    if (pos_ != text_.size()) error("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void error(const std::string& msg) {
    fail(ErrorKind::Parse, msg + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }
  Poly expr() {
    Poly acc(charp_);
    bool negate = false;
    if (peek('-')) {
      ++pos_;
      negate = true;
    } else if (peek('+')) {
      ++pos_;
    }
    Poly t = term();
    acc = negate ? -t : t;
    while (true) {
      if (peek('+')) {
        ++pos_;
        acc += term();
      } else if (peek('-')) {
        ++pos_;
        acc -= term();
      } else {
        break;
      }
    }
    return acc;
  }
  Poly term() {
    Poly t = power();
    while (peek('*')) {
      ++pos_;
      t *= power();
    }
    return t;
  }
  Poly power() {
    Poly base = atom();
    if (peek('^')) {
      ++pos_;
      Int e = number();
      if (e > 1000) error("exponent too large");
      base = base.pow(static_cast<int>(e));
    }
    return base;
  }
  Int number() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) error("expected a number");
    return Int(std::string(text_.substr(start, pos_ - start)));
  }
  Poly atom() {
    skip_ws();
    if (pos_ >= text_.size()) error("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Poly inner = expr();
      if (!peek(')')) error("expected ')'");
      ++pos_;
      return inner;
    }
    if (c == 'x') {
      ++pos_;
      return Poly::var_x(charp_);
    }
    if (c == 'y') {
      ++pos_;
      return Poly::var_y(charp_);
    }
    if (c == '-') {
      ++pos_;
      return -atom();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Int num = number();
      Rat value(num);
      if (peek('/')) {
        ++pos_;
        Int den = number();
        if (den == 0) error("zero denominator");
        value = Rat(num, den);
      }
      return Poly(value, charp_);
    }
    error("unexpected character");
  }

  std::string_view text_;
  unsigned charp_;
  size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view text, unsigned charp) { return PolyParser(text, charp).parse(); }

// ---------------------------------------------------------------- univariate

std::pair<Poly, Poly> udivmod(const Poly& a, const Poly& b) {
  if (a.uses_y() || b.uses_y()) fail(ErrorKind::UnsupportedRing, "udivmod expects univariate polynomials");
  if (b.is_zero()) fail(ErrorKind::InvalidExpr, "polynomial division by zero");
  unsigned p = a.charp() ? a.charp() : b.charp();
  Poly q(p), r = a;
  const Monomial lb = b.lead_monomial();
  Rat lc = b.lead_coeff();
  Rat inv = p ? Rat(rat_mod_inverse(mp::numerator(lc), p)) : 1 / lc;
  while (!r.is_zero() && r.lead_monomial().x >= lb.x) {
    Monomial shift{r.lead_monomial().x - lb.x, 0};
    Rat f = r.lead_coeff() * inv;
    q.add_term(shift, f);
    r -= b.times_monomial(shift, f);
  }
  return {q, r};
}

Poly ugcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = udivmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

UExtGcd uextgcd(const Poly& a, const Poly& b) {
  unsigned p = a.charp() ? a.charp() : b.charp();
  Poly r0 = a, r1 = b, s0(Rat(1), p), s1(p), t0(p), t1(Rat(1), p);
  while (!r1.is_zero()) {
    auto [q, r] = udivmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly s = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s);
    Poly t = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  Rat lc = r0.lead_coeff();
  Rat inv = p ? Rat(rat_mod_inverse(mp::numerator(lc), p)) : 1 / lc;
  return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

namespace {

Poly upowmod(Poly base, Int e, const Poly& mod) {
  Poly result(Rat(1), base.charp());
  base = udivmod(base, mod).second;
  while (e > 0) {
    if (e % 2 == 1) result = udivmod(result * base, mod).second;
    base = udivmod(base * base, mod).second;
    e /= 2;
  }
  return result;
}

bool irreducible_mod_p(const Poly& f) {
  // Rabin's test over F_p.
  const unsigned p = f.charp();
  const int n = f.degree_x();
  if (n <= 0) return false;
  if (n == 1) return true;
  Poly x = Poly::var_x(p);
  auto frob = [&](int k) {
    Poly r = x;
    for (int i = 0; i < k; ++i) r = upowmod(r, Int(p), f);
    return r;
  };
  if (!(udivmod(frob(n) - x, f).second.is_zero())) return false;
  for (const Int& q : prime_factors(Int(n))) {
    int k = n / static_cast<int>(q);
    Poly g = ugcd(f, frob(k) - x);
    if (!g.is_constant()) return false;
  }
  return true;
}

bool has_rational_root(const Poly& f) {
  // Clear denominators to integer coefficients.
  Int l = 1;
  for (const auto& [m, c] : f.terms()) {
    Int d = mp::denominator(c);
    l = l / gcd(l, d) * d;
  }
  Poly g = f.scaled(Rat(l));
  Int a0 = mp::numerator(g.constant_term());
  if (a0 == 0) return true;
  Int an = mp::numerator(g.lead_coeff());
  auto divisors = [](Int n) {
    std::vector<Int> ds;
    n = abs_int(n);
    for (Int d = 1; d * d <= n; ++d)
      if (n % d == 0) {
        ds.push_back(d);
        if (d * d != n) ds.push_back(n / d);
      }
    return ds;
  };
  if (abs_int(a0) > Int(1000000) || abs_int(an) > Int(1000000)) return true;  // refuse to certify
  for (const Int& pn : divisors(a0))
    for (const Int& qd : divisors(an))
      for (int sgn : {1, -1}) {
        Rat r(sgn * pn, qd);
        Rat v = 0;
        for (const auto& [m, c] : g.terms()) {
          Rat t = c;
          for (int i = 0; i < m.x; ++i) t *= r;
          v += t;
        }
        if (v == 0) return true;
      }
  return false;
}

}  // namespace

bool certify_irreducible_univariate(const Poly& f) {
  if (f.uses_y()) return false;
  const int n = f.degree_x();
  if (n <= 0) return false;
  if (n == 1) return true;
  if (f.charp() != 0) return irreducible_mod_p(f);
  if (n <= 3) return !has_rational_root(f);
  // Irreducible modulo a prime not dividing the leading coefficient (with degree kept) implies
  // irreducible over Q by Gauss's lemma.
  Int l = 1;
  for (const auto& [m, c] : f.terms()) {
    Int d = mp::denominator(c);
    l = l / gcd(l, d) * d;
  }
  Poly g = f.scaled(Rat(l));
  for (unsigned p = 3; p < 400; p += 2) {
    if (!is_prime(Int(p))) continue;
    if (mp::numerator(g.lead_coeff()) % p == 0) continue;
    Poly h(p);
    for (const auto& [m, c] : g.terms()) h.add_term(m, c);
    if (h.degree_x() == n && irreducible_mod_p(h)) return true;
  }
  return false;
}

bool certify_irreducible_bivariate(const Poly& f) {
  if (f.total_degree() <= 0) return false;
  if (!f.uses_y()) return certify_irreducible_univariate(f);
  if (!f.uses_x()) return certify_irreducible_univariate(f.swapped());
  for (const Poly& g : {f, f.swapped()}) {
    const int dx = g.degree_x();
    // Split g by powers of x: coefficients are polynomials in y (stored as x-polys after swap).
    std::map<int, Poly> coeffs;
    for (const auto& [m, c] : g.terms()) {
      auto [it, inserted] = coeffs.try_emplace(m.x, Poly(g.charp()));
      it->second.add_term({m.y, 0}, c);
    }
    if (dx == 1) {
      // g = a(y) x + b(y): irreducible iff gcd(a, b) is a unit in k[y].
      Poly a = coeffs[1];
      Poly b = coeffs.count(0) ? coeffs[0] : Poly(g.charp());
      if (ugcd(a, b).is_constant()) return true;
      continue;
    }
    // Leading coefficient in x constant: a specialization y = c that stays irreducible of the
    // same x-degree certifies irreducibility (any factorization would specialize).
    if (coeffs[dx].is_constant()) {
      const int limit = g.charp() ? static_cast<int>(std::min(g.charp(), 41u)) : 41;
      for (int c = 0; c < limit; ++c)
        for (int sgn : {1, -1}) {
          Poly s = g.eval_y(Rat(sgn * c));
          if (s.degree_x() == dx && certify_irreducible_univariate(s)) return true;
        }
    }
  }
  return false;
}

}  // namespace adelic
