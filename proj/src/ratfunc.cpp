#include "dyson/ratfunc.hpp"

#include "dyson/errors.hpp"

namespace dyson {

RatFuncA::RatFuncA(PolyA p)
    : num_(std::move(p)), den_(PolyA::constant(num_.nvars(), 1)) {}

RatFuncA::RatFuncA(PolyA num, PolyA den) {
  if (num.nvars() != den.nvars()) throw UsageError("numerator and denominator variable counts differ");
  if (den.is_zero()) throw DomainError("rational function with zero denominator");
  if (num.is_zero()) {
    *this = zero(num.nvars());
    return;
  }
  const PolyA g = gcd(num, den);
  if (!g.is_constant()) {
    num = exact_divide(num, g);
    den = exact_divide(den, g);
  }
  *this = from_coprime(std::move(num), std::move(den));
}

RatFuncA RatFuncA::from_coprime(PolyA num, PolyA den) {
  if (num.is_zero()) return zero(num.nvars());
  const BigRat lc = den.leading_coefficient();
  if (lc != 1) {
    const BigRat inv = 1 / lc;
    num *= inv;
    den *= inv;
  }
  return RatFuncA(std::move(num), std::move(den), Reduced{});
}

RatFuncA RatFuncA::operator-() const { return RatFuncA(-num_, den_, Reduced{}); }

RatFuncA operator+(const RatFuncA& r, const RatFuncA& s) {
  if (r.nvars() != s.nvars()) throw UsageError("rational functions over different variable counts");
  if (r.is_zero()) return s;
  if (s.is_zero()) return r;
  if (r.den_ == s.den_) return RatFuncA(r.num_ + s.num_, r.den_);
  // With g = gcd(b, d): a/b + c/d = (a d' + c b') / (b' d' g), and the only
  // possible common factor of the new numerator lies in g.
  const PolyA g = gcd(r.den_, s.den_);
  if (g.is_constant()) {
    return RatFuncA::from_coprime(r.num_ * s.den_ + s.num_ * r.den_, r.den_ * s.den_);
  }
  const PolyA rb = exact_divide(r.den_, g);
  const PolyA sd = exact_divide(s.den_, g);
  PolyA num = r.num_ * sd + s.num_ * rb;
  if (num.is_zero()) return RatFuncA::zero(r.nvars());
  const PolyA h = gcd(num, g);
  PolyA den = rb * s.den_;
  if (!h.is_constant()) {
    num = exact_divide(num, h);
    den = exact_divide(den, h);
  }
  return RatFuncA::from_coprime(std::move(num), std::move(den));
}

RatFuncA operator-(const RatFuncA& r, const RatFuncA& s) { return r + (-s); }

RatFuncA operator*(const RatFuncA& r, const RatFuncA& s) {
  if (r.nvars() != s.nvars()) throw UsageError("rational functions over different variable counts");
  if (r.is_zero() || s.is_zero()) return RatFuncA::zero(r.nvars());
  const PolyA g1 = gcd(r.num_, s.den_);
  const PolyA g2 = gcd(s.num_, r.den_);
  const PolyA a = g1.is_constant() ? r.num_ : exact_divide(r.num_, g1);
  const PolyA d = g1.is_constant() ? s.den_ : exact_divide(s.den_, g1);
  const PolyA c = g2.is_constant() ? s.num_ : exact_divide(s.num_, g2);
  const PolyA b = g2.is_constant() ? r.den_ : exact_divide(r.den_, g2);
  return RatFuncA::from_coprime(a * c, b * d);
}

RatFuncA operator/(const RatFuncA& r, const RatFuncA& s) {
  if (s.is_zero()) throw DomainError("division by the zero rational function");
  return r * RatFuncA(s.den_, s.num_, RatFuncA::Reduced{});
}

BigRat RatFuncA::evaluate(std::span<const BigRat> point) const {
  const BigRat d = den_.evaluate(point);
  if (d == 0) throw DomainError("rational function evaluated at a pole");
  return num_.evaluate(point) / d;
}

BigRat RatFuncA::evaluate(std::span<const long> point) const {
  std::vector<BigRat> q(point.begin(), point.end());
  return evaluate(std::span<const BigRat>(q));
}

RatFuncA RatFuncA::compose(std::span<const PolyA> images) const {
  PolyA den = den_.compose(images);
  if (den.is_zero()) throw DomainError("substitution annihilates the denominator " + den_.to_string());
  return RatFuncA(num_.compose(images), std::move(den));
}

std::string RatFuncA::to_string() const {
  if (den_.is_constant()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

RatFuncA rising_factorial(const LinearForm& y, int h) {
  const std::size_t n = y.nvars();
  PolyA prod = PolyA::constant(n, 1);
  if (h > 0) {
    for (int j = 0; j < h; ++j) prod = prod * y.shifted(j).to_poly();
    return RatFuncA(prod);
  }
  for (int j = 1; j <= -h; ++j) prod = prod * y.shifted(-j).to_poly();
  return RatFuncA(PolyA::constant(n, 1), prod);
}

PolyA binomial_poly(std::size_t nvars, std::size_t index, int m) {
  if (m < 0) throw UsageError("binomial_poly needs m >= 0");
  PolyA p = PolyA::constant(nvars, 1);
  BigInt fact = 1;
  const PolyA var = PolyA::variable(nvars, index);
  for (int j = 0; j < m; ++j) {
    p = p * (var - PolyA::constant(nvars, j));
    fact *= j + 1;
  }
  return p * BigRat(BigInt(1), fact);
}

}  // namespace dyson
