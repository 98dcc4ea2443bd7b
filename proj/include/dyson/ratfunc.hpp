#ifndef DYSON_RATFUNC_HPP
#define DYSON_RATFUNC_HPP

#include <algorithm>
#include <span>
#include <string>

#include "dyson/poly.hpp"

namespace dyson {

/// Reduced rational function num/den in the a-variables.
///
/// Canonical at construction: gcd(num, den) = 1 and den has graded-lex
/// leading coefficient 1. Zero is 0/1. Equality is therefore plain data
/// equality, which is what the prover relies on.
class RatFuncA {
 public:
  RatFuncA() : num_(0), den_(PolyA::constant(0, 1)) {}
  explicit RatFuncA(PolyA p);
  RatFuncA(PolyA num, PolyA den);

  static RatFuncA zero(std::size_t nvars) { return RatFuncA(PolyA(nvars)); }
  static RatFuncA one(std::size_t nvars) { return RatFuncA(PolyA::constant(nvars, 1)); }

  std::size_t nvars() const { return num_.nvars(); }
  const PolyA& num() const { return num_; }
  const PolyA& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  int total_degree() const { return std::max(num_.total_degree(), 0) + den_.total_degree(); }

  RatFuncA operator-() const;
  friend RatFuncA operator+(const RatFuncA& r, const RatFuncA& s);
  friend RatFuncA operator-(const RatFuncA& r, const RatFuncA& s);
  friend RatFuncA operator*(const RatFuncA& r, const RatFuncA& s);
  friend RatFuncA operator/(const RatFuncA& r, const RatFuncA& s);
  RatFuncA& operator+=(const RatFuncA& s) { return *this = *this + s; }
  RatFuncA& operator-=(const RatFuncA& s) { return *this = *this - s; }
  RatFuncA& operator*=(const RatFuncA& s) { return *this = *this * s; }

  bool operator==(const RatFuncA& rhs) const = default;

  // Throws DomainError where the denominator vanishes.
  BigRat evaluate(std::span<const BigRat> point) const;
  BigRat evaluate(std::span<const long> point) const;

  // Substitutes a_i -> images[i]. Throws DomainError if the denominator
  // becomes identically zero.
  RatFuncA compose(std::span<const PolyA> images) const;

  std::string to_string() const;

 private:
  struct Reduced {};
  RatFuncA(PolyA num, PolyA den, Reduced) : num_(std::move(num)), den_(std::move(den)) {}
  static RatFuncA from_coprime(PolyA num, PolyA den);

  PolyA num_;
  PolyA den_;
};

/// Rising factorial (y)_h as a rational function:
///   h > 0: y(y+1)...(y+h-1);  h = 0: 1;  h < 0: 1/((y-1)(y-2)...(y-|h|)).
RatFuncA rising_factorial(const LinearForm& y, int h);

/// a_i(a_i-1)...(a_i-m+1)/m!, the binomial coefficient C(a_i, m) with
/// symbolic upper index. `index` is zero-based.
PolyA binomial_poly(std::size_t nvars, std::size_t index, int m);

}  // namespace dyson

#endif  // DYSON_RATFUNC_HPP
