#ifndef DYSON_POLY_HPP
#define DYSON_POLY_HPP

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dyson {

using BigInt = mpz_class;
using BigRat = mpq_class;

BigRat make_rat(const BigInt& num, const BigInt& den);
std::string to_string(const BigRat& q);

// Exponent vector over the symbolic a-variables. Index 0 is a_1.
using Exponents = std::vector<int>;

// Graded-lexicographic order with a_1 > a_2 > ... > a_n. Returns true when
// lhs is strictly greater, so maps keyed with it iterate from the leading
// term downwards.
struct GrlexGreater {
  bool operator()(const Exponents& lhs, const Exponents& rhs) const;
};

/// Sparse multivariate polynomial with rational coefficients in a_1..a_n.
///
/// Terms are kept in a map ordered by descending graded-lex order and never
/// store a zero coefficient, so two polynomials are equal exactly when their
/// term maps are equal.
class PolyA {
 public:
  using Terms = std::map<Exponents, BigRat, GrlexGreater>;

  PolyA() = default;
  explicit PolyA(std::size_t nvars) : nvars_(nvars) {}

  static PolyA constant(std::size_t nvars, const BigRat& c);
  static PolyA variable(std::size_t nvars, std::size_t index);
  // c + sum_i coeffs[i] * a_i
  static PolyA linear(std::int64_t c, std::span<const std::int64_t> coeffs);

  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  int total_degree() const;
  int degree_in(std::size_t var) const;
  bool depends_on(std::size_t var) const { return degree_in(var) > 0; }

  // Leading term under graded-lex. Undefined on the zero polynomial.
  const Exponents& leading_exponents() const { return terms_.begin()->first; }
  const BigRat& leading_coefficient() const { return terms_.begin()->second; }
  BigRat constant_term() const;

  void add_term(const Exponents& e, const BigRat& c);

  PolyA operator-() const;
  PolyA& operator+=(const PolyA& rhs);
  PolyA& operator-=(const PolyA& rhs);
  PolyA& operator*=(const BigRat& c);
  friend PolyA operator+(PolyA lhs, const PolyA& rhs) { return lhs += rhs; }
  friend PolyA operator-(PolyA lhs, const PolyA& rhs) { return lhs -= rhs; }
  friend PolyA operator*(const PolyA& lhs, const PolyA& rhs);
  friend PolyA operator*(PolyA lhs, const BigRat& c) { return lhs *= c; }
  friend PolyA operator*(const BigRat& c, PolyA rhs) { return rhs *= c; }
  PolyA pow(unsigned e) const;

  bool operator==(const PolyA& rhs) const = default;

  BigRat evaluate(std::span<const BigRat> point) const;
  BigRat evaluate(std::span<const long> point) const;

  // Substitutes a_i -> images[i]. All images must share one variable count,
  // which becomes the variable count of the result.
  PolyA compose(std::span<const PolyA> images) const;

  // View as a univariate polynomial in `var`: element d is the coefficient of
  // a_var^d (with a_var removed from its exponents).
  std::vector<PolyA> coefficients_in(std::size_t var) const;
  static PolyA from_coefficients(std::size_t nvars, std::size_t var,
                                 std::span<const PolyA> coeffs);

  // Scaled to coprime integer coefficients with a positive leading
  // coefficient. Zero stays zero.
  PolyA primitive() const;
  // Positive rational c with p == c * p.primitive() (up to the sign of lc).
  BigRat content() const;

  // Human-readable form, e.g. "a1^2 - 1/2*a2 + 3".
  std::string to_string() const;

 private:
  std::size_t nvars_ = 0;
  Terms terms_;
};

// Exact quotient when b divides a, nothing otherwise.
std::optional<PolyA> try_divide(const PolyA& a, const PolyA& b);
// Exact quotient; throws DomainError when b does not divide a.
PolyA exact_divide(const PolyA& a, const PolyA& b);

// Greatest common divisor over Q, returned primitive with positive leading
// coefficient. gcd(0, 0) is 0.
PolyA gcd(const PolyA& a, const PolyA& b);

/// Integer linear form c + sum_i coeffs[i] * a_i.
struct LinearForm {
  std::int64_t constant = 0;
  std::vector<std::int64_t> coeffs;

  std::size_t nvars() const { return coeffs.size(); }
  PolyA to_poly() const { return PolyA::linear(constant, coeffs); }
  LinearForm shifted(std::int64_t delta) const {
    return LinearForm{constant + delta, coeffs};
  }
  bool operator==(const LinearForm&) const = default;
};

}  // namespace dyson

#endif  // DYSON_POLY_HPP
