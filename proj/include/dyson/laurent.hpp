#ifndef DYSON_LAURENT_HPP
#define DYSON_LAURENT_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "dyson/poly.hpp"

namespace dyson {

// Maximum number of x-variables. Exponents stay within
// |e| <= sum(a) + max|b|, far inside int32 for every instance we can expand.
inline constexpr std::size_t kMaxXVars = 8;
using XExponents = std::array<std::int32_t, kMaxXVars>;

/// Sparse Laurent polynomial in x_1..x_n with integer coefficients.
class LaurentPoly {
 public:
  using Terms = std::map<XExponents, BigInt>;

  LaurentPoly() = default;
  explicit LaurentPoly(std::size_t nvars);

  static LaurentPoly constant(std::size_t nvars, const BigInt& c);
  static LaurentPoly monomial(std::size_t nvars, std::span<const int> exponents,
                              const BigInt& c = 1);

  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const XExponents& e, const BigInt& c);
  BigInt coefficient(std::span<const int> exponents) const;

  LaurentPoly& operator+=(const LaurentPoly& rhs);
  friend LaurentPoly operator+(LaurentPoly lhs, const LaurentPoly& rhs) { return lhs += rhs; }
  friend LaurentPoly operator*(const LaurentPoly& lhs, const LaurentPoly& rhs);
  bool operator==(const LaurentPoly&) const = default;

  // Inclusive exponent range of `var` over all terms; {0, -1} when zero.
  std::pair<int, int> degree_range(std::size_t var) const;

  std::string to_string() const;

 private:
  std::size_t nvars_ = 0;
  Terms terms_;
};

// Terms of p whose `var`-exponent equals `exponent`, with `var` removed
// (the result has nvars - 1 variables).
LaurentPoly coeff_slice(const LaurentPoly& p, std::size_t var, int exponent);

// Multiplies p by var^exponent after re-inserting `var` at position `var`.
// Inverse of coeff_slice: sum_e lift_slice(coeff_slice(p, v, e), v, e) == p.
LaurentPoly lift_slice(const LaurentPoly& p, std::size_t var, int exponent);

/// F_n(x; a; b) = prod_h x_h^{-b_h} prod_{i != j} (1 - x_i/x_j)^{a_j}.
struct DysonInstance {
  std::vector<int> a;
  std::vector<int> b;

  int n() const { return static_cast<int>(a.size()); }
};

/// Constant term of F_n(x; a; b), i.e. the coefficient of x^b in
/// F_n(x; a; 0).
///
/// The product is rewritten as
///   sign * prod_h x_h^{-(n-1) a_h} * prod_{i<j} (x_j - x_i)^{a_i + a_j}
/// with sign = (-1)^{sum_{i<j} a_i}, so only the coefficient of
/// x^{b + (n-1) a} in a homogeneous polynomial is needed. The variables are
/// eliminated one at a time: at step h the factors (x_j - x_h)^{a_h + a_j},
/// j > h, are multiplied in and only the slice with the required x_h
/// exponent is kept. Terms that can no longer reach the target exponent of
/// a later variable are pruned.
BigInt ct_bruteforce(const DysonInstance& inst);

/// One term of the Taylor coefficient P_k used by the boundary conditions.
struct PkTerm {
  std::vector<int> composition;  // m_i over indices i != k, sum = b_k
  PolyA coefficient;             // prod (-1)^{m_i} C(a_i, m_i), over n variables
  std::vector<int> shifted_b;    // b_i + m_i over indices i != k
};

struct PkExpansion {
  int n = 0;
  int k = 0;  // zero-based pivot index
  std::vector<int> b;
  std::vector<PkTerm> terms;
};

/// Coefficient of x_k^{b_k} in prod_{i != k} (x_i - x_k)^{a_i} / x_i^{a_i + b_i}
/// as a list of terms; empty when b_k < 0. Compositions are enumerated in
/// descending lexicographic order.
PkExpansion pk_expansion(int n, int k, std::span<const int> b);

}  // namespace dyson

#endif  // DYSON_LAURENT_HPP
