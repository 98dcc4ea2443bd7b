#ifndef DYSON_FACTOR_HPP
#define DYSON_FACTOR_HPP

#include <vector>

#include "dyson/poly.hpp"

namespace dyson {

/// p = scalar * a^monomial * prod(linear) * rest.
///
/// `linear` holds the factors found by trial among forms c + sum c_i a_i with
/// c_i in {0, ..., max_coeff} and |c| <= max_constant, each confirmed by exact
/// division (repeated factors appear repeatedly). Single-variable factors with
/// c = 0 go to `monomial` instead. `rest` is primitive with positive leading
/// coefficient and has no factor of the searched shape.
struct LinearFactorization {
  BigRat scalar;
  Exponents monomial;
  std::vector<LinearForm> linear;
  PolyA rest;

  bool complete() const { return rest.is_constant(); }
};

LinearFactorization factor_linear(const PolyA& p, int max_coeff = 2, int max_constant = -1);

// Reassembles the product; used to double-check factorizations.
PolyA expand(const LinearFactorization& f);

}  // namespace dyson

#endif  // DYSON_FACTOR_HPP
