#ifndef DYSON_TEST_SUPPORT_HPP
#define DYSON_TEST_SUPPORT_HPP

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

#include "dyson/closed_form.hpp"
#include "dyson/laurent.hpp"

namespace dyson::test {

inline PolyA var(std::size_t n, std::size_t i) { return PolyA::variable(n, i); }
inline PolyA num(std::size_t n, long c) { return PolyA::constant(n, BigRat(c)); }

inline PolyA lin(std::int64_t c, std::initializer_list<std::int64_t> coeffs) {
  std::vector<std::int64_t> v(coeffs);
  return PolyA::linear(c, v);
}

inline BigInt ct(std::vector<int> a, std::vector<int> b) {
  return ct_bruteforce(DysonInstance{std::move(a), std::move(b)});
}

inline BigInt ct_at(const std::vector<long>& a, const BVector& b) {
  return ct(std::vector<int>(a.begin(), a.end()), b);
}

inline PolyA random_poly(std::mt19937_64& rng, std::size_t n, int terms, int max_deg) {
  PolyA p(n);
  std::uniform_int_distribution<int> coeff(-9, 9), deg(0, max_deg);
  for (int t = 0; t < terms; ++t) {
    Exponents e(n);
    for (auto& x : e) x = deg(rng);
    p.add_term(e, BigRat(coeff(rng)));
  }
  return p;
}

}  // namespace dyson::test

#endif  // DYSON_TEST_SUPPORT_HPP
