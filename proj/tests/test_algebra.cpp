#include "doctest.h"

#include <random>

#include "dyson/errors.hpp"
#include "dyson/factor.hpp"
#include "dyson/linalg.hpp"
#include "dyson/ratfunc.hpp"
#include "support.hpp"

using namespace dyson;
using namespace dyson::test;

TEST_CASE("polynomial arithmetic") {
  const PolyA a1 = var(2, 0), a2 = var(2, 1);
  const PolyA p = a1 + a2;
  const PolyA q = a1 - a2;
  CHECK(p * q == a1 * a1 - a2 * a2);
  CHECK((p - p).is_zero());
  CHECK(p.pow(2) == a1 * a1 + BigRat(2) * a1 * a2 + a2 * a2);
  CHECK((p * q).total_degree() == 2);
  CHECK(exact_divide(p * q, q) == p);
  CHECK_FALSE(try_divide(p, q).has_value());
  CHECK_THROWS_AS(exact_divide(p, q), DomainError);
}

TEST_CASE("polynomial evaluation and composition") {
  const PolyA p = var(3, 0) * var(3, 1) + num(3, 2) * var(3, 2);
  const std::vector<long> pt{2, 3, 5};
  CHECK(p.evaluate(pt) == 16);
  // a_1 -> a_2, a_2 -> a_1 + 1, a_3 -> 0
  std::vector<PolyA> images{var(2, 1), var(2, 0) + num(2, 1), PolyA(2)};
  CHECK(p.compose(images) == var(2, 1) * var(2, 0) + var(2, 1));
}

TEST_CASE("gcd of polynomials") {
  const PolyA x = var(2, 0), y = var(2, 1);
  const PolyA g = x + y + num(2, 1);
  const PolyA u = (x - y) * g * g, v = (x * y + num(2, 3)) * g;
  CHECK(gcd(u, v) == g);
  CHECK(gcd(PolyA(2), PolyA(2)).is_zero());
  CHECK(gcd(u, num(2, 5)).is_constant());
}

TEST_CASE("gcd properties on random products") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 25; ++round) {
    const PolyA f = random_poly(rng, 3, 3, 2), g = random_poly(rng, 3, 3, 2), h = random_poly(rng, 3, 2, 2);
    if (f.is_zero() || g.is_zero() || h.is_zero()) continue;
    const PolyA d = gcd(f * h, g * h);
    CHECK(try_divide(f * h, d).has_value());
    CHECK(try_divide(g * h, d).has_value());
    CHECK(try_divide(d, h.primitive()).has_value());
  }
}

TEST_CASE("rational functions are canonical") {
  const PolyA x = var(2, 0), y = var(2, 1);
  const RatFuncA r(x * x - y * y, num(2, 2) * (x + y));
  CHECK(r.num() == BigRat(1, 2) * (x - y));
  CHECK(r.den() == num(2, 1));
  CHECK(r.is_polynomial());
  const RatFuncA s(num(2, 1), x + num(2, 1));
  const RatFuncA t(num(2, 1), y + num(2, 1));
  CHECK((s + t) == RatFuncA(x + y + num(2, 2), (x + num(2, 1)) * (y + num(2, 1))));
  CHECK((s - s).is_zero());
  CHECK((s / s) == RatFuncA::one(2));
  CHECK_THROWS_AS(s / RatFuncA::zero(2), DomainError);
  CHECK(RatFuncA(num(2, -3), num(2, 6)) == RatFuncA(num(2, -1), num(2, 2)));
}

TEST_CASE("rational arithmetic is a field on random inputs") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 15; ++round) {
    const PolyA p = random_poly(rng, 2, 3, 2), q = random_poly(rng, 2, 2, 2) + num(2, 1);
    const PolyA u = random_poly(rng, 2, 2, 1), v = random_poly(rng, 2, 2, 1) + num(2, 2);
    if (q.is_zero() || v.is_zero()) continue;
    const RatFuncA r(p, q), s(u, v);
    CHECK((r + s) - s == r);
    CHECK(r * s == s * r);
    if (!s.is_zero()) CHECK((r * s) / s == r);
  }
}

TEST_CASE("rising factorials") {
  const LinearForm y{1, {1, 0}};  // 1 + a_1
  const PolyA a1 = var(2, 0);
  CHECK(rising_factorial(y, 0) == RatFuncA::one(2));
  CHECK(rising_factorial(y, 2) == RatFuncA((a1 + num(2, 1)) * (a1 + num(2, 2))));
  // (1 + a_1)_{-2} = 1 / (a_1 (a_1 - 1))
  CHECK(rising_factorial(y, -2) == RatFuncA(num(2, 1), a1 * (a1 - num(2, 1))));
  // (y)_h (y + h)_{-h} = 1
  for (int h = -3; h <= 3; ++h) {
    CHECK(rising_factorial(y, h) * rising_factorial(y.shifted(h), -h) == RatFuncA::one(2));
  }
}

TEST_CASE("binomial polynomials") {
  CHECK(binomial_poly(2, 1, 0) == num(2, 1));
  CHECK(binomial_poly(2, 1, 2) == BigRat(1, 2) * var(2, 1) * (var(2, 1) - num(2, 1)));
  for (long x = 0; x <= 8; ++x) {
    for (int m = 0; m <= 4; ++m) {
      BigInt expect;
      mpz_bin_uiui(expect.get_mpz_t(), static_cast<unsigned long>(x), static_cast<unsigned long>(m));
      const std::vector<long> pt{x};
      CHECK(binomial_poly(1, 0, m).evaluate(pt) == BigRat(expect));
    }
  }
  CHECK_THROWS_AS(binomial_poly(1, 0, -1), UsageError);
}

TEST_CASE("nullspace") {
  SUBCASE("one-dimensional") {
    RatMatrix m{{BigRat(1), BigRat(2), BigRat(3)}, {BigRat(2), BigRat(4), BigRat(7)}};
    auto basis = solve_nullspace(m);
    REQUIRE(basis.size() == 1);
    CHECK(basis[0][0] / basis[0][1] == BigRat(-2));
    CHECK(basis[0][2] == 0);
  }
  SUBCASE("full rank") {
    RatMatrix m{{BigRat(1), BigRat(0)}, {BigRat(0), BigRat(1, 3)}};
    CHECK(solve_nullspace(m).empty());
  }
  SUBCASE("kernel vectors annihilate the matrix") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> d(-5, 5);
    for (int round = 0; round < 10; ++round) {
      RatMatrix m(3, std::vector<BigRat>(6));
      for (auto& row : m) {
        for (auto& x : row) x = make_rat(d(rng), 1 + std::abs(d(rng)));
      }
      auto basis = solve_nullspace(m);
      CHECK(basis.size() >= 3);
      for (const auto& v : basis) {
        for (const auto& row : m) {
          BigRat acc = 0;
          for (std::size_t j = 0; j < row.size(); ++j) acc += row[j] * v[j];
          CHECK(acc == 0);
        }
      }
    }
  }
  CHECK_THROWS_AS(solve_nullspace(RatMatrix{{BigRat(1)}, {BigRat(1), BigRat(2)}}), UsageError);
}

TEST_CASE("modular reconstruction") {
  for (const BigRat& q : {BigRat(3, 7), BigRat(-22, 5), BigRat(0), BigRat(123456789, 1000)}) {
    auto x = modp::reduce(q);
    REQUIRE(x.has_value());
    auto back = modp::reconstruct(*x);
    REQUIRE(back.has_value());
    CHECK(*back == q);
  }
  RatMatrix m{{BigRat(1), BigRat(1)}, {BigRat(2), BigRat(2)}};
  CHECK(rank_mod_prime(m) == std::optional<std::size_t>(1));
}

TEST_CASE("linear factor extraction") {
  const PolyA a1 = var(3, 0), a2 = var(3, 1), a3 = var(3, 2);
  const PolyA p = BigRat(-3) * a2 * a3 * lin(2, {2, 1, 1}) * lin(1, {1, 1, 0}) * lin(1, {1, 1, 0});
  const auto f = factor_linear(p);
  CHECK(f.complete());
  CHECK(f.linear.size() == 3);
  CHECK(f.monomial == Exponents{0, 1, 1});
  CHECK(expand(f) == p);
  const PolyA irreducible = a1 * a1 + a2 * a2 + num(3, 1);
  const auto g = factor_linear(irreducible * lin(3, {0, 0, 1}));
  CHECK_FALSE(g.complete());
  CHECK(expand(g) == irreducible * lin(3, {0, 0, 1}));
}
