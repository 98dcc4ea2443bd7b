#include "doctest.h"

#include <set>

#include "dyson/errors.hpp"
#include "dyson/prover.hpp"
#include "dyson/turbo.hpp"
#include "support.hpp"

using namespace dyson;
using namespace dyson::test;

namespace {

std::optional<ResolvedDependency> c2_resolver(int n, const BVector& b) {
  if (n != 2) return std::nullopt;
  return ResolvedDependency{c2_closed_form(b), DependencyNode{2, b, {}}};
}

std::optional<ClosedForm> c2_lookup(int n, const BVector& b) {
  if (n != 2) return std::nullopt;
  return c2_closed_form(b);
}

ClosedForm form_2m1m1() {
  return ClosedForm{3, {2, -1, -1},
                    RatFuncA(var(3, 1) * var(3, 2) * lin(2, {2, 1, 1}),
                             lin(1, {1, 1, 0}) * lin(1, {1, 0, 1}) * lin(1, {1, 0, 0}))};
}

// d(a) = sum_i d(a - e_i) at points with every a_i >= 1.
bool recursion_pointwise(const ClosedForm& f, int points) {
  int used = 0;
  for (long s = 0; used < points && s < 40; ++s) {
    std::vector<long> a(static_cast<std::size_t>(f.n));
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = 1 + (s * static_cast<long>(2 * i + 3) + static_cast<long>(i)) % 6;
    try {
      BigRat rhs = 0;
      for (std::size_t i = 0; i < a.size(); ++i) {
        auto m = a;
        --m[i];
        rhs += f.evaluate(m);
      }
      if (f.evaluate(a) != rhs) return false;
      ++used;
    } catch (const DomainError&) {
    }
  }
  return used == points;
}

}  // namespace

TEST_CASE("two-variable closed form matches the oracle") {
  for (int b1 = -4; b1 <= 4; ++b1) {
    const std::vector<int> b{b1, -b1};
    const ClosedForm c2 = c2_closed_form(b);
    for (long x = 0; x <= 6; ++x) {
      for (long y = 0; y <= 6; ++y) {
        const std::vector<long> a{x, y};
        const BigInt expect = ct_at(a, b);
        CHECK(c2_value(a, b) == expect);
        if (c2.r.den().evaluate(a) != 0) CHECK(c2.evaluate(a) == BigRat(expect));
      }
    }
  }
  CHECK(c2_closed_form(std::vector<int>{1, 0}).r.is_zero());
}

TEST_CASE("recursion check") {
  CHECK(check_recursion(ClosedForm{3, {0, 0, 0}, RatFuncA::one(3)}).ok);
  CHECK(check_recursion(form_2m1m1()).ok);
  CHECK(check_recursion(ClosedForm{3, {2, -1, -1}, RatFuncA::one(3)}).ok);
  const auto bad = check_recursion(ClosedForm{3, {0, 0, 0}, RatFuncA(var(3, 0))});
  CHECK_FALSE(bad.ok);
  CHECK_FALSE(bad.note.empty());
}

TEST_CASE("symbolic and pointwise recursion checks agree") {
  const std::vector<ClosedForm> forms{
      form_2m1m1(),
      ClosedForm{3, {0, 0, 0}, RatFuncA::one(3)},
      ClosedForm{3, {-1, 0, 1}, RatFuncA(-var(3, 0), lin(1, {0, 1, 1}))},
      ClosedForm{3, {-1, 0, 1}, RatFuncA(-var(3, 0), lin(2, {0, 1, 1}))},
      ClosedForm{3, {0, 0, 0}, RatFuncA(var(3, 0) + num(3, 1))},
      ClosedForm{3, {0, 0, 0}, RatFuncA(num(3, 1), lin(1, {1, 1, 1}))},
  };
  for (const auto& f : forms) CHECK(check_recursion(f).ok == recursion_pointwise(f, 20));
}

TEST_CASE("R = 1 for (2,-1,-1) satisfies the recursion but not the boundary") {
  const ClosedForm wrong{3, {2, -1, -1}, RatFuncA::one(3)};
  CHECK(check_recursion(wrong).ok);
  CHECK_FALSE(check_boundary(wrong, 2, c2_lookup).verdict.ok);
  const auto cert = certify(wrong, c2_resolver);
  CHECK_FALSE(cert.valid());
  CHECK_THROWS_AS(require_valid(cert), ProofFailure);
}

TEST_CASE("boundary checks for the true (2,-1,-1) form") {
  const ClosedForm f = form_2m1m1();
  const auto k1 = check_boundary(f, 1, c2_lookup);
  CHECK(k1.verdict.ok);
  CHECK(k1.terms.size() == 3);
  CHECK(check_boundary(f, 2, c2_lookup).terms.empty());
  CHECK(check_boundary(f, 3, c2_lookup).verdict.ok);
  CHECK_THROWS_AS(check_boundary(f, 1, [](int, const BVector&) { return std::optional<ClosedForm>(); }),
                  UnresolvedDependency);
  CHECK_THROWS_AS(check_boundary(f, 4, c2_lookup), UsageError);
}

TEST_CASE("negative b_k: boundary passes exactly when R vanishes at a_k = 0") {
  const std::vector<ClosedForm> forms{
      form_2m1m1(),
      ClosedForm{3, {2, -1, -1}, RatFuncA::one(3)},
      ClosedForm{3, {-1, 0, 1}, RatFuncA(-var(3, 0), lin(1, {0, 1, 1}))},
      ClosedForm{3, {-1, 0, 1}, RatFuncA(var(3, 1), lin(1, {0, 1, 1}))},
  };
  for (const auto& f : forms) {
    for (int k = 1; k <= 3; ++k) {
      if (f.b[static_cast<std::size_t>(k - 1)] >= 0) continue;
      std::vector<PolyA> images;
      for (std::size_t i = 0; i < 3; ++i) images.push_back(i + 1 == static_cast<std::size_t>(k) ? PolyA(3) : var(3, i));
      const auto rec = check_boundary(f, k, c2_lookup);
      CHECK(rec.terms.empty());
      CHECK(rec.verdict.ok == f.r.compose(images).is_zero());
    }
  }
}

TEST_CASE("initial condition") {
  const auto one = check_initial(ClosedForm{3, {0, 0, 0}, RatFuncA::one(3)});
  CHECK(one.verdict.ok);
  CHECK(one.value == 1);
  const auto zero = check_initial(form_2m1m1());
  CHECK(zero.verdict.ok);
  CHECK(zero.value == 0);
  CHECK_FALSE(check_initial(ClosedForm{3, {2, -1, -1}, RatFuncA::one(3)}).verdict.ok);
}

TEST_CASE("denominator safety") {
  const auto ok = check_denominator_safety(ClosedForm{3, {0, 0, 0}, RatFuncA::one(3)});
  CHECK(ok.safe);
  CHECK(ok.guarantee == DenominatorGuarantee::linear_factors);
  CHECK(check_denominator_safety(form_2m1m1()).guarantee == DenominatorGuarantee::linear_factors);
  const auto diag = check_denominator_safety(ClosedForm{3, {0, 0, 0}, RatFuncA(num(3, 1), var(3, 0) - var(3, 1))});
  CHECK_FALSE(diag.safe);
  CHECK(diag.guarantee == DenominatorGuarantee::none);
  REQUIRE(diag.zero.size() == 3);
  CHECK(diag.zero[0] == diag.zero[1]);
}

TEST_CASE("certificates") {
  SUBCASE("(2,-1,-1)") {
    const auto cert = certify(form_2m1m1(), c2_resolver);
    CHECK(cert.valid());
    std::set<BVector> deps;
    for (const auto& d : cert.dependencies) deps.insert(d.b);
    CHECK(deps == std::set<BVector>{{1, -1}, {-1, 1}, {0, 0}});
  }
  SUBCASE("zero form for (1,0,0)") {
    const auto cert = certify(ClosedForm::zero(3, {1, 0, 0}), c2_resolver);
    CHECK(cert.valid());
  }
  SUBCASE("n = 2 base") {
    CHECK(base_certificate(std::vector<int>{2, -2}).valid());
    CHECK_FALSE(certify(ClosedForm{2, {1, -1}, RatFuncA::one(2)}, c2_resolver).valid());
  }
}

TEST_CASE("no certificate survives a negated check") {
  for (auto s : {Sabotage::recursion, Sabotage::boundary, Sabotage::initial, Sabotage::denominator}) {
    const auto cert = certify(form_2m1m1(), c2_resolver, s);
    CHECK_FALSE(cert.valid());
    CHECK_THROWS_AS(require_valid(cert), ProofFailure);
  }
}

TEST_CASE("proof failures name the check") {
  const auto cert = certify(ClosedForm{3, {2, -1, -1}, RatFuncA::one(3)}, c2_resolver);
  try {
    require_valid(cert);
    FAIL("expected a failure");
  } catch (const ProofFailure& e) {
    CHECK(e.check() == "boundary");
    CHECK(e.k() >= 1);
    CHECK_FALSE(cert.boundary_ok[1]);
    CHECK_FALSE(e.difference().empty());
  }
}

TEST_CASE("certified forms agree with the oracle everywhere tested") {
  ResultStore store;
  turbo_dyson(3, 2, store);
  int checked = 0;
  for (const auto& e : store.entries()) {
    if (e.form.n != 3) continue;
    for (long x = 0; x <= 3; ++x) {
      for (long y = 0; y <= 3; ++y) {
        for (long z = 0; z <= 3; ++z) {
          const std::vector<long> a{x, y, z};
          CHECK(e.form.evaluate(a) == BigRat(ct_at(a, e.form.b)));
          ++checked;
        }
      }
    }
  }
  CHECK(checked == 19 * 64);
}

TEST_CASE("four-variable proof") {
  ResultStore store;
  const auto e = prove(4, std::vector<int>{1, -1, 0, 0}, store);
  CHECK(e.certificate.valid());
  REQUIRE_FALSE(e.certificate.dependencies.empty());
  for (const auto& d : e.certificate.dependencies) {
    CHECK(d.n == 3);
    for (const auto& dd : d.deps) CHECK(dd.n == 2);
  }
  for (const std::vector<long>& a : {std::vector<long>{1, 1, 1, 1}, {2, 1, 1, 1}}) {
    CHECK(e.form.evaluate(a) == BigRat(ct_at(a, e.form.b)));
  }
}

TEST_CASE("with several zero coordinates every choice of k gives the same value") {
  for (const auto& b : zero_sum_vectors(3, 2)) {
    for (long z = 0; z <= 3; ++z) {
      for (const std::vector<long>& a : {std::vector<long>{0, 0, z}, {0, z, 0}, {z, 0, 0}}) {
        const BigInt expect = ct_at(a, b);
        for (int k = 0; k < 3; ++k) {
          if (a[static_cast<std::size_t>(k)] != 0) continue;
          std::vector<long> rest;
          for (int i = 0; i < 3; ++i) {
            if (i != k) rest.push_back(a[static_cast<std::size_t>(i)]);
          }
          BigRat rhs = 0;
          for (const auto& t : pk_expansion(3, k, b).terms) {
            rhs += t.coefficient.evaluate(a) * BigRat(c2_value(rest, t.shifted_b));
          }
          CHECK(rhs == BigRat(expect));
        }
      }
    }
  }
}
