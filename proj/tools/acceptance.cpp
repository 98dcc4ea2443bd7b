// Runs the acceptance criteria and prints one PASS/FAIL line each.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "dyson/conjecture.hpp"
#include "dyson/laurent.hpp"
#include "dyson/prover.hpp"
#include "dyson/turbo.hpp"

using namespace dyson;

namespace {

// Wall-clock limits in seconds.
constexpr double kLimitBase = 60;
constexpr double kLimitGuessProve = 60;
constexpr double kLimitSweep = 300;
constexpr double kLimitFour = 600;

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

PolyA var(std::size_t n, std::size_t i) { return PolyA::variable(n, i); }
PolyA lin(std::int64_t c, std::vector<std::int64_t> v) { return PolyA::linear(c, v); }
PolyA cst(std::size_t n, long c) { return PolyA::constant(n, BigRat(c)); }

BigInt oracle(const std::vector<long>& a, const BVector& b) {
  return ct_bruteforce(DysonInstance{std::vector<int>(a.begin(), a.end()), b});
}

Outcome base_theorem() {
  Outcome o;
  for (int n = 1; n <= 4; ++n) {
    std::vector<long> a(static_cast<std::size_t>(n), 0);
    for (;;) {
      o.require(oracle(a, BVector(a.size(), 0)) == multinomial(a), "mismatch at n=" + std::to_string(n));
      std::size_t i = 0;
      while (i < a.size() && a[i] == 3) a[i++] = 0;
      if (i == a.size()) break;
      ++a[i];
    }
  }
  return o;
}

Outcome good_example() {
  Outcome o;
  const BVector b{2, -1, -1};
  const auto g = guess_dyson(3, b);
  const RatFuncA expect(var(3, 1) * var(3, 2) * lin(2, {2, 1, 1}),
                        lin(1, {1, 1, 0}) * lin(1, {1, 0, 1}) * lin(1, {1, 0, 0}));
  o.require(g.form && g.form->r == expect, "guessed R differs");
  ResultStore store;
  const auto e = prove(3, b, store);
  o.require(e.certificate.valid() && e.form.r == expect, "certificate invalid");
  return o;
}

Outcome symmetry_examples() {
  Outcome o;
  ResultStore store;
  const auto seed = prove(3, std::vector<int>{-1, 0, 1}, store);
  o.require(seed.form.r == RatFuncA(-var(3, 0), lin(1, {0, 1, 1})), "(-1,0,1) differs");
  const auto e1 = prove(3, std::vector<int>{1, 0, -1}, store);
  const auto e2 = prove(3, std::vector<int>{0, -1, 1}, store);
  o.require(e1.form.r == RatFuncA(-var(3, 2), lin(1, {1, 1, 0})), "(1,0,-1) differs");
  o.require(e2.form.r == RatFuncA(-var(3, 1), lin(1, {1, 0, 1})), "(0,-1,1) differs");
  o.require(e1.provenance.kind == ProvenanceKind::permuted && e2.provenance.kind == ProvenanceKind::permuted,
            "derived forms were guessed");
  return o;
}

Outcome boundary_data() {
  Outcome o;
  const BVector b{2, -1, -1};
  const auto pk = pk_expansion(3, 0, b);
  const PolyA a2 = var(3, 1), a3 = var(3, 2);
  const PolyA half2 = BigRat(1, 2) * a2 * (a2 - cst(3, 1)), half3 = BigRat(1, 2) * a3 * (a3 - cst(3, 1));
  std::map<BVector, PolyA> got;
  for (const auto& t : pk.terms) got.emplace(t.shifted_b, t.coefficient);
  o.require(pk.terms.size() == 3, "expected three terms");
  o.require(got.count({-1, 1}) && got.at({-1, 1}) == half3, "a_3(a_3-1)/2 term");
  o.require(got.count({1, -1}) && got.at({1, -1}) == half2, "a_2(a_2-1)/2 term");
  o.require(got.count({0, 0}) && got.at({0, 0}) == a2 * a3, "a_2 a_3 term");
  o.require(pk_expansion(3, 1, b).terms.empty() && pk_expansion(3, 2, b).terms.empty(), "k=2,3 not empty");
  return o;
}

Outcome ansatz_example() {
  Outcome o;
  const PolyA a1 = var(4, 0), a3 = var(4, 2);
  const RatFuncA expect(a1 * (a1 - cst(4, 1)) * a3,
                        lin(1, {0, 1, 1, 1}) * lin(2, {0, 1, 1, 1}) * lin(3, {0, 1, 1, 1}) * lin(1, {1, 1, 0, 1}));
  o.require(ansatz_factor(std::vector<int>{-3, 2, -1, 2}).value == expect, "factor differs");
  return o;
}

Outcome ansatz_speedup() {
  Outcome o;
  const BVector b{4, -2, -2};
  GuessOptions plain;
  plain.use_ansatz = false;
  const auto with = guess_dyson(3, b);
  const auto without = guess_dyson(3, b, plain);
  o.require(with.form && without.form, "a mode failed to fit");
  if (!o.ok) return o;
  o.require(with.total_degree < without.total_degree, "degree not smaller");
  o.require(with.unknowns < without.unknowns, "unknowns not fewer");
  o.require(with.form->r == without.form->r, "modes disagree");
  o.detail = "t=" + std::to_string(with.total_degree) + " vs " + std::to_string(without.total_degree) +
             ", unknowns " + std::to_string(with.unknowns) + " vs " + std::to_string(without.unknowns) +
             ", samples " + std::to_string(with.samples.size()) + " vs " + std::to_string(without.samples.size());
  return o;
}

Outcome two_variable_form() {
  Outcome o;
  for (int b1 = -4; b1 <= 4; ++b1) {
    const BVector b{b1, -b1};
    for (long x = 0; x <= 6; ++x) {
      for (long y = 0; y <= 6; ++y) {
        const std::vector<long> a{x, y};
        o.require(c2_value(a, b) == oracle(a, b), "mismatch at b1=" + std::to_string(b1));
      }
    }
  }
  return o;
}

Outcome sweep() {
  Outcome o;
  ResultStore store;
  const auto report = turbo_dyson(3, 2, store);
  o.require(report.failures == 0, "sweep failures");
  std::size_t count = 0;
  for (const auto& e : store.entries()) {
    if (e.form.n != 3) continue;
    ++count;
    o.require(e.certificate.valid(), "invalid certificate " + format_vector(e.form.b));
    for (long s = 0; s < 5; ++s) {
      const std::vector<long> a{s % 4, (s + 1) % 3, (2 * s + 1) % 4};
      o.require(e.form.evaluate(a) == BigRat(oracle(a, e.form.b)), "oracle mismatch " + format_vector(e.form.b));
    }
  }
  o.require(count == 19, std::to_string(count) + " entries");
  if (o.ok) o.detail = std::to_string(count) + " entries";
  return o;
}

Outcome wrong_form() {
  Outcome o;
  const ClosedForm wrong{3, {2, -1, -1}, RatFuncA::one(3)};
  o.require(check_recursion(wrong).ok, "recursion rejected R=1");
  const Resolver c2 = [](int, const BVector& b) -> std::optional<ClosedForm> { return c2_closed_form(b); };
  o.require(!check_boundary(wrong, 2, c2).verdict.ok, "boundary k=2 accepted R=1");
  return o;
}

bool bottoms_out(const DependencyNode& d) {
  if (d.n == 2) return d.deps.empty();
  if (d.deps.empty()) return false;
  for (const auto& c : d.deps) {
    if (c.n != d.n - 1 || !bottoms_out(c)) return false;
  }
  return true;
}

Outcome four_variables() {
  Outcome o;
  ResultStore store;
  const BVector b{1, -1, 0, 0};
  const auto e = prove(4, b, store);
  o.require(e.certificate.valid(), "invalid certificate");
  o.require(bottoms_out(DependencyNode{4, b, e.certificate.dependencies}), "tree does not end at n=2");
  for (const std::vector<long>& a : {std::vector<long>{1, 1, 1, 1}, {2, 1, 1, 1}}) {
    o.require(e.form.evaluate(a) == BigRat(oracle(a, b)), "oracle mismatch");
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit;  // seconds; 0 = none
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "base theorem against expansion, n<=4, a_i<=3", kLimitBase, base_theorem},
      {2, "closed form for (2,-1,-1) guessed and proved", kLimitGuessProve, good_example},
      {3, "forms for (-1,0,1), (1,0,-1), (0,-1,1); last two by relabeling", 0, symmetry_examples},
      {4, "boundary coefficients for (2,-1,-1)", 0, boundary_data},
      {5, "ansatz factor for (-3,2,-1,2)", 0, ansatz_example},
      {6, "ansatz fits (4,-2,-2) at smaller degree with equal R", 0, ansatz_speedup},
      {7, "two-variable closed form vs expansion, a_i<=6, |b_1|<=4", 0, two_variable_form},
      {8, "sweep n=3 C=2: 19 certified entries matching the oracle", kLimitSweep, sweep},
      {9, "R=1 for (2,-1,-1) passes recursion, fails boundary k=2", 0, wrong_form},
      {10, "prove (1,-1,0,0) with dependency tree down to n=2", kLimitFour, four_variables},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit > 0 && secs > c.limit) {
      o.ok = false;
      o.detail = "over the time limit";
    }
    if (!o.ok) ++failures;
    std::printf("%s %2d %s (%.2fs)%s%s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.empty() ? "" : ": ",
                o.detail.c_str());
  }
  return failures ? 1 : 0;
}
