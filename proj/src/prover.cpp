#include "dyson/prover.hpp"

#include <algorithm>
#include <map>

#include "dyson/factor.hpp"
#include "dyson/laurent.hpp"

namespace dyson {

namespace {

void check_form(const ClosedForm& form) {
  if (form.n < 2) throw UsageError("closed forms need n >= 2");
  if (form.b.size() != static_cast<std::size_t>(form.n)) throw UsageError("b must have n components");
  if (form.r.nvars() != static_cast<std::size_t>(form.n)) throw UsageError("R must be over n variables");
}

PolyA sum_of_variables(std::size_t n) {
  PolyA s(n);
  for (std::size_t i = 0; i < n; ++i) s += PolyA::variable(n, i);
  return s;
}

// Images for a_k -> 0 followed by renumbering the other variables.
std::vector<PolyA> drop_variable(std::size_t n, std::size_t k) {
  std::vector<PolyA> images;
  images.reserve(n);
  std::size_t next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    images.push_back(i == k ? PolyA(n - 1) : PolyA::variable(n - 1, next++));
  }
  return images;
}

Verdict compare(const RatFuncA& lhs, const RatFuncA& rhs) {
  Verdict v;
  v.lhs = lhs.to_string();
  v.rhs = rhs.to_string();
  v.ok = lhs == rhs;
  if (!v.ok) v.note = "difference " + (lhs - rhs).to_string();
  return v;
}

bool tree_ok(const DependencyNode& node) {
  if (node.n < 2 || node.b.size() != static_cast<std::size_t>(node.n)) return false;
  if (node.n == 2) return node.deps.empty();
  return std::all_of(node.deps.begin(), node.deps.end(), [&](const DependencyNode& d) {
    return d.n == node.n - 1 && tree_ok(d);
  });
}

}  // namespace

ClosedForm c2_closed_form(std::span<const int> b) {
  if (b.size() != 2) throw UsageError("c2_closed_form needs a pair");
  ClosedForm form{2, BVector(b.begin(), b.end()), RatFuncA::zero(2)};
  if (b[0] != -b[1]) return form;
  const RatFuncA den = rising_factorial(LinearForm{1, {1, 0}}, b[0]) *
                       rising_factorial(LinearForm{1, {0, 1}}, -b[0]);
  const RatFuncA sign = RatFuncA(PolyA::constant(2, b[0] % 2 == 0 ? 1 : -1));
  form.r = sign / den;
  return form;
}

BigInt c2_value(std::span<const long> a, std::span<const int> b) {
  if (a.size() != 2 || b.size() != 2) throw UsageError("c2_value needs pairs");
  if (a[0] < 0 || a[1] < 0) throw UsageError("c2_value needs nonnegative a");
  if (b[0] != -b[1]) return 0;
  const long top = a[0] + b[0];
  const long bottom = a[1] - b[0];
  if (top < 0 || bottom < 0) return 0;
  BigInt v;
  mpz_bin_uiui(v.get_mpz_t(), static_cast<unsigned long>(a[0] + a[1]), static_cast<unsigned long>(top));
  return b[0] % 2 == 0 ? v : BigInt(-v);
}

Verdict check_recursion(const ClosedForm& form) {
  check_form(form);
  const auto n = static_cast<std::size_t>(form.n);
  const RatFuncA lhs = RatFuncA(sum_of_variables(n)) * form.r;
  RatFuncA rhs = RatFuncA::zero(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<PolyA> images;
    for (std::size_t j = 0; j < n; ++j) {
      PolyA x = PolyA::variable(n, j);
      if (j == i) x -= PolyA::constant(n, 1);
      images.push_back(std::move(x));
    }
    rhs += RatFuncA(PolyA::variable(n, i)) * form.r.compose(images);
  }
  return compare(lhs, rhs);
}

BoundaryRecord check_boundary(const ClosedForm& form, int k, const Resolver& lower) {
  check_form(form);
  if (form.n < 3) throw UsageError("boundary conditions are checked for n >= 3");
  if (k < 1 || k > form.n) throw UsageError("boundary index out of range");
  const auto n = static_cast<std::size_t>(form.n);
  const auto kk = static_cast<std::size_t>(k - 1);
  const auto images = drop_variable(n, kk);

  BoundaryRecord rec;
  rec.k = k;
  const PkExpansion pk = pk_expansion(form.n, static_cast<int>(kk), form.b);
  std::vector<ClosedForm> forms;
  std::vector<BVector> missing;
  for (const auto& t : pk.terms) {
    rec.terms.push_back(BoundaryTerm{t.composition, t.shifted_b});
    auto f = lower(form.n - 1, t.shifted_b);
    if (!f) {
      if (std::find(missing.begin(), missing.end(), t.shifted_b) == missing.end()) missing.push_back(t.shifted_b);
      continue;
    }
    forms.push_back(std::move(*f));
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& m : missing) list += (list.empty() ? "" : " ") + format_vector(m);
    throw UnresolvedDependency("missing closed forms at n=" + std::to_string(form.n - 1) + ": " + list);
  }

  const RatFuncA lhs = form.r.compose(images);
  RatFuncA rhs = RatFuncA::zero(n - 1);
  for (std::size_t i = 0; i < pk.terms.size(); ++i) {
    if (forms[i].r.is_zero()) continue;
    rhs += RatFuncA(pk.terms[i].coefficient.compose(images)) * forms[i].r;
  }
  rec.verdict = compare(lhs, rhs);
  return rec;
}

InitialRecord check_initial(const ClosedForm& form) {
  check_form(form);
  const auto n = static_cast<std::size_t>(form.n);
  InitialRecord rec;
  const std::vector<long> origin(n, 0);
  const bool expect_one = std::all_of(form.b.begin(), form.b.end(), [](int x) { return x == 0; });
  if (form.r.is_zero()) {
    rec.value = 0;
  } else if (form.r.den().evaluate(origin) != 0) {
    rec.value = form.r.evaluate(origin);
  } else {
    // Limit along a = (s, ..., s) as s -> 0.
    rec.by_limit = true;
    try {
      const std::vector<PolyA> ray(n, PolyA::variable(1, 0));
      const RatFuncA along = form.r.compose(ray);
      const std::vector<long> zero{0};
      if (along.den().evaluate(zero) == 0) {
        rec.verdict.note = "no finite limit at a = 0";
        return rec;
      }
      rec.value = along.evaluate(zero);
    } catch (const DomainError& e) {
      rec.verdict.note = e.what();
      return rec;
    }
  }
  rec.verdict.lhs = to_string(rec.value);
  rec.verdict.rhs = expect_one ? "1" : "0";
  rec.verdict.ok = rec.value == (expect_one ? 1 : 0);
  if (!rec.verdict.ok) rec.verdict.note = "d_n(0; b) = " + to_string(rec.value);
  return rec;
}

std::string to_string(DenominatorGuarantee g) {
  switch (g) {
    case DenominatorGuarantee::linear_factors: return "linear-factors";
    case DenominatorGuarantee::grid: return "grid";
    case DenominatorGuarantee::none: return "none";
  }
  return "none";
}

std::optional<DenominatorGuarantee> guarantee_from_string(const std::string& s) {
  for (auto g : {DenominatorGuarantee::linear_factors, DenominatorGuarantee::grid, DenominatorGuarantee::none}) {
    if (to_string(g) == s) return g;
  }
  return std::nullopt;
}

DenominatorRecord check_denominator_safety(const ClosedForm& form) {
  check_form(form);
  DenominatorRecord rec;
  const PolyA& den = form.r.den();
  if (den.is_constant()) {
    rec.safe = true;
    rec.guarantee = DenominatorGuarantee::linear_factors;
    return rec;
  }
  long bound = form.n;
  for (int x : form.b) bound += std::abs(x);
  const LinearFactorization f = factor_linear(den, 2, static_cast<int>(bound) + den.total_degree() + 2);
  const bool syntactic = f.complete() &&
                         std::all_of(f.monomial.begin(), f.monomial.end(), [](int e) { return e == 0; }) &&
                         std::all_of(f.linear.begin(), f.linear.end(), [](const LinearForm& l) {
                           return l.constant > 0 && std::all_of(l.coeffs.begin(), l.coeffs.end(),
                                                                [](std::int64_t c) { return c >= 0; });
                         });
  if (syntactic) {
    rec.safe = true;
    rec.guarantee = DenominatorGuarantee::linear_factors;
    return rec;
  }
  std::vector<long> a(static_cast<std::size_t>(form.n), 0);
  for (;;) {
    if (den.evaluate(a) == 0) {
      rec.zero = a;
      return rec;
    }
    std::size_t i = 0;
    while (i < a.size() && a[i] == bound) a[i++] = 0;
    if (i == a.size()) break;
    ++a[i];
  }
  rec.safe = true;
  rec.guarantee = DenominatorGuarantee::grid;
  return rec;
}

bool ProofCertificate::valid() const {
  if (base) return form.n == 2 && form == c2_closed_form(form.b) && dependencies.empty();
  if (form.n < 3 || boundary_ok.size() != static_cast<std::size_t>(form.n)) return false;
  if (!recursion_ok || !initial_ok || !denominator_safe) return false;
  if (!std::all_of(boundary_ok.begin(), boundary_ok.end(), [](bool x) { return x; })) return false;
  return std::all_of(dependencies.begin(), dependencies.end(), [&](const DependencyNode& d) {
    return d.n == form.n - 1 && tree_ok(d);
  });
}

ProofCertificate base_certificate(std::span<const int> b) {
  ProofCertificate cert;
  cert.form = c2_closed_form(b);
  cert.base = true;
  cert.recursion_ok = cert.initial_ok = cert.denominator_safe = true;
  cert.boundary_ok = {true, true};
  cert.guarantee = DenominatorGuarantee::linear_factors;
  return cert;
}

std::vector<BVector> boundary_dependencies(int n, std::span<const int> b) {
  std::vector<BVector> out;
  if (n < 3) return out;
  for (int k = 0; k < n; ++k) {
    for (const auto& t : pk_expansion(n, k, b).terms) {
      if (std::find(out.begin(), out.end(), t.shifted_b) == out.end()) out.push_back(t.shifted_b);
    }
  }
  return out;
}

ProofCertificate certify(const ClosedForm& form, const DependencyResolver& lower, Sabotage sabotage) {
  check_form(form);
  if (form.n == 2) {
    ProofCertificate cert = base_certificate(form.b);
    if (!(cert.form == form)) {
      cert.form = form;
      cert.base = false;
      cert.recursion_ok = cert.initial_ok = cert.denominator_safe = false;
      cert.boundary_ok = {false, false};
    }
    return cert;
  }

  std::map<BVector, ResolvedDependency> resolved;
  std::vector<BVector> missing;
  const auto deps = boundary_dependencies(form.n, form.b);
  for (const auto& d : deps) {
    auto r = lower(form.n - 1, d);
    if (r) resolved.emplace(d, std::move(*r));
    else missing.push_back(d);
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& m : missing) list += (list.empty() ? "" : " ") + format_vector(m);
    throw UnresolvedDependency("missing closed forms at n=" + std::to_string(form.n - 1) + ": " + list);
  }
  const Resolver lookup = [&](int, const BVector& b) -> std::optional<ClosedForm> {
    auto it = resolved.find(b);
    if (it == resolved.end()) return std::nullopt;
    return it->second.form;
  };

  ProofCertificate cert;
  cert.form = form;
  cert.recursion = check_recursion(form);
  cert.recursion_ok = cert.recursion.ok;
  for (int k = 1; k <= form.n; ++k) {
    cert.boundaries.push_back(check_boundary(form, k, lookup));
    cert.boundary_ok.push_back(cert.boundaries.back().verdict.ok);
  }
  const InitialRecord init = check_initial(form);
  cert.initial_ok = init.verdict.ok;
  cert.initial_by_limit = init.by_limit;
  cert.initial_value = init.value;
  const DenominatorRecord den = check_denominator_safety(form);
  cert.denominator_safe = den.safe;
  cert.guarantee = den.guarantee;
  for (const auto& d : deps) cert.dependencies.push_back(resolved.at(d).node);

  switch (sabotage) {
    case Sabotage::none: break;
    case Sabotage::recursion: cert.recursion_ok = !cert.recursion_ok; break;
    case Sabotage::boundary: cert.boundary_ok.front() = !cert.boundary_ok.front(); break;
    case Sabotage::initial: cert.initial_ok = !cert.initial_ok; break;
    case Sabotage::denominator: cert.denominator_safe = !cert.denominator_safe; break;
  }
  return cert;
}

ProofFailure::ProofFailure(std::string check, int k, std::string difference)
    : MathFailure("check " + check + (k ? " k=" + std::to_string(k) : std::string()) + " failed: " + difference),
      check_(std::move(check)),
      k_(k),
      difference_(std::move(difference)) {}

void require_valid(const ProofCertificate& cert) {
  if (cert.valid()) return;
  if (cert.form.n == 2) throw ProofFailure("base", 0, "form differs from the n=2 closed form");
  if (!cert.denominator_safe) throw ProofFailure("denominator", 0, "denominator " + cert.form.r.den().to_string() + " may vanish");
  if (!cert.recursion_ok) throw ProofFailure("recursion", 0, cert.recursion.note.empty() ? "negated" : cert.recursion.note);
  for (std::size_t k = 0; k < cert.boundary_ok.size(); ++k) {
    if (!cert.boundary_ok[k]) {
      const std::string& note = k < cert.boundaries.size() ? cert.boundaries[k].verdict.note : std::string();
      throw ProofFailure("boundary", static_cast<int>(k) + 1, note.empty() ? "negated" : note);
    }
  }
  if (!cert.initial_ok) throw ProofFailure("initial", 0, "d_n(0; b) = " + to_string(cert.initial_value));
  throw ProofFailure("dependencies", 0, "dependency tree does not end at n=2");
}

}  // namespace dyson
