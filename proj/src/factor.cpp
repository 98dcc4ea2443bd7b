#include "dyson/factor.hpp"

#include <numeric>
#include <random>

#include "dyson/errors.hpp"
#include "dyson/linalg.hpp"

namespace dyson {

namespace {

// p reduced mod the prime at `point`, or nothing if a coefficient's
// denominator is divisible by it.
std::optional<std::uint64_t> evaluate_mod(const PolyA& p, const std::vector<std::uint64_t>& point) {
  std::uint64_t acc = 0;
  for (const auto& [e, c] : p.terms()) {
    auto v = modp::reduce(c);
    if (!v) return std::nullopt;
    std::uint64_t term = *v;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i]) term = modp::mul(term, modp::pow(point[i], static_cast<std::uint64_t>(e[i])));
    }
    acc = modp::add(acc, term);
  }
  return acc;
}

std::uint64_t signed_mod(std::int64_t x) {
  const auto m = static_cast<std::int64_t>(modp::kPrime);
  std::int64_t r = x % m;
  if (r < 0) r += m;
  return static_cast<std::uint64_t>(r);
}

// Zero of `form` with all coordinates except the first used one random.
std::vector<std::uint64_t> point_on(const LinearForm& form, std::mt19937_64& rng) {
  const std::size_t n = form.nvars();
  std::vector<std::uint64_t> x(n);
  std::size_t pivot = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (form.coeffs[i] != 0 && pivot == n) {
      pivot = i;
      continue;
    }
    x[i] = rng() % modp::kPrime;
  }
  std::uint64_t rest = signed_mod(form.constant);
  for (std::size_t i = 0; i < n; ++i) {
    if (i != pivot) rest = modp::add(rest, modp::mul(signed_mod(form.coeffs[i]), x[i]));
  }
  x[pivot] = modp::mul(modp::sub(0, rest), modp::inv(signed_mod(form.coeffs[pivot])));
  return x;
}

}  // namespace

LinearFactorization factor_linear(const PolyA& p, int max_coeff, int max_constant) {
  if (p.is_zero()) throw DomainError("cannot factor the zero polynomial");
  const std::size_t n = p.nvars();
  LinearFactorization out;
  out.monomial.assign(n, 0);

  PolyA q = p.primitive();
  out.scalar = p.leading_coefficient() / q.leading_coefficient();
  for (std::size_t i = 0; i < n; ++i) {
    int lowest = q.degree_in(i);
    for (const auto& [e, c] : q.terms()) lowest = std::min(lowest, e[i]);
    out.monomial[i] = lowest;
  }
  {
    PolyA mono(n);
    mono.add_term(out.monomial, 1);
    q = exact_divide(q, mono);
  }
  if (max_constant < 0) max_constant = q.total_degree() + 8;

  std::mt19937_64 rng(0xfac7ULL);
  std::vector<std::int64_t> c(n, 0);
  // Odometer over coefficient vectors; the all-zero vector is skipped.
  auto next_coeffs = [&] {
    for (std::size_t i = n; i-- > 0;) {
      if (c[i] < max_coeff) {
        ++c[i];
        return true;
      }
      c[i] = 0;
    }
    return false;
  };
  while (q.total_degree() > 0 && next_coeffs()) {
    std::int64_t g = 0;
    int used = 0;
    for (auto x : c) {
      g = std::gcd(g, x);
      used += x != 0;
    }
    for (std::int64_t k = -max_constant; k <= max_constant && q.total_degree() > 0; ++k) {
      if (k == 0 && used == 1) continue;  // already taken out as a monomial
      if (std::gcd(g, k) != 1) continue;
      const LinearForm form{k, c};
      for (;;) {
        if (q.total_degree() == 0) break;
        bool maybe = true;
        for (int trial = 0; trial < 2 && maybe; ++trial) {
          auto v = evaluate_mod(q, point_on(form, rng));
          maybe = !v || *v == 0;
        }
        if (!maybe) break;
        auto quotient = try_divide(q, form.to_poly());
        if (!quotient) break;
        q = std::move(*quotient);
        out.linear.push_back(form);
      }
    }
  }
  const PolyA qp = q.primitive();
  out.scalar *= q.leading_coefficient() / qp.leading_coefficient();
  out.rest = qp;
  return out;
}

PolyA expand(const LinearFactorization& f) {
  PolyA mono(f.rest.nvars());
  mono.add_term(f.monomial, f.scalar);
  PolyA out = mono * f.rest;
  for (const auto& l : f.linear) out = out * l.to_poly();
  return out;
}

}  // namespace dyson
