#include "dyson/conjecture.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <random>
#include <thread>

#include "dyson/errors.hpp"
#include "dyson/laurent.hpp"
#include "dyson/linalg.hpp"

namespace dyson {

namespace {

int floor_half(int x) { return x >= 0 ? x / 2 : -((-x + 1) / 2); }

void check_b(int n, std::span<const int> b) {
  if (b.size() != static_cast<std::size_t>(n)) throw UsageError("b must have n components");
}

// All exponent vectors over n variables with total degree <= d.
std::vector<Exponents> monomials_up_to(int n, int d) {
  std::vector<Exponents> out;
  Exponents e(static_cast<std::size_t>(n), 0);
  auto rec = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == n) {
      out.push_back(e);
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      e[pos] = v;
      self(self, pos + 1, remaining - v);
    }
    e[pos] = 0;
  };
  rec(rec, 0, d);
  std::sort(out.begin(), out.end(), GrlexGreater{});
  return out;
}

std::size_t binom_size(int n, int d) {
  // C(d + n, n)
  BigInt c;
  mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(d + n), static_cast<unsigned long>(n));
  return c.get_ui();
}

BigInt monomial_value(const Exponents& e, const APoint& p) {
  BigInt v = 1;
  BigInt pw;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(p[i]), static_cast<unsigned long>(e[i]));
    v *= pw;
  }
  return v;
}

PolyA assemble(int n, const std::vector<Exponents>& monos, std::span<const BigRat> coeffs) {
  PolyA p(static_cast<std::size_t>(n));
  for (std::size_t k = 0; k < monos.size(); ++k) p.add_term(monos[k], coeffs[k]);
  return p;
}

bool ansatz_defined(const RatFuncA& ansatz, const APoint& a) {
  return ansatz.num().evaluate(a) != 0 && ansatz.den().evaluate(a) != 0;
}

long lower_bound_of(std::span<const int> b) {
  long lower = 2;
  for (int x : b) lower = std::max<long>(lower, std::abs(x));
  return lower;
}

std::vector<BigRat> evaluate_samples(const std::vector<APoint>& points, std::span<const int> b,
                                     const RatFuncA& ansatz, unsigned threads) {
  std::vector<BigRat> out(points.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    try {
      for (std::size_t i = next++; i < points.size(); i = next++) {
        const APoint& a = points[i];
        DysonInstance inst{std::vector<int>(a.begin(), a.end()), std::vector<int>(b.begin(), b.end())};
        const BigInt ct = ct_bruteforce(inst);
        out[i] = BigRat(ct) / (BigRat(multinomial(a)) * ansatz.evaluate(a));
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };
  unsigned workers = threads ? threads : std::max(1U, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, points.size()));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
  if (!points.empty()) worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

void extend_samples(SampleSet& samples, int n, std::span<const int> b, const RatFuncA& ansatz,
                    std::size_t count, unsigned threads) {
  if (samples.size() >= count) return;
  std::vector<APoint> grid = sample_grid(n, b, count);
  grid.erase(grid.begin(), grid.begin() + static_cast<std::ptrdiff_t>(samples.size()));
  auto values = evaluate_samples(grid, b, ansatz, threads);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    samples.points.push_back(std::move(grid[i]));
    samples.values.push_back(std::move(values[i]));
  }
}

}  // namespace

AnsatzFactor ansatz_factor(std::span<const int> b) {
  const std::size_t n = b.size();
  RatFuncA value = RatFuncA::one(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (b[i] >= 0) continue;
    LinearForm own{1, std::vector<std::int64_t>(n, 0)};
    own.coeffs[i] = 1;
    LinearForm rest{1, std::vector<std::int64_t>(n, 1)};
    rest.coeffs[i] = 0;
    value = value / (rising_factorial(own, floor_half(b[i])) * rising_factorial(rest, -b[i]));
  }
  return AnsatzFactor{BVector(b.begin(), b.end()), std::move(value)};
}

std::vector<APoint> sample_grid(int n, std::span<const int> b, std::size_t count) {
  check_b(n, b);
  const long lower = lower_bound_of(b);
  const RatFuncA ansatz = ansatz_factor(b).value;

  std::vector<APoint> out;
  APoint v(static_cast<std::size_t>(n), 0);
  bool done = count == 0;
  auto emit = [&] {
    // a = L + (0, 1, ..., n-1) + v. A translate of the simplex, so each
    // completed level is unisolvent; the stagger keeps most points off the
    // diagonals.
    APoint a(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) a[i] = lower + static_cast<long>(i) + v[i];
    if (!ansatz_defined(ansatz, a)) return;
    out.push_back(std::move(a));
    done = out.size() >= count;
  };
  auto rec = [&](auto&& self, int pos, long remaining) -> void {
    if (done) return;
    if (pos == n - 1) {
      v[pos] = remaining;
      emit();
      return;
    }
    for (long x = 0; x <= remaining && !done; ++x) {
      v[pos] = x;
      self(self, pos + 1, remaining - x);
    }
  };
  for (long s = 0; !done; ++s) rec(rec, 0, s);
  return out;
}

std::vector<APoint> holdout_points(int n, std::span<const int> b, std::size_t count, int t) {
  check_b(n, b);
  const long lower = lower_bound_of(b);
  const auto width = static_cast<std::uint64_t>(t + 8);
  const RatFuncA ansatz = ansatz_factor(b).value;
  std::mt19937_64 rng(0x5eedULL + static_cast<std::uint64_t>(t));
  std::vector<APoint> out;
  while (out.size() < count) {
    APoint a(static_cast<std::size_t>(n));
    for (auto& x : a) x = lower + static_cast<long>(rng() % width);
    if (ansatz_defined(ansatz, a)) out.push_back(std::move(a));
  }
  return out;
}

SampleSet collect_samples(int n, std::span<const int> b, const RatFuncA& ansatz,
                          std::size_t count, unsigned threads) {
  SampleSet s;
  extend_samples(s, n, b, ansatz, count, threads);
  return s;
}

std::size_t samples_needed(int n, int t) {
  return binom_size(n, t) + 1 + 2 + kHoldout;
}

FitResult fit_rational(const SampleSet& samples, int t) {
  FitResult result;
  if (t < 0) throw UsageError("total degree must be nonnegative");
  if (samples.points.size() != samples.values.size()) throw UsageError("sample points and values differ in count");
  if (samples.size() <= kHoldout) {
    result.status = FitStatus::need_more_samples;
    result.samples_required = samples_needed(samples.points.empty() ? 1 : static_cast<int>(samples.points[0].size()), t);
    return result;
  }
  const int n = static_cast<int>(samples.points.front().size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (std::size_t j = i + 1; j < samples.size(); ++j) {
      if (samples.points[i] == samples.points[j] && samples.values[i] != samples.values[j]) {
        throw UsageError("inconsistent duplicate sample points");
      }
    }
  }
  const std::size_t fit_count = samples.size() - kHoldout;
  bool underdetermined = false;

  // Residues of the values and of the coordinate powers. A value whose
  // denominator the prime divides disables the modular path.
  std::vector<std::uint64_t> value_mod(samples.size());
  bool modular = true;
  for (std::size_t s = 0; s < samples.size() && modular; ++s) {
    auto r = modp::reduce(samples.values[s]);
    if (r) value_mod[s] = *r;
    else modular = false;
  }
  std::vector<std::vector<std::vector<std::uint64_t>>> powers(fit_count);
  for (std::size_t s = 0; s < fit_count; ++s) {
    powers[s].resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      auto& pw = powers[s][i];
      pw.resize(static_cast<std::size_t>(t) + 1);
      pw[0] = 1;
      const std::uint64_t x = modp::reduce(BigInt(samples.points[s][i]));
      for (int k = 1; k <= t; ++k) pw[k] = modp::mul(pw[k - 1], x);
    }
  }
  auto monomial_mod = [&](const Exponents& e, std::size_t s) {
    std::uint64_t v = 1;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i]) v = modp::mul(v, powers[s][i][e[i]]);
    }
    return v;
  };

  auto accepts = [&](const PolyA& num, const PolyA& den) {
    if (den.is_zero()) return false;
    for (std::size_t s = 0; s < samples.size(); ++s) {
      const BigRat dv = den.evaluate(samples.points[s]);
      if (dv == 0 || samples.values[s] * dv != num.evaluate(samples.points[s])) return false;
    }
    return true;
  };

  for (int dd = 0; dd <= t; ++dd) {
    const int dn = t - dd;
    const auto num_monos = monomials_up_to(n, dn);
    const auto den_monos = monomials_up_to(n, dd);
    const std::size_t unknowns = num_monos.size() + den_monos.size();
    result.samples_required = std::max(result.samples_required, unknowns + 2 + kHoldout);
    if (fit_count < unknowns + 2) {
      underdetermined = true;
      continue;
    }

    auto exact_row = [&](std::size_t s) {
      std::vector<BigRat> row;
      row.reserve(unknowns);
      const APoint& p = samples.points[s];
      for (const auto& e : den_monos) row.push_back(samples.values[s] * BigRat(monomial_value(e, p)));
      for (const auto& e : num_monos) row.push_back(BigRat(-monomial_value(e, p)));
      return row;
    };
    // Exact nullspace of the given rows; a unique candidate or nothing.
    auto exact_candidate = [&](const std::vector<std::size_t>& rows) -> std::optional<std::vector<BigRat>> {
      RatMatrix m;
      m.reserve(rows.size());
      for (auto s : rows) m.push_back(exact_row(s));
      auto basis = solve_nullspace(m);
      if (basis.size() > 1) underdetermined = true;
      if (basis.size() != 1) return std::nullopt;
      return std::move(basis.front());
    };

    std::vector<std::size_t> all_rows(fit_count);
    for (std::size_t s = 0; s < fit_count; ++s) all_rows[s] = s;
    std::optional<std::vector<BigRat>> v;

    if (modular) {
      ModMatrix m(fit_count, std::vector<std::uint64_t>(unknowns));
      for (std::size_t s = 0; s < fit_count; ++s) {
        std::size_t j = 0;
        for (const auto& e : den_monos) m[s][j++] = modp::mul(value_mod[s], monomial_mod(e, s));
        for (const auto& e : num_monos) m[s][j++] = modp::sub(0, monomial_mod(e, s));
      }
      // rank over Q is at least the rank mod p, so full rank rules the split out
      // and a kernel of dimension one mod p means at most one over Q.
      auto elim = eliminate_mod_prime(std::move(m), true);
      if (elim.rank == unknowns) continue;
      if (elim.rank + 1 < unknowns) {
        underdetermined = true;
        continue;
      }
      auto& k = elim.kernel.front();
      std::size_t lead = 0;
      while (lead < den_monos.size() && k[lead] == 0) ++lead;
      if (lead == den_monos.size()) continue;
      // Scale so D has leading coefficient 1, then lift each residue.
      const std::uint64_t scale = modp::inv(k[lead]);
      std::vector<BigRat> lifted;
      lifted.reserve(unknowns);
      for (auto x : k) {
        auto q = modp::reconstruct(modp::mul(x, scale));
        if (!q) break;
        lifted.push_back(std::move(*q));
      }
      if (lifted.size() == unknowns) v = std::move(lifted);
      if (v) {
        PolyA den = assemble(n, den_monos, std::span(*v).first(den_monos.size()));
        PolyA num = assemble(n, num_monos, std::span(*v).subspan(den_monos.size()));
        if (!accepts(num, den)) v.reset();
      }
      if (!v) v = exact_candidate(elim.pivot_rows);
    } else {
      v = exact_candidate(all_rows);
    }
    if (!v) continue;

    PolyA den = assemble(n, den_monos, std::span(*v).first(den_monos.size()));
    PolyA num = assemble(n, num_monos, std::span(*v).subspan(den_monos.size()));
    if (!accepts(num, den)) continue;

    result.status = FitStatus::found;
    result.value = RatFuncA(std::move(num), std::move(den));
    result.num_degree = dn;
    result.den_degree = dd;
    result.unknowns = unknowns;
    return result;
  }
  result.status = underdetermined ? FitStatus::need_more_samples : FitStatus::none;
  return result;
}

std::optional<RatFuncA> guess_rat(const SampleSet& samples, int t) {
  return fit_rational(samples, t).value;
}

GuessResult guess_dyson(int n, std::span<const int> b, const GuessOptions& options) {
  if (n < 2) throw UsageError("guess_dyson needs n >= 2");
  check_b(n, b);
  GuessResult out;
  const auto nv = static_cast<std::size_t>(n);
  if (b_sum(b) != 0) {
    out.form = ClosedForm::zero(n, BVector(b.begin(), b.end()));
    out.residual = RatFuncA::zero(nv);
    out.total_degree = 0;
    return out;
  }
  const RatFuncA ansatz = options.use_ansatz ? ansatz_factor(b).value : RatFuncA::one(nv);

  SampleSet grid;
  for (int t = 0; t <= options.max_t; ++t) {
    SampleSet holdout;
    holdout.points = holdout_points(n, b, kHoldout, t);
    holdout.values = evaluate_samples(holdout.points, b, ansatz, options.threads);
    std::size_t want = samples_needed(n, t) - kHoldout;
    for (int attempt = 0; attempt <= options.max_doublings; ++attempt) {
      extend_samples(grid, n, b, ansatz, want, options.threads);
      out.samples = grid;
      out.samples.points.insert(out.samples.points.end(), holdout.points.begin(), holdout.points.end());
      out.samples.values.insert(out.samples.values.end(), holdout.values.begin(), holdout.values.end());
      FitResult fit = fit_rational(out.samples, t);
      if (fit.status == FitStatus::found) {
        out.residual = *fit.value;
        out.total_degree = t;
        out.unknowns = fit.unknowns;
        out.form = ClosedForm{n, BVector(b.begin(), b.end()), ansatz * out.residual};
        return out;
      }
      if (fit.status == FitStatus::none) break;
      want = std::max(want * 2, fit.samples_required - kHoldout);
    }
  }
  return out;
}

}  // namespace dyson
