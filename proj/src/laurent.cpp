#include "dyson/laurent.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

#include "dyson/errors.hpp"
#include "dyson/ratfunc.hpp"

namespace dyson {

namespace {

XExponents zero_exponents() {
  XExponents e{};
  e.fill(0);
  return e;
}

void check_nvars(std::size_t nvars) {
  if (nvars > kMaxXVars) {
    throw UsageError("at most " + std::to_string(kMaxXVars) + " x-variables are supported");
  }
}

}  // namespace

LaurentPoly::LaurentPoly(std::size_t nvars) : nvars_(nvars) { check_nvars(nvars); }

LaurentPoly LaurentPoly::constant(std::size_t nvars, const BigInt& c) {
  LaurentPoly p(nvars);
  p.add_term(zero_exponents(), c);
  return p;
}

LaurentPoly LaurentPoly::monomial(std::size_t nvars, std::span<const int> exponents,
                                  const BigInt& c) {
  if (exponents.size() != nvars) throw UsageError("monomial exponent length mismatch");
  LaurentPoly p(nvars);
  XExponents e = zero_exponents();
  std::copy(exponents.begin(), exponents.end(), e.begin());
  p.add_term(e, c);
  return p;
}

void LaurentPoly::add_term(const XExponents& e, const BigInt& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

BigInt LaurentPoly::coefficient(std::span<const int> exponents) const {
  if (exponents.size() != nvars_) throw UsageError("coefficient exponent length mismatch");
  XExponents e = zero_exponents();
  std::copy(exponents.begin(), exponents.end(), e.begin());
  auto it = terms_.find(e);
  return it == terms_.end() ? BigInt(0) : it->second;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& rhs) {
  if (nvars_ != rhs.nvars_) throw UsageError("Laurent polynomials over different variable counts");
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

LaurentPoly operator*(const LaurentPoly& lhs, const LaurentPoly& rhs) {
  if (lhs.nvars_ != rhs.nvars_) throw UsageError("Laurent polynomials over different variable counts");
  LaurentPoly r(lhs.nvars_);
  XExponents e = zero_exponents();
  for (const auto& [el, cl] : lhs.terms_) {
    for (const auto& [er, cr] : rhs.terms_) {
      for (std::size_t i = 0; i < lhs.nvars_; ++i) e[i] = el[i] + er[i];
      r.add_term(e, cl * cr);
    }
  }
  return r;
}

std::pair<int, int> LaurentPoly::degree_range(std::size_t var) const {
  if (terms_.empty()) return {0, -1};
  int lo = terms_.begin()->first[var];
  int hi = lo;
  for (const auto& [e, c] : terms_) {
    lo = std::min(lo, e[var]);
    hi = std::max(hi, e[var]);
  }
  return {lo, hi};
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    const bool unit = std::all_of(e.begin(), e.begin() + static_cast<long>(nvars_),
                                  [](int x) { return x == 0; });
    BigInt mag = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool star = false;
    if (unit || mag != 1) {
      os << mag.get_str();
      star = true;
    }
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      if (star) os << '*';
      os << 'x' << (i + 1);
      if (e[i] != 1) os << '^' << e[i];
      star = true;
    }
  }
  return os.str();
}

LaurentPoly coeff_slice(const LaurentPoly& p, std::size_t var, int exponent) {
  if (var >= p.nvars()) throw UsageError("coeff_slice variable out of range");
  LaurentPoly out(p.nvars() - 1);
  XExponents e = zero_exponents();
  for (const auto& [ep, c] : p.terms()) {
    if (ep[var] != exponent) continue;
    std::size_t k = 0;
    for (std::size_t i = 0; i < p.nvars(); ++i) {
      if (i != var) e[k++] = ep[i];
    }
    out.add_term(e, c);
  }
  return out;
}

LaurentPoly lift_slice(const LaurentPoly& p, std::size_t var, int exponent) {
  if (var > p.nvars()) throw UsageError("lift_slice variable out of range");
  LaurentPoly out(p.nvars() + 1);
  XExponents e = zero_exponents();
  for (const auto& [ep, c] : p.terms()) {
    std::size_t k = 0;
    for (std::size_t i = 0; i <= p.nvars(); ++i) e[i] = (i == var) ? exponent : ep[k++];
    out.add_term(e, c);
  }
  return out;
}

namespace {

// (x_j - x_0)^m over `nvars` variables, with x_0 the variable being
// eliminated.
LaurentPoly difference_power(std::size_t nvars, std::size_t j, int m) {
  LaurentPoly p(nvars);
  XExponents e = zero_exponents();
  BigInt binom;
  for (int k = 0; k <= m; ++k) {
    mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(m), static_cast<unsigned long>(k));
    e[0] = k;
    e[j] = m - k;
    p.add_term(e, (k % 2 == 0) ? binom : BigInt(-binom));
  }
  return p;
}

}  // namespace

BigInt ct_bruteforce(const DysonInstance& inst) {
  const int n = inst.n();
  if (n < 1) throw UsageError("n must be at least 1");
  if (inst.b.size() != inst.a.size()) throw UsageError("a and b must have the same length");
  check_nvars(static_cast<std::size_t>(n));
  for (int ai : inst.a) {
    if (ai < 0) throw UsageError("a-components must be nonnegative");
  }
  if (std::accumulate(inst.b.begin(), inst.b.end(), 0L) != 0) return 0;

  std::vector<long> target(n);
  for (int h = 0; h < n; ++h) {
    target[h] = inst.b[h] + static_cast<long>(n - 1) * inst.a[h];
    if (target[h] < 0) return 0;
  }
  auto pair_exp = [&](int i, int j) { return inst.a[i] + inst.a[j]; };

  LaurentPoly state = LaurentPoly::constant(static_cast<std::size_t>(n), 1);
  for (int h = 0; h < n; ++h) {
    const auto nv = static_cast<std::size_t>(n - h);
    // state and factors both live over x_h..x_{n-1}; local index 0 is x_h.
    LaurentPoly factors = LaurentPoly::constant(nv, 1);
    for (int j = h + 1; j < n; ++j) {
      factors = factors * difference_power(nv, static_cast<std::size_t>(j - h), pair_exp(h, j));
    }

    // Upper bound on what the untouched factors can still add to x_j.
    std::vector<long> headroom;
    for (int j = h + 1; j < n; ++j) {
      long room = 0;
      for (int i = h + 1; i < n; ++i) {
        if (i != j) room += pair_exp(i, j);
      }
      headroom.push_back(room);
    }

    LaurentPoly next(nv - 1);
    const auto [lo, hi] = state.degree_range(0);
    for (int e = lo; e <= hi; ++e) {
      const long need = target[h] - e;
      if (need < 0 || need > std::numeric_limits<int>::max()) continue;
      LaurentPoly part = coeff_slice(state, 0, e);
      if (part.is_zero()) continue;
      LaurentPoly fslice = coeff_slice(factors, 0, static_cast<int>(need));
      if (fslice.is_zero()) continue;
      next += part * fslice;
    }

    LaurentPoly pruned(nv - 1);
    for (const auto& [ex, c] : next.terms()) {
      bool keep = true;
      for (std::size_t idx = 0; idx + 1 < nv && keep; ++idx) {
        const long want = target[h + 1 + static_cast<int>(idx)];
        keep = ex[idx] <= want && ex[idx] + headroom[idx] >= want;
      }
      if (keep) pruned.add_term(ex, c);
    }
    state = std::move(pruned);
    if (state.is_zero()) return 0;
  }

  BigInt result = state.coefficient(std::span<const int>{});
  long sign_exp = 0;
  for (int i = 0; i < n; ++i) sign_exp += static_cast<long>(inst.a[i]) * (n - 1 - i);
  if (sign_exp % 2 != 0) result = -result;
  return result;
}

PkExpansion pk_expansion(int n, int k, std::span<const int> b) {
  if (n < 2) throw UsageError("pk_expansion needs n >= 2");
  if (k < 0 || k >= n) throw UsageError("pivot index out of range");
  if (b.size() != static_cast<std::size_t>(n)) throw UsageError("b must have n components");
  PkExpansion out{n, k, std::vector<int>(b.begin(), b.end()), {}};
  const int total = b[k];
  if (total < 0) return out;

  std::vector<int> others;
  for (int i = 0; i < n; ++i) {
    if (i != k) others.push_back(i);
  }
  const std::size_t parts = others.size();
  std::vector<int> m(parts, 0);

  // Descending lexicographic compositions of `total` into `parts` parts.
  auto emit = [&] {
    PkTerm term;
    term.composition = m;
    term.coefficient = PolyA::constant(static_cast<std::size_t>(n), 1);
    for (std::size_t p = 0; p < parts; ++p) {
      PolyA c = binomial_poly(static_cast<std::size_t>(n), static_cast<std::size_t>(others[p]), m[p]);
      if (m[p] % 2 != 0) c = -c;
      term.coefficient = term.coefficient * c;
      term.shifted_b.push_back(b[others[p]] + m[p]);
    }
    out.terms.push_back(std::move(term));
  };
  auto recurse = [&](auto&& self, std::size_t pos, int remaining) -> void {
    if (pos + 1 == parts) {
      m[pos] = remaining;
      emit();
      return;
    }
    for (int v = remaining; v >= 0; --v) {
      m[pos] = v;
      self(self, pos + 1, remaining - v);
    }
  };
  recurse(recurse, 0, total);
  return out;
}

}  // namespace dyson
