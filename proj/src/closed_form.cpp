#include "dyson/closed_form.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "dyson/errors.hpp"

namespace dyson {

ClosedForm ClosedForm::zero(int n, BVector b) {
  return ClosedForm{n, std::move(b), RatFuncA::zero(static_cast<std::size_t>(n))};
}

BigRat ClosedForm::evaluate(std::span<const long> a) const {
  if (a.size() != static_cast<std::size_t>(n)) throw UsageError("evaluation point has wrong length");
  for (long x : a) {
    if (x < 0) throw UsageError("closed forms are evaluated at nonnegative a only");
  }
  if (r.is_zero()) return 0;
  return r.evaluate(a) * BigRat(multinomial(a));
}

BigInt multinomial(std::span<const long> a) {
  BigInt result = 1;
  unsigned long running = 0;
  BigInt binom;
  for (long x : a) {
    if (x < 0) throw UsageError("multinomial of a negative entry");
    running += static_cast<unsigned long>(x);
    mpz_bin_uiui(binom.get_mpz_t(), running, static_cast<unsigned long>(x));
    result *= binom;
  }
  return result;
}

ClosedForm permute_form(const ClosedForm& form, std::span<const int> perm) {
  const auto n = static_cast<std::size_t>(form.n);
  if (perm.size() != n) throw UsageError("permutation has the wrong length");
  std::vector<bool> seen(n, false);
  for (int p : perm) {
    if (p < 0 || static_cast<std::size_t>(p) >= n || seen[static_cast<std::size_t>(p)]) {
      throw UsageError("not a permutation");
    }
    seen[static_cast<std::size_t>(p)] = true;
  }
  ClosedForm out{form.n, BVector(n), RatFuncA::zero(n)};
  std::vector<PolyA> images(n, PolyA(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto src = static_cast<std::size_t>(perm[i]);
    out.b[i] = form.b[src];
    images[src] = PolyA::variable(n, i);
  }
  out.r = form.r.compose(images);
  return out;
}

std::optional<std::vector<int>> find_permutation(std::span<const int> from, std::span<const int> to) {
  if (from.size() != to.size()) return std::nullopt;
  std::vector<int> perm(to.size());
  std::vector<bool> used(from.size(), false);
  for (std::size_t i = 0; i < to.size(); ++i) {
    bool found = false;
    for (std::size_t j = 0; j < from.size() && !found; ++j) {
      if (!used[j] && from[j] == to[i]) {
        used[j] = true;
        perm[i] = static_cast<int>(j);
        found = true;
      }
    }
    if (!found) return std::nullopt;
  }
  return perm;
}

long b_sum(std::span<const int> b) { return std::accumulate(b.begin(), b.end(), 0L); }

std::string format_vector(std::span<const int> v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

}  // namespace dyson
