#include "dyson/linalg.hpp"

#include <algorithm>

#include "dyson/errors.hpp"

namespace dyson {

namespace {

std::size_t column_count(const auto& m) {
  const std::size_t cols = m.empty() ? 0 : m.front().size();
  for (const auto& row : m) {
    if (row.size() != cols) throw UsageError("ragged matrix");
  }
  return cols;
}

}  // namespace

namespace modp {

std::uint64_t pow(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1U) r = mul(r, a);
    a = mul(a, a);
    e >>= 1U;
  }
  return r;
}

std::uint64_t reduce(const BigInt& z) {
  BigInt r;
  mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), kPrime);
  return r.get_ui();
}

std::optional<std::uint64_t> reduce(const BigRat& q) {
  const std::uint64_t den = reduce(q.get_den());
  if (den == 0) return std::nullopt;
  return mul(reduce(q.get_num()), inv(den));
}

std::optional<BigRat> reconstruct(std::uint64_t x) {
  // Half-extended Euclid on (p, x), stopping once the remainder drops below
  // the bound.
  const BigInt p(static_cast<unsigned long>(kPrime));
  BigInt bound;
  mpz_sqrt(bound.get_mpz_t(), BigInt(p / 2).get_mpz_t());
  BigInt r0 = p, r1 = static_cast<unsigned long>(x);
  BigInt t0 = 0, t1 = 1;
  while (r1 > bound) {
    const BigInt q = r0 / r1;
    BigInt r2 = r0 - q * r1;
    BigInt t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (t1 == 0 || abs(t1) > bound) return std::nullopt;
  BigInt g;
  mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
  if (g != 1) return std::nullopt;
  return make_rat(r1, t1);
}

}  // namespace modp

std::vector<std::vector<BigInt>> integer_nullspace(IntMatrix m) {
  const std::size_t rows = m.size();
  const std::size_t cols = column_count(m);
  std::vector<std::size_t> pivot_cols;
  BigInt prev = 1;
  BigInt t;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    const BigInt& piv = m[r][c];
    for (std::size_t i = r + 1; i < rows; ++i) {
      const BigInt lead = m[i][c];
      for (std::size_t j = c + 1; j < cols; ++j) {
        // (piv * m[i][j] - lead * m[r][j]) / prev, exact by Sylvester's identity.
        t = piv * m[i][j];
        t -= lead * m[r][j];
        mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m[i][c] = 0;
    }
    prev = m[r][c];
    pivot_cols.push_back(c);
    ++r;
  }

  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_cols) is_pivot[c] = true;

  std::vector<std::vector<BigInt>> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<BigRat> v(cols, BigRat(0));
    v[f] = 1;
    for (std::size_t k = pivot_cols.size(); k-- > 0;) {
      const std::size_t pc = pivot_cols[k];
      BigRat acc = 0;
      for (std::size_t j = pc + 1; j < cols; ++j) {
        if (v[j] != 0 && m[k][j] != 0) acc += BigRat(m[k][j]) * v[j];
      }
      v[pc] = -acc / BigRat(m[k][pc]);
    }
    BigInt den_lcm = 1;
    for (const auto& x : v) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.get_den_mpz_t());
    std::vector<BigInt> iv(cols);
    BigInt g = 0;
    for (std::size_t j = 0; j < cols; ++j) {
      iv[j] = v[j].get_num() * (den_lcm / v[j].get_den());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), iv[j].get_mpz_t());
    }
    if (g > 1) {
      for (auto& x : iv) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    }
    basis.push_back(std::move(iv));
  }
  return basis;
}

std::vector<std::vector<BigRat>> solve_nullspace(const RatMatrix& m) {
  const std::size_t cols = column_count(m);
  IntMatrix im;
  im.reserve(m.size());
  for (const auto& row : m) {
    BigInt den_lcm = 1;
    for (const auto& x : row) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.get_den_mpz_t());
    std::vector<BigInt> irow(cols);
    for (std::size_t j = 0; j < cols; ++j) irow[j] = row[j].get_num() * (den_lcm / row[j].get_den());
    im.push_back(std::move(irow));
  }
  std::vector<std::vector<BigRat>> out;
  for (auto& v : integer_nullspace(std::move(im))) {
    out.emplace_back(v.begin(), v.end());
  }
  return out;
}

ModularElimination eliminate_mod_prime(ModMatrix a, bool want_kernel) {
  using namespace modp;
  const std::size_t rows = a.size();
  const std::size_t cols = column_count(a);
  std::vector<std::size_t> order(rows);
  for (std::size_t i = 0; i < rows; ++i) order[i] = i;

  ModularElimination out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    std::swap(order[p], order[r]);
    const std::uint64_t pinv = inv(a[r][c]);
    for (std::size_t j = c; j < cols; ++j) a[r][j] = mul(a[r][j], pinv);
    for (std::size_t i = r + 1; i < rows; ++i) {
      const std::uint64_t f = a[i][c];
      if (f == 0) continue;
      auto& row = a[i];
      const auto& prow = a[r];
      for (std::size_t j = c; j < cols; ++j) row[j] = sub(row[j], mul(f, prow[j]));
    }
    out.pivot_cols.push_back(c);
    out.pivot_rows.push_back(order[r]);
    ++r;
  }
  out.rank = r;
  if (!want_kernel) return out;

  std::vector<bool> is_pivot(cols, false);
  for (auto c : out.pivot_cols) is_pivot[c] = true;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<std::uint64_t> v(cols, 0);
    v[f] = 1;
    for (std::size_t k = out.pivot_cols.size(); k-- > 0;) {
      const std::size_t pc = out.pivot_cols[k];
      std::uint64_t acc = 0;
      for (std::size_t j = pc + 1; j < cols; ++j) {
        if (v[j] != 0 && a[k][j] != 0) acc = add(acc, mul(a[k][j], v[j]));
      }
      v[pc] = sub(0, acc);  // pivot entries are normalized to 1
    }
    out.kernel.push_back(std::move(v));
  }
  return out;
}

std::optional<std::size_t> rank_mod_prime(const RatMatrix& m) {
  const std::size_t cols = column_count(m);
  ModMatrix a(m.size(), std::vector<std::uint64_t>(cols));
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      auto x = modp::reduce(m[i][j]);
      if (!x) return std::nullopt;
      a[i][j] = *x;
    }
  }
  return eliminate_mod_prime(std::move(a), false).rank;
}

}  // namespace dyson
