#include "dyson/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "dyson/errors.hpp"

namespace dyson {

BigRat make_rat(const BigInt& num, const BigInt& den) {
  if (den == 0) throw DomainError("zero denominator");
  BigRat q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const BigRat& q) { return q.get_str(); }

bool GrlexGreater::operator()(const Exponents& lhs, const Exponents& rhs) const {
  const int dl = std::accumulate(lhs.begin(), lhs.end(), 0);
  const int dr = std::accumulate(rhs.begin(), rhs.end(), 0);
  if (dl != dr) return dl > dr;
  return std::lexicographical_compare(rhs.begin(), rhs.end(), lhs.begin(),
                                      lhs.end());
}

namespace {

void check_same(const PolyA& a, const PolyA& b) {
  if (a.nvars() != b.nvars()) {
    throw UsageError("polynomials over different variable counts (" +
                     std::to_string(a.nvars()) + " vs " +
                     std::to_string(b.nvars()) + ")");
  }
}

}  // namespace

PolyA PolyA::constant(std::size_t nvars, const BigRat& c) {
  PolyA p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

PolyA PolyA::variable(std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw UsageError("variable index out of range");
  PolyA p(nvars);
  Exponents e(nvars, 0);
  e[index] = 1;
  p.add_term(e, 1);
  return p;
}

PolyA PolyA::linear(std::int64_t c, std::span<const std::int64_t> coeffs) {
  const std::size_t n = coeffs.size();
  PolyA p(n);
  p.add_term(Exponents(n, 0), BigRat(static_cast<long>(c)));
  for (std::size_t i = 0; i < n; ++i) {
    Exponents e(n, 0);
    e[i] = 1;
    p.add_term(e, BigRat(static_cast<long>(coeffs[i])));
  }
  return p;
}

bool PolyA::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 && total_degree() == 0);
}

int PolyA::total_degree() const {
  if (terms_.empty()) return -1;
  const auto& e = leading_exponents();
  return std::accumulate(e.begin(), e.end(), 0);
}

int PolyA::degree_in(std::size_t var) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
  return d;
}

BigRat PolyA::constant_term() const {
  auto it = terms_.find(Exponents(nvars_, 0));
  return it == terms_.end() ? BigRat(0) : it->second;
}

void PolyA::add_term(const Exponents& e, const BigRat& c) {
  if (e.size() != nvars_) throw UsageError("exponent vector length mismatch");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

PolyA PolyA::operator-() const {
  PolyA r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

PolyA& PolyA::operator+=(const PolyA& rhs) {
  check_same(*this, rhs);
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

PolyA& PolyA::operator-=(const PolyA& rhs) {
  check_same(*this, rhs);
  for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
  return *this;
}

PolyA& PolyA::operator*=(const BigRat& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

PolyA operator*(const PolyA& lhs, const PolyA& rhs) {
  check_same(lhs, rhs);
  PolyA r(lhs.nvars());
  Exponents e(lhs.nvars());
  for (const auto& [el, cl] : lhs.terms_) {
    for (const auto& [er, cr] : rhs.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = el[i] + er[i];
      r.add_term(e, cl * cr);
    }
  }
  return r;
}

PolyA PolyA::pow(unsigned e) const {
  PolyA result = constant(nvars_, 1);
  PolyA base = *this;
  while (e) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e) base = base * base;
  }
  return result;
}

BigRat PolyA::evaluate(std::span<const BigRat> point) const {
  if (point.size() != nvars_) throw UsageError("evaluation point has wrong length");
  // Powers are cached per variable; degrees are small.
  std::vector<std::vector<BigRat>> powers(nvars_);
  BigRat sum = 0;
  for (const auto& [e, c] : terms_) {
    BigRat t = c;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(1);
      while (static_cast<int>(pw.size()) <= e[i]) pw.push_back(pw.back() * point[i]);
      t *= pw[e[i]];
    }
    sum += t;
  }
  return sum;
}

BigRat PolyA::evaluate(std::span<const long> point) const {
  std::vector<BigRat> q(point.begin(), point.end());
  return evaluate(std::span<const BigRat>(q));
}

PolyA PolyA::compose(std::span<const PolyA> images) const {
  if (images.size() != nvars_) throw UsageError("compose needs one image per variable");
  const std::size_t target = images.empty() ? 0 : images.front().nvars();
  for (const auto& im : images) {
    if (im.nvars() != target) throw UsageError("compose images disagree on variable count");
  }
  std::vector<std::vector<PolyA>> powers(nvars_);
  PolyA result(target);
  for (const auto& [e, c] : terms_) {
    PolyA t = constant(target, c);
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(constant(target, 1));
      while (static_cast<int>(pw.size()) <= e[i]) pw.push_back(pw.back() * images[i]);
      t = t * pw[e[i]];
    }
    result += t;
  }
  return result;
}

std::vector<PolyA> PolyA::coefficients_in(std::size_t var) const {
  std::vector<PolyA> out(static_cast<std::size_t>(std::max(degree_in(var), 0)) + 1,
                         PolyA(nvars_));
  for (const auto& [e, c] : terms_) {
    Exponents stripped = e;
    stripped[var] = 0;
    out[e[var]].add_term(stripped, c);
  }
  return out;
}

PolyA PolyA::from_coefficients(std::size_t nvars, std::size_t var,
                               std::span<const PolyA> coeffs) {
  PolyA r(nvars);
  for (std::size_t d = 0; d < coeffs.size(); ++d) {
    for (const auto& [e, c] : coeffs[d].terms()) {
      Exponents shifted = e;
      shifted[var] += static_cast<int>(d);
      r.add_term(shifted, c);
    }
  }
  return r;
}

BigRat PolyA::content() const {
  if (terms_.empty()) return 0;
  BigInt num_gcd = 0;
  BigInt den_lcm = 1;
  for (const auto& [e, c] : terms_) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  }
  return make_rat(num_gcd, den_lcm);
}

PolyA PolyA::primitive() const {
  if (terms_.empty()) return *this;
  BigRat scale = 1 / content();
  if (leading_coefficient() < 0) scale = -scale;
  PolyA r = *this;
  r *= scale;
  return r;
}

std::string PolyA::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    const bool unit_mono = std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
    BigRat mag = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool need_star = false;
    if (unit_mono || mag != 1) {
      os << mag.get_str();
      need_star = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (need_star) os << '*';
      os << 'a' << (i + 1);
      if (e[i] > 1) os << '^' << e[i];
      need_star = true;
    }
  }
  return os.str();
}

std::optional<PolyA> try_divide(const PolyA& a, const PolyA& b) {
  check_same(a, b);
  if (b.is_zero()) throw DomainError("division by the zero polynomial");
  PolyA q(a.nvars());
  PolyA r = a;
  const Exponents& lb = b.leading_exponents();
  const BigRat& lcb = b.leading_coefficient();
  Exponents mono(a.nvars());
  while (!r.is_zero()) {
    const Exponents& lr = r.leading_exponents();
    for (std::size_t i = 0; i < mono.size(); ++i) {
      mono[i] = lr[i] - lb[i];
      if (mono[i] < 0) return std::nullopt;
    }
    const BigRat factor = r.leading_coefficient() / lcb;
    q.add_term(mono, factor);
    Exponents e(a.nvars());
    for (const auto& [eb, cb] : b.terms()) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = eb[i] + mono[i];
      r.add_term(e, -factor * cb);
    }
  }
  return q;
}

PolyA exact_divide(const PolyA& a, const PolyA& b) {
  auto q = try_divide(a, b);
  if (!q) throw DomainError("polynomial division is not exact");
  return *std::move(q);
}

namespace {

// Content with respect to `var`: gcd of the coefficients of a_var^d.
PolyA content_in(const PolyA& p, std::size_t var);

PolyA primitive_part_in(const PolyA& p, std::size_t var) {
  return exact_divide(p, content_in(p, var)).primitive();
}

PolyA pseudo_remainder(const PolyA& a, const PolyA& b, std::size_t var) {
  std::vector<PolyA> r = a.coefficients_in(var);
  const std::vector<PolyA> bc = b.coefficients_in(var);
  const std::size_t db = bc.size() - 1;
  const PolyA& lcb = bc.back();
  int remaining = static_cast<int>(r.size()) - static_cast<int>(db);
  while (r.size() > db && !(r.size() == 1 && r[0].is_zero())) {
    const PolyA lr = r.back();
    const std::size_t shift = r.size() - 1 - db;
    for (auto& c : r) c = c * lcb;
    for (std::size_t j = 0; j <= db; ++j) r[j + shift] -= lr * bc[j];
    while (!r.empty() && r.back().is_zero()) r.pop_back();
    --remaining;
    if (r.empty()) break;
  }
  PolyA out = PolyA::from_coefficients(a.nvars(), var, r);
  if (remaining > 0) out = out * lcb.pow(static_cast<unsigned>(remaining));
  return out;
}

PolyA gcd_impl(const PolyA& a, const PolyA& b);

PolyA content_in(const PolyA& p, std::size_t var) {
  PolyA g(p.nvars());
  for (const auto& c : p.coefficients_in(var)) {
    if (c.is_zero()) continue;
    g = gcd_impl(g, c);
    if (g.is_constant()) return PolyA::constant(p.nvars(), 1);
  }
  return g;
}

// Primitive PRS in `var` on primitive inputs.
PolyA prs_gcd(PolyA a, PolyA b, std::size_t var) {
  if (a.degree_in(var) < b.degree_in(var)) std::swap(a, b);
  for (;;) {
    PolyA r = pseudo_remainder(a, b, var);
    if (r.is_zero()) return primitive_part_in(b, var);
    if (r.degree_in(var) == 0) return PolyA::constant(a.nvars(), 1);
    a = std::move(b);
    b = primitive_part_in(r, var);
  }
}

std::optional<std::size_t> lowest_variable(const PolyA& a, const PolyA& b) {
  for (std::size_t v = 0; v < a.nvars(); ++v) {
    if (a.depends_on(v) || b.depends_on(v)) return v;
  }
  return std::nullopt;
}

PolyA gcd_impl(const PolyA& a, const PolyA& b) {
  if (a.is_zero()) return b.primitive();
  if (b.is_zero()) return a.primitive();
  if (a.is_constant() || b.is_constant()) return PolyA::constant(a.nvars(), 1);
  if (a.size() == 1 && b.size() == 1) {
    Exponents e(a.nvars());
    for (std::size_t i = 0; i < e.size(); ++i) {
      e[i] = std::min(a.leading_exponents()[i], b.leading_exponents()[i]);
    }
    PolyA m(a.nvars());
    m.add_term(e, 1);
    return m;
  }
  const std::size_t v = *lowest_variable(a, b);
  const int da = a.degree_in(v);
  const int db = b.degree_in(v);
  if (da == 0) return gcd_impl(a, content_in(b, v));
  if (db == 0) return gcd_impl(content_in(a, v), b);
  const PolyA ca = content_in(a, v);
  const PolyA cb = content_in(b, v);
  const PolyA pa = exact_divide(a, ca).primitive();
  const PolyA pb = exact_divide(b, cb).primitive();
  const PolyA c = gcd_impl(ca, cb);
  return (c * prs_gcd(pa, pb, v)).primitive();
}

// Heuristic gcd over Z[a] (Char, Geddes, Gonnet): evaluate the highest
// variable at a large integer, recurse, and read the gcd back off the
// xi-adic digits. Any answer is confirmed by exact division; nothing is
// returned when the heuristic gives up.
BigInt max_norm(const PolyA& p) {
  BigInt m = 0;
  for (const auto& [e, c] : p.terms()) {
    if (abs(c.get_num()) > m) m = abs(c.get_num());
  }
  return m;
}

BigInt integer_content(const PolyA& p) {
  BigInt g = 0;
  for (const auto& [e, c] : p.terms()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
  return g;
}

PolyA evaluate_at(const PolyA& p, std::size_t var, const BigInt& xi) {
  PolyA out(p.nvars());
  BigInt pw;
  for (const auto& [exps, c] : p.terms()) {
    Exponents e = exps;
    mpz_pow_ui(pw.get_mpz_t(), xi.get_mpz_t(), static_cast<unsigned long>(e[var]));
    e[var] = 0;
    out.add_term(e, c * BigRat(pw));
  }
  return out;
}

std::optional<PolyA> heuristic_gcd(const PolyA& a, const PolyA& b, int depth);

std::optional<PolyA> heuristic_gcd_primitive(const PolyA& a, const PolyA& b, int depth) {
  std::optional<std::size_t> var;
  for (std::size_t v = a.nvars(); v-- > 0;) {
    if (a.depends_on(v) || b.depends_on(v)) {
      var = v;
      break;
    }
  }
  if (!var) return PolyA::constant(a.nvars(), 1);
  if (depth > 8) return std::nullopt;
  BigInt xi = 2 * std::min(max_norm(a), max_norm(b)) + 29;
  for (int attempt = 0; attempt < 6; ++attempt) {
    const auto gamma = heuristic_gcd(evaluate_at(a, *var, xi), evaluate_at(b, *var, xi), depth + 1);
    if (gamma) {
      PolyA g(a.nvars());
      PolyA rest = *gamma;
      const BigInt half = xi / 2;
      for (int k = 0; !rest.is_zero(); ++k) {
        if (k > std::max(a.degree_in(*var), b.degree_in(*var))) break;
        PolyA digit(a.nvars());
        for (const auto& [e, c] : rest.terms()) {
          BigInt r;
          mpz_fdiv_r(r.get_mpz_t(), c.get_num_mpz_t(), xi.get_mpz_t());
          if (r > half) r -= xi;
          if (r != 0) digit.add_term(e, BigRat(r));
        }
        rest -= digit;
        rest *= BigRat(1) / BigRat(xi);
        for (const auto& [exps, c] : digit.terms()) {
          Exponents e = exps;
          e[*var] = k;
          g.add_term(e, c);
        }
      }
      if (rest.is_zero() && !g.is_zero()) {
        g = g.primitive();
        if (try_divide(a, g) && try_divide(b, g)) return g;
      }
    }
    xi = xi * 73794 / 27011;
  }
  return std::nullopt;
}

// Full gcd over Z[a], integer content included.
std::optional<PolyA> heuristic_gcd(const PolyA& a, const PolyA& b, int depth) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const BigInt ca = integer_content(a);
  const BigInt cb = integer_content(b);
  BigInt c;
  mpz_gcd(c.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  PolyA pa = a;
  pa *= BigRat(1) / BigRat(ca);
  PolyA pb = b;
  pb *= BigRat(1) / BigRat(cb);
  auto g = heuristic_gcd_primitive(pa, pb, depth);
  if (!g) return std::nullopt;
  *g *= BigRat(c);
  return g;
}

}  // namespace

PolyA gcd(const PolyA& a, const PolyA& b) {
  check_same(a, b);
  if (a.is_zero() && b.is_zero()) return a;
  if (a.is_zero() || b.is_zero() || a.is_constant() || b.is_constant()) return gcd_impl(a, b);
  if (auto g = heuristic_gcd_primitive(a.primitive(), b.primitive(), 0)) return *g;
  return gcd_impl(a, b);
}

}  // namespace dyson
