#ifndef DYSON_CLOSED_FORM_HPP
#define DYSON_CLOSED_FORM_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dyson/ratfunc.hpp"

namespace dyson {

using BVector = std::vector<int>;

/// d_n(a; b) = R(a) * (a_1 + ... + a_n)! / (a_1! ... a_n!).
struct ClosedForm {
  int n = 0;
  BVector b;
  RatFuncA r;

  static ClosedForm zero(int n, BVector b);

  // d_n at a nonnegative integer point; throws DomainError at a pole of R.
  BigRat evaluate(std::span<const long> a) const;

  bool operator==(const ClosedForm&) const = default;
};

// (a_1 + ... + a_n)! / (a_1! ... a_n!)
BigInt multinomial(std::span<const long> a);

/// Relabeling: the form for b'[i] = b[perm[i]] (perm zero-based), using
/// c_n(a; b) = c_n(pi a; pi b).
ClosedForm permute_form(const ClosedForm& form, std::span<const int> perm);

// A perm with to[i] = from[perm[i]], if `to` is a rearrangement of `from`.
std::optional<std::vector<int>> find_permutation(std::span<const int> from, std::span<const int> to);

long b_sum(std::span<const int> b);
std::string format_vector(std::span<const int> v);

}  // namespace dyson

#endif  // DYSON_CLOSED_FORM_HPP
