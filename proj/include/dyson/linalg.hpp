#ifndef DYSON_LINALG_HPP
#define DYSON_LINALG_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "dyson/poly.hpp"

namespace dyson {

using RatMatrix = std::vector<std::vector<BigRat>>;
using IntMatrix = std::vector<std::vector<BigInt>>;

// Basis of {v : M v = 0}. Rows are scaled to integers and eliminated
// fraction-free (Bareiss); each basis vector is returned as a primitive
// integer vector. Empty when M has full column rank.
std::vector<std::vector<BigRat>> solve_nullspace(const RatMatrix& m);
std::vector<std::vector<BigInt>> integer_nullspace(IntMatrix m);

// Arithmetic modulo the Mersenne prime 2^61 - 1.
namespace modp {

inline constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
  const unsigned __int128 z = static_cast<unsigned __int128>(a) * b;
  std::uint64_t r = (static_cast<std::uint64_t>(z) & kPrime) + static_cast<std::uint64_t>(z >> 61);
  if (r >= kPrime) r -= kPrime;
  return r;
}
inline std::uint64_t add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = a + b;
  return r >= kPrime ? r - kPrime : r;
}
inline std::uint64_t sub(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + kPrime - b; }
std::uint64_t pow(std::uint64_t a, std::uint64_t e);
inline std::uint64_t inv(std::uint64_t a) { return pow(a, kPrime - 2); }

std::uint64_t reduce(const BigInt& z);
// Nothing when the denominator is divisible by the prime.
std::optional<std::uint64_t> reduce(const BigRat& q);
// The unique n/d with |n|, d <= sqrt(p/2) and n/d = x (mod p), if any.
std::optional<BigRat> reconstruct(std::uint64_t x);

}  // namespace modp

using ModMatrix = std::vector<std::vector<std::uint64_t>>;

struct ModularElimination {
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_rows;  // original indices of rank-many independent rows
  std::vector<std::size_t> pivot_cols;
  ModMatrix kernel;                     // basis, filled when requested
};

ModularElimination eliminate_mod_prime(ModMatrix m, bool want_kernel);

// Rank of M reduced modulo 2^61 - 1, or nothing when a denominator is
// divisible by it. rank_Q(M) >= rank_p(M), so a full rank here proves the
// rational nullspace is trivial.
std::optional<std::size_t> rank_mod_prime(const RatMatrix& m);

}  // namespace dyson

#endif  // DYSON_LINALG_HPP
