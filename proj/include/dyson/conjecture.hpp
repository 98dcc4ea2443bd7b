#ifndef DYSON_CONJECTURE_HPP
#define DYSON_CONJECTURE_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "dyson/closed_form.hpp"

namespace dyson {

/// Empirical factor of R_b attached to the negative components of b:
///   prod_{i : b_i < 0} 1 / [ (1 + a_i)_{floor(b_i/2)} (1 + sum_{j != i} a_j)_{|b_i|} ].
struct AnsatzFactor {
  BVector b;
  RatFuncA value;
};

AnsatzFactor ansatz_factor(std::span<const int> b);

using APoint = std::vector<long>;

struct SampleSet {
  std::vector<APoint> points;
  std::vector<BigRat> values;

  std::size_t size() const { return points.size(); }
};

// Deterministic sample points a = L + (0, 1, ..., n-1) + v with
// L = max(2, max|b_i|) and v running over N^n ordered by (sum(v), v
// lexicographically). Points where the ansatz factor vanishes or has a pole
// are skipped.
std::vector<APoint> sample_grid(int n, std::span<const int> b, std::size_t count);

// Validation points for a fit at total degree t: a seeded pseudo-random
// scatter in the box [L, L + t + 7]^n, off the ansatz zeros and poles. They
// are independent of the grid, whose early points crowd onto hyperplanes.
std::vector<APoint> holdout_points(int n, std::span<const int> b, std::size_t count, int t);

// Points and values ct / (multinomial * ansatz) for the first `count` grid
// points. Oracle calls run in parallel on `threads` workers (0 = hardware).
SampleSet collect_samples(int n, std::span<const int> b, const RatFuncA& ansatz,
                          std::size_t count, unsigned threads = 0);

enum class FitStatus {
  found,              // a candidate passed every check
  none,               // no rational function of this total degree fits
  need_more_samples,  // some degree split was underdetermined by the data
};

struct FitResult {
  FitStatus status = FitStatus::none;
  std::optional<RatFuncA> value;
  int num_degree = -1;
  int den_degree = -1;
  std::size_t unknowns = 0;          // unknowns of the successful split
  std::size_t samples_required = 0;  // largest sample count any split wanted
};

inline constexpr std::size_t kHoldout = 5;

// Number of samples a fit at total degree t over n variables needs:
// the largest unknown count over the splits, plus a small overdetermination
// margin and the held-out points.
std::size_t samples_needed(int n, int t);

/// Fits samples by N/D with deg N + deg D = t. Splits are tried in the order
/// (t,0), (t-1,1), ..., (0,t). The last kHoldout samples are held out and
/// used only to validate the candidate.
FitResult fit_rational(const SampleSet& samples, int t);
std::optional<RatFuncA> guess_rat(const SampleSet& samples, int t);

struct GuessOptions {
  int max_t = 16;
  bool use_ansatz = true;
  unsigned threads = 0;
  int max_doublings = 3;
};

struct GuessResult {
  std::optional<ClosedForm> form;
  RatFuncA residual;       // fitted R / ansatz
  int total_degree = -1;   // t at which the residual was found
  std::size_t unknowns = 0;
  SampleSet samples;       // everything gathered, including on give-up
};

/// Conjectures R_b for d_n(a; b). Zero-sum is checked first (R = 0
/// otherwise); then t = 0, 1, ..., max_t until a fit is found. Grid samples
/// are followed by the kHoldout holdout points for t. An underdetermined
/// split doubles the grid before moving on.
GuessResult guess_dyson(int n, std::span<const int> b, const GuessOptions& options = {});

}  // namespace dyson

#endif  // DYSON_CONJECTURE_HPP
