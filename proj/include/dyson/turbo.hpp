#ifndef DYSON_TURBO_HPP
#define DYSON_TURBO_HPP

#include <string>
#include <vector>

#include "dyson/conjecture.hpp"
#include "dyson/prover.hpp"
#include "dyson/store.hpp"

namespace dyson {

struct ProveOptions {
  GuessOptions guess;
  Sabotage sabotage = Sabotage::none;
};

/// Cache-aware pipeline for (n, b): the stored entry if present, else a
/// relabeled stored form, else guess_dyson. Lower-level dependencies are
/// proved first. Throws MathFailure (or ProofFailure) on failure; nothing is
/// stored then.
StoreEntry prove(int n, std::span<const int> b, ResultStore& store, const ProveOptions& options = {});

/// Certifies a form obtained without guessing and stores it. Missing
/// lower-level dependencies are proved on the way.
StoreEntry certify_into_store(const ClosedForm& form, Provenance provenance, ResultStore& store,
                              const ProveOptions& options = {});

// Sum |b_i| / 2, exact.
BigRat complexity(std::span<const int> b);

struct ReductionTerm {
  int sign = 1;
  bool shift_a = false;  // argument a + e_n instead of a
  BVector b;
};

/// c_n(a + e_n; b) = sum_{S subset {1..n-1}} (-1)^{|S|} c_n(a; b - e_S + |S| e_n),
/// left side first, then S in increasing bitmask order.
std::vector<ReductionTerm> reduction_relation(int n, std::span<const int> b);

// The b whose relation has `target` as its full-S term:
// target + (1, ..., 1, 0) - (n - 1) e_n.
BVector reduction_source(std::span<const int> target);

/// R for `target` from the stored forms its relation needs:
///   R_target(a) = (-1)^{n-1} [ R_b(a + e_n) (sum a + 1) / (a_n + 1)
///                              - sum_{S proper} (-1)^{|S|} R_{b_S}(a) ].
/// Nothing when some needed form is missing.
std::optional<ClosedForm> derive_by_reduction(std::span<const int> target, const ResultStore& store,
                                              std::vector<BVector>* sources = nullptr);

// Zero-sum vectors of length n with complexity exactly c, lexicographically descending.
std::vector<BVector> zero_sum_vectors(int n, int c);

struct SweepItem {
  BVector b;
  ProvenanceKind kind = ProvenanceKind::guessed;
  bool fresh = false;
  double seconds = 0;
  std::string error;
};

struct SweepReport {
  std::vector<SweepItem> items;
  std::size_t new_entries = 0;
  std::size_t failures = 0;
};

/// Every zero-sum b of complexity <= C, in increasing complexity. Per
/// permutation class: relabel a stored member, else derive a member by
/// reduction, else guess and prove the sorted-descending member. Failures are
/// recorded and the sweep continues.
SweepReport turbo_dyson(int n, int max_complexity, ResultStore& store, const ProveOptions& options = {});

}  // namespace dyson

#endif  // DYSON_TURBO_HPP
