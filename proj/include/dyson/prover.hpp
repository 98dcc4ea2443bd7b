#ifndef DYSON_PROVER_HPP
#define DYSON_PROVER_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dyson/certificate.hpp"
#include "dyson/closed_form.hpp"
#include "dyson/errors.hpp"

namespace dyson {

/// R for n = 2: (-1)^{b_1} / ((1 + a_1)_{b_1} (1 + a_2)_{-b_1}) when
/// b_1 = -b_2, which is a_1! a_2! / ((a_1 + b_1)! (a_2 - b_1)!) up to sign;
/// 0 otherwise.
ClosedForm c2_closed_form(std::span<const int> b);

// Value of c_2 at a nonnegative point straight from the factorial formula,
// with out-of-range factorials giving 0.
BigInt c2_value(std::span<const long> a, std::span<const int> b);

/// Sum(a) R(a) = sum_i a_i R(a - e_i), compared as canonical forms.
Verdict check_recursion(const ClosedForm& form);

// Closed forms at level n - 1; nothing when the form is not available.
using Resolver = std::function<std::optional<ClosedForm>(int n, const BVector& b)>;

/// R(a)|_{a_k = 0} = sum over P_k of coefficient * R'(a-hat; shifted b), as
/// rational functions in the n - 1 remaining variables. `k` is one-based.
/// Throws UnresolvedDependency when the resolver lacks a needed form.
BoundaryRecord check_boundary(const ClosedForm& form, int k, const Resolver& lower);

struct InitialRecord {
  Verdict verdict;
  BigRat value;          // d_n(0; b)
  bool by_limit = false; // R's denominator vanished at 0; value is the limit along (s, ..., s)
};

InitialRecord check_initial(const ClosedForm& form);

struct DenominatorRecord {
  bool safe = false;
  DenominatorGuarantee guarantee = DenominatorGuarantee::none;
  std::vector<long> zero;  // a grid point where the denominator vanishes
};

DenominatorRecord check_denominator_safety(const ClosedForm& form);

ProofCertificate base_certificate(std::span<const int> b);

// Dependency lookup for certify: the form and its own dependency subtree.
struct ResolvedDependency {
  ClosedForm form;
  DependencyNode node;
};
using DependencyResolver = std::function<std::optional<ResolvedDependency>(int n, const BVector& b)>;

// Checks that can be switched off one at a time; used to test that each of
// them is load-bearing.
enum class Sabotage { none, recursion, boundary, initial, denominator };

/// Runs every check on `form` and returns the certificate, valid or not.
ProofCertificate certify(const ClosedForm& form, const DependencyResolver& lower,
                         Sabotage sabotage = Sabotage::none);

/// The (n-1)-level b vectors the boundary checks of (n, b) need, each once,
/// in order of first use.
std::vector<BVector> boundary_dependencies(int n, std::span<const int> b);

class ProofFailure : public MathFailure {
 public:
  ProofFailure(std::string check, int k, std::string difference);
  const std::string& check() const { return check_; }
  int k() const { return k_; }
  const std::string& difference() const { return difference_; }

 private:
  std::string check_;
  int k_;
  std::string difference_;
};

// Throws ProofFailure for the first failing check of an invalid certificate.
void require_valid(const ProofCertificate& cert);

}  // namespace dyson

#endif  // DYSON_PROVER_HPP
