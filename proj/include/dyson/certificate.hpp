#ifndef DYSON_CERTIFICATE_HPP
#define DYSON_CERTIFICATE_HPP

#include <optional>
#include <string>
#include <vector>

#include "dyson/closed_form.hpp"

namespace dyson {

struct Verdict {
  bool ok = false;
  std::string lhs;   // canonical text of both sides of the checked identity
  std::string rhs;
  std::string note;  // why it failed, or how it was decided

  bool operator==(const Verdict&) const = default;
};

// One term of the right side of a boundary condition.
struct BoundaryTerm {
  std::vector<int> composition;  // over indices != k
  BVector b;                     // (n-1)-level b vector

  bool operator==(const BoundaryTerm&) const = default;
};

struct BoundaryRecord {
  int k = 0;  // one-based
  Verdict verdict;
  std::vector<BoundaryTerm> terms;

  bool operator==(const BoundaryRecord&) const = default;
};

enum class DenominatorGuarantee {
  linear_factors,  // every factor is c + sum c_i a_i with c > 0, c_i >= 0
  grid,            // checked nonzero on 0 <= a_i <= sum|b_i| + n only
  none,            // vanishes somewhere on that grid
};

std::string to_string(DenominatorGuarantee g);
std::optional<DenominatorGuarantee> guarantee_from_string(const std::string& s);

struct DependencyNode {
  int n = 0;
  BVector b;
  std::vector<DependencyNode> deps;

  bool operator==(const DependencyNode&) const = default;
};

struct ProofCertificate {
  ClosedForm form;
  bool base = false;  // n = 2, settled by the binomial theorem
  bool recursion_ok = false;
  std::vector<bool> boundary_ok;  // index k - 1
  bool initial_ok = false;
  bool initial_by_limit = false;
  bool denominator_safe = false;
  DenominatorGuarantee guarantee = DenominatorGuarantee::none;
  Verdict recursion;
  std::vector<BoundaryRecord> boundaries;
  BigRat initial_value;
  std::vector<DependencyNode> dependencies;

  /// Every flag set and the dependency tree ends at n = 2.
  bool valid() const;
  bool operator==(const ProofCertificate&) const = default;
};

}  // namespace dyson

#endif  // DYSON_CERTIFICATE_HPP
