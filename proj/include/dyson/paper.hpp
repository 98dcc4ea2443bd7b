#ifndef DYSON_PAPER_HPP
#define DYSON_PAPER_HPP

#include <string>
#include <vector>

#include "dyson/certificate.hpp"
#include "dyson/store.hpp"

namespace dyson {

enum class DocFormat { latex, markdown };

std::optional<DocFormat> format_from_string(const std::string& s);

/// LaTeX for d_n(a; b) = R(a) (a_1 + ... + a_n)! / (a_1! ... a_n!), with R
/// split into linear factors where possible.
std::string render_closed_form(const ClosedForm& form);

// LaTeX for a polynomial; `names` gives the variable names.
std::string render_poly(const PolyA& p, const std::vector<std::string>& names);

/// A Good-style proof of the certified form: statement, recursion, one
/// boundary condition per k, initial condition and conclusion. Everything
/// shown comes from the certificate. Forms for n >= 4 get an appendix with
/// the lower-level lemmas, taken from `store`. Throws MathFailure for an
/// invalid certificate or a lemma missing from the store.
std::string write_paper(const ProofCertificate& cert, const ResultStore& store, DocFormat format);

}  // namespace dyson

#endif  // DYSON_PAPER_HPP
