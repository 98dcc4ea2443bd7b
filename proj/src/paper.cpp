#include "dyson/paper.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "dyson/errors.hpp"
#include "dyson/factor.hpp"

namespace dyson {

namespace {

std::vector<std::string> a_names(int n) {
  std::vector<std::string> out;
  for (int i = 1; i <= n; ++i) out.push_back("a_" + std::to_string(i));
  return out;
}

std::string angle(const std::vector<std::string>& items) {
  std::string s = "\\langle ";
  for (std::size_t i = 0; i < items.size(); ++i) s += (i ? ", " : "") + items[i];
  return s + " \\rangle";
}

std::string angle(std::span<const int> b) {
  std::string s = "\\langle ";
  for (std::size_t i = 0; i < b.size(); ++i) s += (i ? "," : "") + std::to_string(b[i]);
  return s + " \\rangle";
}

std::string monomial_text(const Exponents& e, const std::vector<std::string>& names) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += ' ';
    s += names[i];
    if (e[i] > 1) s += "^{" + std::to_string(e[i]) + "}";
  }
  return s;
}

std::string coefficient_text(const BigRat& c) {
  if (c.get_den() == 1) return c.get_num().get_str();
  return "\\frac{" + c.get_num().get_str() + "}{" + c.get_den().get_str() + "}";
}

// Constant first, then a_1, a_2, ...: "2+2a_1+a_2+a_3".
std::string linear_text(const LinearForm& f, const std::vector<std::string>& names) {
  std::string s;
  if (f.constant != 0) s = std::to_string(f.constant);
  for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
    const auto c = f.coeffs[i];
    if (c == 0) continue;
    if (c < 0) s += '-';
    else if (!s.empty()) s += '+';
    const auto m = c < 0 ? -c : c;
    if (m != 1) s += std::to_string(m);
    s += names[i];
  }
  return s.empty() ? "0" : s;
}

int support(const LinearForm& f) {
  return static_cast<int>(std::count_if(f.coeffs.begin(), f.coeffs.end(), [](auto c) { return c != 0; }));
}

// More variables first, then coefficient vectors in descending lex order.
void sort_factors(std::vector<LinearForm>& fs) {
  std::stable_sort(fs.begin(), fs.end(), [](const LinearForm& x, const LinearForm& y) {
    if (support(x) != support(y)) return support(x) > support(y);
    if (x.coeffs != y.coeffs) return x.coeffs > y.coeffs;
    return x.constant > y.constant;
  });
}

struct Factored {
  BigRat scalar;
  std::vector<std::string> parts;  // rendered factors, multiplied
};

Factored factor_for_display(const PolyA& p, const std::vector<std::string>& names) {
  LinearFactorization f = factor_linear(p);
  Factored out{f.scalar, {}};
  const std::string mono = monomial_text(f.monomial, names);
  if (!mono.empty()) out.parts.push_back(mono);
  sort_factors(f.linear);
  for (const auto& l : f.linear) out.parts.push_back("(" + linear_text(l, names) + ")");
  if (!f.rest.is_constant()) out.parts.push_back("(" + render_poly(f.rest, names) + ")");
  else out.scalar *= f.rest.constant_term();
  return out;
}

std::string join(const std::vector<std::string>& parts) {
  std::string s;
  for (const auto& p : parts) {
    if (!s.empty() && !p.empty() && p.front() != '(' && s.back() != ')') s += ' ';
    s += p;
  }
  return s;
}

// "c_3(\langle 0, a_2, a_3 \rangle; \langle 2,-1,-1 \rangle)"
std::string c_at(int n, const std::vector<std::string>& args, std::span<const int> b) {
  return "c_" + std::to_string(n) + "(" + angle(args) + "; " + angle(b) + ")";
}

std::string c_general(int n, std::span<const int> b) {
  return "c_" + std::to_string(n) + "(\\mathbf{a}; " + angle(b) + ")";
}

// sign * prod_i C(a_i, m_i), from the composition alone.
std::string boundary_coefficient(const std::vector<int>& composition, const std::vector<std::string>& names,
                                 bool& negative) {
  int total = 0;
  std::string num;
  BigInt den = 1;
  for (std::size_t i = 0; i < composition.size(); ++i) {
    const int m = composition[i];
    total += m;
    if (m == 0) continue;
    std::string part = names[i];
    for (int j = 1; j < m; ++j) part += "(" + names[i] + "-" + std::to_string(j) + ")";
    num += (num.empty() ? "" : " ") + part;
    BigInt f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(m));
    den *= f;
  }
  negative = total % 2 != 0;
  if (num.empty()) return "";
  if (den == 1) return num;
  return "\\frac{" + num + "}{" + den.get_str() + "}";
}

bool single_part(const std::vector<int>& c) {
  return std::count_if(c.begin(), c.end(), [](int m) { return m != 0; }) <= 1;
}

struct Equation {
  std::string lhs;
  std::vector<std::string> rhs;  // first term, then terms carrying their own sign
  std::string label;
};

struct Block {
  enum Kind { heading, text, display } kind;
  std::string body;
  std::vector<Equation> equations;
};

struct Doc {
  std::vector<Block> blocks;
  void heading(std::string s) { blocks.push_back(Block{Block::heading, std::move(s), {}}); }
  void text(std::string s) { blocks.push_back(Block{Block::text, std::move(s), {}}); }
  void display(std::vector<Equation> eqs) { blocks.push_back(Block{Block::display, {}, std::move(eqs)}); }
};

void proof_blocks(Doc& doc, const ProofCertificate& cert, const std::string& prefix, bool appendix) {
  const ClosedForm& form = cert.form;
  const int n = form.n;
  const auto names = a_names(n);
  const std::string nn = std::to_string(n);

  doc.heading(appendix ? "Lemma for $\\mathbf{b} = " + angle(form.b) + "$" : "Statement");
  if (b_sum(form.b) != 0) {
    doc.text("Since the components of $\\mathbf{b}$ do not sum to zero, $" + c_general(n, form.b) +
             " = 0$ for all $\\mathbf{a}$.");
    return;
  }
  doc.text("For all nonnegative integers $" + names.front() + ", \\dots, " + names.back() + "$,");
  doc.display({Equation{"", {render_closed_form(form)}, ""}});

  doc.heading("Good style proof");
  // Recursion.
  std::vector<std::string> rec;
  for (int i = 0; i < n; ++i) {
    auto args = names;
    args[static_cast<std::size_t>(i)] += "-1";
    rec.push_back((i ? "+" : "") + c_at(n, args, form.b));
  }
  doc.text("For $" + names.front() + ", \\dots, " + names.back() + " \\geq 1$,");
  doc.display({Equation{c_general(n, form.b), rec, prefix + "rec"}});

  // Boundary conditions.
  std::vector<Equation> bounds;
  for (const auto& record : cert.boundaries) {
    const auto k = static_cast<std::size_t>(record.k - 1);
    auto args = names;
    args[k] = "0";
    std::vector<std::string> rest;
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (i != k) rest.push_back(names[i]);
    }
    std::vector<const BoundaryTerm*> order;
    for (const auto& t : record.terms) {
      if (single_part(t.composition)) order.push_back(&t);
    }
    std::sort(order.begin(), order.end(),
              [](const BoundaryTerm* x, const BoundaryTerm* y) { return x->composition < y->composition; });
    for (const auto& t : record.terms) {
      if (!single_part(t.composition)) order.push_back(&t);
    }
    std::vector<std::string> rhs;
    for (const BoundaryTerm* t : order) {
      bool negative = false;
      const std::string coeff = boundary_coefficient(t->composition, rest, negative);
      std::string term = coeff.empty() ? "" : coeff + " ";
      term += c_at(n - 1, rest, t->b);
      rhs.push_back((negative ? "-" : (rhs.empty() ? "" : "+")) + term);
    }
    if (rhs.empty()) rhs.push_back("0");
    bounds.push_back(Equation{c_at(n, args, form.b), rhs, prefix + "bc" + std::to_string(record.k)});
  }
  doc.text("The boundary conditions are");
  doc.display(bounds);

  doc.text("Finally,");
  doc.display({Equation{c_at(n, std::vector<std::string>(names.size(), "0"), form.b),
                        {coefficient_text(cert.initial_value)}, prefix + "ic"}});

  std::string basis = n == 3 ? "the closed form of $c_2$"
                             : "the lemmas for $n = " + std::to_string(n - 1) + "$ in the appendix";
  std::string den;
  if (cert.guarantee == DenominatorGuarantee::grid) {
    den = " The denominator of the rational factor was checked to be nonzero on the grid of small $\\mathbf{a}$ only.";
  }
  doc.text("Since $" + c_general(n, form.b) + "$ is uniquely determined by @" + prefix + "rec@--@" + prefix +
           "ic@, and the conjectured $d_" + nn + "(\\mathbf{a}; " + angle(form.b) +
           ")$ also satisfies them in light of " + basis + ", the proof is complete." + den);
}

void collect_lemmas(const std::vector<DependencyNode>& deps, std::vector<DependencyNode>& out) {
  for (const auto& d : deps) {
    if (d.n < 3) continue;
    collect_lemmas(d.deps, out);
    const bool seen = std::any_of(out.begin(), out.end(), [&](const DependencyNode& o) {
      return o.n == d.n && o.b == d.b;
    });
    if (!seen) out.push_back(d);
  }
}

// Text marks equation references as @label@.
std::string resolve_refs(const std::string& body, DocFormat format) {
  std::string out;
  bool inside = false;
  std::string label;
  for (char ch : body) {
    if (ch != '@') {
      (inside ? label : out) += ch;
      continue;
    }
    if (inside) out += format == DocFormat::latex ? "\\eqref{" + label + "}" : "(" + label + ")";
    inside = !inside;
    label.clear();
  }
  return out;
}

std::string emit(const Doc& doc, DocFormat format, const std::string& title) {
  std::ostringstream os;
  if (format == DocFormat::latex) {
    os << "\\documentclass{article}\n\\usepackage{amsmath}\n\\usepackage{amsthm}\n\\begin{document}\n";
    os << "\\section*{" << title << "}\n";
    bool in_proof = false;
    for (const auto& b : doc.blocks) {
      switch (b.kind) {
        case Block::heading:
          if (in_proof) os << "\\end{proof}\n";
          in_proof = b.body == "Good style proof";
          if (in_proof) os << "\\begin{proof}[Good style proof]\n";
          else if (b.body != "Statement") os << "\\subsection*{" << b.body << "}\n";
          break;
        case Block::text: os << resolve_refs(b.body, format) << "\n"; break;
        case Block::display: {
          const bool numbered = std::any_of(b.equations.begin(), b.equations.end(),
                                            [](const Equation& e) { return !e.label.empty(); });
          if (!numbered) {
            os << "\\begin{gather*}\n" << b.equations.front().rhs.front() << "\n\\end{gather*}\n";
            break;
          }
          os << "\\begin{eqnarray}\n";
          for (std::size_t q = 0; q < b.equations.size(); ++q) {
            const auto& e = b.equations[q];
            os << e.lhs << " &=& " << e.rhs.front() << "\\label{" << e.label << "}";
            for (std::size_t r = 1; r < e.rhs.size(); ++r) os << "\\\\\n&&\\quad " << e.rhs[r] << "\\nonumber";
            if (q + 1 < b.equations.size()) os << "\\\\";
            os << "\n";
          }
          os << "\\end{eqnarray}\n";
          break;
        }
      }
    }
    if (in_proof) os << "\\end{proof}\n";
    os << "\\end{document}\n";
    return os.str();
  }
  os << "# " << title << "\n";
  for (const auto& b : doc.blocks) {
    switch (b.kind) {
      case Block::heading: os << "\n## " << b.body << "\n\n"; break;
      case Block::text: os << resolve_refs(b.body, format) << "\n\n"; break;
      case Block::display:
        os << "$$\n";
        if (b.equations.front().lhs.empty()) {
          os << b.equations.front().rhs.front() << "\n";
        } else {
          os << "\\begin{aligned}\n";
          for (std::size_t q = 0; q < b.equations.size(); ++q) {
            const auto& e = b.equations[q];
            os << e.lhs << " &= " << e.rhs.front();
            if (!e.label.empty()) os << " &&\\text{(" << e.label << ")}";
            for (std::size_t r = 1; r < e.rhs.size(); ++r) os << " \\\\\n&\\quad " << e.rhs[r];
            os << (q + 1 < b.equations.size() ? " \\\\\n" : "\n");
          }
          os << "\\end{aligned}\n";
        }
        os << "$$\n\n";
        break;
    }
  }
  return os.str();
}

}  // namespace

std::optional<DocFormat> format_from_string(const std::string& s) {
  if (s == "latex" || s == "tex") return DocFormat::latex;
  if (s == "markdown" || s == "md") return DocFormat::markdown;
  return std::nullopt;
}

std::string render_poly(const PolyA& p, const std::vector<std::string>& names) {
  if (p.is_zero()) return "0";
  std::string s;
  for (const auto& [e, c] : p.terms()) {
    const std::string mono = monomial_text(e, names);
    const BigRat mag = abs(c);
    if (c < 0) s += s.empty() ? "-" : "-";
    else if (!s.empty()) s += "+";
    if (mono.empty()) s += coefficient_text(mag);
    else if (mag != 1) s += coefficient_text(mag) + " " + mono;
    else s += mono;
  }
  return s;
}

std::string render_closed_form(const ClosedForm& form) {
  const auto names = a_names(form.n);
  std::string head = "d_" + std::to_string(form.n) + " ( " + angle(names) + "; " + angle(form.b) + " )= ";
  if (form.r.is_zero()) return head + "0";
  Factored num = factor_for_display(form.r.num(), names);
  Factored den = factor_for_display(form.r.den(), names);
  const BigRat scalar = num.scalar / den.scalar;

  std::string sum;
  std::string facts;
  for (const auto& nm : names) {
    sum += (sum.empty() ? "" : "+") + nm;
    facts += (facts.empty() ? "" : " ") + nm + "!";
  }
  std::vector<std::string> top;
  if (abs(scalar.get_num()) != 1) top.push_back(BigInt(abs(scalar.get_num())).get_str());
  top.insert(top.end(), num.parts.begin(), num.parts.end());
  top.push_back("(" + sum + ")!");
  std::vector<std::string> bottom;
  if (scalar.get_den() != 1) bottom.push_back(scalar.get_den().get_str());
  bottom.insert(bottom.end(), den.parts.begin(), den.parts.end());
  std::string bottom_text = join(bottom);
  bottom_text += (bottom_text.empty() ? "" : " ") + facts;
  return head + (scalar < 0 ? "-" : "") + "\\frac{" + join(top) + "}{" + bottom_text + "}";
}

std::string write_paper(const ProofCertificate& cert, const ResultStore& store, DocFormat format) {
  if (!cert.valid()) throw MathFailure("refusing to write a proof from an invalid certificate");
  const ClosedForm& form = cert.form;
  const std::string title = "The constant term $c_" + std::to_string(form.n) + "(\\mathbf{a}; " + angle(form.b) + ")$";
  Doc doc;
  if (cert.base) {
    doc.heading("Statement");
    doc.text("For $n = 2$ the closed form follows from the binomial theorem:");
    doc.display({Equation{"", {render_closed_form(form)}, ""}});
    return emit(doc, format, title);
  }
  proof_blocks(doc, cert, "", false);

  std::vector<DependencyNode> lemmas;
  collect_lemmas(cert.dependencies, lemmas);
  if (!lemmas.empty()) {
    doc.heading("Appendix: lemmas for lower $n$");
    int index = 0;
    for (const auto& l : lemmas) {
      auto entry = store.find(l.n, l.b);
      if (!entry || !entry->certificate.valid()) {
        throw MathFailure("lemma " + format_vector(l.b) + " at n=" + std::to_string(l.n) + " is not in the store");
      }
      proof_blocks(doc, entry->certificate, "l" + std::to_string(++index), true);
    }
  }
  return emit(doc, format, title);
}

}  // namespace dyson
