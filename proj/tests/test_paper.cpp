#include "doctest.h"

#include <regex>

#include "dyson/errors.hpp"
#include "dyson/paper.hpp"
#include "dyson/turbo.hpp"
#include "support.hpp"

using namespace dyson;

namespace {

std::string squash(std::string s) {
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  return s;
}

bool contains(const std::string& doc, const std::string& piece) {
  return squash(doc).find(squash(piece)) != std::string::npos;
}

// Braces balance, \left/\right pair up and environments nest properly.
bool latex_well_formed(const std::string& doc) {
  int depth = 0;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    if (doc[i] == '\\' && i + 1 < doc.size() && (doc[i + 1] == '{' || doc[i + 1] == '}')) {
      ++i;
      continue;
    }
    if (doc[i] == '{') ++depth;
    if (doc[i] == '}' && --depth < 0) return false;
  }
  if (depth != 0) return false;
  std::vector<std::string> envs;
  const std::regex env(R"(\\(begin|end)\{([a-z*]+)\})");
  for (auto it = std::sregex_iterator(doc.begin(), doc.end(), env); it != std::sregex_iterator(); ++it) {
    if ((*it)[1] == "begin") {
      envs.push_back((*it)[2]);
    } else {
      if (envs.empty() || envs.back() != (*it)[2]) return false;
      envs.pop_back();
    }
  }
  std::size_t dollars = 0;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    if (doc[i] == '$' && (i == 0 || doc[i - 1] != '\\')) ++dollars;
  }
  const auto count = [&](const std::string& s) {
    std::size_t c = 0;
    for (auto p = doc.find(s); p != std::string::npos; p = doc.find(s, p + 1)) ++c;
    return c;
  };
  return envs.empty() && dollars % 2 == 0 && count("\\left") == count("\\right");
}

}  // namespace

TEST_CASE("closed form display") {
  ResultStore store;
  const auto e = prove(3, std::vector<int>{2, -1, -1}, store);
  CHECK(squash(render_closed_form(e.form)) ==
        squash("d_3 ( \\langle a_1, a_2, a_3 \\rangle; \\langle 2,-1,-1 \\rangle )= "
               "\\frac{a_2 a_3 (2+2a_1+a_2+a_3)(a_1+a_2+a_3)!}{(1+a_1+a_2)(1+a_1+a_3)(1+a_1) a_1! a_2! a_3! }"));
  const auto m = prove(3, std::vector<int>{-1, 0, 1}, store);
  CHECK(squash(render_closed_form(m.form)) ==
        squash("d_3(\\langle a_1, a_2, a_3 \\rangle; \\langle -1,0,1 \\rangle)= -\\frac{a_1(a_1+a_2+a_3)!}{(1+a_2+a_3) a_1! a_2! a_3!}"));
}

TEST_CASE("proof document for (2,-1,-1)") {
  ResultStore store;
  const auto e = prove(3, std::vector<int>{2, -1, -1}, store);
  const std::string doc = write_paper(e.certificate, store, DocFormat::latex);
  CHECK(latex_well_formed(doc));
  CHECK(contains(doc, "\\begin{proof}[Good style proof]"));
  CHECK(contains(doc, "c_3(\\langle 0, a_2, a_3 \\rangle; \\langle 2,-1,-1 \\rangle) &=& "
                      "\\frac{a_3(a_3-1)}{2} c_2(\\langle a_2, a_3 \\rangle; \\langle -1,1 \\rangle)"));
  CHECK(contains(doc, "+\\frac{a_2(a_2-1)}{2} c_2(\\langle a_2, a_3 \\rangle; \\langle 1,-1 \\rangle)"));
  CHECK(contains(doc, "+ a_2 a_3 c_2 (\\langle a_2, a_3 \\rangle; \\langle 0,0 \\rangle)"));
  CHECK(contains(doc, "c_3(\\langle a_1, 0, a_3 \\rangle; \\langle 2,-1,-1 \\rangle) &=& 0"));
  CHECK(contains(doc, "c_3(\\langle a_1, a_2, 0 \\rangle; \\langle 2,-1,-1 \\rangle) &=& 0"));
  CHECK(contains(doc, "c_3(\\langle 0,0, 0 \\rangle; \\langle 2,-1,-1 \\rangle) &=& 0"));
  CHECK(contains(doc, "c_3(\\langle a_1-1, a_2, a_3 \\rangle; \\langle 2,-1,-1\\rangle)"));
  CHECK(contains(doc, "the proof is complete"));

  const std::string md = write_paper(e.certificate, store, DocFormat::markdown);
  CHECK(contains(md, "## Good style proof"));
  CHECK(md.find("\\begin{proof}") == std::string::npos);
}

TEST_CASE("documents depend only on the certificate") {
  ResultStore store;
  turbo_dyson(3, 2, store);
  const ResultStore reloaded = ResultStore::from_json(store.to_json());
  for (const auto& e : store.entries()) {
    if (e.form.n != 3) continue;
    const auto again = reloaded.find(3, e.form.b);
    REQUIRE(again.has_value());
    const std::string doc = write_paper(e.certificate, store, DocFormat::latex);
    CHECK(doc == write_paper(again->certificate, reloaded, DocFormat::latex));
    CHECK(latex_well_formed(doc));
  }
}

TEST_CASE("zero form gives a one-line document") {
  ResultStore store;
  const auto e = prove(3, std::vector<int>{1, 0, 0}, store);
  const std::string doc = write_paper(e.certificate, store, DocFormat::latex);
  CHECK(latex_well_formed(doc));
  CHECK(doc.find("Good style proof") == std::string::npos);
  CHECK(contains(doc, "c_3(\\mathbf{a}; \\langle 1,0,0 \\rangle) = 0"));
}

TEST_CASE("four-variable document has an appendix of lemmas") {
  ResultStore store;
  const auto e = prove(4, std::vector<int>{1, -1, 0, 0}, store);
  const std::string doc = write_paper(e.certificate, store, DocFormat::latex);
  CHECK(latex_well_formed(doc));
  CHECK(contains(doc, "Appendix"));
  for (const auto& d : e.certificate.dependencies) {
    std::string b = "\\langle ";
    for (std::size_t i = 0; i < d.b.size(); ++i) b += (i ? "," : "") + std::to_string(d.b[i]);
    CHECK(contains(doc, "Lemma for $\\mathbf{b} = " + b + " \\rangle$"));
  }
  CHECK_THROWS_AS(write_paper(e.certificate, ResultStore{}, DocFormat::latex), MathFailure);
}

TEST_CASE("invalid certificates are never written up") {
  ResultStore store;
  ProofCertificate cert = prove(3, std::vector<int>{2, -1, -1}, store).certificate;
  cert.boundary_ok[1] = false;
  CHECK_THROWS_AS(write_paper(cert, store, DocFormat::latex), MathFailure);
}

TEST_CASE("polynomial rendering") {
  const std::vector<std::string> names{"a_1", "a_2"};
  CHECK(render_poly(PolyA(2), names) == "0");
  const PolyA p = dyson::test::var(2, 0) * dyson::test::var(2, 0) - BigRat(3) * dyson::test::var(2, 1) + dyson::test::num(2, 1);
  CHECK(render_poly(p, names) == "a_1^{2}-3 a_2+1");
}
