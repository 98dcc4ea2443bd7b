#include "doctest.h"

#include <set>

#include "dyson/errors.hpp"
#include "dyson/turbo.hpp"
#include "support.hpp"

using namespace dyson;
using namespace dyson::test;

namespace {

const ClosedForm& form_m101() {
  static const ClosedForm f{3, {-1, 0, 1}, RatFuncA(-var(3, 0), lin(1, {0, 1, 1}))};
  return f;
}

bool entry_matches_oracle(const StoreEntry& e) {
  const auto n = static_cast<std::size_t>(e.form.n);
  for (long s = 0; s < 5; ++s) {
    std::vector<long> a(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = (s + static_cast<long>(i) * (s + 1)) % 4;
    if (e.form.evaluate(a) != BigRat(ct_at(a, e.form.b))) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("complexity") {
  CHECK(complexity(std::vector<int>{0, 0, 0}) == 0);
  CHECK(complexity(std::vector<int>{2, -1, -1}) == 2);
  CHECK(complexity(std::vector<int>{4, -2, -2}) == 4);
  CHECK(complexity(std::vector<int>{1, 0, 0}) == make_rat(1, 2));
}

TEST_CASE("relabeling closed forms") {
  SUBCASE("swap 1 and 3") {
    const auto f = permute_form(form_m101(), std::vector<int>{2, 1, 0});
    CHECK(f.b == BVector{1, 0, -1});
    CHECK(f.r == RatFuncA(-var(3, 2), lin(1, {1, 1, 0})));
  }
  SUBCASE("swap 1 and 2") {
    const auto f = permute_form(form_m101(), std::vector<int>{1, 0, 2});
    CHECK(f.b == BVector{0, -1, 1});
    CHECK(f.r == RatFuncA(-var(3, 1), lin(1, {1, 0, 1})));
  }
  SUBCASE("identity") { CHECK(permute_form(form_m101(), std::vector<int>{0, 1, 2}) == form_m101()); }
  CHECK_THROWS_AS(permute_form(form_m101(), std::vector<int>{0, 0, 1}), UsageError);
}

TEST_CASE("find_permutation") {
  const std::vector<int> from{2, -1, -1}, to{-1, 2, -1};
  auto p = find_permutation(from, to);
  REQUIRE(p.has_value());
  for (std::size_t i = 0; i < to.size(); ++i) CHECK(to[i] == from[static_cast<std::size_t>((*p)[i])]);
  CHECK_FALSE(find_permutation(from, std::vector<int>{2, -1, 0}).has_value());
}

TEST_CASE("relabeled forms satisfy the relabeled oracle") {
  ResultStore store;
  const auto e = prove(3, std::vector<int>{2, -1, -1}, store);
  std::vector<int> perm{0, 1, 2};
  do {
    const auto f = permute_form(e.form, perm);
    const std::vector<long> a{2, 1, 3};
    CHECK(f.evaluate(a) == BigRat(ct_at(a, f.b)));
  } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST_CASE("reduction relation for n = 3") {
  const auto rel = reduction_relation(3, std::vector<int>{0, 0, 0});
  REQUIRE(rel.size() == 5);
  CHECK(rel[0].shift_a);
  CHECK(rel[0].b == BVector{0, 0, 0});
  std::vector<std::pair<int, BVector>> rhs;
  for (std::size_t i = 1; i < rel.size(); ++i) {
    CHECK_FALSE(rel[i].shift_a);
    rhs.emplace_back(rel[i].sign, rel[i].b);
  }
  CHECK(rhs == std::vector<std::pair<int, BVector>>{{1, {0, 0, 0}}, {-1, {-1, 0, 1}}, {-1, {0, -1, 1}}, {1, {-1, -1, 2}}});
  CHECK(reduction_source(std::vector<int>{-1, -1, 2}) == BVector{0, 0, 0});
}

TEST_CASE("reduction relation for n = 2 matches the binomial formula") {
  // c_2(a + e_2; b) = c_2(a; b) - c_2(a; b + (-1, 1))
  for (int b1 = -3; b1 <= 3; ++b1) {
    const std::vector<int> b{b1, -b1};
    const auto rel = reduction_relation(2, b);
    REQUIRE(rel.size() == 3);
    for (long x = 0; x <= 4; ++x) {
      for (long y = 0; y <= 4; ++y) {
        const std::vector<long> a{x, y}, a2{x, y + 1};
        BigInt rhs = 0;
        for (std::size_t i = 1; i < rel.size(); ++i) rhs += rel[i].sign * c2_value(a, rel[i].b);
        CHECK(c2_value(a2, b) == rhs);
      }
    }
  }
}

TEST_CASE("reduction reproduces guessed forms") {
  ResultStore store;
  for (const std::vector<int>& b : {std::vector<int>{0, 0, 0}, {-1, 0, 1}, {0, -1, 1}}) prove(3, b, store);
  std::vector<BVector> sources;
  const auto derived = derive_by_reduction(std::vector<int>{-1, -1, 2}, store, &sources);
  REQUIRE(derived.has_value());
  CHECK(sources.size() == 4);
  ResultStore fresh;
  const auto guessed = prove(3, std::vector<int>{-1, -1, 2}, fresh);
  CHECK(derived->r == guessed.form.r);
  CHECK_FALSE(derive_by_reduction(std::vector<int>{-2, 1, 1}, ResultStore{}).has_value());
}

TEST_CASE("zero-sum vectors by complexity") {
  CHECK(zero_sum_vectors(3, 0).size() == 1);
  CHECK(zero_sum_vectors(3, 1).size() == 6);
  CHECK(zero_sum_vectors(3, 2).size() == 12);
  CHECK(zero_sum_vectors(2, 3) == std::vector<BVector>{{3, -3}, {-3, 3}});
  for (const auto& b : zero_sum_vectors(4, 2)) {
    CHECK(b_sum(b) == 0);
    CHECK(complexity(b) == 2);
  }
}

TEST_CASE("sweep over n = 3 up to complexity 2") {
  ResultStore store;
  const auto report = turbo_dyson(3, 2, store);
  CHECK(report.failures == 0);
  CHECK(report.new_entries == 19);
  std::size_t n3 = 0;
  std::map<ProvenanceKind, int> kinds;
  for (const auto& e : store.entries()) {
    if (e.form.n != 3) continue;
    ++n3;
    ++kinds[e.provenance.kind];
    CHECK(e.certificate.valid());
    CHECK(entry_matches_oracle(e));
  }
  CHECK(n3 == 19);
  CHECK(kinds[ProvenanceKind::permuted] > 0);
  CHECK(kinds[ProvenanceKind::reduced] > 0);
  CHECK(kinds[ProvenanceKind::guessed] <= 4);

  SUBCASE("rerun adds nothing and leaves the store unchanged") {
    const std::string before = store.to_json();
    const auto again = turbo_dyson(3, 2, store);
    CHECK(again.new_entries == 0);
    CHECK(store.to_json() == before);
  }
  SUBCASE("derived entries agree with a fresh proof") {
    for (const auto& e : store.entries()) {
      if (e.form.n != 3 || e.provenance.kind == ProvenanceKind::guessed) continue;
      ResultStore scratch;
      ProveOptions direct;
      const auto g = guess_dyson(3, e.form.b);
      REQUIRE(g.form.has_value());
      CHECK(g.form->r == e.form.r);
      const auto cert = certify_into_store(*g.form, Provenance{}, scratch, direct).certificate;
      CHECK(cert.valid());
    }
  }
  SUBCASE("relabeled lookups never guess") {
    ResultStore partial;
    prove(3, std::vector<int>{2, -1, -1}, partial);
    const auto e = prove(3, std::vector<int>{-1, -1, 2}, partial);
    CHECK(e.provenance.kind == ProvenanceKind::permuted);
    CHECK(e.provenance.from == BVector{2, -1, -1});
  }
}

TEST_CASE("two-variable sweep stores the binomial forms") {
  ResultStore store;
  const auto report = turbo_dyson(2, 3, store);
  CHECK(report.failures == 0);
  CHECK(store.size() == 7);
  for (const auto& e : store.entries()) {
    CHECK(e.provenance.kind == ProvenanceKind::base);
    CHECK(e.form == c2_closed_form(e.form.b));
  }
}

TEST_CASE("four-variable sweep at complexity 1") {
  ResultStore store;
  const auto report = turbo_dyson(4, 1, store);
  CHECK(report.failures == 0);
  for (const auto& e : store.entries()) {
    if (e.form.n == 4) CHECK(entry_matches_oracle(e));
  }
}
