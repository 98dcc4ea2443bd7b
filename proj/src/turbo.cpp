#include "dyson/turbo.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>

#include "dyson/errors.hpp"

namespace dyson {

namespace {

void check_args(int n, std::span<const int> b) {
  if (n < 2) throw UsageError("n must be at least 2");
  if (b.size() != static_cast<std::size_t>(n)) throw UsageError("b must have n components");
}

DependencyResolver store_resolver(ResultStore& store, const ProveOptions& options) {
  return [&store, &options](int n, const BVector& d) -> std::optional<ResolvedDependency> {
    if (n == 2) return ResolvedDependency{c2_closed_form(d), DependencyNode{2, d, {}}};
    StoreEntry e = prove(n, d, store, options);
    return ResolvedDependency{e.form, DependencyNode{n, d, e.certificate.dependencies}};
  };
}

std::optional<StoreEntry> find_relabeled(int n, std::span<const int> b, ResultStore& store,
                                         const ProveOptions& options) {
  BVector sorted(b.begin(), b.end());
  std::sort(sorted.begin(), sorted.end());
  do {
    if (std::equal(sorted.begin(), sorted.end(), b.begin())) continue;
    auto src = store.find(n, sorted);
    if (!src) continue;
    auto perm = find_permutation(sorted, b);
    Provenance prov{ProvenanceKind::permuted, sorted, *perm, {}};
    return certify_into_store(permute_form(src->form, *perm), prov, store, options);
  } while (std::next_permutation(sorted.begin(), sorted.end()));
  return std::nullopt;
}

}  // namespace

StoreEntry certify_into_store(const ClosedForm& form, Provenance provenance, ResultStore& store,
                              const ProveOptions& options) {
  if (auto hit = store.find(form.n, form.b)) return *hit;
  if (form.n == 2) {
    ProofCertificate cert = certify(form, {}, options.sabotage);
    require_valid(cert);
    return store.insert(StoreEntry{form, cert, Provenance{ProvenanceKind::base, {}, {}, {}}}).first;
  }
  ProofCertificate cert = certify(form, store_resolver(store, options), options.sabotage);
  require_valid(cert);
  return store.insert(StoreEntry{form, std::move(cert), std::move(provenance)}).first;
}

StoreEntry prove(int n, std::span<const int> b, ResultStore& store, const ProveOptions& options) {
  check_args(n, b);
  const BVector bv(b.begin(), b.end());
  if (auto hit = store.find(n, bv)) return *hit;
  if (n == 2) return certify_into_store(c2_closed_form(b), {}, store, options);
  if (auto rel = find_relabeled(n, b, store, options)) return *rel;

  GuessResult guess = guess_dyson(n, b, options.guess);
  if (!guess.form) {
    throw MathFailure("no closed form for " + format_vector(b) + " up to total degree " +
                      std::to_string(options.guess.max_t) + " after " + std::to_string(guess.samples.size()) +
                      " samples");
  }
  return certify_into_store(*guess.form, Provenance{ProvenanceKind::guessed, {}, {}, {}}, store, options);
}

BigRat complexity(std::span<const int> b) {
  long s = 0;
  for (int x : b) s += std::abs(x);
  return make_rat(s, 2);
}

std::vector<ReductionTerm> reduction_relation(int n, std::span<const int> b) {
  check_args(n, b);
  std::vector<ReductionTerm> out;
  out.push_back(ReductionTerm{1, true, BVector(b.begin(), b.end())});
  const unsigned subsets = 1U << static_cast<unsigned>(n - 1);
  for (unsigned s = 0; s < subsets; ++s) {
    BVector shifted(b.begin(), b.end());
    int size = 0;
    for (int i = 0; i < n - 1; ++i) {
      if (s & (1U << static_cast<unsigned>(i))) {
        --shifted[static_cast<std::size_t>(i)];
        ++size;
      }
    }
    shifted.back() += size;
    out.push_back(ReductionTerm{size % 2 ? -1 : 1, false, std::move(shifted)});
  }
  return out;
}

BVector reduction_source(std::span<const int> target) {
  BVector b(target.begin(), target.end());
  const int n = static_cast<int>(b.size());
  for (int i = 0; i + 1 < n; ++i) ++b[static_cast<std::size_t>(i)];
  b.back() -= n - 1;
  return b;
}

std::optional<ClosedForm> derive_by_reduction(std::span<const int> target, const ResultStore& store,
                                              std::vector<BVector>* sources) {
  const int n = static_cast<int>(target.size());
  check_args(n, target);
  const auto nv = static_cast<std::size_t>(n);
  const auto relation = reduction_relation(n, reduction_source(target));
  // relation.back() is the full subset, which is the target itself.
  std::vector<BVector> used;
  RatFuncA acc = RatFuncA::zero(nv);
  for (std::size_t i = 0; i + 1 < relation.size(); ++i) {
    const auto& term = relation[i];
    auto entry = store.find(n, term.b);
    if (!entry) return std::nullopt;
    used.push_back(term.b);
    if (term.shift_a) {
      std::vector<PolyA> images;
      for (std::size_t j = 0; j < nv; ++j) {
        PolyA v = PolyA::variable(nv, j);
        if (j + 1 == nv) v += PolyA::constant(nv, 1);
        images.push_back(std::move(v));
      }
      std::vector<std::int64_t> ones(nv, 1), last(nv, 0);
      last.back() = 1;
      acc += entry->form.r.compose(images) * RatFuncA(PolyA::linear(1, ones), PolyA::linear(1, last));
    } else {
      acc -= term.sign > 0 ? entry->form.r : -entry->form.r;
    }
  }
  if (sources) *sources = std::move(used);
  if ((n - 1) % 2) acc = -acc;
  return ClosedForm{n, BVector(target.begin(), target.end()), acc};
}

std::vector<BVector> zero_sum_vectors(int n, int c) {
  std::vector<BVector> out;
  if (n < 1 || c < 0) return out;
  BVector cur(static_cast<std::size_t>(n));
  std::function<void(int, int, int)> rec = [&](int i, int sum, int abs_sum) {
    if (i == n - 1) {
      const int last = -sum;
      if (abs_sum + std::abs(last) == 2 * c) {
        cur[static_cast<std::size_t>(i)] = last;
        out.push_back(cur);
      }
      return;
    }
    const int room = 2 * c - abs_sum;
    for (int v = room; v >= -room; --v) {
      cur[static_cast<std::size_t>(i)] = v;
      rec(i + 1, sum + v, abs_sum + std::abs(v));
    }
  };
  rec(0, 0, 0);
  return out;
}

SweepReport turbo_dyson(int n, int max_complexity, ResultStore& store, const ProveOptions& options) {
  if (n < 2) throw UsageError("n must be at least 2");
  if (max_complexity < 0) throw UsageError("complexity bound must be nonnegative");
  using clock = std::chrono::steady_clock;
  SweepReport report;

  auto record = [&](const BVector& b, const std::function<StoreEntry()>& work) {
    SweepItem item;
    item.b = b;
    const bool had = store.contains(n, b);
    const auto start = clock::now();
    try {
      const StoreEntry e = work();
      item.kind = e.provenance.kind;
      item.fresh = !had;
    } catch (const MathFailure& ex) {
      item.error = ex.what();
    } catch (const DomainError& ex) {
      item.error = ex.what();
    }
    item.seconds = std::chrono::duration<double>(clock::now() - start).count();
    if (item.fresh) ++report.new_entries;
    if (!item.error.empty()) ++report.failures;
    report.items.push_back(std::move(item));
  };

  for (int c = 0; c <= max_complexity; ++c) {
    // Permutation classes keyed by the sorted-descending representative.
    std::map<BVector, std::vector<BVector>, std::greater<>> classes;
    for (auto& b : zero_sum_vectors(n, c)) {
      BVector key = b;
      std::sort(key.begin(), key.end(), std::greater<>());
      classes[key].push_back(std::move(b));
    }

    auto finish_class = [&](const std::vector<BVector>& members) {
      for (const auto& b : members) {
        const bool seen = std::any_of(report.items.begin(), report.items.end(),
                                      [&](const SweepItem& i) { return i.b == b && i.error.empty(); });
        if (!seen) record(b, [&] { return prove(n, b, store, options); });
      }
    };

    std::vector<std::pair<BVector, std::vector<BVector>>> pending(classes.begin(), classes.end());
    while (!pending.empty()) {
      bool progress = false;
      for (auto it = pending.begin(); it != pending.end();) {
        const auto& members = it->second;
        bool ready = n == 2 || std::any_of(members.begin(), members.end(),
                                           [&](const BVector& b) { return store.contains(n, b); });
        if (!ready) {
          for (const auto& b : members) {
            std::vector<BVector> sources;
            auto form = derive_by_reduction(b, store, &sources);
            if (!form) continue;
            record(b, [&] {
              return certify_into_store(*form, Provenance{ProvenanceKind::reduced, {}, {}, sources}, store, options);
            });
            ready = store.contains(n, b);
            if (ready) break;
          }
        }
        if (ready) {
          finish_class(members);
          it = pending.erase(it);
          progress = true;
        } else {
          ++it;
        }
      }
      if (!progress) {
        // Nothing derivable: guess the representative of the first class.
        auto first = pending.begin();
        record(first->first, [&] { return prove(n, first->first, store, options); });
        finish_class(first->second);
        pending.erase(first);
      }
    }
  }
  return report;
}

}  // namespace dyson
