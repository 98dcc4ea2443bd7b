#include "dyson/store.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "dyson/errors.hpp"

namespace dyson {

using nlohmann::json;

namespace {

json poly_json(const PolyA& p) {
  json out = json::array();
  for (const auto& [e, c] : p.terms()) {
    out.push_back(json::array({c.get_num().get_str(), c.get_den().get_str(), e}));
  }
  return out;
}

PolyA poly_from(const json& j, std::size_t nvars) {
  PolyA p(nvars);
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 3) throw IoError("malformed polynomial term");
    const BigInt num(t[0].get<std::string>());
    const BigInt den(t[1].get<std::string>());
    if (den <= 0) throw IoError("nonpositive denominator in polynomial term");
    auto e = t[2].get<Exponents>();
    if (e.size() != nvars) throw IoError("exponent vector of the wrong length");
    p.add_term(e, make_rat(num, den));
  }
  return p;
}

json verdict_json(const Verdict& v) {
  return json{{"ok", v.ok}, {"lhs", v.lhs}, {"rhs", v.rhs}, {"note", v.note}};
}

Verdict verdict_from(const json& j) {
  return Verdict{j.at("ok").get<bool>(), j.at("lhs").get<std::string>(), j.at("rhs").get<std::string>(),
                 j.at("note").get<std::string>()};
}

json node_json(const DependencyNode& d) {
  json deps = json::array();
  for (const auto& c : d.deps) deps.push_back(node_json(c));
  return json{{"n", d.n}, {"b", d.b}, {"deps", deps}};
}

DependencyNode node_from(const json& j) {
  DependencyNode d{j.at("n").get<int>(), j.at("b").get<BVector>(), {}};
  for (const auto& c : j.at("deps")) d.deps.push_back(node_from(c));
  return d;
}

json certificate_json(const ProofCertificate& c) {
  json boundaries = json::array();
  for (const auto& r : c.boundaries) {
    json terms = json::array();
    for (const auto& t : r.terms) terms.push_back(json{{"composition", t.composition}, {"b", t.b}});
    boundaries.push_back(json{{"k", r.k}, {"verdict", verdict_json(r.verdict)}, {"terms", terms}});
  }
  json deps = json::array();
  for (const auto& d : c.dependencies) deps.push_back(node_json(d));
  return json{{"base", c.base},
              {"recursion_ok", c.recursion_ok},
              {"boundary_ok", c.boundary_ok},
              {"initial_ok", c.initial_ok},
              {"initial_by_limit", c.initial_by_limit},
              {"initial_value", to_string(c.initial_value)},
              {"denominator_safe", c.denominator_safe},
              {"denominator_guarantee", to_string(c.guarantee)},
              {"recursion", verdict_json(c.recursion)},
              {"boundaries", boundaries},
              {"dependencies", deps}};
}

ProofCertificate certificate_from(const json& j, const ClosedForm& form) {
  ProofCertificate c;
  c.form = form;
  c.base = j.at("base").get<bool>();
  c.recursion_ok = j.at("recursion_ok").get<bool>();
  c.boundary_ok = j.at("boundary_ok").get<std::vector<bool>>();
  c.initial_ok = j.at("initial_ok").get<bool>();
  c.initial_by_limit = j.at("initial_by_limit").get<bool>();
  c.initial_value = BigRat(j.at("initial_value").get<std::string>());
  c.initial_value.canonicalize();
  c.denominator_safe = j.at("denominator_safe").get<bool>();
  auto g = guarantee_from_string(j.at("denominator_guarantee").get<std::string>());
  if (!g) throw IoError("unknown denominator guarantee");
  c.guarantee = *g;
  c.recursion = verdict_from(j.at("recursion"));
  for (const auto& r : j.at("boundaries")) {
    BoundaryRecord rec{r.at("k").get<int>(), verdict_from(r.at("verdict")), {}};
    for (const auto& t : r.at("terms")) {
      rec.terms.push_back(BoundaryTerm{t.at("composition").get<std::vector<int>>(), t.at("b").get<BVector>()});
    }
    c.boundaries.push_back(std::move(rec));
  }
  for (const auto& d : j.at("dependencies")) c.dependencies.push_back(node_from(d));
  return c;
}

json provenance_json(const Provenance& p) {
  json j{{"kind", to_string(p.kind)}};
  if (p.kind == ProvenanceKind::permuted) {
    j["from"] = p.from;
    j["permutation"] = p.permutation;
  }
  if (p.kind == ProvenanceKind::reduced) j["sources"] = p.sources;
  return j;
}

Provenance provenance_from(const json& j) {
  Provenance p;
  const auto kind = j.at("kind").get<std::string>();
  bool known = false;
  for (auto k : {ProvenanceKind::base, ProvenanceKind::guessed, ProvenanceKind::permuted, ProvenanceKind::reduced}) {
    if (to_string(k) == kind) {
      p.kind = k;
      known = true;
    }
  }
  if (!known) throw IoError("unknown provenance kind " + kind);
  if (p.kind == ProvenanceKind::permuted) {
    p.from = j.at("from").get<BVector>();
    p.permutation = j.at("permutation").get<std::vector<int>>();
  }
  if (p.kind == ProvenanceKind::reduced) p.sources = j.at("sources").get<std::vector<BVector>>();
  return p;
}

}  // namespace

std::string to_string(ProvenanceKind k) {
  switch (k) {
    case ProvenanceKind::base: return "base";
    case ProvenanceKind::guessed: return "guessed";
    case ProvenanceKind::permuted: return "permuted";
    case ProvenanceKind::reduced: return "reduced";
  }
  return "guessed";
}

ResultStore::ResultStore(const ResultStore& other) {
  std::lock_guard lock(other.mutex_);
  entries_ = other.entries_;
}

ResultStore& ResultStore::operator=(const ResultStore& other) {
  if (this == &other) return *this;
  std::scoped_lock lock(mutex_, other.mutex_);
  entries_ = other.entries_;
  return *this;
}

std::optional<StoreEntry> ResultStore::find(int n, const BVector& b) const {
  std::lock_guard lock(mutex_);
  auto it = entries_.find({n, b});
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::pair<StoreEntry, bool> ResultStore::insert(StoreEntry entry) {
  std::lock_guard lock(mutex_);
  auto [it, fresh] = entries_.try_emplace({entry.form.n, entry.form.b}, std::move(entry));
  return {it->second, fresh};
}

std::size_t ResultStore::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

std::vector<StoreEntry> ResultStore::entries() const {
  std::lock_guard lock(mutex_);
  std::vector<StoreEntry> out;
  out.reserve(entries_.size());
  for (const auto& [key, e] : entries_) out.push_back(e);
  return out;
}

std::string ResultStore::to_json() const {
  json entries = json::array();
  for (const auto& e : this->entries()) {
    entries.push_back(json{{"n", e.form.n},
                           {"b", e.form.b},
                           {"R_num", poly_json(e.form.r.num())},
                           {"R_den", poly_json(e.form.r.den())},
                           {"provenance", provenance_json(e.provenance)},
                           {"certificate", certificate_json(e.certificate)}});
  }
  return json{{"version", kStoreVersion}, {"entries", entries}}.dump(1) + "\n";
}

ResultStore ResultStore::from_json(const std::string& text) {
  ResultStore store;
  try {
    const json j = json::parse(text);
    if (j.at("version").get<std::string>() != kStoreVersion) {
      throw IoError("unsupported store version " + j.at("version").get<std::string>());
    }
    for (const auto& e : j.at("entries")) {
      const int n = e.at("n").get<int>();
      auto b = e.at("b").get<BVector>();
      if (n < 2 || b.size() != static_cast<std::size_t>(n)) throw IoError("entry with inconsistent n and b");
      const auto nv = static_cast<std::size_t>(n);
      PolyA num = poly_from(e.at("R_num"), nv);
      PolyA den = poly_from(e.at("R_den"), nv);
      ClosedForm form{n, b, RatFuncA(num, den)};
      if (form.r.num() != num || form.r.den() != den) throw IoError("stored rational function is not canonical");
      StoreEntry entry{form, certificate_from(e.at("certificate"), form), provenance_from(e.at("provenance"))};
      if (!store.insert(std::move(entry)).second) throw IoError("duplicate store entry " + format_vector(b));
    }
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed store: ") + e.what());
  } catch (const DomainError& e) {
    throw IoError(std::string("malformed store: ") + e.what());
  }
  return store;
}

ResultStore ResultStore::load(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return {};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

void ResultStore::save(const std::filesystem::path& path) const {
  const std::string text = to_json();
  const auto lock_path = std::filesystem::path(path.string() + ".lock");
  std::FILE* lock = nullptr;
  for (int attempt = 0; attempt < 100 && !lock; ++attempt) {
    lock = std::fopen(lock_path.c_str(), "wx");
    if (!lock) std::this_thread::sleep_for(std::chrono::milliseconds(50));
  }
  if (!lock) throw IoError("store is locked: " + lock_path.string());
  std::fclose(lock);
  struct Unlock {
    std::filesystem::path p;
    ~Unlock() {
      std::error_code ec;
      std::filesystem::remove(p, ec);
    }
  } unlock{lock_path};

  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out << text;
    if (!out.flush()) throw IoError("cannot write " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot replace " + path.string() + ": " + ec.message());
}

std::string poly_to_json(const PolyA& p) { return poly_json(p).dump(); }

PolyA poly_from_json(const std::string& text, std::size_t nvars) {
  try {
    return poly_from(json::parse(text), nvars);
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed polynomial: ") + e.what());
  }
}

}  // namespace dyson
