#ifndef DYSON_STORE_HPP
#define DYSON_STORE_HPP

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dyson/certificate.hpp"

namespace dyson {

enum class ProvenanceKind { base, guessed, permuted, reduced };

std::string to_string(ProvenanceKind k);

struct Provenance {
  ProvenanceKind kind = ProvenanceKind::guessed;
  BVector from;                  // permuted: the source b
  std::vector<int> permutation;  // permuted: b[i] = from[permutation[i]], zero-based
  std::vector<BVector> sources;  // reduced: right-hand b vectors of the relation

  bool operator==(const Provenance&) const = default;
};

struct StoreEntry {
  ClosedForm form;
  ProofCertificate certificate;
  Provenance provenance;

  bool operator==(const StoreEntry&) const = default;
};

inline constexpr const char* kStoreVersion = "dyson-store/v1";

/// Certified closed forms keyed by (n, b). Safe to share between threads;
/// entries never change once inserted.
class ResultStore {
 public:
  ResultStore() = default;
  ResultStore(const ResultStore& other);
  ResultStore& operator=(const ResultStore& other);

  std::optional<StoreEntry> find(int n, const BVector& b) const;
  bool contains(int n, const BVector& b) const { return find(n, b).has_value(); }

  // Atomic get-or-insert: returns the stored entry and whether it is new.
  std::pair<StoreEntry, bool> insert(StoreEntry entry);

  std::size_t size() const;
  // Sorted by n, then b lexicographically.
  std::vector<StoreEntry> entries() const;

  std::string to_json() const;
  // Throws IoError on malformed input.
  static ResultStore from_json(const std::string& text);

  // A missing file gives an empty store.
  static ResultStore load(const std::filesystem::path& path);
  // Exclusive via a sibling ".lock" file; written to a temporary and renamed.
  void save(const std::filesystem::path& path) const;

  bool operator==(const ResultStore& other) const { return entries() == other.entries(); }

 private:
  mutable std::mutex mutex_;
  std::map<std::pair<int, BVector>, StoreEntry> entries_;
};

// Canonical term lists [[num, den, [e...]], ...] in descending graded-lex order.
std::string poly_to_json(const PolyA& p);
PolyA poly_from_json(const std::string& text, std::size_t nvars);

}  // namespace dyson

#endif  // DYSON_STORE_HPP
