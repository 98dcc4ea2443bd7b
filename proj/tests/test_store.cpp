#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "dyson/errors.hpp"
#include "dyson/turbo.hpp"
#include "support.hpp"

using namespace dyson;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  static int counter = 0;
  const fs::path p = fs::temp_directory_path() / ("dyson-store-test-" + std::to_string(::getpid()) + "-" +
                                                  std::to_string(counter++));
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

ResultStore sample_store() {
  ResultStore store;
  turbo_dyson(3, 1, store);
  prove(3, std::vector<int>{2, -1, -1}, store);
  return store;
}

}  // namespace

TEST_CASE("store round trip") {
  const ResultStore store = sample_store();
  const std::string text = store.to_json();
  const ResultStore back = ResultStore::from_json(text);
  CHECK(back == store);
  CHECK(back.to_json() == text);
  for (const auto& e : back.entries()) {
    auto orig = store.find(e.form.n, e.form.b);
    REQUIRE(orig.has_value());
    CHECK(e == *orig);
  }
}

TEST_CASE("store files save and load byte for byte") {
  const fs::path dir = scratch_dir();
  const fs::path file = dir / "store.json";
  CHECK(ResultStore::load(file).size() == 0);
  const ResultStore store = sample_store();
  store.save(file);
  const std::string first = slurp(file);
  ResultStore::load(file).save(file);
  CHECK(slurp(file) == first);
  CHECK_FALSE(fs::exists(dir / "store.json.lock"));
  CHECK(first.find("\"version\": \"dyson-store/v1\"") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("malformed stores are rejected") {
  CHECK_THROWS_AS(ResultStore::from_json("{"), IoError);
  CHECK_THROWS_AS(ResultStore::from_json("{\"version\":\"dyson-store/v0\",\"entries\":[]}"), IoError);
  CHECK_THROWS_AS(ResultStore::from_json("{\"version\":\"dyson-store/v1\"}"), IoError);
  CHECK(ResultStore::from_json("{\"version\":\"dyson-store/v1\",\"entries\":[]}").size() == 0);

  std::string text = sample_store().to_json();
  const auto pos = text.find("\"R_den\"");
  REQUIRE(pos != std::string::npos);
  // A leading coefficient of 2 breaks canonical form.
  text.insert(text.find('[', pos) + 1, "[\"2\",\"1\",[5,0,0]],");
  CHECK_THROWS_AS(ResultStore::from_json(text), IoError);
}

TEST_CASE("a held lock blocks saving") {
  const fs::path dir = scratch_dir();
  const fs::path file = dir / "store.json";
  { std::ofstream(dir / "store.json.lock") << ""; }
  CHECK_THROWS_AS(sample_store().save(file), IoError);
  CHECK_FALSE(fs::exists(file));
  fs::remove_all(dir);
}

TEST_CASE("get-or-insert keeps the first entry") {
  ResultStore store;
  StoreEntry a{ClosedForm::zero(3, {1, 0, 0}), {}, {}};
  StoreEntry b = a;
  b.provenance.kind = ProvenanceKind::reduced;
  CHECK(store.insert(a).second);
  const auto [kept, fresh] = store.insert(b);
  CHECK_FALSE(fresh);
  CHECK(kept.provenance.kind == ProvenanceKind::guessed);
}

TEST_CASE("concurrent inserts") {
  ResultStore store;
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&store, t] {
      for (int i = 0; i < 50; ++i) {
        store.insert(StoreEntry{ClosedForm::zero(3, {i, t % 2, 0}), {}, {}});
      }
    });
  }
  for (auto& th : threads) th.join();
  CHECK(store.size() == 100);
}
