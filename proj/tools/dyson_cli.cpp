// Command-line front end. Talks to the library through the C interface only.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dyson/dyson.h"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitMath = 2;
constexpr int kExitIo = 3;

struct Usage {
  std::string message;
};

std::vector<int> parse_list(const std::string& text, const char* name) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const long v = std::stol(item, &used);
      if (used != item.size() || v < -1000000 || v > 1000000) throw std::invalid_argument(item);
      out.push_back(static_cast<int>(v));
    } catch (const std::exception&) {
      throw Usage{std::string("-") + name + ": not an integer list: " + text};
    }
  }
  if (out.empty()) throw Usage{std::string("-") + name + " is empty"};
  return out;
}

void check_length(const std::vector<int>& v, int n, const char* name) {
  if (n < 1) throw Usage{"-n must be positive"};
  if (v.size() != static_cast<std::size_t>(n)) {
    throw Usage{std::string("-") + name + " needs " + std::to_string(n) + " entries"};
  }
}

int report(dyson_status s) {
  std::cerr << "error: " << dyson_last_error() << "\n";
  switch (s) {
    case DYSON_USAGE: return kExitUsage;
    case DYSON_MATH: return kExitMath;
    case DYSON_IO: return kExitIo;
    default: return kExitMath;
  }
}

struct Text {
  char* p = nullptr;
  ~Text() { dyson_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

struct StoreHandle {
  dyson_store* p = nullptr;
  ~StoreHandle() { dyson_store_close(p); }
};

std::string store_path(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("DYSON_STORE"); env && *env) return env;
  return "./dyson-store.json";
}

int emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return 0;
  }
  std::ofstream f(out, std::ios::binary | std::ios::trunc);
  if (!(f << text) || !f.flush()) {
    std::cerr << "error: cannot write " << out << "\n";
    return kExitIo;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Closed forms for constant terms of Dyson products"};
  app.require_subcommand(1);

  int n = 0;
  std::string a_text, b_text, store_flag, out, format = "latex";
  int max_t = -1;
  int complexity = 0;
  bool no_ansatz = false;

  auto* ct = app.add_subcommand("ct", "constant term by expansion");
  ct->add_option("-n", n, "number of variables")->required();
  ct->add_option("-a", a_text, "comma-separated exponents a")->required();
  ct->add_option("-b", b_text, "comma-separated shifts b")->required();

  auto* guess = app.add_subcommand("guess", "conjecture d_n(a; b)");
  guess->add_option("-n", n)->required();
  guess->add_option("-b", b_text)->required();
  guess->add_option("--max-t", max_t, "largest total degree tried");
  guess->add_flag("--no-ansatz", no_ansatz, "fit R directly, without dividing out the ansatz factor");

  auto* prove = app.add_subcommand("prove", "guess, prove and print the proof with a check summary");
  auto* paper = app.add_subcommand("write-paper", "print the proof document");
  for (auto* sub : {prove, paper}) {
    sub->add_option("-n", n)->required();
    sub->add_option("-b", b_text)->required();
    sub->add_option("--format", format)->check(CLI::IsMember({"latex", "markdown"}));
    sub->add_option("--out,-o", out, "output file (default stdout)");
    sub->add_option("--max-t", max_t);
    sub->add_option("--store", store_flag, "store file (default $DYSON_STORE or ./dyson-store.json)");
  }

  auto* turbo = app.add_subcommand("turbo", "all zero-sum b up to a complexity");
  turbo->add_option("-n", n)->required();
  turbo->add_option("-C", complexity, "complexity bound")->required()->check(CLI::NonNegativeNumber);
  turbo->add_option("--store", store_flag);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (ct->parsed()) {
      const auto a = parse_list(a_text, "a");
      const auto b = parse_list(b_text, "b");
      check_length(a, n, "a");
      check_length(b, n, "b");
      Text value;
      if (auto s = dyson_ct(n, a.data(), b.data(), &value.p)) return report(s);
      std::cout << value.str() << "\n";
      return 0;
    }

    if (n < 2) throw Usage{"-n must be at least 2"};
    std::vector<int> b;
    if (!turbo->parsed()) {
      b = parse_list(b_text, "b");
      check_length(b, n, "b");
    }

    if (guess->parsed()) {
      dyson_form* form = nullptr;
      if (auto s = dyson_guess(n, b.data(), max_t, no_ansatz ? 0 : 1, &form)) return report(s);
      std::unique_ptr<dyson_form, decltype(&dyson_form_free)> guard(form, dyson_form_free);
      Text display, r;
      if (auto s = dyson_form_render(form, &display.p)) return report(s);
      if (auto s = dyson_form_rational(form, &r.p)) return report(s);
      std::cout << display.str() << "\nR = " << r.str() << "\n";
      return 0;
    }

    StoreHandle store;
    if (auto s = dyson_store_open(store_path(store_flag).c_str(), &store.p)) return report(s);

    if (turbo->parsed()) {
      Text table;
      size_t fresh = 0, failures = 0;
      const auto s = dyson_turbo(store.p, n, complexity, &table.p, &fresh, &failures);
      if (s) return report(s);
      std::cout << table.str() << fresh << " new entries, " << dyson_store_size(store.p) << " in store";
      if (failures) std::cout << ", " << failures << " failed";
      std::cout << "\n";
      if (auto st = dyson_store_save(store.p)) return report(st);
      return failures ? kExitMath : 0;
    }

    dyson_proof* proof = nullptr;
    const auto proved = dyson_prove(store.p, n, b.data(), max_t, &proof);
    // Lower-level results certified before a failure are kept.
    if (auto st = dyson_store_save(store.p)) return report(st);
    if (proved) {
      std::cerr << "proof failed, no document written\n";
      return report(proved);
    }
    std::unique_ptr<dyson_proof, decltype(&dyson_proof_free)> guard(proof, dyson_proof_free);
    if (prove->parsed()) {
      Text summary;
      if (auto s = dyson_proof_summary(proof, &summary.p)) return report(s);
      std::cerr << summary.str();
    }
    Text doc;
    const auto fmt = format == "markdown" ? DYSON_MARKDOWN : DYSON_LATEX;
    if (auto s = dyson_proof_write_paper(proof, fmt, &doc.p)) return report(s);
    return emit(doc.str(), out);
  } catch (const Usage& u) {
    std::cerr << "error: " << u.message << "\n";
    return kExitUsage;
  }
}
