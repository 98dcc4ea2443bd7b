#include "dyson/dyson.h"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <new>
#include <sstream>

#include "dyson/errors.hpp"
#include "dyson/laurent.hpp"
#include "dyson/paper.hpp"
#include "dyson/turbo.hpp"

struct dyson_store {
  std::filesystem::path path;
  dyson::ResultStore store;
};

struct dyson_form {
  dyson::ClosedForm form;
};

struct dyson_proof {
  dyson::StoreEntry entry;
  dyson::ResultStore snapshot;  // lemmas for the appendix
};

namespace {

thread_local std::string last_error;

dyson_status fail(dyson_status s, const std::string& message) {
  last_error = message;
  return s;
}

template <typename F>
dyson_status guarded(F&& body) {
  last_error.clear();
  try {
    body();
    return DYSON_OK;
  } catch (const dyson::UsageError& e) {
    return fail(DYSON_USAGE, e.what());
  } catch (const dyson::MathFailure& e) {
    return fail(DYSON_MATH, e.what());
  } catch (const dyson::DomainError& e) {
    return fail(DYSON_MATH, e.what());
  } catch (const dyson::IoError& e) {
    return fail(DYSON_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(DYSON_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(DYSON_INTERNAL, e.what());
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void need(const void* p, const char* what) {
  if (!p) throw dyson::UsageError(std::string(what) + " is null");
}

std::vector<int> vec(int n, const int* v, const char* what) {
  if (n < 1) throw dyson::UsageError("n must be positive");
  need(v, what);
  return std::vector<int>(v, v + n);
}

dyson::GuessOptions guess_options(int max_t) {
  dyson::GuessOptions o;
  if (max_t >= 0) o.max_t = max_t;
  return o;
}

}  // namespace

extern "C" {

const char* dyson_last_error(void) { return last_error.c_str(); }

void dyson_string_free(char* s) { std::free(s); }

dyson_status dyson_ct(int n, const int* a, const int* b, char** out) {
  return guarded([&] {
    need(out, "out");
    dyson::DysonInstance inst{vec(n, a, "a"), vec(n, b, "b")};
    for (int x : inst.a) {
      if (x < 0) throw dyson::UsageError("a must be nonnegative");
    }
    *out = dup(dyson::ct_bruteforce(inst).get_str());
  });
}

dyson_status dyson_guess(int n, const int* b, int max_t, int use_ansatz, dyson_form** out) {
  return guarded([&] {
    need(out, "out");
    auto bv = vec(n, b, "b");
    if (n < 2) throw dyson::UsageError("n must be at least 2");
    auto opts = guess_options(max_t);
    opts.use_ansatz = use_ansatz != 0;
    auto g = dyson::guess_dyson(n, bv, opts);
    if (!g.form) {
      throw dyson::MathFailure("no closed form up to total degree " + std::to_string(opts.max_t) + " after " +
                               std::to_string(g.samples.size()) + " samples");
    }
    *out = new dyson_form{*g.form};
  });
}

dyson_status dyson_form_render(const dyson_form* form, char** out) {
  return guarded([&] {
    need(form, "form");
    need(out, "out");
    *out = dup(dyson::render_closed_form(form->form));
  });
}

dyson_status dyson_form_rational(const dyson_form* form, char** out) {
  return guarded([&] {
    need(form, "form");
    need(out, "out");
    *out = dup(form->form.r.to_string());
  });
}

void dyson_form_free(dyson_form* form) { delete form; }

dyson_status dyson_store_open(const char* path, dyson_store** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    auto s = std::make_unique<dyson_store>();
    s->path = path;
    s->store = dyson::ResultStore::load(s->path);
    *out = s.release();
  });
}

dyson_status dyson_store_save(dyson_store* store) {
  return guarded([&] {
    need(store, "store");
    store->store.save(store->path);
  });
}

size_t dyson_store_size(const dyson_store* store) { return store ? store->store.size() : 0; }

void dyson_store_close(dyson_store* store) { delete store; }

dyson_status dyson_prove(dyson_store* store, int n, const int* b, int max_t, dyson_proof** out) {
  return guarded([&] {
    need(store, "store");
    need(out, "out");
    auto bv = vec(n, b, "b");
    dyson::ProveOptions opts;
    opts.guess = guess_options(max_t);
    auto entry = dyson::prove(n, bv, store->store, opts);
    *out = new dyson_proof{std::move(entry), store->store};
  });
}

dyson_status dyson_proof_write_paper(const dyson_proof* proof, dyson_format format, char** out) {
  return guarded([&] {
    need(proof, "proof");
    need(out, "out");
    if (format != DYSON_LATEX && format != DYSON_MARKDOWN) throw dyson::UsageError("unknown format");
    const auto f = format == DYSON_LATEX ? dyson::DocFormat::latex : dyson::DocFormat::markdown;
    *out = dup(dyson::write_paper(proof->entry.certificate, proof->snapshot, f));
  });
}

dyson_status dyson_proof_summary(const dyson_proof* proof, char** out) {
  return guarded([&] {
    need(proof, "proof");
    need(out, "out");
    const auto& c = proof->entry.certificate;
    auto mark = [](bool ok) { return ok ? "ok" : "FAILED"; };
    std::ostringstream os;
    os << "d_" << c.form.n << " b=" << dyson::format_vector(c.form.b)
       << " provenance=" << dyson::to_string(proof->entry.provenance.kind) << "\n";
    if (c.base) {
      os << "base case n=2\n";
    } else {
      os << "recursion " << mark(c.recursion_ok) << "\n";
      for (std::size_t k = 0; k < c.boundary_ok.size(); ++k) {
        os << "boundary k=" << k + 1 << " " << mark(c.boundary_ok[k]) << "\n";
      }
      os << "initial " << mark(c.initial_ok) << " value=" << dyson::to_string(c.initial_value)
         << (c.initial_by_limit ? " (limit)" : "") << "\n";
      os << "denominator " << mark(c.denominator_safe) << " (" << dyson::to_string(c.guarantee) << ")\n";
    }
    os << "certificate " << (c.valid() ? "valid" : "INVALID") << "\n";
    *out = dup(os.str());
  });
}

dyson_status dyson_proof_form(const dyson_proof* proof, dyson_form** out) {
  return guarded([&] {
    need(proof, "proof");
    need(out, "out");
    *out = new dyson_form{proof->entry.form};
  });
}

void dyson_proof_free(dyson_proof* proof) { delete proof; }

dyson_status dyson_turbo(dyson_store* store, int n, int max_complexity, char** report, size_t* new_entries,
                         size_t* failures) {
  return guarded([&] {
    need(store, "store");
    need(report, "report");
    auto r = dyson::turbo_dyson(n, max_complexity, store->store);
    std::ostringstream os;
    for (const auto& item : r.items) {
      char secs[32];
      std::snprintf(secs, sizeof secs, "%.3f", item.seconds);
      os << dyson::format_vector(item.b) << "\t";
      if (item.error.empty()) os << dyson::to_string(item.kind) << (item.fresh ? "" : " (cached)");
      else os << "FAILED " << item.error;
      os << "\t" << secs << "s\n";
    }
    *report = dup(os.str());
    if (new_entries) *new_entries = r.new_entries;
    if (failures) *failures = r.failures;
  });
}

}  // extern "C"
