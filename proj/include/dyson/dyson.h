/* C interface to the dyson library. Strings returned through `char**` are
 * owned by the caller and released with dyson_string_free. */
#ifndef DYSON_H
#define DYSON_H

#include <stddef.h>

#if defined(_WIN32)
#define DYSON_API __declspec(dllexport)
#else
#define DYSON_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dyson_status {
  DYSON_OK = 0,
  DYSON_USAGE = 1,    /* malformed arguments */
  DYSON_MATH = 2,     /* fit gave up or a proof check failed */
  DYSON_IO = 3,       /* store file unreadable, unwritable or malformed */
  DYSON_INTERNAL = 4
} dyson_status;

typedef enum dyson_format { DYSON_LATEX = 0, DYSON_MARKDOWN = 1 } dyson_format;

typedef struct dyson_store dyson_store;
typedef struct dyson_form dyson_form;
typedef struct dyson_proof dyson_proof;

/* Message for the last failing call on this thread; "" if none. */
DYSON_API const char* dyson_last_error(void);
DYSON_API void dyson_string_free(char* s);

/* Constant term of the Dyson product as a decimal string. */
DYSON_API dyson_status dyson_ct(int n, const int* a, const int* b, char** out);

/* max_t < 0 uses the default bound. */
DYSON_API dyson_status dyson_guess(int n, const int* b, int max_t, int use_ansatz, dyson_form** out);
/* LaTeX display of d_n(a; b). */
DYSON_API dyson_status dyson_form_render(const dyson_form* form, char** out);
/* Canonical text of R. */
DYSON_API dyson_status dyson_form_rational(const dyson_form* form, char** out);
DYSON_API void dyson_form_free(dyson_form* form);

/* A missing file gives an empty store. */
DYSON_API dyson_status dyson_store_open(const char* path, dyson_store** out);
DYSON_API dyson_status dyson_store_save(dyson_store* store);
DYSON_API size_t dyson_store_size(const dyson_store* store);
DYSON_API void dyson_store_close(dyson_store* store);

/* Proves (n, b) through the store, adding everything certified on the way. */
DYSON_API dyson_status dyson_prove(dyson_store* store, int n, const int* b, int max_t, dyson_proof** out);
DYSON_API dyson_status dyson_proof_write_paper(const dyson_proof* proof, dyson_format format, char** out);
/* One line per check. */
DYSON_API dyson_status dyson_proof_summary(const dyson_proof* proof, char** out);
DYSON_API dyson_status dyson_proof_form(const dyson_proof* proof, dyson_form** out);
DYSON_API void dyson_proof_free(dyson_proof* proof);

/* Sweeps all zero-sum b of complexity <= max_complexity. `report` gets one
 * line per entry; `failures` the number of failed entries. */
DYSON_API dyson_status dyson_turbo(dyson_store* store, int n, int max_complexity, char** report,
                                   size_t* new_entries, size_t* failures);

#ifdef __cplusplus
}
#endif

#endif /* DYSON_H */
