/*
 * emdalign C API.
 *
 * Sentence alignment of document-aligned bilingual corpora with bilingual
 * word embeddings and a relaxed earth mover's distance. All objects are
 * opaque handles owned by the caller and released with the matching
 * *_free function. Functions returning emdalign_status report details of the
 * most recent failure on the calling thread through emdalign_last_error().
 *
 * Strings returned by accessors stay valid until the owning handle is freed.
 */
#ifndef EMDALIGN_EMDALIGN_H
#define EMDALIGN_EMDALIGN_H

#include <stddef.h>
#include <stdint.h>

#if defined(EMDALIGN_BUILDING_LIBRARY)
#define EMDALIGN_API __attribute__((visibility("default")))
#else
#define EMDALIGN_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum emdalign_status {
  EMDALIGN_OK = 0,
  EMDALIGN_ERR_ARGUMENT = 1,   /* null handle or output pointer */
  EMDALIGN_ERR_PARSE = 2,      /* malformed input file */
  EMDALIGN_ERR_VALIDATION = 3, /* input violates a data invariant */
  EMDALIGN_ERR_CONFIG = 4,     /* parameter outside its valid range */
  EMDALIGN_ERR_TRAINING = 5,   /* embedding training could not proceed */
  EMDALIGN_ERR_SOLVER = 6,     /* transport LP failure */
  EMDALIGN_ERR_IO = 7,
  EMDALIGN_ERR_OOV = 8,        /* token missing from the embedding vocabulary */
  EMDALIGN_ERR_BUFFER = 9,     /* caller buffer too small; required size reported */
  EMDALIGN_ERR_INTERNAL = 10
} emdalign_status;

EMDALIGN_API const char* emdalign_version(void);
EMDALIGN_API const char* emdalign_status_name(emdalign_status status);
/* Message for the last failing call on this thread, "" if none. */
EMDALIGN_API const char* emdalign_last_error(void);

typedef struct emdalign_corpus emdalign_corpus;
typedef struct emdalign_embeddings emdalign_embeddings;
typedef struct emdalign_alignments emdalign_alignments;
typedef struct emdalign_lexicon emdalign_lexicon;
typedef struct emdalign_report emdalign_report;

/* ---- corpus ------------------------------------------------------------ */

/* Skip malformed or invalid records instead of failing; they are listed via
 * emdalign_corpus_rejected_*. */
#define EMDALIGN_LOAD_LENIENT 1u

EMDALIGN_API emdalign_status emdalign_corpus_load(const char* path, unsigned flags,
                                                  emdalign_corpus** out);
EMDALIGN_API emdalign_status emdalign_corpus_save(const emdalign_corpus* corpus, const char* path);
EMDALIGN_API void emdalign_corpus_free(emdalign_corpus* corpus);
EMDALIGN_API size_t emdalign_corpus_size(const emdalign_corpus* corpus);
/* Non-blank records read, rejected ones included. */
EMDALIGN_API size_t emdalign_corpus_records(const emdalign_corpus* corpus);
EMDALIGN_API const char* emdalign_corpus_pair_id(const emdalign_corpus* corpus, size_t index);
EMDALIGN_API emdalign_status emdalign_corpus_pair_shape(const emdalign_corpus* corpus, size_t index,
                                                        size_t* src_sentences,
                                                        size_t* tgt_sentences);
EMDALIGN_API size_t emdalign_corpus_rejected_count(const emdalign_corpus* corpus);
EMDALIGN_API const char* emdalign_corpus_rejected_message(const emdalign_corpus* corpus,
                                                          size_t index);

/* ---- synthetic corpora ------------------------------------------------- */

typedef struct emdalign_synth_config {
  size_t documents;
  size_t sentences; /* source sentences per document */
  size_t vocab_size;
  size_t min_sentence_len;
  size_t max_sentence_len;
  double p_two_to_one;
  double p_one_to_two;
  double p_two_to_two;
  int shuffle_tokens;
  const char* source_lang;
  const char* target_lang;
  uint64_t seed;
} emdalign_synth_config;

EMDALIGN_API void emdalign_synth_config_default(emdalign_synth_config* config);
/* Any of the outputs may be NULL when not wanted. */
EMDALIGN_API emdalign_status emdalign_synth_generate(const emdalign_synth_config* config,
                                                     emdalign_corpus** corpus,
                                                     emdalign_alignments** gold,
                                                     emdalign_lexicon** lexicon);

/* Two whitespace-separated columns per line: source surface, target surface. */
EMDALIGN_API emdalign_status emdalign_lexicon_load(const char* path, emdalign_lexicon** out);
EMDALIGN_API emdalign_status emdalign_lexicon_save(const emdalign_lexicon* lexicon,
                                                   const char* path);
EMDALIGN_API size_t emdalign_lexicon_size(const emdalign_lexicon* lexicon);
EMDALIGN_API void emdalign_lexicon_free(emdalign_lexicon* lexicon);

/* ---- bilingual word embeddings ----------------------------------------- */

typedef struct emdalign_skipgram_params {
  size_t dim;
  size_t window;
  size_t negative;
  size_t epochs;
  size_t min_count;
  double learning_rate;
  uint64_t seed;
  int deterministic; /* nonzero: single-threaded, bit-reproducible */
  size_t threads;    /* used only when deterministic == 0 */
} emdalign_skipgram_params;

EMDALIGN_API void emdalign_skipgram_params_default(emdalign_skipgram_params* params);
EMDALIGN_API emdalign_status emdalign_bwe_train(const emdalign_corpus* corpus,
                                                const emdalign_skipgram_params* params,
                                                emdalign_embeddings** out);
EMDALIGN_API emdalign_status emdalign_embeddings_load(const char* path, emdalign_embeddings** out);
EMDALIGN_API emdalign_status emdalign_embeddings_save(const emdalign_embeddings* table,
                                                      const char* path);
EMDALIGN_API void emdalign_embeddings_free(emdalign_embeddings* table);
EMDALIGN_API size_t emdalign_embeddings_size(const emdalign_embeddings* table);
EMDALIGN_API size_t emdalign_embeddings_dim(const emdalign_embeddings* table);
EMDALIGN_API const char* emdalign_embeddings_key(const emdalign_embeddings* table, size_t index);

/* Keys are "<lang>:<surface>". Returns EMDALIGN_ERR_OOV for unknown keys. */
EMDALIGN_API emdalign_status emdalign_embeddings_cosine(const emdalign_embeddings* table,
                                                        const char* key_a, const char* key_b,
                                                        double* out);

typedef struct emdalign_neighbor {
  const char* key; /* owned by the table */
  double similarity;
} emdalign_neighbor;

/* Writes min(k, candidates) neighbours; `count` receives the number written.
 * restrict_lang NULL or "" searches every language. The query is excluded. */
EMDALIGN_API emdalign_status emdalign_embeddings_top_k(const emdalign_embeddings* table,
                                                       const char* query, size_t k,
                                                       const char* restrict_lang,
                                                       emdalign_neighbor* out, size_t* count);

/* accuracy[i] receives the top-ks[i] accuracy. OOV source entries count as
 * misses; their number goes to *oov (may be NULL). */
EMDALIGN_API emdalign_status emdalign_lexicon_accuracy(const emdalign_embeddings* table,
                                                       const emdalign_lexicon* lexicon,
                                                       const char* source_lang,
                                                       const char* target_lang, const size_t* ks,
                                                       size_t num_ks, double* accuracy,
                                                       size_t* oov);

/* ---- transport LP and Gale-Church primitives --------------------------- */

/* cost, plan: row-major n*m. strict != 0 solves the equality-constrained
 * problem (epsilon ignored); otherwise the relaxed one. */
EMDALIGN_API emdalign_status emdalign_emd_solve(size_t n, size_t m, const double* cost,
                                                const double* len_src, const double* len_tgt,
                                                int strict, double epsilon, double* plan,
                                                double* objective);
EMDALIGN_API emdalign_status emdalign_submatrix_penalty(size_t n, size_t m, const double* plan,
                                                        double zero_tol, double* out);

typedef enum emdalign_pattern {
  EMDALIGN_PATTERN_1_1 = 0,
  EMDALIGN_PATTERN_1_0 = 1,
  EMDALIGN_PATTERN_0_1 = 2,
  EMDALIGN_PATTERN_2_1 = 3,
  EMDALIGN_PATTERN_1_2 = 4,
  EMDALIGN_PATTERN_2_2 = 5
} emdalign_pattern;

typedef struct emdalign_gc_params {
  double c;
  double s2;
  double priors[6]; /* indexed by emdalign_pattern */
} emdalign_gc_params;

EMDALIGN_API void emdalign_gc_params_default(emdalign_gc_params* params);
EMDALIGN_API emdalign_status emdalign_gc_cost(size_t len_src, size_t len_tgt, int pattern,
                                              const emdalign_gc_params* params, double* out);
/* Writes the optimal move sequence (emdalign_pattern values) into `moves`,
 * which must hold n + m entries; `count` receives its length. */
EMDALIGN_API emdalign_status emdalign_gc_align(const size_t* src_lengths, size_t n,
                                               const size_t* tgt_lengths, size_t m,
                                               const emdalign_gc_params* params, int* moves,
                                               size_t* count, double* cost);

/* ---- alignment --------------------------------------------------------- */

typedef struct emdalign_align_params {
  double alpha;
  double gamma;
  const double* grid; /* NULL or grid_size == 0: default epsilon grid */
  size_t grid_size;
  double zero_tol;
  double sim_floor;
  emdalign_gc_params gc;
  size_t split_threshold;
  size_t jobs;
  const char* dump_distances_dir; /* optional: <dir>/<pair_id>.dist.tsv */
  const char* dump_plans_dir;     /* optional: <dir>/<pair_id>.plan.tsv */
} emdalign_align_params;

EMDALIGN_API void emdalign_align_params_default(emdalign_align_params* params);
/* Per-pair failures do not fail the call; see emdalign_alignments_failure_*. */
EMDALIGN_API emdalign_status emdalign_align_corpus(const emdalign_corpus* corpus,
                                                   const emdalign_embeddings* table,
                                                   const emdalign_align_params* params,
                                                   emdalign_alignments** out);
EMDALIGN_API emdalign_status emdalign_gc_align_corpus(const emdalign_corpus* corpus,
                                                      const emdalign_gc_params* params,
                                                      size_t jobs, emdalign_alignments** out);
EMDALIGN_API double emdalign_estimate_length_ratio(const emdalign_corpus* corpus);

/* Gold / system alignment file. With a corpus, indices are bounds-checked. */
EMDALIGN_API emdalign_status emdalign_alignments_load(const char* path,
                                                      const emdalign_corpus* corpus,
                                                      emdalign_alignments** out);
EMDALIGN_API emdalign_status emdalign_alignments_save(const emdalign_alignments* alignments,
                                                      const char* path);
EMDALIGN_API void emdalign_alignments_free(emdalign_alignments* alignments);
EMDALIGN_API size_t emdalign_alignments_pair_count(const emdalign_alignments* alignments);
EMDALIGN_API const char* emdalign_alignments_pair_id(const emdalign_alignments* alignments,
                                                     size_t pair);
EMDALIGN_API size_t emdalign_alignments_link_count(const emdalign_alignments* alignments,
                                                   size_t pair);
/* `mass` receives NaN when the link carries none. Any output may be NULL. */
EMDALIGN_API emdalign_status emdalign_alignments_link(const emdalign_alignments* alignments,
                                                      size_t pair, size_t link,
                                                      const size_t** src, size_t* src_count,
                                                      const size_t** tgt, size_t* tgt_count,
                                                      double* mass);
EMDALIGN_API size_t emdalign_alignments_failure_count(const emdalign_alignments* alignments);
EMDALIGN_API emdalign_status emdalign_alignments_failure(const emdalign_alignments* alignments,
                                                         size_t index, const char** pair_id,
                                                         const char** message);

/* ---- evaluation -------------------------------------------------------- */

typedef enum emdalign_stratum {
  EMDALIGN_STRATUM_OVERALL = 0,
  EMDALIGN_STRATUM_ONE_TO_ONE = 1,
  EMDALIGN_STRATUM_N_TO_M = 2
} emdalign_stratum;

typedef struct emdalign_stratum_score {
  double precision;
  double recall;
  double f1;
  size_t correct;
  size_t extracted;
  size_t gold;
} emdalign_stratum_score;

EMDALIGN_API emdalign_status emdalign_evaluate(const emdalign_alignments* system,
                                               const emdalign_alignments* gold,
                                               emdalign_report** out);
EMDALIGN_API emdalign_status emdalign_report_score(const emdalign_report* report, int stratum,
                                                   emdalign_stratum_score* out);
EMDALIGN_API void emdalign_report_free(emdalign_report* report);

#define EMDALIGN_FORMAT_TABLE 0
#define EMDALIGN_FORMAT_JSON 1

/* Renders reports (one row per method, input order). Writes a NUL-terminated
 * string when it fits in `capacity`; `needed` always receives the size
 * including the terminator. */
EMDALIGN_API emdalign_status emdalign_report_format(const char* const* names,
                                                    const emdalign_report* const* reports,
                                                    size_t count, int format, char* buffer,
                                                    size_t capacity, size_t* needed);

#ifdef __cplusplus
}
#endif

#endif /* EMDALIGN_EMDALIGN_H */
