#include "emdalign/emdalign.h"

#include <cmath>
#include <cstring>
#include <filesystem>
#include <limits>
#include <mutex>
#include <string>
#include <vector>

#include "align.hpp"
#include "bwe.hpp"
#include "corpus.hpp"
#include "embedding_table.hpp"
#include "emd.hpp"
#include "error.hpp"
#include "eval.hpp"
#include "galechurch.hpp"
#include "io_util.hpp"
#include "synthetic.hpp"

struct emdalign_corpus {
  emdalign::Corpus pairs;
  std::vector<std::string> rejected;
  std::size_t records = 0;
};

struct emdalign_embeddings {
  emdalign::EmbeddingTable table;
};

struct emdalign_lexicon {
  emdalign::Lexicon entries;
};

struct emdalign_alignments {
  emdalign::AlignmentMap map;
  std::vector<std::string> ids;  // index -> pair_id, sorted
  std::vector<std::pair<std::string, std::string>> failures;

  void reindex() {
    ids.clear();
    for (const auto& [id, _] : map) ids.push_back(id);
  }
  const emdalign::AlignmentSet* at(std::size_t pair) const {
    return pair < ids.size() ? &map.at(ids[pair]) : nullptr;
  }
};

struct emdalign_report {
  emdalign::EvalReport report;
};

namespace {

thread_local std::string g_last_error;

emdalign_status to_status(emdalign::ErrorKind kind) {
  using emdalign::ErrorKind;
  switch (kind) {
    case ErrorKind::kParse: return EMDALIGN_ERR_PARSE;
    case ErrorKind::kValidation: return EMDALIGN_ERR_VALIDATION;
    case ErrorKind::kConfig: return EMDALIGN_ERR_CONFIG;
    case ErrorKind::kTraining: return EMDALIGN_ERR_TRAINING;
    case ErrorKind::kSolver: return EMDALIGN_ERR_SOLVER;
    case ErrorKind::kIo: return EMDALIGN_ERR_IO;
    case ErrorKind::kOutOfVocabulary: return EMDALIGN_ERR_OOV;
  }
  return EMDALIGN_ERR_INTERNAL;
}

emdalign_status fail(emdalign_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <typename Fn>
emdalign_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const emdalign::Error& e) {
    return fail(to_status(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(EMDALIGN_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(EMDALIGN_ERR_INTERNAL, e.what());
  }
}

#define EMDALIGN_REQUIRE(cond)                                            \
  do {                                                                    \
    if (!(cond)) return fail(EMDALIGN_ERR_ARGUMENT, "null argument: " #cond); \
  } while (0)

emdalign::GCParams to_cpp(const emdalign_gc_params& p) {
  emdalign::GCParams out;
  out.c = p.c;
  out.s2 = p.s2;
  for (std::size_t k = 0; k < 6; ++k) out.priors[k] = p.priors[k];
  return out;
}

emdalign::AlignParams to_cpp(const emdalign_align_params& p) {
  emdalign::AlignParams out;
  out.alpha = p.alpha;
  out.gamma = p.gamma;
  if (p.grid && p.grid_size > 0) out.grid.assign(p.grid, p.grid + p.grid_size);
  out.zero_tol = p.zero_tol;
  out.sim_floor = p.sim_floor;
  out.gc = to_cpp(p.gc);
  out.split_threshold = p.split_threshold;
  return out;
}

emdalign_alignments* collect(std::vector<emdalign::PairOutcome> outcomes) {
  auto* out = new emdalign_alignments;
  for (auto& o : outcomes) {
    if (o.alignment)
      out->map.emplace(o.pair_id, std::move(*o.alignment));
    else
      out->failures.emplace_back(o.pair_id, std::move(o.error));
  }
  out->reindex();
  return out;
}

std::string dump_path(const char* dir, const std::string& pair_id, const char* suffix) {
  return (std::filesystem::path(dir) / (pair_id + suffix)).string();
}

}  // namespace

extern "C" {

const char* emdalign_version(void) { return "0.1.0"; }

const char* emdalign_status_name(emdalign_status status) {
  switch (status) {
    case EMDALIGN_OK: return "ok";
    case EMDALIGN_ERR_ARGUMENT: return "argument error";
    case EMDALIGN_ERR_PARSE: return "parse error";
    case EMDALIGN_ERR_VALIDATION: return "validation error";
    case EMDALIGN_ERR_CONFIG: return "configuration error";
    case EMDALIGN_ERR_TRAINING: return "training error";
    case EMDALIGN_ERR_SOLVER: return "solver error";
    case EMDALIGN_ERR_IO: return "i/o error";
    case EMDALIGN_ERR_OOV: return "out of vocabulary";
    case EMDALIGN_ERR_BUFFER: return "buffer too small";
    case EMDALIGN_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* emdalign_last_error(void) { return g_last_error.c_str(); }

/* corpus */

emdalign_status emdalign_corpus_load(const char* path, unsigned flags, emdalign_corpus** out) {
  EMDALIGN_REQUIRE(path && out);
  return guarded([&] {
    auto c = std::make_unique<emdalign_corpus>();
    if (flags & EMDALIGN_LOAD_LENIENT) {
      auto loaded = emdalign::load_corpus_lenient(path);
      c->pairs = std::move(loaded.pairs);
      c->records = loaded.records;
      for (auto& r : loaded.rejected) c->rejected.push_back(std::move(r.message));
    } else {
      c->pairs = emdalign::load_corpus(path);
      c->records = c->pairs.size();
    }
    *out = c.release();
    return EMDALIGN_OK;
  });
}

emdalign_status emdalign_corpus_save(const emdalign_corpus* corpus, const char* path) {
  EMDALIGN_REQUIRE(corpus && path);
  return guarded([&] {
    emdalign::save_corpus(path, corpus->pairs);
    return EMDALIGN_OK;
  });
}

void emdalign_corpus_free(emdalign_corpus* corpus) { delete corpus; }

size_t emdalign_corpus_size(const emdalign_corpus* corpus) {
  return corpus ? corpus->pairs.size() : 0;
}

size_t emdalign_corpus_records(const emdalign_corpus* corpus) {
  return corpus ? corpus->records : 0;
}

const char* emdalign_corpus_pair_id(const emdalign_corpus* corpus, size_t index) {
  if (!corpus || index >= corpus->pairs.size()) return nullptr;
  return corpus->pairs[index].pair_id.c_str();
}

emdalign_status emdalign_corpus_pair_shape(const emdalign_corpus* corpus, size_t index,
                                           size_t* src_sentences, size_t* tgt_sentences) {
  EMDALIGN_REQUIRE(corpus);
  if (index >= corpus->pairs.size()) return fail(EMDALIGN_ERR_ARGUMENT, "pair index out of range");
  if (src_sentences) *src_sentences = corpus->pairs[index].source.sentences.size();
  if (tgt_sentences) *tgt_sentences = corpus->pairs[index].target.sentences.size();
  return EMDALIGN_OK;
}

size_t emdalign_corpus_rejected_count(const emdalign_corpus* corpus) {
  return corpus ? corpus->rejected.size() : 0;
}

const char* emdalign_corpus_rejected_message(const emdalign_corpus* corpus, size_t index) {
  if (!corpus || index >= corpus->rejected.size()) return nullptr;
  return corpus->rejected[index].c_str();
}

/* synthetic */

void emdalign_synth_config_default(emdalign_synth_config* config) {
  if (!config) return;
  static const emdalign::SyntheticConfig d;
  config->documents = d.documents;
  config->sentences = d.sentences;
  config->vocab_size = d.vocab_size;
  config->min_sentence_len = d.min_sentence_len;
  config->max_sentence_len = d.max_sentence_len;
  config->p_two_to_one = d.p_two_to_one;
  config->p_one_to_two = d.p_one_to_two;
  config->p_two_to_two = d.p_two_to_two;
  config->shuffle_tokens = d.shuffle_tokens ? 1 : 0;
  config->source_lang = "en";
  config->target_lang = "xx";
  config->seed = d.seed;
}

emdalign_status emdalign_synth_generate(const emdalign_synth_config* config,
                                        emdalign_corpus** corpus, emdalign_alignments** gold,
                                        emdalign_lexicon** lexicon) {
  EMDALIGN_REQUIRE(config && config->source_lang && config->target_lang);
  return guarded([&] {
    emdalign::SyntheticConfig c;
    c.documents = config->documents;
    c.sentences = config->sentences;
    c.vocab_size = config->vocab_size;
    c.min_sentence_len = config->min_sentence_len;
    c.max_sentence_len = config->max_sentence_len;
    c.p_two_to_one = config->p_two_to_one;
    c.p_one_to_two = config->p_one_to_two;
    c.p_two_to_two = config->p_two_to_two;
    c.shuffle_tokens = config->shuffle_tokens != 0;
    c.source_lang = config->source_lang;
    c.target_lang = config->target_lang;
    c.seed = config->seed;
    auto synth = emdalign::generate_synthetic(c);
    if (corpus) {
      auto h = std::make_unique<emdalign_corpus>();
      h->records = synth.pairs.size();
      h->pairs = std::move(synth.pairs);
      *corpus = h.release();
    }
    if (gold) {
      auto h = std::make_unique<emdalign_alignments>();
      h->map = std::move(synth.gold);
      h->reindex();
      *gold = h.release();
    }
    if (lexicon) *lexicon = new emdalign_lexicon{std::move(synth.lexicon)};
    return EMDALIGN_OK;
  });
}

emdalign_status emdalign_lexicon_load(const char* path, emdalign_lexicon** out) {
  EMDALIGN_REQUIRE(path && out);
  return guarded([&] {
    *out = new emdalign_lexicon{emdalign::load_lexicon(path)};
    return EMDALIGN_OK;
  });
}

emdalign_status emdalign_lexicon_save(const emdalign_lexicon* lexicon, const char* path) {
  EMDALIGN_REQUIRE(lexicon && path);
  return guarded([&] {
    emdalign::save_lexicon(path, lexicon->entries);
    return EMDALIGN_OK;
  });
}

size_t emdalign_lexicon_size(const emdalign_lexicon* lexicon) {
  return lexicon ? lexicon->entries.size() : 0;
}

void emdalign_lexicon_free(emdalign_lexicon* lexicon) { delete lexicon; }

/* embeddings */

void emdalign_skipgram_params_default(emdalign_skipgram_params* params) {
  if (!params) return;
  const emdalign::SkipGramParams d;
  params->dim = d.dim;
  params->window = d.window;
  params->negative = d.negative;
  params->epochs = d.epochs;
  params->min_count = d.min_count;
  params->learning_rate = d.learning_rate;
  params->seed = d.seed;
  params->deterministic = d.deterministic ? 1 : 0;
  params->threads = d.threads;
}

emdalign_status emdalign_bwe_train(const emdalign_corpus* corpus,
                                   const emdalign_skipgram_params* params,
                                   emdalign_embeddings** out) {
  EMDALIGN_REQUIRE(corpus && params && out);
  return guarded([&] {
    emdalign::SkipGramParams p;
    p.dim = params->dim;
    p.window = params->window;
    p.negative = params->negative;
    p.epochs = params->epochs;
    p.min_count = params->min_count;
    p.learning_rate = params->learning_rate;
    p.seed = params->seed;
    p.deterministic = params->deterministic != 0;
    p.threads = params->threads;
    *out = new emdalign_embeddings{emdalign::train_bwe(corpus->pairs, p)};
    return EMDALIGN_OK;
  });
}

emdalign_status emdalign_embeddings_load(const char* path, emdalign_embeddings** out) {
  EMDALIGN_REQUIRE(path && out);
  return guarded([&] {
    *out = new emdalign_embeddings{emdalign::load_embeddings(path)};
    return EMDALIGN_OK;
  });
}

emdalign_status emdalign_embeddings_save(const emdalign_embeddings* table, const char* path) {
  EMDALIGN_REQUIRE(table && path);
  return guarded([&] {
    emdalign::save_embeddings(path, table->table);
    return EMDALIGN_OK;
  });
}

void emdalign_embeddings_free(emdalign_embeddings* table) { delete table; }

size_t emdalign_embeddings_size(const emdalign_embeddings* table) {
  return table ? table->table.size() : 0;
}

size_t emdalign_embeddings_dim(const emdalign_embeddings* table) {
  return table ? table->table.dim() : 0;
}

const char* emdalign_embeddings_key(const emdalign_embeddings* table, size_t index) {
  if (!table || index >= table->table.size()) return nullptr;
  return table->table.keys()[index].c_str();
}

emdalign_status emdalign_embeddings_cosine(const emdalign_embeddings* table, const char* key_a,
                                           const char* key_b, double* out) {
  EMDALIGN_REQUIRE(table && key_a && key_b && out);
  return guarded([&] {
    auto v = emdalign::cosine(table->table, key_a, key_b);
    if (!v)
      return fail(EMDALIGN_ERR_OOV, std::string("out of vocabulary: '") +
                                         (table->table.index_of(key_a) ? key_b : key_a) + "'");
    *out = *v;
    return EMDALIGN_OK;
  });
}

emdalign_status emdalign_embeddings_top_k(const emdalign_embeddings* table, const char* query,
                                          size_t k, const char* restrict_lang,
                                          emdalign_neighbor* out, size_t* count) {
  EMDALIGN_REQUIRE(table && query && count && (out || k == 0));
  return guarded([&] {
    if (k == 0) return fail(EMDALIGN_ERR_CONFIG, "k must be >= 1");
    auto ranked = emdalign::top_k(table->table, query, k, restrict_lang ? restrict_lang : "");
    if (!ranked) return fail(EMDALIGN_ERR_OOV, std::string("out of vocabulary: '") + query + "'");
    for (std::size_t r = 0; r < ranked->size(); ++r) {
      const auto idx = *table->table.index_of((*ranked)[r].key);
      out[r].key = table->table.keys()[idx].c_str();
      out[r].similarity = (*ranked)[r].similarity;
    }
    *count = ranked->size();
    return EMDALIGN_OK;
  });
}

emdalign_status emdalign_lexicon_accuracy(const emdalign_embeddings* table,
                                          const emdalign_lexicon* lexicon,
                                          const char* source_lang, const char* target_lang,
                                          const size_t* ks, size_t num_ks, double* accuracy,
                                          size_t* oov) {
  EMDALIGN_REQUIRE(table && lexicon && source_lang && target_lang && ks && accuracy);
  return guarded([&] {
    if (lexicon->entries.empty()) return fail(EMDALIGN_ERR_VALIDATION, "lexicon is empty");
    for (std::size_t i = 0; i < num_ks; ++i)
      if (ks[i] == 0) return fail(EMDALIGN_ERR_CONFIG, "k must be >= 1");
    auto acc = emdalign::lexicon_accuracy(table->table, lexicon->entries, source_lang,
                                          target_lang, std::span<const std::size_t>(ks, num_ks));
    for (std::size_t i = 0; i < num_ks; ++i) accuracy[i] = acc.accuracy[i].second;
    if (oov) *oov = acc.oov;
    return EMDALIGN_OK;
  });
}

/* primitives */

emdalign_status emdalign_emd_solve(size_t n, size_t m, const double* cost, const double* len_src,
                                   const double* len_tgt, int strict, double epsilon,
                                   double* plan, double* objective) {
  EMDALIGN_REQUIRE(cost && len_src && len_tgt && plan);
  return guarded([&] {
    if (n == 0 || m == 0) return fail(EMDALIGN_ERR_VALIDATION, "empty transport problem");
    emdalign::DistanceMatrix dm;
    dm.d = emdalign::Matrix(n, m);
    std::copy(cost, cost + n * m, dm.d.values().begin());
    dm.len_src.assign(len_src, len_src + n);
    dm.len_tgt.assign(len_tgt, len_tgt + m);
    auto result = strict ? emdalign::solve_strict(dm) : emdalign::solve_relaxed(dm, epsilon);
    std::copy(result.p.values().begin(), result.p.values().end(), plan);
    if (objective) *objective = result.objective;
    return EMDALIGN_OK;
  });
}

emdalign_status emdalign_submatrix_penalty(size_t n, size_t m, const double* plan,
                                           double zero_tol, double* out) {
  EMDALIGN_REQUIRE(plan && out);
  return guarded([&] {
    emdalign::Matrix p(n, m);
    std::copy(plan, plan + n * m, p.values().begin());
    *out = emdalign::submatrix_penalty(p, zero_tol);
    return EMDALIGN_OK;
  });
}

void emdalign_gc_params_default(emdalign_gc_params* params) {
  if (!params) return;
  const emdalign::GCParams d;
  params->c = d.c;
  params->s2 = d.s2;
  for (std::size_t k = 0; k < 6; ++k) params->priors[k] = d.priors[k];
}

emdalign_status emdalign_gc_cost(size_t len_src, size_t len_tgt, int pattern,
                                 const emdalign_gc_params* params, double* out) {
  EMDALIGN_REQUIRE(params && out);
  return guarded([&] {
    if (pattern < 0 || pattern > 5)
      return fail(EMDALIGN_ERR_CONFIG, "unknown alignment pattern " + std::to_string(pattern));
    *out = emdalign::gc_cost(len_src, len_tgt, static_cast<emdalign::Pattern>(pattern),
                             to_cpp(*params));
    return EMDALIGN_OK;
  });
}

emdalign_status emdalign_gc_align(const size_t* src_lengths, size_t n, const size_t* tgt_lengths,
                                  size_t m, const emdalign_gc_params* params, int* moves,
                                  size_t* count, double* cost) {
  EMDALIGN_REQUIRE((src_lengths || n == 0) && (tgt_lengths || m == 0) && params && moves && count);
  return guarded([&] {
    auto r = emdalign::gc_align_detailed(std::span<const std::size_t>(src_lengths, n),
                                         std::span<const std::size_t>(tgt_lengths, m),
                                         to_cpp(*params));
    std::size_t k = 0;
    for (const auto& link : r.links.links) {
      const auto ds = link.src.size(), dt = link.tgt.size();
      int code = 0;
      for (auto p : emdalign::kAllPatterns) {
        const auto shape = emdalign::shape_of(p);
        if (shape.src == ds && shape.tgt == dt) code = static_cast<int>(p);
      }
      moves[k++] = code;
    }
    *count = k;
    if (cost) *cost = r.cost;
    return EMDALIGN_OK;
  });
}

/* alignment */

void emdalign_align_params_default(emdalign_align_params* params) {
  if (!params) return;
  const emdalign::AlignParams d;
  params->alpha = d.alpha;
  params->gamma = d.gamma;
  params->grid = nullptr;
  params->grid_size = 0;
  params->zero_tol = d.zero_tol;
  params->sim_floor = d.sim_floor;
  emdalign_gc_params_default(&params->gc);
  params->split_threshold = d.split_threshold;
  params->jobs = 1;
  params->dump_distances_dir = nullptr;
  params->dump_plans_dir = nullptr;
}

emdalign_status emdalign_align_corpus(const emdalign_corpus* corpus,
                                      const emdalign_embeddings* table,
                                      const emdalign_align_params* params,
                                      emdalign_alignments** out) {
  EMDALIGN_REQUIRE(corpus && table && params && out);
  return guarded([&] {
    const auto p = to_cpp(*params);
    const char* dist_dir = params->dump_distances_dir;
    const char* plan_dir = params->dump_plans_dir;
    for (const char* dir : {dist_dir, plan_dir})
      if (dir) std::filesystem::create_directories(dir);
    emdalign::PairObserver observer;
    if (dist_dir || plan_dir) {
      observer = [&](const emdalign::DocumentPair& pair, const emdalign::PairAlignment& r) {
        if (dist_dir)
          emdalign::atomic_write(dump_path(dist_dir, pair.pair_id, ".dist.tsv"),
                                 [&](std::ostream& o) { emdalign::write_distance_tsv(o, r.distances); });
        if (plan_dir)
          emdalign::atomic_write(dump_path(plan_dir, pair.pair_id, ".plan.tsv"), [&](std::ostream& o) {
            emdalign::write_plan_tsv(o, r.selection.plan.p, p.zero_tol);
          });
      };
    }
    *out = collect(emdalign::align_corpus(corpus->pairs, table->table, p, params->jobs, observer));
    return EMDALIGN_OK;
  });
}

emdalign_status emdalign_gc_align_corpus(const emdalign_corpus* corpus,
                                         const emdalign_gc_params* params, size_t jobs,
                                         emdalign_alignments** out) {
  EMDALIGN_REQUIRE(corpus && params && out);
  return guarded([&] {
    *out = collect(emdalign::gc_align_corpus(corpus->pairs, to_cpp(*params), jobs));
    return EMDALIGN_OK;
  });
}

double emdalign_estimate_length_ratio(const emdalign_corpus* corpus) {
  return corpus ? emdalign::estimate_length_ratio(corpus->pairs) : 1.0;
}

emdalign_status emdalign_alignments_load(const char* path, const emdalign_corpus* corpus,
                                         emdalign_alignments** out) {
  EMDALIGN_REQUIRE(path && out);
  return guarded([&] {
    auto h = std::make_unique<emdalign_alignments>();
    h->map = emdalign::load_gold(path, corpus ? &corpus->pairs : nullptr);
    h->reindex();
    *out = h.release();
    return EMDALIGN_OK;
  });
}

emdalign_status emdalign_alignments_save(const emdalign_alignments* alignments, const char* path) {
  EMDALIGN_REQUIRE(alignments && path);
  return guarded([&] {
    emdalign::save_alignments(path, alignments->map);
    return EMDALIGN_OK;
  });
}

void emdalign_alignments_free(emdalign_alignments* alignments) { delete alignments; }

size_t emdalign_alignments_pair_count(const emdalign_alignments* alignments) {
  return alignments ? alignments->ids.size() : 0;
}

const char* emdalign_alignments_pair_id(const emdalign_alignments* alignments, size_t pair) {
  if (!alignments || pair >= alignments->ids.size()) return nullptr;
  return alignments->ids[pair].c_str();
}

size_t emdalign_alignments_link_count(const emdalign_alignments* alignments, size_t pair) {
  if (!alignments) return 0;
  const auto* set = alignments->at(pair);
  return set ? set->links.size() : 0;
}

emdalign_status emdalign_alignments_link(const emdalign_alignments* alignments, size_t pair,
                                         size_t link, const size_t** src, size_t* src_count,
                                         const size_t** tgt, size_t* tgt_count, double* mass) {
  EMDALIGN_REQUIRE(alignments);
  const auto* set = alignments->at(pair);
  if (!set || link >= set->links.size())
    return fail(EMDALIGN_ERR_ARGUMENT, "pair or link index out of range");
  const auto& l = set->links[link];
  if (src) *src = l.src.data();
  if (src_count) *src_count = l.src.size();
  if (tgt) *tgt = l.tgt.data();
  if (tgt_count) *tgt_count = l.tgt.size();
  if (mass) *mass = l.mass ? *l.mass : std::numeric_limits<double>::quiet_NaN();
  return EMDALIGN_OK;
}

size_t emdalign_alignments_failure_count(const emdalign_alignments* alignments) {
  return alignments ? alignments->failures.size() : 0;
}

emdalign_status emdalign_alignments_failure(const emdalign_alignments* alignments, size_t index,
                                            const char** pair_id, const char** message) {
  EMDALIGN_REQUIRE(alignments);
  if (index >= alignments->failures.size())
    return fail(EMDALIGN_ERR_ARGUMENT, "failure index out of range");
  if (pair_id) *pair_id = alignments->failures[index].first.c_str();
  if (message) *message = alignments->failures[index].second.c_str();
  return EMDALIGN_OK;
}

/* evaluation */

emdalign_status emdalign_evaluate(const emdalign_alignments* system,
                                  const emdalign_alignments* gold, emdalign_report** out) {
  EMDALIGN_REQUIRE(system && gold && out);
  return guarded([&] {
    *out = new emdalign_report{emdalign::evaluate(system->map, gold->map)};
    return EMDALIGN_OK;
  });
}

emdalign_status emdalign_report_score(const emdalign_report* report, int stratum,
                                      emdalign_stratum_score* out) {
  EMDALIGN_REQUIRE(report && out);
  const emdalign::StratumScore* s = nullptr;
  switch (stratum) {
    case EMDALIGN_STRATUM_OVERALL: s = &report->report.overall; break;
    case EMDALIGN_STRATUM_ONE_TO_ONE: s = &report->report.one_to_one; break;
    case EMDALIGN_STRATUM_N_TO_M: s = &report->report.n_to_m; break;
    default: return fail(EMDALIGN_ERR_ARGUMENT, "unknown stratum");
  }
  *out = {s->precision, s->recall, s->f1, s->correct, s->extracted, s->gold};
  return EMDALIGN_OK;
}

void emdalign_report_free(emdalign_report* report) { delete report; }

emdalign_status emdalign_report_format(const char* const* names,
                                       const emdalign_report* const* reports, size_t count,
                                       int format, char* buffer, size_t capacity, size_t* needed) {
  EMDALIGN_REQUIRE(names && reports && needed);
  return guarded([&] {
    if (count == 0) return fail(EMDALIGN_ERR_ARGUMENT, "no reports to format");
    std::vector<emdalign::NamedReport> rows;
    for (std::size_t k = 0; k < count; ++k) {
      if (!names[k] || !reports[k]) return fail(EMDALIGN_ERR_ARGUMENT, "null report entry");
      rows.emplace_back(names[k], reports[k]->report);
    }
    const std::string text = format == EMDALIGN_FORMAT_JSON ? emdalign::report_json(rows)
                                                            : emdalign::report_table(rows);
    *needed = text.size() + 1;
    if (!buffer || capacity < text.size() + 1)
      return fail(EMDALIGN_ERR_BUFFER, "buffer too small for report");
    std::memcpy(buffer, text.c_str(), text.size() + 1);
    return EMDALIGN_OK;
  });
}

}  // extern "C"
