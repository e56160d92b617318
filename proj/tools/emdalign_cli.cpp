// emdalign command-line front end. Talks to the library only through the C API.

#include <emdalign/emdalign.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

namespace {

enum ExitCode { kSuccess = 0, kUsage = 1, kData = 2, kInternal = 3 };

enum class LogLevel { kQuiet = 0, kError, kWarn, kInfo, kDebug };

LogLevel log_level() {
  static const LogLevel level = [] {
    const char* env = std::getenv("EMDALIGN_LOG_LEVEL");
    if (!env) return LogLevel::kInfo;
    const std::string v(env);
    if (v == "quiet") return LogLevel::kQuiet;
    if (v == "error") return LogLevel::kError;
    if (v == "warn") return LogLevel::kWarn;
    if (v == "debug") return LogLevel::kDebug;
    return LogLevel::kInfo;
  }();
  return level;
}

void log(LogLevel level, const std::string& msg) {
  if (level > log_level()) return;
  static const char* names[] = {"", "error", "warning", "info", "debug"};
  std::cerr << "emdalign: " << names[static_cast<int>(level)] << ": " << msg << '\n';
}

// Library status -> process exit code.
int exit_code_for(emdalign_status s) {
  switch (s) {
    case EMDALIGN_OK: return kSuccess;
    case EMDALIGN_ERR_CONFIG:
    case EMDALIGN_ERR_ARGUMENT: return kUsage;
    case EMDALIGN_ERR_PARSE:
    case EMDALIGN_ERR_VALIDATION:
    case EMDALIGN_ERR_TRAINING:
    case EMDALIGN_ERR_IO:
    case EMDALIGN_ERR_OOV: return kData;
    default: return kInternal;
  }
}

struct Failure {
  int code;
};

void check(emdalign_status s, const std::string& context) {
  if (s == EMDALIGN_OK) return;
  log(LogLevel::kError, context + ": " + emdalign_last_error());
  throw Failure{exit_code_for(s)};
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using CorpusPtr = std::unique_ptr<emdalign_corpus, Deleter<emdalign_corpus, emdalign_corpus_free>>;
using EmbeddingsPtr =
    std::unique_ptr<emdalign_embeddings, Deleter<emdalign_embeddings, emdalign_embeddings_free>>;
using AlignmentsPtr =
    std::unique_ptr<emdalign_alignments, Deleter<emdalign_alignments, emdalign_alignments_free>>;
using LexiconPtr = std::unique_ptr<emdalign_lexicon, Deleter<emdalign_lexicon, emdalign_lexicon_free>>;
using ReportPtr = std::unique_ptr<emdalign_report, Deleter<emdalign_report, emdalign_report_free>>;

void require_file(const std::string& path, const char* what) {
  if (!std::filesystem::is_regular_file(path)) {
    log(LogLevel::kError, std::string(what) + " '" + path + "' does not exist");
    throw Failure{kData};
  }
}

std::string join(const std::vector<double>& v) {
  std::ostringstream out;
  for (std::size_t k = 0; k < v.size(); ++k) out << (k ? "," : "") << v[k];
  return out.str();
}

// ---- synth ---------------------------------------------------------------

struct SynthOptions {
  emdalign_synth_config config{};
  std::string source_lang = "en";
  std::string target_lang = "xx";
  std::string corpus_out, gold_out, lexicon_out;
};

int run_synth(SynthOptions& o) {
  o.config.source_lang = o.source_lang.c_str();
  o.config.target_lang = o.target_lang.c_str();
  const auto& c = o.config;
  std::ostringstream cfg;
  cfg << "synth: documents=" << c.documents << " sentences=" << c.sentences
      << " vocab=" << c.vocab_size << " len=[" << c.min_sentence_len << "," << c.max_sentence_len
      << "] p21=" << c.p_two_to_one << " p12=" << c.p_one_to_two << " p22=" << c.p_two_to_two
      << " shuffle=" << c.shuffle_tokens << " langs=" << o.source_lang << "/" << o.target_lang
      << " seed=" << c.seed;
  log(LogLevel::kInfo, cfg.str());

  emdalign_corpus* corpus = nullptr;
  emdalign_alignments* gold = nullptr;
  emdalign_lexicon* lexicon = nullptr;
  check(emdalign_synth_generate(&o.config, &corpus, &gold, &lexicon), "synth");
  CorpusPtr corpus_guard(corpus);
  AlignmentsPtr gold_guard(gold);
  LexiconPtr lexicon_guard(lexicon);
  check(emdalign_corpus_save(corpus, o.corpus_out.c_str()), "writing corpus");
  check(emdalign_alignments_save(gold, o.gold_out.c_str()), "writing gold");
  if (!o.lexicon_out.empty())
    check(emdalign_lexicon_save(lexicon, o.lexicon_out.c_str()), "writing lexicon");
  return kSuccess;
}

// ---- train-bwe -----------------------------------------------------------

struct TrainOptions {
  emdalign_skipgram_params params{};
  std::string corpus, out;
  bool fast = false;
};

int run_train(TrainOptions& o) {
  require_file(o.corpus, "corpus");
  auto& p = o.params;
  p.deterministic = o.fast ? 0 : 1;
  std::ostringstream cfg;
  cfg << "train-bwe: dim=" << p.dim << " window=" << p.window << " negative=" << p.negative
      << " epochs=" << p.epochs << " min_count=" << p.min_count << " lr=" << p.learning_rate
      << " seed=" << p.seed << " mode=" << (p.deterministic ? "deterministic" : "fast")
      << " threads=" << (p.deterministic ? 1 : p.threads);
  log(LogLevel::kInfo, cfg.str());

  emdalign_corpus* corpus = nullptr;
  check(emdalign_corpus_load(o.corpus.c_str(), 0, &corpus), "loading corpus");
  CorpusPtr corpus_guard(corpus);
  emdalign_embeddings* table = nullptr;
  check(emdalign_bwe_train(corpus, &p, &table), "training");
  EmbeddingsPtr table_guard(table);
  check(emdalign_embeddings_save(table, o.out.c_str()), "writing embeddings");
  log(LogLevel::kInfo, "wrote " + std::to_string(emdalign_embeddings_size(table)) + " vectors to " + o.out);
  return kSuccess;
}

// ---- align ---------------------------------------------------------------

struct AlignOptions {
  emdalign_align_params params{};
  std::string corpus, embeddings, out, method = "emd";
  std::vector<double> grid;
  std::string dump_distances, dump_plans;
  double gc_c = 0.0;  // 0: estimate from the corpus for --method gc
};

int run_align(AlignOptions& o) {
  require_file(o.corpus, "corpus");
  auto& p = o.params;
  if (!o.grid.empty()) {
    p.grid = o.grid.data();
    p.grid_size = o.grid.size();
  }
  p.dump_distances_dir = o.dump_distances.empty() ? nullptr : o.dump_distances.c_str();
  p.dump_plans_dir = o.dump_plans.empty() ? nullptr : o.dump_plans.c_str();

  EmbeddingsPtr table_guard;
  if (o.method == "emd") {
    if (o.embeddings.empty()) {
      log(LogLevel::kError, "--embeddings is required for --method emd");
      throw Failure{kUsage};
    }
    require_file(o.embeddings, "embedding file");
    emdalign_embeddings* table = nullptr;
    check(emdalign_embeddings_load(o.embeddings.c_str(), &table), "loading embeddings");
    table_guard.reset(table);
  }

  emdalign_corpus* corpus = nullptr;
  check(emdalign_corpus_load(o.corpus.c_str(), EMDALIGN_LOAD_LENIENT, &corpus), "loading corpus");
  CorpusPtr corpus_guard(corpus);
  for (std::size_t k = 0; k < emdalign_corpus_rejected_count(corpus); ++k)
    log(LogLevel::kWarn, std::string("skipping record: ") + emdalign_corpus_rejected_message(corpus, k));

  if (o.gc_c > 0.0) p.gc.c = o.gc_c;
  emdalign_alignments* result = nullptr;
  if (o.method == "gc") {
    if (o.gc_c <= 0.0) p.gc.c = emdalign_estimate_length_ratio(corpus);
    std::ostringstream cfg;
    cfg << "align: method=gc c=" << p.gc.c << " s2=" << p.gc.s2 << " jobs=" << p.jobs;
    log(LogLevel::kInfo, cfg.str());
    check(emdalign_gc_align_corpus(corpus, &p.gc, p.jobs, &result), "aligning");
  } else {
    std::ostringstream cfg;
    cfg << "align: method=emd alpha=" << p.alpha << " gamma=" << p.gamma
        << " grid=" << (o.grid.empty() ? std::string("default") : join(o.grid))
        << " zero_tol=" << p.zero_tol << " sim_floor=" << p.sim_floor << " gc.c=" << p.gc.c
        << " gc.s2=" << p.gc.s2 << " split_threshold=" << p.split_threshold << " jobs=" << p.jobs;
    log(LogLevel::kInfo, cfg.str());
    check(emdalign_align_corpus(corpus, table_guard.get(), &p, &result), "aligning");
  }
  AlignmentsPtr result_guard(result);
  for (std::size_t k = 0; k < emdalign_alignments_failure_count(result); ++k) {
    const char* id = nullptr;
    const char* msg = nullptr;
    emdalign_alignments_failure(result, k, &id, &msg);
    log(LogLevel::kWarn, std::string("pair '") + id + "' failed: " + msg);
  }
  check(emdalign_alignments_save(result, o.out.c_str()), "writing alignments");
  std::cerr << "aligned " << emdalign_alignments_pair_count(result) << "/"
            << emdalign_corpus_records(corpus) << " pairs\n";
  return kSuccess;
}

// ---- eval ----------------------------------------------------------------

struct EvalOptions {
  std::vector<std::string> systems;  // "name=path" or "path"
  std::string gold;
  bool json = false;
};

int run_eval(EvalOptions& o) {
  require_file(o.gold, "gold file");
  emdalign_alignments* gold = nullptr;
  check(emdalign_alignments_load(o.gold.c_str(), nullptr, &gold), "loading gold");
  AlignmentsPtr gold_guard(gold);

  std::vector<std::string> names;
  std::vector<ReportPtr> reports;
  for (const auto& spec : o.systems) {
    std::string name, path;
    if (auto eq = spec.find('='); eq != std::string::npos && !std::filesystem::exists(spec)) {
      name = spec.substr(0, eq);
      path = spec.substr(eq + 1);
    } else {
      path = spec;
      name = std::filesystem::path(spec).stem().string();
    }
    require_file(path, "system file");
    emdalign_alignments* sys = nullptr;
    check(emdalign_alignments_load(path.c_str(), nullptr, &sys), "loading " + path);
    AlignmentsPtr sys_guard(sys);
    emdalign_report* report = nullptr;
    check(emdalign_evaluate(sys, gold, &report), "evaluating " + path);
    names.push_back(name);
    reports.emplace_back(report);
  }
  std::vector<const char*> name_ptrs;
  std::vector<const emdalign_report*> report_ptrs;
  for (std::size_t k = 0; k < names.size(); ++k) {
    name_ptrs.push_back(names[k].c_str());
    report_ptrs.push_back(reports[k].get());
  }
  const int format = o.json ? EMDALIGN_FORMAT_JSON : EMDALIGN_FORMAT_TABLE;
  std::size_t needed = 0;
  emdalign_report_format(name_ptrs.data(), report_ptrs.data(), names.size(), format, nullptr, 0,
                         &needed);
  std::string text(needed, '\0');
  check(emdalign_report_format(name_ptrs.data(), report_ptrs.data(), names.size(), format,
                               text.data(), text.size(), &needed),
        "formatting report");
  text.resize(needed - 1);
  std::cout << text;
  return kSuccess;
}

// ---- nn ------------------------------------------------------------------

struct NnOptions {
  std::string embeddings, query, lang, lexicon, source_lang = "en", target_lang = "xx";
  std::size_t k = 10;
  std::vector<std::size_t> ks = {1, 10};
};

int run_nn(NnOptions& o) {
  require_file(o.embeddings, "embedding file");
  emdalign_embeddings* table = nullptr;
  check(emdalign_embeddings_load(o.embeddings.c_str(), &table), "loading embeddings");
  EmbeddingsPtr table_guard(table);

  if (!o.lexicon.empty()) {
    require_file(o.lexicon, "lexicon");
    emdalign_lexicon* lex = nullptr;
    check(emdalign_lexicon_load(o.lexicon.c_str(), &lex), "loading lexicon");
    LexiconPtr lex_guard(lex);
    std::vector<double> acc(o.ks.size());
    std::size_t oov = 0;
    check(emdalign_lexicon_accuracy(table, lex, o.source_lang.c_str(), o.target_lang.c_str(),
                                    o.ks.data(), o.ks.size(), acc.data(), &oov),
          "lexicon accuracy");
    std::cout << "entries\t" << emdalign_lexicon_size(lex) << "\noov\t" << oov << '\n';
    for (std::size_t i = 0; i < o.ks.size(); ++i) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.4f", acc[i]);
      std::cout << "top" << o.ks[i] << '\t' << buf << '\n';
    }
    return kSuccess;
  }

  if (o.query.empty()) {
    log(LogLevel::kError, "nn needs --query or --lexicon");
    throw Failure{kUsage};
  }
  std::vector<emdalign_neighbor> out(o.k);
  std::size_t count = 0;
  check(emdalign_embeddings_top_k(table, o.query.c_str(), o.k, o.lang.c_str(), out.data(), &count),
        "query");
  for (std::size_t r = 0; r < count; ++r) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", out[r].similarity);
    std::cout << out[r].key << '\t' << buf << '\n';
  }
  return kSuccess;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sentence alignment for document-aligned bilingual corpora"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(emdalign_version()));

  SynthOptions synth;
  emdalign_synth_config_default(&synth.config);
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic corpus with gold alignments");
  synth_cmd->add_option("--documents", synth.config.documents, "Document pairs")->capture_default_str();
  synth_cmd->add_option("--sentences", synth.config.sentences, "Source sentences per document")->capture_default_str();
  synth_cmd->add_option("--vocab", synth.config.vocab_size, "Vocabulary size per language")->capture_default_str();
  synth_cmd->add_option("--min-len", synth.config.min_sentence_len)->capture_default_str();
  synth_cmd->add_option("--max-len", synth.config.max_sentence_len)->capture_default_str();
  synth_cmd->add_option("--p21", synth.config.p_two_to_one, "Share of 2-to-1 links")->capture_default_str();
  synth_cmd->add_option("--p12", synth.config.p_one_to_two, "Share of 1-to-2 links")->capture_default_str();
  synth_cmd->add_option("--p22", synth.config.p_two_to_two, "Share of 2-to-2 links")->capture_default_str();
  synth_cmd->add_flag("--shuffle", synth.config.shuffle_tokens, "Shuffle tokens inside target sentences");
  synth_cmd->add_option("--source-lang", synth.source_lang)->capture_default_str();
  synth_cmd->add_option("--target-lang", synth.target_lang)->capture_default_str();
  synth_cmd->add_option("--seed", synth.config.seed)->capture_default_str();
  synth_cmd->add_option("--corpus-out", synth.corpus_out, "Corpus JSON-lines output")->required();
  synth_cmd->add_option("--gold-out", synth.gold_out, "Gold alignment output")->required();
  synth_cmd->add_option("--lexicon-out", synth.lexicon_out, "Word bijection output");

  TrainOptions train;
  emdalign_skipgram_params_default(&train.params);
  auto* train_cmd = app.add_subcommand("train-bwe", "Train bilingual word embeddings");
  train_cmd->add_option("--corpus", train.corpus)->required();
  train_cmd->add_option("--out", train.out, "Embedding file to write")->required();
  train_cmd->add_option("--dim", train.params.dim)->capture_default_str();
  train_cmd->add_option("--window", train.params.window)->capture_default_str();
  train_cmd->add_option("--negative", train.params.negative)->capture_default_str();
  train_cmd->add_option("--epochs", train.params.epochs)->capture_default_str();
  train_cmd->add_option("--min-count", train.params.min_count)->capture_default_str();
  train_cmd->add_option("--lr", train.params.learning_rate)->capture_default_str();
  train_cmd->add_option("--seed", train.params.seed)->capture_default_str();
  train_cmd->add_flag("--fast", train.fast, "Multi-threaded, non-reproducible training");
  train_cmd->add_option("--threads", train.params.threads, "Worker threads with --fast")->capture_default_str();

  AlignOptions align;
  emdalign_align_params_default(&align.params);
  auto* align_cmd = app.add_subcommand("align", "Align sentences of every document pair");
  align_cmd->add_option("--corpus", align.corpus)->required();
  align_cmd->add_option("--embeddings", align.embeddings);
  align_cmd->add_option("--out", align.out, "Alignment file to write")->required();
  align_cmd->add_option("--method", align.method)->check(CLI::IsMember({"emd", "gc"}))->capture_default_str();
  align_cmd->add_option("--alpha", align.params.alpha)->capture_default_str();
  align_cmd->add_option("--gamma", align.params.gamma)->capture_default_str();
  align_cmd->add_option("--grid", align.grid, "Epsilon grid values")->delimiter(',');
  align_cmd->add_option("--zero-tol", align.params.zero_tol)->capture_default_str();
  align_cmd->add_option("--sim-floor", align.params.sim_floor)->capture_default_str();
  align_cmd->add_option("--split-threshold", align.params.split_threshold)->capture_default_str();
  align_cmd->add_option("--gc-c", align.gc_c, "Gale-Church length ratio (gc: estimated when unset)");
  align_cmd->add_option("--gc-s2", align.params.gc.s2)->capture_default_str();
  align_cmd->add_option("--jobs", align.params.jobs)->capture_default_str();
  align_cmd->add_option("--dump-distances", align.dump_distances, "Directory for distance TSVs");
  align_cmd->add_option("--dump-plans", align.dump_plans, "Directory for transport plan TSVs");

  EvalOptions eval;
  auto* eval_cmd = app.add_subcommand("eval", "Score alignments against gold");
  eval_cmd->add_option("--system", eval.systems, "System file, optionally name=path (repeatable)")->required();
  eval_cmd->add_option("--gold", eval.gold)->required();
  eval_cmd->add_flag("--json", eval.json, "Emit JSON instead of a table");

  NnOptions nn;
  auto* nn_cmd = app.add_subcommand("nn", "Nearest-neighbour queries and lexicon accuracy");
  nn_cmd->add_option("--embeddings", nn.embeddings)->required();
  nn_cmd->add_option("--query", nn.query, "Language-tagged key, e.g. en:cornea");
  nn_cmd->add_option("--lang", nn.lang, "Restrict results to this language");
  nn_cmd->add_option("-k", nn.k)->capture_default_str();
  nn_cmd->add_option("--lexicon", nn.lexicon, "Two-column lexicon for top-k accuracy");
  nn_cmd->add_option("--source-lang", nn.source_lang)->capture_default_str();
  nn_cmd->add_option("--target-lang", nn.target_lang)->capture_default_str();
  nn_cmd->add_option("--ks", nn.ks)->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kSuccess : kUsage;
  }

  try {
    if (*synth_cmd) return run_synth(synth);
    if (*train_cmd) return run_train(train);
    if (*align_cmd) return run_align(align);
    if (*eval_cmd) return run_eval(eval);
    if (*nn_cmd) return run_nn(nn);
  } catch (const Failure& f) {
    return f.code;
  } catch (const std::exception& e) {
    log(LogLevel::kError, e.what());
    return kInternal;
  }
  return kUsage;
}
