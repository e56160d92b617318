#include "bwe.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <thread>
#include <unordered_map>

#include "error.hpp"
#include "rng.hpp"

namespace emdalign {

__extension__ typedef unsigned __int128 u128;

PseudoDocument merge_pair(const DocumentPair& pair) {
  PseudoDocument doc;
  doc.source_lang = pair.source.lang;
  doc.target_lang = pair.target.lang;
  const std::size_t n = pair.source.token_count();
  const std::size_t m = pair.target.token_count();
  doc.tokens.reserve(n + m);
  auto append = [&](const Document& d, bool from_source, std::size_t total) {
    std::size_t idx = 0;
    for (const auto& sent : d.sentences)
      for (const auto& tok : sent) doc.tokens.push_back({tok, from_source, ++idx, total});
  };
  append(pair.source, true, n);
  append(pair.target, false, m);

  // Compare i/N against j/M exactly via cross-multiplication.
  std::stable_sort(doc.tokens.begin(), doc.tokens.end(),
                   [](const PseudoToken& a, const PseudoToken& b) {
                     const auto lhs = static_cast<u128>(a.index) * b.doc_tokens;
                     const auto rhs = static_cast<u128>(b.index) * a.doc_tokens;
                     if (lhs != rhs) return lhs > rhs;
                     if (a.from_source != b.from_source) return a.from_source;
                     return a.index < b.index;
                   });
  return doc;
}

void validate_params(const SkipGramParams& p) {
  if (p.dim < 2) throw ConfigError("skip-gram: dim must be >= 2");
  if (p.window < 1) throw ConfigError("skip-gram: window must be >= 1");
  if (p.epochs < 1) throw ConfigError("skip-gram: epochs must be >= 1");
  if (p.negative < 1) throw ConfigError("skip-gram: negative samples must be >= 1");
  if (p.min_count < 1) throw ConfigError("skip-gram: min_count must be >= 1");
  if (!(p.learning_rate > 0.0) || !std::isfinite(p.learning_rate))
    throw ConfigError("skip-gram: learning rate must be positive");
  if (p.threads < 1) throw ConfigError("skip-gram: threads must be >= 1");
}

namespace {

constexpr double kNoisePower = 0.75;
constexpr double kMinLearningRateFraction = 1e-4;

struct Vocabulary {
  std::vector<std::string> keys;
  std::vector<std::uint64_t> counts;
  std::unordered_map<std::string, std::uint32_t> index;
};

// Keeps keys with count >= min_count, ordered by descending count then key.
Vocabulary build_vocabulary(const std::vector<PseudoDocument>& docs, std::size_t min_count) {
  std::map<std::string, std::uint64_t> counts;
  for (const auto& d : docs)
    for (std::size_t k = 0; k < d.tokens.size(); ++k) ++counts[d.key(k)];
  std::vector<std::pair<std::string, std::uint64_t>> kept;
  for (auto& [key, c] : counts)
    if (c >= min_count) kept.emplace_back(key, c);
  std::stable_sort(kept.begin(), kept.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  Vocabulary v;
  for (auto& [key, c] : kept) {
    v.index.emplace(key, static_cast<std::uint32_t>(v.keys.size()));
    v.keys.push_back(key);
    v.counts.push_back(c);
  }
  return v;
}

class NoiseSampler {
 public:
  explicit NoiseSampler(const std::vector<std::uint64_t>& counts) : cumulative_(counts.size()) {
    double total = 0.0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
      total += std::pow(static_cast<double>(counts[i]), kNoisePower);
      cumulative_[i] = total;
    }
    for (auto& c : cumulative_) c /= total;
  }

  std::uint32_t sample(Rng& rng) const {
    const double u = rng.uniform();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    if (it == cumulative_.end()) --it;
    return static_cast<std::uint32_t>(it - cumulative_.begin());
  }

 private:
  std::vector<double> cumulative_;
};

struct Model {
  std::size_t dim;
  std::vector<float> input;   // word vectors
  std::vector<float> output;  // context (negative-sampling) vectors
};

double sigmoid(double x) {
  if (x > 30.0) return 1.0;
  if (x < -30.0) return 0.0;
  return 1.0 / (1.0 + std::exp(-x));
}

// Trains on docs[begin, end) for one thread. `processed` counts tokens across
// all epochs for the linear learning-rate decay.
void train_slice(Model& model, const std::vector<std::vector<std::uint32_t>>& docs,
                 std::size_t begin, std::size_t end, const SkipGramParams& p,
                 const NoiseSampler& noise, std::uint64_t seed, std::uint64_t slice_tokens) {
  Rng rng(seed);
  const std::size_t dim = model.dim;
  std::vector<float> grad(dim);
  const std::uint64_t total = slice_tokens * p.epochs;
  std::uint64_t processed = 0;
  const double min_lr = p.learning_rate * kMinLearningRateFraction;

  for (std::size_t epoch = 0; epoch < p.epochs; ++epoch) {
    for (std::size_t d = begin; d < end; ++d) {
      const auto& doc = docs[d];
      for (std::size_t pos = 0; pos < doc.size(); ++pos, ++processed) {
        const double lr = std::max(
            min_lr, p.learning_rate * (1.0 - static_cast<double>(processed) /
                                                 static_cast<double>(total + 1)));
        const std::uint32_t center = doc[pos];
        const std::size_t reduce = rng.below(p.window);
        const std::size_t span = p.window - reduce;
        const std::size_t lo = pos >= span ? pos - span : 0;
        const std::size_t hi = std::min(doc.size() - 1, pos + span);
        for (std::size_t c = lo; c <= hi; ++c) {
          if (c == pos) continue;
          float* in = &model.input[static_cast<std::size_t>(doc[c]) * dim];
          std::fill(grad.begin(), grad.end(), 0.0f);
          for (std::size_t s = 0; s <= p.negative; ++s) {
            std::uint32_t target;
            double label;
            if (s == 0) {
              target = center;
              label = 1.0;
            } else {
              target = noise.sample(rng);
              if (target == center) continue;
              label = 0.0;
            }
            float* out = &model.output[static_cast<std::size_t>(target) * dim];
            double dot = 0.0;
            for (std::size_t k = 0; k < dim; ++k) dot += static_cast<double>(in[k]) * out[k];
            const auto g = static_cast<float>((label - sigmoid(dot)) * lr);
            for (std::size_t k = 0; k < dim; ++k) {
              grad[k] += g * out[k];
              out[k] += g * in[k];
            }
          }
          for (std::size_t k = 0; k < dim; ++k) in[k] += grad[k];
        }
      }
    }
  }
}

}  // namespace

EmbeddingTable train_bwe(const Corpus& pairs, const SkipGramParams& params) {
  validate_params(params);
  if (pairs.empty()) throw TrainingError("train_bwe: corpus has no document pairs");

  std::vector<PseudoDocument> merged;
  merged.reserve(pairs.size());
  for (const auto& pair : pairs) merged.push_back(merge_pair(pair));

  Vocabulary vocab = build_vocabulary(merged, params.min_count);
  if (vocab.keys.empty())
    throw TrainingError("train_bwe: vocabulary is empty after min_count=" +
                        std::to_string(params.min_count) + " filtering");

  std::vector<std::vector<std::uint32_t>> docs;
  docs.reserve(merged.size());
  std::uint64_t tokens = 0;
  for (const auto& m : merged) {
    std::vector<std::uint32_t> ids;
    ids.reserve(m.tokens.size());
    for (std::size_t k = 0; k < m.tokens.size(); ++k) {
      auto it = vocab.index.find(m.key(k));
      if (it != vocab.index.end()) ids.push_back(it->second);
    }
    tokens += ids.size();
    docs.push_back(std::move(ids));
  }

  const std::size_t dim = params.dim;
  Model model{dim, std::vector<float>(vocab.keys.size() * dim),
              std::vector<float>(vocab.keys.size() * dim, 0.0f)};
  {
    Rng init(params.seed);
    const double scale = 1.0 / static_cast<double>(dim);
    for (auto& v : model.input) v = static_cast<float>((init.uniform() - 0.5) * scale);
  }
  NoiseSampler noise(vocab.counts);

  const std::size_t threads =
      params.deterministic ? 1 : std::min<std::size_t>(params.threads, docs.size());
  if (threads <= 1) {
    train_slice(model, docs, 0, docs.size(), params, noise, params.seed ^ 0x9e3779b97f4a7c15ULL,
                tokens);
  } else {
    std::vector<std::thread> workers;
    const std::size_t chunk = (docs.size() + threads - 1) / threads;
    for (std::size_t t = 0; t < threads; ++t) {
      const std::size_t b = std::min(docs.size(), t * chunk);
      const std::size_t e = std::min(docs.size(), b + chunk);
      std::uint64_t slice_tokens = 0;
      for (std::size_t d = b; d < e; ++d) slice_tokens += docs[d].size();
      workers.emplace_back(train_slice, std::ref(model), std::cref(docs), b, e,
                           std::cref(params), std::cref(noise),
                           params.seed ^ (0x9e3779b97f4a7c15ULL * (t + 1)), slice_tokens);
    }
    for (auto& w : workers) w.join();
  }

  for (std::size_t i = 0; i < vocab.keys.size(); ++i) {
    float* v = &model.input[i * dim];
    if (std::all_of(v, v + dim, [](float x) { return x == 0.0f; }))
      throw TrainingError("train_bwe: zero vector for '" + vocab.keys[i] + "'");
  }
  return EmbeddingTable(dim, std::move(vocab.keys), std::move(model.input));
}

}  // namespace emdalign
