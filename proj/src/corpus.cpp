#include "corpus.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "error.hpp"
#include "io_util.hpp"

namespace emdalign {

using nlohmann::json;

std::size_t Document::token_count() const {
  std::size_t n = 0;
  for (const auto& s : sentences) n += s.size();
  return n;
}

std::optional<std::string> token_problem(const std::string& token) {
  if (token.empty()) return "empty token";
  for (unsigned char ch : token) {
    if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r' || ch == '\v' || ch == '\f')
      return "token '" + token + "' contains whitespace";
  }
  return std::nullopt;
}

namespace {

void validate_document(const Document& doc, const std::string& side,
                       const std::string& pair_id) {
  auto fail = [&](const std::string& msg) {
    throw ValidationError("pair '" + pair_id + "': " + side + " " + msg);
  };
  if (doc.lang.empty()) fail("has an empty language tag");
  if (doc.lang.find(':') != std::string::npos) fail("language tag contains ':'");
  if (doc.sentences.empty()) fail("has no sentences");
  for (std::size_t i = 0; i < doc.sentences.size(); ++i) {
    if (doc.sentences[i].empty()) fail("sentence " + std::to_string(i) + " has no tokens");
    for (const auto& tok : doc.sentences[i]) {
      if (auto problem = token_problem(tok))
        fail("sentence " + std::to_string(i) + ": " + *problem);
    }
  }
}

Document parse_document(const json& j, const char* side) {
  if (!j.is_object()) throw std::invalid_argument(std::string(side) + " is not an object");
  Document doc;
  doc.doc_id = j.value("doc_id", std::string());
  if (!j.contains("lang") || !j["lang"].is_string())
    throw std::invalid_argument(std::string(side) + ".lang missing or not a string");
  doc.lang = j["lang"].get<std::string>();
  if (!j.contains("sentences") || !j["sentences"].is_array())
    throw std::invalid_argument(std::string(side) + ".sentences missing or not an array");
  for (const auto& s : j["sentences"]) {
    if (!s.is_array())
      throw std::invalid_argument(std::string(side) + ".sentences entry is not an array");
    Sentence sent;
    sent.reserve(s.size());
    for (const auto& tok : s) {
      if (!tok.is_string())
        throw std::invalid_argument(std::string(side) + " token is not a string");
      sent.push_back(tok.get<std::string>());
    }
    doc.sentences.push_back(std::move(sent));
  }
  return doc;
}

DocumentPair parse_record(const std::string& line) {
  json j = json::parse(line);
  if (!j.is_object()) throw std::invalid_argument("record is not a JSON object");
  if (!j.contains("pair_id") || !j["pair_id"].is_string())
    throw std::invalid_argument("pair_id missing or not a string");
  DocumentPair pair;
  pair.pair_id = j["pair_id"].get<std::string>();
  if (!j.contains("source")) throw std::invalid_argument("source missing");
  if (!j.contains("target")) throw std::invalid_argument("target missing");
  pair.source = parse_document(j["source"], "source");
  pair.target = parse_document(j["target"], "target");
  return pair;
}

json document_json(const Document& doc) {
  return json{{"doc_id", doc.doc_id}, {"lang", doc.lang}, {"sentences", doc.sentences}};
}

bool blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(),
                     [](unsigned char c) { return std::isspace(c) != 0; });
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  return in;
}

}  // namespace

void validate_pair(const DocumentPair& pair) {
  if (pair.pair_id.empty()) throw ValidationError("record has an empty pair_id");
  if (std::any_of(pair.pair_id.begin(), pair.pair_id.end(),
                  [](unsigned char c) { return std::isspace(c) != 0; }))
    throw ValidationError("pair '" + pair.pair_id + "': pair_id contains whitespace");
  validate_document(pair.source, "source", pair.pair_id);
  validate_document(pair.target, "target", pair.pair_id);
  if (pair.source.lang == pair.target.lang)
    throw ValidationError("pair '" + pair.pair_id +
                          "': source and target share language '" + pair.source.lang + "'");
}

void validate_alignment(const AlignmentSet& set, const std::string& pair_id,
                        std::optional<std::size_t> src_sentences,
                        std::optional<std::size_t> tgt_sentences) {
  std::set<std::size_t> seen_src, seen_tgt;
  auto fail = [&](const std::string& msg) {
    throw ValidationError("pair '" + pair_id + "': " + msg);
  };
  auto check_side = [&](const std::vector<std::size_t>& idx, std::set<std::size_t>& seen,
                        std::optional<std::size_t> bound, const char* side) {
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (k > 0 && idx[k] <= idx[k - 1]) fail(std::string(side) + " indices not sorted/unique");
      if (bound && idx[k] >= *bound)
        fail(std::string(side) + " index " + std::to_string(idx[k]) + " out of bounds (" +
             std::to_string(*bound) + " sentences)");
      if (!seen.insert(idx[k]).second)
        fail(std::string(side) + " index " + std::to_string(idx[k]) +
             " appears in more than one link");
    }
  };
  for (const auto& link : set.links) {
    if (link.src.empty() && link.tgt.empty()) fail("link with both sides empty");
    check_side(link.src, seen_src, src_sentences, "source");
    check_side(link.tgt, seen_tgt, tgt_sentences, "target");
  }
}

LenientLoad read_corpus_lenient(std::istream& in) {
  LenientLoad result;
  std::unordered_set<std::string> ids;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line)) continue;
    ++result.records;
    DocumentPair pair;
    try {
      pair = parse_record(line);
    } catch (const std::exception& e) {
      result.rejected.push_back({lineno, {}, "line " + std::to_string(lineno) + ": " + e.what()});
      continue;
    }
    try {
      validate_pair(pair);
      if (!ids.insert(pair.pair_id).second)
        throw ValidationError("pair '" + pair.pair_id + "': duplicate pair_id");
    } catch (const ValidationError& e) {
      result.rejected.push_back({lineno, pair.pair_id, e.what()});
      continue;
    }
    result.pairs.push_back(std::move(pair));
  }
  return result;
}

Corpus read_corpus(std::istream& in) {
  Corpus corpus;
  std::unordered_set<std::string> ids;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line)) continue;
    DocumentPair pair;
    try {
      pair = parse_record(line);
    } catch (const std::exception& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
    }
    validate_pair(pair);
    if (!ids.insert(pair.pair_id).second)
      throw ValidationError("pair '" + pair.pair_id + "': duplicate pair_id");
    corpus.push_back(std::move(pair));
  }
  return corpus;
}

Corpus load_corpus(const std::string& path) {
  auto in = open_input(path);
  return read_corpus(in);
}

LenientLoad load_corpus_lenient(const std::string& path) {
  auto in = open_input(path);
  return read_corpus_lenient(in);
}

std::string corpus_record(const DocumentPair& pair) {
  json j{{"pair_id", pair.pair_id},
         {"source", document_json(pair.source)},
         {"target", document_json(pair.target)}};
  return j.dump();
}

void write_corpus(std::ostream& out, const Corpus& corpus) {
  for (const auto& pair : corpus) out << corpus_record(pair) << '\n';
}

void save_corpus(const std::string& path, const Corpus& corpus) {
  atomic_write(path, [&](std::ostream& out) { write_corpus(out, corpus); });
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::istringstream ss(line);
  std::string f;
  while (ss >> f) fields.push_back(f);
  return fields;
}

std::vector<std::size_t> parse_index_list(const std::string& field, std::size_t lineno) {
  std::vector<std::size_t> out;
  if (field == "-") return out;
  std::size_t start = 0;
  while (start <= field.size()) {
    std::size_t comma = field.find(',', start);
    if (comma == std::string::npos) comma = field.size();
    std::size_t value = 0;
    const char* b = field.data() + start;
    const char* e = field.data() + comma;
    auto [ptr, ec] = std::from_chars(b, e, value);
    if (b == e || ec != std::errc() || ptr != e)
      throw ParseError("line " + std::to_string(lineno) + ": bad index list '" + field + "'");
    out.push_back(value);
    start = comma + 1;
  }
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end())
    throw ParseError("line " + std::to_string(lineno) + ": repeated index in '" + field + "'");
  return out;
}

}  // namespace

AlignmentMap read_gold(std::istream& in, const Corpus* corpus) {
  AlignmentMap result;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line)) continue;
    auto fields = split_fields(line);
    if (fields.size() != 3 && fields.size() != 4)
      throw ParseError("line " + std::to_string(lineno) + ": expected 3 or 4 fields, got " +
                       std::to_string(fields.size()));
    Link link;
    link.src = parse_index_list(fields[1], lineno);
    link.tgt = parse_index_list(fields[2], lineno);
    if (fields.size() == 4) {
      try {
        std::size_t used = 0;
        link.mass = std::stod(fields[3], &used);
        if (used != fields[3].size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(lineno) + ": bad mass '" + fields[3] + "'");
      }
    }
    result[fields[0]].links.push_back(std::move(link));
  }

  std::map<std::string, const DocumentPair*> by_id;
  if (corpus) {
    for (const auto& p : *corpus) by_id[p.pair_id] = &p;
  }
  for (const auto& [id, set] : result) {
    if (corpus) {
      auto it = by_id.find(id);
      if (it == by_id.end()) throw ValidationError("pair '" + id + "': not present in corpus");
      validate_alignment(set, id, it->second->source.sentences.size(),
                         it->second->target.sentences.size());
    } else {
      validate_alignment(set, id);
    }
  }
  return result;
}

AlignmentMap load_gold(const std::string& path, const Corpus* corpus) {
  auto in = open_input(path);
  return read_gold(in, corpus);
}

std::string format_index_list(const std::vector<std::size_t>& indices) {
  if (indices.empty()) return "-";
  std::string out;
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(indices[k]);
  }
  return out;
}

void write_alignments(std::ostream& out, const AlignmentMap& alignments) {
  for (const auto& [id, set] : alignments) {
    for (const auto& link : set.links) {
      out << id << '\t' << format_index_list(link.src) << '\t' << format_index_list(link.tgt);
      if (link.mass) out << '\t' << shortest_repr(*link.mass);
      out << '\n';
    }
  }
}

void save_alignments(const std::string& path, const AlignmentMap& alignments) {
  atomic_write(path, [&](std::ostream& out) { write_alignments(out, alignments); });
}

}  // namespace emdalign
