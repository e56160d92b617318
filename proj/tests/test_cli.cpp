#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Workspace {
 public:
  Workspace() {
    dir_ = fs::temp_directory_path() / ("emdalign_cli_" + std::to_string(::getpid()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  ~Workspace() { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  Run run(const std::string& args) const {
    const std::string cmd = std::string("'") + EMDALIGN_CLI_PATH + "' " + args + " > '" +
                            path("stdout") + "' 2> '" + path("stderr") + "'";
    const int status = std::system(cmd.c_str());
    Run r{WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(path("stdout")),
          slurp(path("stderr"))};
    return r;
  }

 private:
  fs::path dir_;
};

// Small corpus, gold and embeddings shared by the tests below.
const Workspace& prepared() {
  static Workspace ws;
  static bool done = false;
  if (!done) {
    auto r = ws.run("synth --documents 10 --sentences 8 --vocab 80 --p21 0.1 --seed 4 --corpus-out " +
                    ws.path("corpus.jsonl") + " --gold-out " + ws.path("gold.tsv") +
                    " --lexicon-out " + ws.path("lex.tsv"));
    REQUIRE(r.code == 0);
    r = ws.run("train-bwe --corpus " + ws.path("corpus.jsonl") + " --out " + ws.path("emb.txt") +
               " --dim 32 --epochs 20 --min-count 1");
    REQUIRE(r.code == 0);
    done = true;
  }
  return ws;
}

}  // namespace

TEST_CASE("usage errors exit with 1") {
  const auto& ws = prepared();
  CHECK(ws.run("").code != 0);
  CHECK(ws.run("no-such-command").code == 1);
  CHECK(ws.run("align --corpus x").code == 1);
  CHECK(ws.run("align --corpus " + ws.path("corpus.jsonl") + " --embeddings " + ws.path("emb.txt") +
               " --out " + ws.path("o.tsv") + " --alpha -1")
            .code == 1);
  CHECK(ws.run("--help").code == 0);
}

TEST_CASE("train-bwe writes a word2vec-style header and is reproducible") {
  const auto& ws = prepared();
  const std::string emb = slurp(ws.path("emb.txt"));
  std::istringstream in(emb);
  std::size_t vocab = 0, dim = 0;
  in >> vocab >> dim;
  CHECK(vocab > 100);
  CHECK(dim == 32);
  auto r = ws.run("train-bwe --corpus " + ws.path("corpus.jsonl") + " --out " +
                  ws.path("emb2.txt") + " --dim 32 --epochs 20 --min-count 1");
  REQUIRE(r.code == 0);
  CHECK(slurp(ws.path("emb2.txt")) == emb);
}

TEST_CASE("train-bwe on a missing corpus fails without output") {
  const auto& ws = prepared();
  auto r = ws.run("train-bwe --corpus " + ws.path("absent.jsonl") + " --out " + ws.path("never.txt"));
  CHECK(r.code == 2);
  CHECK_FALSE(fs::exists(ws.path("never.txt")));
  CHECK(r.err.find("absent.jsonl") != std::string::npos);
  r = ws.run("train-bwe --corpus " + ws.path("corpus.jsonl") + " --out " + ws.path("never.txt") +
             " --min-count 100000");
  CHECK(r.code == 2);
  CHECK_FALSE(fs::exists(ws.path("never.txt")));
}

TEST_CASE("align skips a malformed record and reports the count") {
  const auto& ws = prepared();
  std::string corpus = slurp(ws.path("corpus.jsonl"));
  // Corrupt the 4th record (truncate its JSON).
  std::istringstream in(corpus);
  std::ostringstream edited;
  std::string line;
  for (int k = 0; std::getline(in, line); ++k) edited << (k == 3 ? line.substr(0, 40) : line) << '\n';
  {
    std::ofstream(ws.path("broken.jsonl")) << edited.str();
  }
  auto r = ws.run("align --corpus " + ws.path("broken.jsonl") + " --embeddings " + ws.path("emb.txt") +
                  " --out " + ws.path("broken.tsv"));
  CHECK(r.code == 0);
  CHECK(r.err.find("aligned 9/10") != std::string::npos);
  CHECK(r.err.find("line 4") != std::string::npos);
  CHECK(fs::exists(ws.path("broken.tsv")));
}

TEST_CASE("align and eval end to end") {
  const auto& ws = prepared();
  auto r = ws.run("align --corpus " + ws.path("corpus.jsonl") + " --embeddings " + ws.path("emb.txt") +
                  " --out " + ws.path("ours.tsv") + " --jobs 2 --dump-plans " + ws.path("plans"));
  REQUIRE(r.code == 0);
  CHECK(r.err.find("aligned 10/10") != std::string::npos);
  CHECK(fs::is_directory(ws.path("plans")));
  r = ws.run("align --method gc --corpus " + ws.path("corpus.jsonl") + " --out " + ws.path("gc.tsv"));
  REQUIRE(r.code == 0);
  CHECK(slurp(ws.path("gc.tsv")) != slurp(ws.path("ours.tsv")));

  r = ws.run("eval --system gold=" + ws.path("gold.tsv") + " --gold " + ws.path("gold.tsv"));
  REQUIRE(r.code == 0);
  CHECK(r.out.find("100.00") != std::string::npos);

  r = ws.run("eval --system ours=" + ws.path("ours.tsv") + " --system gc=" + ws.path("gc.tsv") +
             " --gold " + ws.path("gold.tsv"));
  REQUIRE(r.code == 0);
  std::istringstream table(r.out);
  std::string header, first, second;
  std::getline(table, header);
  std::getline(table, first);
  std::getline(table, second);
  CHECK(first.rfind("ours", 0) == 0);
  CHECK(second.rfind("gc", 0) == 0);

  r = ws.run("eval --json --system " + ws.path("ours.tsv") + " --gold " + ws.path("gold.tsv"));
  REQUIRE(r.code == 0);
  CHECK(r.out.find("\"overall\"") != std::string::npos);
}

TEST_CASE("align with corrupt embeddings fails") {
  const auto& ws = prepared();
  {
    std::ofstream(ws.path("corrupt.txt")) << "5 3\nen:a 1 2\n";
  }
  auto r = ws.run("align --corpus " + ws.path("corpus.jsonl") + " --embeddings " +
                  ws.path("corrupt.txt") + " --out " + ws.path("x.tsv"));
  CHECK(r.code == 2);
  CHECK_FALSE(fs::exists(ws.path("x.tsv")));
  r = ws.run("align --corpus " + ws.path("corpus.jsonl") + " --out " + ws.path("x.tsv"));
  CHECK(r.code == 1);  // emd needs embeddings
}

TEST_CASE("eval against the wrong gold is a data error") {
  const auto& ws = prepared();
  {
    std::ofstream(ws.path("other_gold.tsv")) << "zzz\t0\t0\n";
  }
  auto r = ws.run("eval --system " + ws.path("gold.tsv") + " --gold " + ws.path("other_gold.tsv"));
  CHECK(r.code == 2);
}

TEST_CASE("nn queries and lexicon accuracy") {
  const auto& ws = prepared();
  auto r = ws.run("nn --embeddings " + ws.path("emb.txt") + " --lexicon " + ws.path("lex.tsv") +
                  " --ks 1,5");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("top1\t") != std::string::npos);
  r = ws.run("nn --embeddings " + ws.path("emb.txt") + " --query en:s00001 --lang xx -k 3");
  CHECK(r.code == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 3);
  CHECK(r.out.find("xx:") == 0);
  r = ws.run("nn --embeddings " + ws.path("emb.txt") + " --query en:never-seen");
  CHECK(r.code == 2);
}
