#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"
#include "lgp/lexicon.hpp"
#include "test_support.hpp"

using lgp::testing::read_text;
using lgp::testing::TempDir;
using lgp::testing::write_text;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = lgp::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture() { return lgp::testing::fixture_dir().string(); }

bool single_prefixed_line(const std::string& s, const std::string& prefix) {
  return s.rfind(prefix, 0) == 0 && s.find('\n') == s.size() - 1;
}

}  // namespace

TEST_CASE("lexicon dump prints the builtin lexicon in its file format") {
  const Result r = run({"lexicon", "dump"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  const lgp::Lexicon parsed = lgp::Lexicon::parse(in, "dump");
  const lgp::Lexicon builtin = lgp::Lexicon::builtin();
  CHECK(parsed.size() == builtin.size());
  CHECK(parsed.entries() == builtin.entries());

  const Result check = run({"lexicon", "check"});
  CHECK(check.code == 0);
  CHECK(check.out.find("139") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
  Result r = run({"frobnicate"});
  CHECK(r.code == 2);
  CHECK(single_prefixed_line(r.err, "usage[cli]: "));
  r = run({});
  CHECK(r.code == 2);
  r = run({"build", "--no-such-flag"});
  CHECK(r.code == 2);
  r = run({"ablate", "-", "--remove", "pmi", "--mode", "sideways"});
  CHECK(r.code == 2);
}

TEST_CASE("help prints flag documentation and succeeds") {
  Result r = run({"--help"});
  CHECK(r.code == 0);
  for (const char* sub : {"build", "stats", "ablate", "loss", "lexicon"}) {
    CHECK(r.out.find(sub) != std::string::npos);
  }
  r = run({"build", "--help"});
  CHECK(r.code == 0);
  for (const char* flag : {"--seed", "--output", "--workers", "--p-lg", "--p-lui", "--mlm-rate",
                           "--min-tokens", "--quiet", "--progress-every", "--lexicon"}) {
    CHECK(r.out.find(flag) != std::string::npos);
  }
}

TEST_CASE("runtime errors carry a module prefix and exit with code 1") {
  TempDir dir;
  Result r = run({"build", fixture(), "-o", (dir / "x.jsonl").string(), "--seed", "1",
                  "--p-lg", "1.2"});
  CHECK(r.code == 1);
  CHECK(single_prefixed_line(r.err, "error[masker]: "));
  CHECK_FALSE(std::filesystem::exists(dir / "x.jsonl"));

  r = run({"build", fixture(), "-o", (dir / "x.jsonl").string()});
  CHECK(r.code == 1);
  CHECK(single_prefixed_line(r.err, "error[build]: "));

  write_text(dir / "bad.jsonl", "{\"pid\":1,\"tokens\":[],\"lcp\":[],\"mlm\":[]}\nnope\n");
  r = run({"stats", (dir / "bad.jsonl").string()});
  CHECK(r.code == 1);
  CHECK(r.err.rfind("error[", 0) == 0);
  CHECK(r.err.find("line 2") != std::string::npos);

  r = run({"lexicon", "check", "--lexicon", (dir / "missing.tsv").string()});
  CHECK(r.code == 1);
  CHECK(r.err.rfind("error[lexicon]: ", 0) == 0);
}

TEST_CASE("stats on the fixture build matches frozen counts") {
  TempDir dir;
  const std::string out = (dir / "fixture.jsonl").string();
  const Result b = run({"build", fixture(), "-o", out, "--seed", "42", "-q"});
  REQUIRE(b.code == 0);
  const auto summary = nlohmann::json::parse(b.out);
  CHECK(summary["records"] == 170);
  CHECK(summary["paragraphs"] == 200);
  CHECK(b.err.empty());

  const Result s = run({"stats", out});
  REQUIRE(s.code == 0);
  const auto j = nlohmann::json::parse(s.out);
  // Recounted from the output file by a separate script.
  CHECK(j["samples"] == 170);
  CHECK(j["tokens"] == 10554);
  CHECK(j["source_tokens"] == 10847);
  CHECK(j["lgmask"]["PMI"] == 88);
  CHECK(j["lgmask"]["CLI"] == 42);
  CHECK(j["lgmask"]["NTI"] == 52);
  CHECK(j["lgmask"]["ATI"] == 130);
  CHECK(j["lgmask"]["CNI"] == 159);
  CHECK(j["lgmask"]["LUI"] == 53);
  CHECK(j["lgmask"]["total"] == 524);
  CHECK(j["indicator_occurrences"]["total"] == 691);
  CHECK(j["rates"]["lui"]["trials"] == 9721);
  CHECK(j["mlm"]["labels"] == 1408);
  CHECK(j["mlm"]["eligible"] == 10030);

  std::vector<std::string> keys;
  const auto ordered = nlohmann::ordered_json::parse(s.out);
  for (const auto& [k, v] : ordered.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"samples", "tokens", "source_tokens", "lgmask",
                                         "indicator_occurrences", "rates", "mlm",
                                         "density_histogram"});

  const Result wide = run({"stats", out, "--hist-bucket", "5"});
  CHECK(nlohmann::json::parse(wide.out)["density_histogram"]["bucket_width"] == 5.0);
}

TEST_CASE("loss prints the three values") {
  TempDir dir;
  write_text(dir / "logits.jsonl",
             "{\"logits\":[[0,0,0,0,0,0],[0,0,0,0,0,0]],\"gold\":[0,4]}\n");
  const Result r = run({"loss", "--lambda", "0.8", "--mlm-loss", "1.0",
                        (dir / "logits.jsonl").string()});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(std::abs(j["lcp"].get<double>() - std::log(6.0)) < 1e-9);
  CHECK(j["mlm"].get<double>() == 1.0);
  CHECK(std::abs(j["idol"].get<double>() - (0.8 * std::log(6.0) + 0.2 * 1.0)) < 1e-9);

  write_text(dir / "empty.jsonl", "");
  const Result e = run({"loss", (dir / "empty.jsonl").string()});
  CHECK(e.code == 0);
  CHECK(e.err.find("warning[loss]") != std::string::npos);

  const Result bad = run({"loss", "--lambda", "1.5", (dir / "logits.jsonl").string()});
  CHECK(bad.code == 1);
  CHECK(bad.err.rfind("error[loss]: ", 0) == 0);
}

TEST_CASE("ablate rewrites the text field and reports deletions") {
  TempDir dir;
  write_text(dir / "in.jsonl",
             "{\"id\":1,\"text\":\"Tom no longer likes hamburgers.\"}\n"
             "{\"id\":2,\"text\":\"The sky is blue today.\"}\n");
  const std::string out = (dir / "out.jsonl").string();
  const Result r = run({"ablate", (dir / "in.jsonl").string(), "-o", out, "--remove", "nti"});
  REQUIRE(r.code == 0);
  std::istringstream lines(read_text(out));
  std::string line;
  std::getline(lines, line);
  CHECK(nlohmann::json::parse(line)["text"] == "Tom likes hamburgers.");
  CHECK(nlohmann::json::parse(line)["id"] == 1);
  std::getline(lines, line);
  CHECK(nlohmann::json::parse(line)["text"] == "The sky is blue today.");
  const auto counts = nlohmann::json::parse(r.err);
  CHECK(counts["records"] == 2);
  CHECK(counts["deletions"]["NTI"] == 1);
  CHECK(counts["deletions"]["total"] == 1);

  const Result lui = run({"ablate", (dir / "in.jsonl").string(), "-o", out, "--remove", "lui"});
  CHECK(lui.code != 0);
}

TEST_CASE("config file values sit between defaults and flags") {
  TempDir dir;
  const std::string fx = fixture();
  auto build = [&](const std::string& name, std::vector<std::string> extra) {
    std::vector<std::string> args = {"build", fx, "-o", (dir / name).string(), "-q"};
    args.insert(args.end(), extra.begin(), extra.end());
    const Result r = run(args);
    REQUIRE(r.code == 0);
    return lgp::testing::fnv1a(read_text(dir / name));
  };
  write_text(dir / "lgp.ini", "[build]\nseed = 7\np-lg = 0.5\n");
  const std::string config = (dir / "lgp.ini").string();

  const auto from_flags = build("a.jsonl", {"--seed", "7", "--p-lg", "0.5"});
  std::vector<std::string> with_config = {"--config", config};
  with_config.insert(with_config.end(), {"build", fx, "-o", (dir / "b.jsonl").string(), "-q"});
  REQUIRE(run(with_config).code == 0);
  CHECK(lgp::testing::fnv1a(read_text(dir / "b.jsonl")) == from_flags);

  with_config = {"--config", config, "build", fx, "-o", (dir / "c.jsonl").string(), "-q",
                 "--p-lg", "0.7"};
  REQUIRE(run(with_config).code == 0);
  const auto defaults = build("d.jsonl", {"--seed", "7"});
  CHECK(lgp::testing::fnv1a(read_text(dir / "c.jsonl")) == defaults);
  CHECK(defaults != from_flags);
}

TEST_CASE("worker count can come from the environment") {
  TempDir dir;
  ::setenv("LGP_WORKERS", "0", 1);
  const Result r = run({"build", fixture(), "-o", (dir / "x.jsonl").string(), "--seed", "1", "-q"});
  ::unsetenv("LGP_WORKERS");
  CHECK(r.code == 1);
  ::setenv("LGP_WORKERS", "4", 1);
  const Result ok = run({"build", fixture(), "-o", (dir / "y.jsonl").string(), "--seed", "1", "-q"});
  ::unsetenv("LGP_WORKERS");
  CHECK(ok.code == 0);
}
