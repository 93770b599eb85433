#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "lgp/ablate.hpp"
#include "lgp/error.hpp"
#include "lgp/lexicon.hpp"
#include "lgp/loss.hpp"
#include "lgp/pipeline.hpp"
#include "lgp/stats.hpp"

namespace lgp::cli {
namespace {

std::string one_line(std::string s) {
  for (char& c : s) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

std::set<std::string> split_list(const std::string& list) {
  std::set<std::string> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.insert(item);
  }
  return out;
}

struct BuildOptions {
  PipelineConfig config;
  std::vector<std::string> inputs;
  std::string output;
  std::uint64_t seed = 0;
  std::optional<double> min_density;
  std::vector<double> mlm_split{0.8, 0.1, 0.1};
  std::string exclude;
  bool no_mlm = false;
  bool keep_excluded = false;
  bool quiet = false;
};

struct StatsOptions {
  std::vector<std::string> files;
  double bucket = 1.0;
};

struct AblateOptions {
  std::string input;
  std::string output = "-";
  std::string field = "text";
  std::string remove;
  std::string mode = "delete";
  std::string lexicon = "builtin";
};

struct LossOptions {
  std::string file;
  double lambda = 0.8;
  double mlm_loss = 0.0;
  std::string reduction = "sum";
};

struct LexiconOptions {
  std::string action;
  std::string lexicon = "builtin";
};

int do_build(BuildOptions& o, CLI::App& cmd, std::ostream& out, std::ostream& err) {
  PipelineConfig& c = o.config;
  c.inputs.assign(o.inputs.begin(), o.inputs.end());
  c.output = o.output;
  if (cmd.count("--seed") > 0) c.seed = o.seed;
  c.filter.min_density = o.min_density;
  if (o.mlm_split.size() != 3) throw ConfigError("build", "--mlm-split takes three values");
  c.mask.mlm_mask = o.mlm_split[0];
  c.mask.mlm_random = o.mlm_split[1];
  c.mask.mlm_keep = o.mlm_split[2];
  c.mask.mask_excluded = !o.keep_excluded;
  c.mlm = !o.no_mlm;
  if (cmd.count("--exclude") > 0) c.exclusions = split_list(o.exclude);
  if (!o.quiet) c.progress = [&err](const std::string& msg) { err << "build: " << msg << '\n'; };
  const BuildSummary summary = run_build(c);
  out << summary.to_json().dump(2) << '\n';
  return kExitOk;
}

int do_stats(const StatsOptions& o, std::ostream& out) {
  CorpusReport total(o.bucket);
  for (const std::string& f : o.files) total.merge(report(std::filesystem::path(f), o.bucket));
  out << total.to_json().dump(2) << '\n';
  return kExitOk;
}

int do_ablate(const AblateOptions& o, std::ostream& out, std::ostream& err) {
  const RepairMode mode = [&] {
    if (o.mode == "delete") return RepairMode::kDeleteAndRepair;
    if (o.mode == "placeholder") return RepairMode::kPlaceholder;
    throw ConfigError("ablate", "--mode must be delete or placeholder");
  }();
  const AblationSpec spec = AblationSpec::parse(o.remove, mode);
  const IndicatorMatcher matcher(load_lexicon(o.lexicon));

  std::ifstream in(o.input, std::ios::binary);
  if (!in) throw Error("ablate", "cannot open " + o.input);
  std::ofstream file;
  std::ostream* sink = &out;
  if (o.output != "-") {
    file.open(o.output, std::ios::binary | std::ios::trunc);
    if (!file) throw Error("ablate", "cannot open " + o.output + " for writing");
    sink = &file;
  }

  std::array<std::size_t, kLexicalCategoryCount> totals{};
  std::size_t records = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::ordered_json record;
    try {
      record = nlohmann::ordered_json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("ablate", line_no, e.what());
    }
    if (!record.is_object() || !record.contains(o.field) || !record[o.field].is_string()) {
      throw ParseError("ablate", line_no, "record has no string field \"" + o.field + "\"");
    }
    const AblationResult r = ablate_text(record[o.field].get<std::string>(), matcher, spec);
    for (std::size_t c = 0; c < totals.size(); ++c) totals[c] += r.deletions[c];
    record[o.field] = r.text;
    *sink << record.dump() << '\n';
    ++records;
  }
  sink->flush();
  if (!*sink) throw Error("ablate", "write failed");

  nlohmann::ordered_json counts;
  counts["records"] = records;
  nlohmann::ordered_json deletions;
  std::size_t total = 0;
  for (std::size_t c = 0; c < totals.size(); ++c) {
    deletions[std::string(to_string(static_cast<Category>(c)))] = totals[c];
    total += totals[c];
  }
  deletions["total"] = total;
  counts["deletions"] = deletions;
  err << counts.dump() << '\n';
  return kExitOk;
}

std::vector<LcpSample> read_logits(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("loss", "cannot open " + path);
  std::vector<LcpSample> batch;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    LcpSample s;
    try {
      const auto j = nlohmann::json::parse(line);
      for (const auto& row : j.at("logits")) {
        if (!row.is_array() || row.size() != 6) {
          throw ParseError("loss", line_no, "every logit row needs exactly 6 numbers");
        }
        Logits l{};
        for (std::size_t k = 0; k < 6; ++k) l[k] = row[k].get<double>();
        s.logits.push_back(l);
      }
      s.gold = j.at("gold").get<std::vector<int>>();
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("loss", line_no, e.what());
    }
    if (s.logits.size() != s.gold.size()) {
      throw ParseError("loss", line_no, "logits and gold have different lengths");
    }
    batch.push_back(std::move(s));
  }
  return batch;
}

int do_loss(const LossOptions& o, std::ostream& out, std::ostream& err) {
  LossConfig config;
  config.lambda = o.lambda;
  if (o.reduction == "sum") {
    config.reduction = Reduction::kSum;
  } else if (o.reduction == "batch-mean") {
    config.reduction = Reduction::kBatchMean;
  } else {
    throw ConfigError("loss", "--reduction must be sum or batch-mean");
  }
  config.validate();
  const auto batch = read_logits(o.file);
  const LcpLoss lcp = lcp_loss(batch, config);
  if (lcp.empty_batch) err << "warning[loss]: no [LGMASK] rows in " << o.file << '\n';
  nlohmann::ordered_json j;
  j["lcp"] = lcp.value;
  j["mlm"] = o.mlm_loss;
  j["idol"] = idol_loss(lcp.value, o.mlm_loss, config);
  out << j.dump() << '\n';
  return kExitOk;
}

int do_lexicon(const LexiconOptions& o, std::ostream& out) {
  const Lexicon lexicon = load_lexicon(o.lexicon);
  if (o.action == "dump") {
    out << lexicon.dump();
  } else {
    nlohmann::ordered_json j;
    j["source"] = lexicon.source();
    j["entries"] = lexicon.size();
    nlohmann::ordered_json per;
    for (std::size_t c = 0; c < kLexicalCategoryCount; ++c) per[std::string(to_string(static_cast<Category>(c)))] = 0;
    for (const LexiconEntry& e : lexicon.entries()) {
      per[std::string(to_string(e.category))] = per[std::string(to_string(e.category))].get<int>() + 1;
    }
    j["per_category"] = per;
    out << j.dump() << '\n';
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Logic-indicator pre-training corpus toolkit", "lgp"};
  app.require_subcommand(1);
  app.set_config("--config", "", "INI-style configuration file; flags override its values");

  BuildOptions build;
  PipelineConfig& bc = build.config;
  auto* build_cmd = app.add_subcommand("build", "Build a masked pre-training dataset");
  build_cmd->add_option("inputs", build.inputs,
                        "Text files, .jsonl/.ndjson record files or directories")
      ->required();
  build_cmd->add_option("-o,--output", build.output, "Output records file")->required();
  build_cmd->add_option("--seed", build.seed, "Seed for all masking randomness (required)");
  build_cmd->add_option("--lexicon", bc.lexicon, "Lexicon file or 'builtin'")
      ->capture_default_str();
  build_cmd->add_option("-j,--workers", bc.workers, "Worker threads")
      ->envname("LGP_WORKERS")
      ->capture_default_str();
  build_cmd->add_option("--min-tokens", bc.filter.min_tokens, "Keep paragraphs with at least this many tokens")
      ->capture_default_str();
  build_cmd->add_option("--min-indicators", bc.filter.min_indicators,
                        "Keep paragraphs with at least this many non-excluded indicators")
      ->capture_default_str();
  build_cmd->add_option("--min-density", build.min_density,
                        "Keep paragraphs with at least this many indicators per 100 tokens");
  build_cmd->add_option("--exclude", build.exclude,
                        "Comma-separated phrases ignored by the filter (replaces the default set)");
  build_cmd->add_option("--p-lg", bc.mask.p_indicator, "Probability an indicator becomes [LGMASK]")
      ->capture_default_str();
  build_cmd->add_option("--p-lui", bc.mask.p_lui,
                        "Probability a non-indicator token becomes a LUI [LGMASK]")
      ->capture_default_str();
  build_cmd->add_option("--mlm-rate", bc.mask.mlm_rate, "MLM selection rate")->capture_default_str();
  build_cmd->add_option("--mlm-split", build.mlm_split, "MLM mask,random,keep split")
      ->expected(3)
      ->delimiter(',')
      ->capture_default_str();
  build_cmd->add_flag("--no-mlm", build.no_mlm, "Skip build-time MLM masking");
  build_cmd->add_flag("--keep-excluded", build.keep_excluded,
                      "Never mask excluded high-frequency indicators");
  build_cmd->add_flag("--wiki", bc.strip_markup, "Drop wiki-extraction markup lines");
  bc.progress_every = 10000;
  build_cmd->add_option("--progress-every", bc.progress_every, "Progress line every N paragraphs")
      ->capture_default_str();
  build_cmd->add_flag("-q,--quiet", build.quiet, "Suppress progress output");

  StatsOptions stats;
  auto* stats_cmd = app.add_subcommand("stats", "Report corpus statistics for record files");
  stats_cmd->add_option("files", stats.files, "Record files (merged into one report)")->required();
  stats_cmd->add_option("--hist-bucket", stats.bucket, "Density histogram bucket width")
      ->capture_default_str();

  AblateOptions ablate;
  auto* ablate_cmd = app.add_subcommand("ablate", "Remove indicator categories from text records");
  ablate_cmd->add_option("input", ablate.input, "Line-delimited JSON records")->required();
  ablate_cmd->add_option("-o,--output", ablate.output, "Output file ('-' for stdout)")
      ->capture_default_str();
  ablate_cmd->add_option("--field", ablate.field, "Name of the text field")->capture_default_str();
  ablate_cmd->add_option("--remove", ablate.remove, "Categories: pmi,cli,nti,ati,cni or all")
      ->required();
  ablate_cmd->add_option("--mode", ablate.mode, "delete or placeholder")
      ->check(CLI::IsMember({"delete", "placeholder"}))
      ->capture_default_str();
  ablate_cmd->add_option("--lexicon", ablate.lexicon, "Lexicon file or 'builtin'")
      ->capture_default_str();

  LossOptions loss;
  auto* loss_cmd = app.add_subcommand("loss", "Evaluate the LCP and combined losses on logits");
  loss_cmd->add_option("file", loss.file, "Line-delimited {\"logits\": [[6]...], \"gold\": [...]}")
      ->required();
  loss_cmd->add_option("--lambda", loss.lambda, "Weight of the LCP loss")->capture_default_str();
  loss_cmd->add_option("--mlm-loss", loss.mlm_loss, "MLM loss to combine with")
      ->capture_default_str();
  loss_cmd->add_option("--reduction", loss.reduction, "sum or batch-mean")
      ->check(CLI::IsMember({"sum", "batch-mean"}))
      ->capture_default_str();

  LexiconOptions lex;
  auto* lex_cmd = app.add_subcommand("lexicon", "Inspect indicator lexicons");
  lex_cmd->add_option("action", lex.action, "dump | check")
      ->required()
      ->check(CLI::IsMember({"dump", "check"}));
  lex_cmd->add_option("--lexicon", lex.lexicon, "Lexicon file or 'builtin'")->capture_default_str();

  std::vector<const char*> argv{"lgp"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage[cli]: " << one_line(e.what()) << '\n';
    return kExitUsage;
  }

  try {
    if (*build_cmd) return do_build(build, *build_cmd, out, err);
    if (*stats_cmd) return do_stats(stats, out);
    if (*ablate_cmd) return do_ablate(ablate, out, err);
    if (*loss_cmd) return do_loss(loss, out, err);
    if (*lex_cmd) return do_lexicon(lex, out);
  } catch (const lgp::Error& e) {
    err << "error[" << e.module() << "]: " << one_line(e.what()) << '\n';
    return kExitRuntime;
  } catch (const std::exception& e) {
    err << "error[internal]: " << one_line(e.what()) << '\n';
    return kExitRuntime;
  }
  err << "usage[cli]: no subcommand given\n";
  return kExitUsage;
}

}  // namespace lgp::cli
