#include "lgp/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <unordered_set>

#include "lgp/error.hpp"
#include "lgp/lexicon.hpp"
#include "lgp/parallel.hpp"

namespace lgp {
namespace {

struct KeptParagraph {
  TokenizedParagraph paragraph;
  std::vector<IndicatorMatch> matches;
};

struct DocumentResult {
  std::vector<KeptParagraph> kept;
  std::size_t paragraphs = 0;
  std::size_t too_short = 0;
  std::size_t too_few = 0;
  std::size_t too_sparse = 0;
};

std::vector<std::string> build_vocabulary(const std::vector<DocumentResult>& docs) {
  std::unordered_set<std::string_view> seen;
  for (const DocumentResult& d : docs) {
    for (const KeptParagraph& k : d.kept) {
      for (std::size_t i = 0; i < k.paragraph.size(); ++i) seen.insert(k.paragraph.surface(i));
    }
  }
  std::vector<std::string> vocabulary(seen.begin(), seen.end());
  std::sort(vocabulary.begin(), vocabulary.end());
  return vocabulary;
}

}  // namespace

void PipelineConfig::validate() const {
  if (!seed) throw ConfigError("build", "a seed is required (--seed)");
  if (output.empty()) throw ConfigError("build", "an output path is required");
  if (workers < 1) throw ConfigError("build", "worker count must be at least 1");
  filter.validate();
  mask.validate();
}

nlohmann::ordered_json BuildSummary::to_json() const {
  nlohmann::ordered_json j;
  j["documents"] = documents;
  j["paragraphs"] = paragraphs;
  nlohmann::ordered_json dropped;
  dropped["too_short"] = dropped_too_short;
  dropped["too_few_indicators"] = dropped_too_few_indicators;
  dropped["too_sparse"] = dropped_too_sparse;
  j["dropped"] = dropped;
  j["records"] = records;
  j["input_bytes"] = input_bytes;
  j["elapsed_seconds"] = elapsed_seconds;
  return j;
}

BuildSummary run_build(const PipelineConfig& config) {
  const auto started = std::chrono::steady_clock::now();
  config.validate();

  Lexicon lexicon = load_lexicon(config.lexicon);
  if (config.exclusions) lexicon.set_exclusions(*config.exclusions);
  const IndicatorMatcher matcher(lexicon);

  MaskPolicy policy = config.mask;
  policy.seed = *config.seed;
  if (!config.mlm) policy.mlm_rate = 0.0;

  std::vector<SourceDocument> documents;
  for (const auto& input : config.inputs) {
    auto docs = read_sources(input);
    std::move(docs.begin(), docs.end(), std::back_inserter(documents));
  }

  BuildSummary summary;
  summary.documents = documents.size();
  for (const SourceDocument& d : documents) summary.input_bytes += d.text.size();

  std::vector<DocumentResult> results(documents.size());
  parallel_for(documents.size(), config.workers, [&](std::size_t i) {
    SourceDocument& doc = documents[i];
    if (config.strip_markup) doc.text = strip_wiki_markup(doc.text);
    DocumentResult& r = results[i];
    for (TokenizedParagraph& p : split_paragraphs(doc)) {
      ++r.paragraphs;
      std::vector<IndicatorMatch> matches = matcher.find(p);
      switch (evaluate_paragraph(p, matches, config.filter)) {
        case DropReason::kKept:
          r.kept.push_back({std::move(p), std::move(matches)});
          break;
        case DropReason::kTooShort: ++r.too_short; break;
        case DropReason::kTooFewIndicators: ++r.too_few; break;
        case DropReason::kTooSparse: ++r.too_sparse; break;
      }
    }
    std::string().swap(doc.text);
  });

  std::vector<const KeptParagraph*> kept;
  for (const DocumentResult& r : results) {
    summary.paragraphs += r.paragraphs;
    summary.dropped_too_short += r.too_short;
    summary.dropped_too_few_indicators += r.too_few;
    summary.dropped_too_sparse += r.too_sparse;
    for (const KeptParagraph& k : r.kept) kept.push_back(&k);
  }

  std::vector<std::string> vocabulary;
  if (policy.mlm_rate > 0.0 && policy.mlm_random > 0.0) vocabulary = build_vocabulary(results);

  std::vector<std::pair<std::uint64_t, std::string>> records(kept.size());
  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;
  parallel_for(kept.size(), config.workers, [&](std::size_t i) {
    const KeptParagraph& k = *kept[i];
    const MaskedSample sample = mask_paragraph(k.paragraph, k.matches, policy, vocabulary);
    records[i].first = sample.paragraph_id;
    append_record(sample, records[i].second);
    const std::size_t n = ++done;
    if (config.progress && config.progress_every && n % config.progress_every == 0) {
      std::lock_guard lock(progress_mutex);
      config.progress("masked " + std::to_string(n) + "/" + std::to_string(kept.size()) +
                      " paragraphs");
    }
  });

  summary.records = emit_records(std::move(records), config.output);
  summary.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return summary;
}

}  // namespace lgp
