#include "lgp/stats.hpp"

#include <cmath>
#include <fstream>
#include <numeric>

#include "lgp/error.hpp"

namespace lgp {
namespace {

nlohmann::ordered_json rate_json(const RateEstimate& r) {
  nlohmann::ordered_json j;
  j["successes"] = r.successes;
  j["trials"] = r.trials;
  j["rate"] = r.rate();
  j["std_error"] = r.std_error();
  const double half = 1.959963984540054 * r.std_error();
  j["ci95"] = {std::max(0.0, r.rate() - half), std::min(1.0, r.rate() + half)};
  return j;
}

}  // namespace

double RateEstimate::rate() const noexcept {
  return trials == 0 ? 0.0 : static_cast<double>(successes) / static_cast<double>(trials);
}

double RateEstimate::std_error() const noexcept {
  if (trials == 0) return 0.0;
  const double p = rate();
  return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

CorpusReport::CorpusReport(double bucket_width) : bucket_width_(bucket_width) {
  if (!std::isfinite(bucket_width) || bucket_width <= 0.0) {
    throw ConfigError("stats", "histogram bucket width must be positive");
  }
}

void CorpusReport::add(const MaskedSample& s) {
  ++samples;
  tokens += s.tokens.size();
  const std::uint64_t before = s.source_tokens ? s.source_tokens : s.tokens.size();
  source_tokens += before;
  for (const LcpLabel& l : s.lcp) ++lgmask[static_cast<std::size_t>(l.category)];
  std::uint64_t occurring = 0;
  for (std::size_t c = 0; c < kLexicalCategoryCount; ++c) {
    occurrences[c] += s.occurrences[c];
    occurring += s.occurrences[c];
  }
  lui_pool += s.lui_pool;
  mlm_labels += s.mlm.size();
  mlm_eligible += s.tokens.size() - s.lcp.size();
  for (const MlmLabel& l : s.mlm) {
    const std::string& now = s.tokens[l.position];
    if (now == kMaskToken) {
      ++mlm_masked;
    } else if (now == l.original) {
      ++mlm_kept;
    } else {
      ++mlm_replaced;
    }
  }
  const double density =
      before == 0 ? 0.0 : 100.0 * static_cast<double>(occurring) / static_cast<double>(before);
  ++density_histogram[static_cast<std::int64_t>(std::floor(density / bucket_width_))];
}

void CorpusReport::merge(const CorpusReport& o) {
  if (o.bucket_width_ != bucket_width_) {
    throw ConfigError("stats", "cannot merge reports with different bucket widths");
  }
  samples += o.samples;
  tokens += o.tokens;
  source_tokens += o.source_tokens;
  for (std::size_t c = 0; c < kCategoryCount; ++c) lgmask[c] += o.lgmask[c];
  for (std::size_t c = 0; c < kLexicalCategoryCount; ++c) occurrences[c] += o.occurrences[c];
  lui_pool += o.lui_pool;
  mlm_labels += o.mlm_labels;
  mlm_eligible += o.mlm_eligible;
  mlm_masked += o.mlm_masked;
  mlm_kept += o.mlm_kept;
  mlm_replaced += o.mlm_replaced;
  for (const auto& [bucket, count] : o.density_histogram) density_histogram[bucket] += count;
}

std::uint64_t CorpusReport::lgmask_total() const noexcept {
  return std::accumulate(lgmask.begin(), lgmask.end(), std::uint64_t{0});
}

RateEstimate CorpusReport::indicator_rate() const noexcept {
  return {lgmask_total() - lgmask[static_cast<std::size_t>(Category::kLui)],
          std::accumulate(occurrences.begin(), occurrences.end(), std::uint64_t{0})};
}

RateEstimate CorpusReport::lui_rate() const noexcept {
  return {lgmask[static_cast<std::size_t>(Category::kLui)], lui_pool};
}

RateEstimate CorpusReport::mlm_rate() const noexcept { return {mlm_labels, mlm_eligible}; }

nlohmann::ordered_json CorpusReport::to_json() const {
  nlohmann::ordered_json j;
  j["samples"] = samples;
  j["tokens"] = tokens;
  j["source_tokens"] = source_tokens;

  nlohmann::ordered_json masks;
  for (Category c : kAllCategories) masks[std::string(to_string(c))] = lgmask[code(c)];
  masks["total"] = lgmask_total();
  j["lgmask"] = masks;

  nlohmann::ordered_json occ;
  std::uint64_t occ_total = 0;
  for (std::size_t c = 0; c < kLexicalCategoryCount; ++c) {
    occ[std::string(to_string(static_cast<Category>(c)))] = occurrences[c];
    occ_total += occurrences[c];
  }
  occ["total"] = occ_total;
  j["indicator_occurrences"] = occ;

  nlohmann::ordered_json rates;
  rates["indicator"] = rate_json(indicator_rate());
  rates["lui"] = rate_json(lui_rate());
  rates["mlm"] = rate_json(mlm_rate());
  j["rates"] = rates;

  nlohmann::ordered_json mlm;
  mlm["labels"] = mlm_labels;
  mlm["eligible"] = mlm_eligible;
  mlm["masked"] = mlm_masked;
  mlm["random"] = mlm_replaced;
  mlm["kept"] = mlm_kept;
  j["mlm"] = mlm;

  nlohmann::ordered_json hist;
  hist["bucket_width"] = bucket_width_;
  hist["unit"] = "indicators per 100 tokens";
  auto buckets = nlohmann::ordered_json::array();
  for (const auto& [bucket, count] : density_histogram) {
    nlohmann::ordered_json b;
    b["lo"] = static_cast<double>(bucket) * bucket_width_;
    b["hi"] = static_cast<double>(bucket + 1) * bucket_width_;
    b["count"] = count;
    buckets.push_back(std::move(b));
  }
  hist["buckets"] = std::move(buckets);
  j["density_histogram"] = std::move(hist);
  return j;
}

CorpusReport report(std::istream& in, double bucket_width) {
  CorpusReport r(bucket_width);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    r.add(parse_record(line, line_no));
  }
  if (in.bad()) throw Error("stats", "read failure after line " + std::to_string(line_no));
  return r;
}

CorpusReport report(const std::filesystem::path& dataset, double bucket_width) {
  std::ifstream in(dataset, std::ios::binary);
  if (!in) throw Error("stats", "cannot open " + dataset.string());
  return report(in, bucket_width);
}

}  // namespace lgp
