#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <string>

#include "json.hpp"

#include "lgp/category.hpp"
#include "lgp/masker.hpp"

namespace lgp {

struct RateEstimate {
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;

  double rate() const noexcept;
  double std_error() const noexcept;  // binomial, from the observed rate
};

// Corpus-level counts. Every field is an exact integer tally, so reports
// over shards merge into exactly the sequential result.
class CorpusReport {
 public:
  explicit CorpusReport(double bucket_width = 1.0);

  void add(const MaskedSample& sample);
  void merge(const CorpusReport& other);

  std::uint64_t samples = 0;
  std::uint64_t tokens = 0;         // tokens after masking
  std::uint64_t source_tokens = 0;  // tokens before masking
  std::array<std::uint64_t, kCategoryCount> lgmask{};
  std::array<std::uint64_t, kLexicalCategoryCount> occurrences{};
  std::uint64_t lui_pool = 0;
  std::uint64_t mlm_labels = 0;
  std::uint64_t mlm_eligible = 0;
  std::uint64_t mlm_masked = 0;   // label position holds [MASK]
  std::uint64_t mlm_kept = 0;     // label position holds the original
  std::uint64_t mlm_replaced = 0; // anything else
  // bucket index -> samples; density = occurrences per 100 source tokens
  std::map<std::int64_t, std::uint64_t> density_histogram;

  double bucket_width() const noexcept { return bucket_width_; }
  std::uint64_t lgmask_total() const noexcept;
  RateEstimate indicator_rate() const noexcept;
  RateEstimate lui_rate() const noexcept;
  RateEstimate mlm_rate() const noexcept;

  // Stable key order.
  nlohmann::ordered_json to_json() const;

  bool operator==(const CorpusReport& other) const = default;

 private:
  double bucket_width_;
};

// Scans a record file once. Any malformed line rejects the whole file with
// a ParseError naming the 1-based line number.
CorpusReport report(std::istream& in, double bucket_width = 1.0);
CorpusReport report(const std::filesystem::path& dataset, double bucket_width = 1.0);

}  // namespace lgp
