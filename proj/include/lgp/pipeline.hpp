#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "lgp/ingest.hpp"
#include "lgp/masker.hpp"

namespace lgp {

struct PipelineConfig {
  std::vector<std::filesystem::path> inputs;
  std::filesystem::path output;
  std::string lexicon = "builtin";
  std::optional<std::set<std::string>> exclusions;  // overrides the default set
  FilterPolicy filter;
  MaskPolicy mask;
  std::optional<std::uint64_t> seed;  // required; copied into mask.seed
  std::size_t workers = 1;
  bool strip_markup = false;
  bool mlm = true;  // false zeroes the MLM rate
  std::size_t progress_every = 0;  // 0 disables progress lines
  std::function<void(const std::string&)> progress;

  // Throws ConfigError. Performs no I/O.
  void validate() const;
};

struct BuildSummary {
  std::size_t documents = 0;
  std::size_t paragraphs = 0;
  std::size_t dropped_too_short = 0;
  std::size_t dropped_too_few_indicators = 0;
  std::size_t dropped_too_sparse = 0;
  std::size_t records = 0;
  std::size_t input_bytes = 0;
  double elapsed_seconds = 0.0;

  nlohmann::ordered_json to_json() const;
};

// ingest -> filter -> match -> mask -> emit. Output records are sorted by
// paragraph id, so the file is identical for any worker count.
BuildSummary run_build(const PipelineConfig& config);

}  // namespace lgp
