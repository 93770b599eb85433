#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lgp/category.hpp"
#include "lgp/lexicon.hpp"
#include "lgp/text.hpp"

namespace lgp {

inline constexpr std::string_view kLgMaskToken = "[LGMASK]";
inline constexpr std::string_view kMaskToken = "[MASK]";

struct MaskPolicy {
  double p_indicator = 0.70;  // indicator occurrence -> [LGMASK]
  double p_lui = 0.006;       // non-indicator token -> [LGMASK] labelled LUI
  double mlm_rate = 0.15;
  double mlm_mask = 0.8;  // split of MLM-selected positions
  double mlm_random = 0.1;
  double mlm_keep = 0.1;
  std::uint64_t seed = 0;
  // When false, matches of excluded high-frequency phrases are left alone
  // (they still count as indicator tokens and are never LUI candidates).
  bool mask_excluded = true;

  void validate() const;
};

struct LcpLabel {
  std::size_t position = 0;
  Category category = Category::kPmi;
  friend bool operator==(const LcpLabel&, const LcpLabel&) = default;
};

struct MlmLabel {
  std::size_t position = 0;
  std::string original;
  friend bool operator==(const MlmLabel&, const MlmLabel&) = default;
};

struct Provenance {
  std::size_t position = 0;
  std::string original;  // the masked phrase or token, as written
  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct MaskedSample {
  std::uint64_t paragraph_id = 0;
  std::vector<std::string> tokens;
  std::vector<LcpLabel> lcp;         // sorted by position
  std::vector<MlmLabel> mlm;         // sorted by position
  std::vector<Provenance> provenance;  // one per lcp label, same positions
  // Audit counters for rate estimation.
  std::array<std::uint32_t, kLexicalCategoryCount> occurrences{};  // maskable matches
  std::uint32_t lui_pool = 0;       // tokens eligible for the LUI draw
  std::uint32_t source_tokens = 0;  // token count before masking

  friend bool operator==(const MaskedSample&, const MaskedSample&) = default;
};

// Applies the indicator, LUI and MLM channels. `vocabulary` feeds the MLM
// random-replacement branch; when empty that branch keeps the original.
MaskedSample mask_paragraph(const TokenizedParagraph& paragraph,
                            std::span<const IndicatorMatch> matches,
                            const MaskPolicy& policy,
                            std::span<const std::string> vocabulary = {});

// Checks the label/token invariants of a sample; throws IntegrityError.
void check_sample(const MaskedSample& sample);

// Record line format (no trailing newline):
// {"pid":..,"tokens":[..],"lcp":[[pos,code]..],"mlm":[[pos,"orig"]..],
//  "prov":[[pos,"orig"]..],"occ":[5 ints],"pool":n,"len":n}
std::string to_record(const MaskedSample& sample);
void append_record(const MaskedSample& sample, std::string& out);

// Parses and integrity-checks one record line. "prov", "occ", "pool" and
// "len" are optional. Throws ParseError tagged with `line_number`.
MaskedSample parse_record(std::string_view line, std::size_t line_number = 0);

// Writes one line per sample ordered by paragraph id and returns the count.
std::size_t emit_samples(std::vector<MaskedSample> samples,
                         const std::filesystem::path& output);

// Writes pre-serialized (paragraph id, record) pairs in the same order.
std::size_t emit_records(std::vector<std::pair<std::uint64_t, std::string>> records,
                         const std::filesystem::path& output);

std::vector<MaskedSample> read_samples(const std::filesystem::path& input);

}  // namespace lgp
