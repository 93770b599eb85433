#include "lgp/masker.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "json.hpp"
#include "lgp/error.hpp"
#include "lgp/rng.hpp"

namespace lgp {
namespace {

bool is_probability(double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; }

void check_matches(const TokenizedParagraph& paragraph, std::span<const IndicatorMatch> matches) {
  std::size_t previous_end = 0;
  for (const IndicatorMatch& m : matches) {
    if (m.token_begin >= m.token_end || m.token_end > paragraph.size()) {
      throw IntegrityError("masker", "match '" + m.phrase + "' has token span [" +
                                         std::to_string(m.token_begin) + ", " +
                                         std::to_string(m.token_end) + ") outside paragraph of " +
                                         std::to_string(paragraph.size()) + " tokens");
    }
    if (m.token_begin < previous_end) {
      throw IntegrityError("masker", "matches overlap or are unsorted at token " +
                                         std::to_string(m.token_begin));
    }
    if (!is_lexical(m.category)) {
      throw IntegrityError("masker", "match '" + m.phrase + "' carries the LUI category");
    }
    previous_end = m.token_end;
  }
}

void append_escaped(std::string_view s, std::string& out) {
  static constexpr char kHex[] = "0123456789abcdef";
  out.push_back('"');
  for (char ch : s) {
    const auto c = static_cast<unsigned char>(ch);
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      default:
        if (c < 0x20) {
          out += "\\u00";
          out.push_back(kHex[c >> 4]);
          out.push_back(kHex[c & 0xF]);
        } else {
          out.push_back(ch);
        }
    }
  }
  out.push_back('"');
}

template <typename T>
T get_field(const nlohmann::json& j, const char* key, std::size_t line) {
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError("record", line, std::string("missing \"") + key + "\"");
  try {
    return it->get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError("record", line, std::string("field \"") + key + "\" has the wrong type");
  }
}

}  // namespace

void MaskPolicy::validate() const {
  const std::pair<const char*, double> probabilities[] = {
      {"p_indicator", p_indicator}, {"p_lui", p_lui},           {"mlm_rate", mlm_rate},
      {"mlm_mask", mlm_mask},       {"mlm_random", mlm_random}, {"mlm_keep", mlm_keep}};
  for (const auto& [name, p] : probabilities) {
    if (!is_probability(p)) {
      throw ConfigError("masker", std::string(name) + " must lie in [0, 1], got " +
                                      std::to_string(p));
    }
  }
  if (std::abs(mlm_mask + mlm_random + mlm_keep - 1.0) > 1e-9) {
    throw ConfigError("masker", "MLM split (mask, random, keep) must sum to 1");
  }
}

MaskedSample mask_paragraph(const TokenizedParagraph& paragraph,
                            std::span<const IndicatorMatch> matches, const MaskPolicy& policy,
                            std::span<const std::string> vocabulary) {
  policy.validate();
  check_matches(paragraph, matches);

  MaskedSample sample;
  sample.paragraph_id = paragraph.id;
  sample.source_tokens = static_cast<std::uint32_t>(paragraph.size());
  sample.tokens.reserve(paragraph.size());

  const CounterRng indicator_rng(policy.seed, paragraph.id, Channel::kIndicator);
  const CounterRng lui_rng(policy.seed, paragraph.id, Channel::kLui);

  std::vector<bool> lgmask;
  lgmask.reserve(paragraph.size());
  auto push_lgmask = [&](Category category, std::string original) {
    const std::size_t pos = sample.tokens.size();
    sample.tokens.emplace_back(kLgMaskToken);
    sample.lcp.push_back({pos, category});
    sample.provenance.push_back({pos, std::move(original)});
    lgmask.push_back(true);
  };

  std::size_t k = 0;
  std::size_t i = 0;
  while (i < paragraph.size()) {
    if (k < matches.size() && matches[k].token_begin == i) {
      const IndicatorMatch& m = matches[k];
      const bool maskable = !m.excluded || policy.mask_excluded;
      bool selected = false;
      if (maskable) {
        ++sample.occurrences[static_cast<std::size_t>(m.category)];
        selected = indicator_rng.bernoulli(k, policy.p_indicator);
      }
      if (selected) {
        push_lgmask(m.category, paragraph.text.substr(m.char_begin, m.char_end - m.char_begin));
      } else {
        for (std::size_t t = m.token_begin; t < m.token_end; ++t) {
          sample.tokens.emplace_back(paragraph.surface(t));
          lgmask.push_back(false);
        }
      }
      i = m.token_end;
      ++k;
      continue;
    }
    ++sample.lui_pool;
    if (lui_rng.bernoulli(i, policy.p_lui)) {
      push_lgmask(Category::kLui, std::string(paragraph.surface(i)));
    } else {
      sample.tokens.emplace_back(paragraph.surface(i));
      lgmask.push_back(false);
    }
    ++i;
  }

  if (policy.mlm_rate > 0.0) {
    const CounterRng select_rng(policy.seed, paragraph.id, Channel::kMlmSelect);
    const CounterRng split_rng(policy.seed, paragraph.id, Channel::kMlmSplit);
    const CounterRng random_rng(policy.seed, paragraph.id, Channel::kMlmRandom);
    for (std::size_t pos = 0; pos < sample.tokens.size(); ++pos) {
      if (lgmask[pos] || !select_rng.bernoulli(pos, policy.mlm_rate)) continue;
      std::string& token = sample.tokens[pos];
      sample.mlm.push_back({pos, token});
      const double u = split_rng.uniform(pos);
      if (u < policy.mlm_mask) {
        token = kMaskToken;
      } else if (u < policy.mlm_mask + policy.mlm_random && !vocabulary.empty()) {
        token = vocabulary[random_rng.below(pos, vocabulary.size())];
      }
    }
  }
  return sample;
}

void check_sample(const MaskedSample& s) {
  const std::size_t n = s.tokens.size();
  std::vector<bool> labelled(n, false);
  std::size_t last = 0;
  for (std::size_t j = 0; j < s.lcp.size(); ++j) {
    const LcpLabel& l = s.lcp[j];
    if (l.position >= n) throw IntegrityError("masker", "lcp label position out of range");
    if (j > 0 && l.position <= last) throw IntegrityError("masker", "lcp labels not sorted");
    if (s.tokens[l.position] != kLgMaskToken) {
      throw IntegrityError("masker", "lcp label at position " + std::to_string(l.position) +
                                         " does not hold " + std::string(kLgMaskToken));
    }
    if (!category_from_code(code(l.category))) {
      throw IntegrityError("masker", "lcp label code out of range");
    }
    labelled[l.position] = true;
    last = l.position;
  }
  const auto lgmask_count = static_cast<std::size_t>(
      std::count(s.tokens.begin(), s.tokens.end(), kLgMaskToken));
  if (lgmask_count != s.lcp.size()) {
    throw IntegrityError("masker", std::to_string(lgmask_count) + " [LGMASK] tokens but " +
                                       std::to_string(s.lcp.size()) + " lcp labels");
  }
  for (std::size_t j = 0; j < s.mlm.size(); ++j) {
    const MlmLabel& l = s.mlm[j];
    if (l.position >= n) throw IntegrityError("masker", "mlm label position out of range");
    if (j > 0 && l.position <= s.mlm[j - 1].position) {
      throw IntegrityError("masker", "mlm labels not sorted");
    }
    if (labelled[l.position]) {
      throw IntegrityError("masker", "position " + std::to_string(l.position) +
                                         " carries both an lcp and an mlm label");
    }
  }
  if (!s.provenance.empty()) {
    if (s.provenance.size() != s.lcp.size()) {
      throw IntegrityError("masker", "provenance does not cover every lcp label");
    }
    for (std::size_t j = 0; j < s.lcp.size(); ++j) {
      if (s.provenance[j].position != s.lcp[j].position) {
        throw IntegrityError("masker", "provenance positions differ from lcp positions");
      }
    }
  }
}

void append_record(const MaskedSample& s, std::string& out) {
  out += "{\"pid\":";
  out += std::to_string(s.paragraph_id);
  out += ",\"tokens\":[";
  for (std::size_t i = 0; i < s.tokens.size(); ++i) {
    if (i) out.push_back(',');
    append_escaped(s.tokens[i], out);
  }
  out += "],\"lcp\":[";
  for (std::size_t i = 0; i < s.lcp.size(); ++i) {
    if (i) out.push_back(',');
    out.push_back('[');
    out += std::to_string(s.lcp[i].position);
    out.push_back(',');
    out += std::to_string(code(s.lcp[i].category));
    out.push_back(']');
  }
  out += "],\"mlm\":[";
  for (std::size_t i = 0; i < s.mlm.size(); ++i) {
    if (i) out.push_back(',');
    out.push_back('[');
    out += std::to_string(s.mlm[i].position);
    out.push_back(',');
    append_escaped(s.mlm[i].original, out);
    out.push_back(']');
  }
  out += "],\"prov\":[";
  for (std::size_t i = 0; i < s.provenance.size(); ++i) {
    if (i) out.push_back(',');
    out.push_back('[');
    out += std::to_string(s.provenance[i].position);
    out.push_back(',');
    append_escaped(s.provenance[i].original, out);
    out.push_back(']');
  }
  out += "],\"occ\":[";
  for (std::size_t i = 0; i < s.occurrences.size(); ++i) {
    if (i) out.push_back(',');
    out += std::to_string(s.occurrences[i]);
  }
  out += "],\"pool\":";
  out += std::to_string(s.lui_pool);
  out += ",\"len\":";
  out += std::to_string(s.source_tokens);
  out.push_back('}');
}

std::string to_record(const MaskedSample& sample) {
  std::string out;
  append_record(sample, out);
  return out;
}

MaskedSample parse_record(std::string_view line, std::size_t line_number) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("record", line_number, e.what());
  }
  if (!j.is_object()) throw ParseError("record", line_number, "record is not a JSON object");

  MaskedSample s;
  if (!j.contains("pid") || !j["pid"].is_number_unsigned()) {
    throw ParseError("record", line_number, "\"pid\" must be an unsigned integer");
  }
  s.paragraph_id = j["pid"].get<std::uint64_t>();
  s.tokens = get_field<std::vector<std::string>>(j, "tokens", line_number);

  for (const auto& [pos, c] :
       get_field<std::vector<std::pair<std::size_t, int>>>(j, "lcp", line_number)) {
    const auto category = category_from_code(c);
    if (!category) {
      throw ParseError("record", line_number, "lcp code " + std::to_string(c) + " not in 0..5");
    }
    s.lcp.push_back({pos, *category});
  }
  for (auto& [pos, original] :
       get_field<std::vector<std::pair<std::size_t, std::string>>>(j, "mlm", line_number)) {
    s.mlm.push_back({pos, std::move(original)});
  }
  if (j.contains("prov")) {
    for (auto& [pos, original] :
         get_field<std::vector<std::pair<std::size_t, std::string>>>(j, "prov", line_number)) {
      s.provenance.push_back({pos, std::move(original)});
    }
  }
  if (j.contains("occ")) {
    const auto occ = get_field<std::vector<std::uint32_t>>(j, "occ", line_number);
    if (occ.size() != kLexicalCategoryCount) {
      throw ParseError("record", line_number, "\"occ\" must have 5 entries");
    }
    std::copy(occ.begin(), occ.end(), s.occurrences.begin());
  }
  if (j.contains("pool")) s.lui_pool = get_field<std::uint32_t>(j, "pool", line_number);
  if (j.contains("len")) s.source_tokens = get_field<std::uint32_t>(j, "len", line_number);

  try {
    check_sample(s);
  } catch (const IntegrityError& e) {
    throw ParseError("record", line_number, e.what());
  }
  return s;
}

std::size_t emit_records(std::vector<std::pair<std::uint64_t, std::string>> records,
                         const std::filesystem::path& output) {
  std::sort(records.begin(), records.end());
  std::ofstream out(output, std::ios::binary | std::ios::trunc);
  if (!out) throw EmitError("cannot open " + output.string() + " for writing", 0);
  std::size_t written = 0;
  for (const auto& [pid, line] : records) {
    out.write(line.data(), static_cast<std::streamsize>(line.size()));
    out.put('\n');
    if (!out) throw EmitError("write to " + output.string() + " failed", written);
    ++written;
  }
  out.flush();
  if (!out) throw EmitError("flush of " + output.string() + " failed", written);
  return written;
}

std::size_t emit_samples(std::vector<MaskedSample> samples, const std::filesystem::path& output) {
  std::vector<std::pair<std::uint64_t, std::string>> records;
  records.reserve(samples.size());
  for (const MaskedSample& s : samples) records.emplace_back(s.paragraph_id, to_record(s));
  return emit_records(std::move(records), output);
}

std::vector<MaskedSample> read_samples(const std::filesystem::path& input) {
  std::ifstream in(input, std::ios::binary);
  if (!in) throw Error("record", "cannot open " + input.string());
  std::vector<MaskedSample> samples;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    samples.push_back(parse_record(line, line_no));
  }
  return samples;
}

}  // namespace lgp
