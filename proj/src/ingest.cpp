#include "lgp/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

#include "json.hpp"
#include "lgp/error.hpp"

namespace lgp {
namespace {

bool is_blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v';
  });
}

bool is_markup_residue(std::string_view line) {
  while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
  static constexpr std::string_view kPrefixes[] = {
      "<doc", "</doc", "{{", "}}", "{|", "|", "==", "__", "[[Category:", "[[File:", "[[Image:"};
  return std::any_of(std::begin(kPrefixes), std::end(kPrefixes),
                     [&](std::string_view p) { return line.starts_with(p); });
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("ingest", "cannot open " + path.string());
  std::string data;
  in.seekg(0, std::ios::end);
  const auto size = in.tellg();
  if (size > 0) {
    data.resize(static_cast<std::size_t>(size));
    in.seekg(0);
    in.read(data.data(), size);
  }
  if (!in && !in.eof()) throw Error("ingest", "cannot read " + path.string());
  return data;
}

bool is_records_file(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  return ext == ".jsonl" || ext == ".ndjson";
}

void read_records(const std::string& data, const std::string& name,
                  std::vector<SourceDocument>& out) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < data.size()) {
    auto end = data.find('\n', pos);
    if (end == std::string::npos) end = data.size();
    const std::string_view line(data.data() + pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (is_blank(line)) continue;
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("ingest", line_no, name + ": " + e.what());
    }
    if (!record.is_object() || !record.contains("text") || !record["text"].is_string()) {
      throw ParseError("ingest", line_no, name + ": record needs a string \"text\" field");
    }
    SourceDocument doc;
    const auto id = record.find("id");
    if (id == record.end()) {
      doc.source_id = name + ":" + std::to_string(line_no);
    } else if (id->is_string()) {
      doc.source_id = id->get<std::string>();
    } else {
      doc.source_id = id->dump();
    }
    doc.text = record["text"].get<std::string>();
    out.push_back(std::move(doc));
  }
}

void read_one(const std::filesystem::path& path, const std::string& source_id,
              std::vector<SourceDocument>& out) {
  std::string data = read_file(path);
  if (is_records_file(path)) {
    read_records(data, source_id, out);
  } else {
    out.push_back({source_id, std::move(data)});
  }
}

}  // namespace

std::vector<TokenizedParagraph> split_paragraphs(const SourceDocument& document,
                                                 const Tokenizer& tokenizer) {
  const std::string_view text = document.text;
  if (const auto bad = find_invalid_utf8(text); bad != std::string_view::npos) {
    throw IngestError("invalid UTF-8 in '" + document.source_id + "'", bad);
  }
  std::vector<TokenizedParagraph> paragraphs;
  std::size_t start = std::string_view::npos;
  std::size_t end = 0;
  auto flush = [&] {
    if (start == std::string_view::npos) return;
    TokenizedParagraph p = make_paragraph(document.source_id, paragraphs.size(),
                                          std::string(text.substr(start, end - start)),
                                          tokenizer);
    if (!p.tokens.empty()) paragraphs.push_back(std::move(p));
    start = std::string_view::npos;
  };
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    if (is_blank(line)) {
      flush();
    } else {
      if (start == std::string_view::npos) start = pos;
      if (line.ends_with('\r')) line.remove_suffix(1);
      end = pos + line.size();
    }
    pos = nl + 1;
  }
  flush();
  return paragraphs;
}

std::string strip_wiki_markup(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    const bool has_nl = nl != std::string_view::npos;
    if (!has_nl) nl = text.size();
    const std::string_view line = text.substr(pos, nl - pos);
    if (!is_markup_residue(line)) out += line;
    if (has_nl) out.push_back('\n');
    pos = nl + 1;
  }
  return out;
}

std::vector<SourceDocument> read_sources(const std::filesystem::path& path) {
  namespace fs = std::filesystem;
  std::vector<SourceDocument> docs;
  std::error_code ec;
  if (fs::is_directory(path, ec)) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::recursive_directory_iterator(path)) {
      if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const fs::path& f : files) {
      read_one(f, fs::relative(f, path).generic_string(), docs);
    }
  } else if (fs::exists(path, ec)) {
    read_one(path, path.filename().generic_string(), docs);
  } else {
    throw Error("ingest", "input not found: " + path.string());
  }
  return docs;
}

void FilterPolicy::validate() const {
  if (min_tokens < 1) throw ConfigError("ingest", "min token count must be at least 1");
  if (min_density && (!std::isfinite(*min_density) || *min_density < 0.0)) {
    throw ConfigError("ingest", "min density must be a finite non-negative number");
  }
}

std::size_t counted_indicators(std::span<const IndicatorMatch> matches) noexcept {
  return static_cast<std::size_t>(std::count_if(
      matches.begin(), matches.end(), [](const IndicatorMatch& m) { return !m.excluded; }));
}

DropReason evaluate_paragraph(const TokenizedParagraph& paragraph,
                              std::span<const IndicatorMatch> matches,
                              const FilterPolicy& policy) noexcept {
  if (paragraph.size() < policy.min_tokens) return DropReason::kTooShort;
  const std::size_t counted = counted_indicators(matches);
  if (counted < policy.min_indicators) return DropReason::kTooFewIndicators;
  if (policy.min_density) {
    const double density = 100.0 * static_cast<double>(counted) /
                           static_cast<double>(paragraph.size());
    if (density < *policy.min_density) return DropReason::kTooSparse;
  }
  return DropReason::kKept;
}

std::vector<TokenizedParagraph> filter_paragraphs(std::vector<TokenizedParagraph> paragraphs,
                                                  const IndicatorMatcher& matcher,
                                                  const FilterPolicy& policy) {
  policy.validate();
  std::vector<TokenizedParagraph> kept;
  for (TokenizedParagraph& p : paragraphs) {
    if (evaluate_paragraph(p, matcher.find(p), policy) == DropReason::kKept) {
      kept.push_back(std::move(p));
    }
  }
  return kept;
}

std::vector<TokenizedParagraph> filter_paragraphs(std::vector<TokenizedParagraph> paragraphs,
                                                  const Lexicon& lexicon,
                                                  const FilterPolicy& policy) {
  return filter_paragraphs(std::move(paragraphs), IndicatorMatcher(lexicon), policy);
}

}  // namespace lgp
