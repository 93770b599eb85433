#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "lgp/ablate.hpp"
#include "lgp/error.hpp"
#include "lgp/ingest.hpp"
#include "lgp/lexicon.hpp"
#include "lgp/loss.hpp"
#include "lgp/masker.hpp"
#include "lgp/pipeline.hpp"
#include "lgp/stats.hpp"
#include "lgp/text.hpp"

namespace py = pybind11;
using namespace lgp;

namespace {

Reduction parse_reduction(const std::string& name) {
  if (name == "sum") return Reduction::kSum;
  if (name == "batch-mean") return Reduction::kBatchMean;
  throw ConfigError("loss", "reduction must be sum or batch-mean");
}

RepairMode parse_mode(const std::string& name) {
  if (name == "delete") return RepairMode::kDeleteAndRepair;
  if (name == "placeholder") return RepairMode::kPlaceholder;
  throw ConfigError("ablate", "mode must be delete or placeholder");
}

py::dict deletions_dict(const AblationResult& r) {
  py::dict d;
  for (std::size_t c = 0; c < kLexicalCategoryCount; ++c) {
    d[py::str(std::string(to_string(static_cast<Category>(c))))] = r.deletions[c];
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Logic-indicator corpus toolkit core";

  auto base = py::register_exception<Error>(m, "LgpError", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<IntegrityError>(m, "IntegrityError", base.ptr());
  py::register_exception<NumericError>(m, "NumericError", base.ptr());
  py::register_exception<IngestError>(m, "IngestError", base.ptr());
  py::register_exception<EmitError>(m, "EmitError", base.ptr());

  py::enum_<Category>(m, "Category")
      .value("PMI", Category::kPmi)
      .value("CLI", Category::kCli)
      .value("NTI", Category::kNti)
      .value("ATI", Category::kAti)
      .value("CNI", Category::kCni)
      .value("LUI", Category::kLui);

  py::class_<LexiconEntry>(m, "LexiconEntry")
      .def_readonly("phrase", &LexiconEntry::phrase)
      .def_readonly("category", &LexiconEntry::category)
      .def("__repr__", [](const LexiconEntry& e) {
        return "LexiconEntry(" + std::string(to_string(e.category)) + ", '" + e.phrase + "')";
      });

  py::class_<Lexicon>(m, "Lexicon")
      .def_static("builtin", [] { return Lexicon::builtin(); })
      .def_static("load", &load_lexicon, py::arg("source"))
      .def_static("parse",
                  [](const std::string& text, const std::string& source) {
                    std::istringstream in(text);
                    return Lexicon::parse(in, source);
                  },
                  py::arg("text"), py::arg("source") = "<string>")
      .def_property_readonly("entries", &Lexicon::entries)
      .def_property_readonly("exclusions", &Lexicon::exclusions)
      .def_property_readonly("source", &Lexicon::source)
      .def("category_of", &Lexicon::category_of)
      .def("is_excluded", &Lexicon::is_excluded)
      .def("set_exclusions", &Lexicon::set_exclusions)
      .def("dump", &Lexicon::dump)
      .def("__len__", &Lexicon::size);

  py::class_<TokenizedParagraph>(m, "Paragraph")
      .def(py::init([](std::string text, std::string source_id, std::size_t index) {
             return make_paragraph(std::move(source_id), index, std::move(text));
           }),
           py::arg("text"), py::arg("source_id") = "", py::arg("index") = 0)
      .def_readonly("id", &TokenizedParagraph::id)
      .def_readonly("source_id", &TokenizedParagraph::source_id)
      .def_readonly("index", &TokenizedParagraph::index)
      .def_readonly("text", &TokenizedParagraph::text)
      .def_property_readonly("spans",
                             [](const TokenizedParagraph& p) {
                               std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
                               for (const auto& t : p.tokens) out.emplace_back(t.start, t.end);
                               return out;
                             })
      .def_property_readonly("tokens",
                             [](const TokenizedParagraph& p) {
                               std::vector<std::string> out;
                               for (std::size_t i = 0; i < p.size(); ++i) {
                                 out.emplace_back(p.surface(i));
                               }
                               return out;
                             })
      .def("__len__", &TokenizedParagraph::size);

  m.def("tokenize",
        [](std::string_view text) {
          std::vector<std::string> out;
          for (const auto& t : tokenize_words(text)) {
            out.emplace_back(text.substr(t.start, t.end - t.start));
          }
          return out;
        },
        py::arg("text"));
  m.def("split_paragraphs",
        [](const std::string& text, const std::string& source_id) {
          return split_paragraphs(SourceDocument{source_id, text});
        },
        py::arg("text"), py::arg("source_id") = "");

  py::class_<IndicatorMatch>(m, "IndicatorMatch")
      .def_readonly("token_begin", &IndicatorMatch::token_begin)
      .def_readonly("token_end", &IndicatorMatch::token_end)
      .def_readonly("char_begin", &IndicatorMatch::char_begin)
      .def_readonly("char_end", &IndicatorMatch::char_end)
      .def_readonly("phrase", &IndicatorMatch::phrase)
      .def_readonly("category", &IndicatorMatch::category)
      .def_readonly("excluded", &IndicatorMatch::excluded)
      .def("__repr__", [](const IndicatorMatch& mt) {
        return "IndicatorMatch(" + std::string(to_string(mt.category)) + ", '" + mt.phrase +
               "', tokens " + std::to_string(mt.token_begin) + ":" +
               std::to_string(mt.token_end) + ")";
      });

  py::class_<IndicatorMatcher>(m, "Matcher")
      .def(py::init<const Lexicon&>(), py::arg("lexicon") = Lexicon::builtin())
      .def("find", &IndicatorMatcher::find, py::arg("paragraph"))
      .def_property_readonly("lexicon", &IndicatorMatcher::lexicon);

  py::class_<FilterPolicy>(m, "FilterPolicy")
      .def(py::init<>())
      .def_readwrite("min_tokens", &FilterPolicy::min_tokens)
      .def_readwrite("min_indicators", &FilterPolicy::min_indicators)
      .def_readwrite("min_density", &FilterPolicy::min_density);
  m.def("filter_paragraphs",
        py::overload_cast<std::vector<TokenizedParagraph>, const IndicatorMatcher&,
                          const FilterPolicy&>(&filter_paragraphs),
        py::arg("paragraphs"), py::arg("matcher"), py::arg("policy") = FilterPolicy{});

  py::class_<MaskPolicy>(m, "MaskPolicy")
      .def(py::init<>())
      .def_readwrite("p_indicator", &MaskPolicy::p_indicator)
      .def_readwrite("p_lui", &MaskPolicy::p_lui)
      .def_readwrite("mlm_rate", &MaskPolicy::mlm_rate)
      .def_readwrite("mlm_mask", &MaskPolicy::mlm_mask)
      .def_readwrite("mlm_random", &MaskPolicy::mlm_random)
      .def_readwrite("mlm_keep", &MaskPolicy::mlm_keep)
      .def_readwrite("seed", &MaskPolicy::seed)
      .def_readwrite("mask_excluded", &MaskPolicy::mask_excluded)
      .def("validate", &MaskPolicy::validate);

  py::class_<MaskedSample>(m, "MaskedSample")
      .def_readonly("paragraph_id", &MaskedSample::paragraph_id)
      .def_readonly("tokens", &MaskedSample::tokens)
      .def_property_readonly("lcp",
                             [](const MaskedSample& s) {
                               std::vector<std::pair<std::size_t, int>> out;
                               for (const auto& l : s.lcp) out.emplace_back(l.position, code(l.category));
                               return out;
                             })
      .def_property_readonly("mlm",
                             [](const MaskedSample& s) {
                               std::vector<std::pair<std::size_t, std::string>> out;
                               for (const auto& l : s.mlm) out.emplace_back(l.position, l.original);
                               return out;
                             })
      .def("to_record", &to_record)
      .def_static("from_record", [](const std::string& line) { return parse_record(line); });

  m.def(
      "mask_paragraph",
      [](const TokenizedParagraph& p, const IndicatorMatcher& matcher, const MaskPolicy& policy,
         const std::vector<std::string>& vocabulary) {
        const auto matches = matcher.find(p);
        return mask_paragraph(p, matches, policy, vocabulary);
      },
      py::arg("paragraph"), py::arg("matcher"), py::arg("policy"),
      py::arg("vocabulary") = std::vector<std::string>{});

  m.def("softmax_cross_entropy", &softmax_cross_entropy, py::arg("logits"), py::arg("gold"));
  m.def(
      "lcp_loss",
      [](const std::vector<std::pair<std::vector<Logits>, std::vector<int>>>& batch,
         const std::string& reduction) {
        LcpBatch b;
        for (const auto& [logits, gold] : batch) b.push_back({logits, gold});
        LossConfig config;
        config.reduction = parse_reduction(reduction);
        const LcpLoss loss = lcp_loss(b, config);
        return py::make_tuple(loss.value, loss.empty_batch);
      },
      py::arg("batch"), py::arg("reduction") = "sum",
      "Returns (value, empty_batch) for a list of (logit rows, gold codes) pairs.");
  m.def(
      "idol_loss",
      [](double lcp, double mlm, double lambda) { return idol_loss(lcp, mlm, {lambda}); },
      py::arg("lcp"), py::arg("mlm"), py::arg("lam") = 0.8);

  m.def(
      "ablate_text",
      [](const std::string& text, const std::string& remove, const std::string& mode,
         const IndicatorMatcher& matcher) {
        const AblationResult r =
            ablate_text(text, matcher, AblationSpec::parse(remove, parse_mode(mode)));
        return py::make_tuple(r.text, deletions_dict(r));
      },
      py::arg("text"), py::arg("remove"), py::arg("mode") = "delete",
      py::arg("matcher") = IndicatorMatcher(Lexicon::builtin()),
      "Returns (text, per-category deletion counts).");

  m.def(
      "report_json",
      [](const std::filesystem::path& path, double bucket_width) {
        return report(path, bucket_width).to_json().dump();
      },
      py::arg("path"), py::arg("bucket_width") = 1.0);

  m.def(
      "run_build_json",
      [](const std::vector<std::filesystem::path>& inputs, const std::filesystem::path& output,
         std::uint64_t seed, std::size_t workers, const std::string& lexicon,
         const MaskPolicy& mask, const FilterPolicy& filter, bool mlm, bool strip_markup) {
        PipelineConfig c;
        c.inputs = inputs;
        c.output = output;
        c.seed = seed;
        c.workers = workers;
        c.lexicon = lexicon;
        c.mask = mask;
        c.filter = filter;
        c.mlm = mlm;
        c.strip_markup = strip_markup;
        py::gil_scoped_release release;
        return run_build(c).to_json().dump();
      },
      py::arg("inputs"), py::arg("output"), py::arg("seed"), py::arg("workers") = 1,
      py::arg("lexicon") = "builtin", py::arg("mask") = MaskPolicy{},
      py::arg("filter") = FilterPolicy{}, py::arg("mlm") = true, py::arg("strip_markup") = false);
}
