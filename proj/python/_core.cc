// Copyright 2026 The biasprobe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "biasprobe/cli.h"
#include "biasprobe/errors.h"
#include "biasprobe/invariant.h"
#include "biasprobe/metrics.h"
#include "biasprobe/mutation.h"
#include "biasprobe/report.h"

namespace py = pybind11;

namespace biasprobe {
namespace {

using PairList = std::vector<std::pair<std::string, std::string>>;

std::vector<WordPair> ToPairs(const PairList& pairs, const std::string& attribute) {
  std::vector<WordPair> out;
  for (const auto& [source, target] : pairs) {
    out.push_back({source, target, SensitiveAttribute(attribute)});
  }
  return out;
}

const LexiconAnnotator& Lexicon() {
  static const LexiconAnnotator lexicon = LexiconAnnotator::Builtin();
  return lexicon;
}

py::dict InvCheckPy(const std::string& original, const std::string& mutant) {
  const InvariantVerdict v = InvCheck(original, mutant, Lexicon());
  py::dict out;
  out["passed"] = v.passed;
  out["reason"] = std::string(ToString(v.reason));
  out["sentence"] = v.failing_sentence_index;
  return out;
}

std::vector<std::string> ListAtomic(const std::string& text, const PairList& pairs) {
  const auto wp = ToPairs(pairs, "a");
  std::vector<std::string> out;
  for (const Mutant& m : GenerateAtomic({"py", text, std::nullopt}, wp)) {
    out.push_back(m.text);
  }
  return out;
}

std::vector<std::tuple<std::string, std::string, std::string>> ListIntersectional(
    const std::string& text, const PairList& pairs_1, const PairList& pairs_2) {
  const auto wp1 = ToPairs(pairs_1, "a");
  const auto wp2 = ToPairs(pairs_2, "b");
  std::vector<std::tuple<std::string, std::string, std::string>> out;
  for (const MutantTriple& t :
       GenerateIntersectional({"py", text, std::nullopt}, wp1, wp2).triples) {
    out.emplace_back(t.atomic_1.text, t.atomic_2.text, t.intersectional.text);
  }
  return out;
}

py::dict Run(const std::filesystem::path& corpus,
             const std::filesystem::path& dictionary,
             const std::vector<std::string>& attributes, const std::string& endpoint,
             const std::string& mode, const std::filesystem::path& out_dir,
             const std::optional<std::filesystem::path>& template_path,
             const std::optional<std::filesystem::path>& cache,
             bool audit_discarded, std::size_t workers,
             std::optional<std::size_t> token_budget) {
  CampaignConfig config;
  config.corpus = corpus;
  config.dictionary = dictionary;
  config.attributes = attributes;
  config.endpoint = endpoint;
  config.mode = mode;
  config.out_dir = out_dir;
  config.template_path = template_path;
  config.cache = cache;
  config.audit_discarded = audit_discarded;
  config.workers = workers;
  config.token_budget = token_budget;
  std::ostringstream out, err;
  int code;
  {
    py::gil_scoped_release release;
    code = CmdRun(config, out, err);
  }
  py::dict result;
  result["exit_code"] = code;
  result["stdout"] = out.str();
  result["stderr"] = err.str();
  return result;
}

std::string MetricsJson(const std::filesystem::path& records) {
  return MetricsToJson(ComputeMetrics(ReadRecords(records))).dump();
}

}  // namespace
}  // namespace biasprobe

PYBIND11_MODULE(_core, m) {
  namespace bp = biasprobe;
  m.doc() = "biasprobe engine bindings";
  m.attr("__version__") = std::string(bp::kToolVersion);

  py::register_exception<bp::Error>(m, "BiasprobeError");

  m.def(
      "tolerant_table_comp",
      [](const std::vector<std::string>& a, const std::vector<std::string>& b) {
        return bp::TolerantTableComp(a, b);
      },
      py::arg("original"), py::arg("mutant"));
  m.def("split_sentences", &bp::SentenceSplit, py::arg("text"));
  m.def("inv_check", &bp::InvCheckPy, py::arg("original"), py::arg("mutant"),
        "Invariant check with the built-in lexicon annotator.");
  m.def("atomic_mutants", &bp::ListAtomic, py::arg("text"), py::arg("pairs"));
  m.def("intersectional_mutants", &bp::ListIntersectional, py::arg("text"),
        py::arg("pairs_1"), py::arg("pairs_2"));
  m.def("run", &bp::Run, py::arg("corpus"), py::arg("dictionary"),
        py::arg("attributes"), py::arg("endpoint"),
        py::arg("mode") = "intersectional", py::arg("out_dir") = "biasprobe-out",
        py::arg("template_path") = py::none(), py::arg("cache") = py::none(),
        py::arg("audit_discarded") = false, py::arg("workers") = 1,
        py::arg("token_budget") = py::none());
  m.def("metrics_json", &bp::MetricsJson, py::arg("records"));
}
