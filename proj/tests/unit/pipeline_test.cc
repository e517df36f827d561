// Copyright 2026 The semtex Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "semtex/pipeline.h"

#include <filesystem>
#include <fstream>
#include <set>
#include <string>

#include <gtest/gtest.h>

#include "semtex/error.h"
#include "semtex/render_client.h"
#include "test_support.h"

namespace semtex {
namespace {

namespace fs = std::filesystem;
using testing::FixtureBibliography;
using testing::FixtureConfig;
using testing::ShippedGlossary;
using testing::TestDataDir;

PipelineResult RunFixture(std::size_t workers) {
  return RunPipeline(FixtureConfig(workers), ShippedGlossary(), FixtureBibliography());
}

TEST(PipelineTest, FixtureMatchesGoldenFiles) {
  PipelineResult r = RunFixture(1);
  EXPECT_EQ(r.exit_status, 0);
  EXPECT_EQ(r.dump, testing::ReadText(TestDataDir() / "golden" / "kls_mini.dump.xml"));
  EXPECT_EQ(r.report, testing::ReadText(TestDataDir() / "golden" / "kls_mini.report.txt"));
}

TEST(PipelineTest, FixtureCounts) {
  PipelineResult r = RunFixture(1);
  EXPECT_EQ(r.report_input.formulae_segmented, 30u);
  EXPECT_EQ(r.report_input.substitution_defs, 2u);
  EXPECT_EQ(r.pages.size(), 28u);
  EXPECT_EQ(r.formulae.size() + r.report_input.substitution_defs, 30u);
  std::size_t annotated = 0;
  for (const Formula& f : r.formulae) {
    if (!f.AnnotationsOf(AnnotationKind::kSubstitution).empty()) ++annotated;
  }
  EXPECT_EQ(annotated, 5u);
  EXPECT_NE(r.report.find("pages: 28"), std::string::npos);
  EXPECT_NE(r.report.find("substitution definitions: 2"), std::string::npos);
  EXPECT_NE(r.report.find("formulae with substitution annotations: 5"),
            std::string::npos);
}

TEST(PipelineTest, WorkerCountDoesNotChangeOutput) {
  PipelineResult one = RunFixture(1);
  PipelineResult eight = RunFixture(8);
  EXPECT_EQ(one.dump, eight.dump);
  EXPECT_EQ(one.report, eight.report);
  EXPECT_EQ(one.report_input.stats, eight.report_input.stats);
}

TEST(PipelineTest, DumpIsWellFormedWithUniqueTitles) {
  PipelineResult r = RunFixture(2);
  EXPECT_TRUE(IsWellFormedXml(r.dump));
  std::set<std::string> titles;
  for (const FormulaPage& p : r.pages) titles.insert(p.title);
  EXPECT_EQ(titles.size(), r.pages.size());
}

TEST(PipelineTest, SymbolsListIffMacros) {
  PipelineResult r = RunFixture(1);
  ASSERT_EQ(r.pages.size(), r.formulae.size());
  for (std::size_t i = 0; i < r.pages.size(); ++i) {
    const Formula& f = r.formulae[i];
    bool has_macro = !SemanticHeads(f.semantic.nodes, ShippedGlossary()).empty();
    for (const Annotation& a : f.annotations) {
      if (a.kind == AnnotationKind::kConstraint ||
          a.kind == AnnotationKind::kSubstitution) {
        has_macro |= !SemanticHeads(a.body, ShippedGlossary()).empty();
      }
    }
    EXPECT_EQ(!r.pages[i].symbols.empty(), has_macro) << f.id;
  }
}

TEST(PipelineTest, MathBlocksReparse) {
  PipelineResult r = RunFixture(1);
  for (std::size_t i = 0; i < r.pages.size(); ++i) {
    EXPECT_EQ(ExtractMathBlock(r.pages[i].wikitext), r.formulae[i].source_semantic);
  }
}

TEST(PipelineTest, ReportTotalsEqualPerFileSums) {
  PipelineConfig config = FixtureConfig(4);
  config.inputs = {TestDataDir() / "corpus", TestDataDir() / "corpus_errors" / "a.tex",
                   TestDataDir() / "corpus_errors" / "c.tex"};
  PipelineResult all = RunPipeline(config, ShippedGlossary(), FixtureBibliography());
  ReplacementStats summed;
  for (const fs::path& p : CollectInputs(config.inputs)) {
    PipelineConfig single = config;
    single.inputs = {p};
    summed.Merge(
        RunPipeline(single, ShippedGlossary(), FixtureBibliography()).report_input.stats);
  }
  EXPECT_EQ(all.report_input.stats, summed);
}

TEST(PipelineTest, EmptyDirectory) {
  PipelineConfig config = FixtureConfig(1);
  config.inputs = {testing::MakeTempDir("empty")};
  PipelineResult r = RunPipeline(config, ShippedGlossary(), FixtureBibliography());
  EXPECT_EQ(r.exit_status, 0);
  EXPECT_TRUE(r.pages.empty());
  EXPECT_TRUE(IsWellFormedXml(r.dump));
  EXPECT_EQ(r.dump, EmitDump({}));
  EXPECT_NE(r.report.find("formulae segmented: 0"), std::string::npos);
  EXPECT_NE(r.report.find("replacements total: 0"), std::string::npos);
}

TEST(PipelineTest, BrokenFileIsReportedAndSkipped) {
  PipelineConfig config = FixtureConfig(1);
  config.inputs = {TestDataDir() / "corpus_errors"};
  PipelineResult r = RunPipeline(config, ShippedGlossary(), FixtureBibliography());
  EXPECT_NE(r.exit_status, 0);
  ASSERT_EQ(r.pages.size(), 2u);
  EXPECT_EQ(r.pages[0].title, "Formula:KLS:eq:a:rec");
  EXPECT_EQ(r.pages[1].title, "Formula:KLS:eq:c:sin");
  ASSERT_EQ(r.report_input.file_errors.size(), 1u);
  EXPECT_NE(r.report_input.file_errors[0].find("b.tex"), std::string::npos);
  EXPECT_NE(r.report.find("file errors: 1"), std::string::npos);
}

TEST(PipelineTest, RunConvertWritesFiles) {
  fs::path dir = testing::MakeTempDir("convert");
  PipelineConfig config = FixtureConfig(2);
  config.output = dir / "out.xml";
  config.report = dir / "report.txt";
  EXPECT_EQ(RunConvert(config), 0);
  EXPECT_EQ(testing::ReadText(dir / "out.xml"), RunFixture(1).dump);
  EXPECT_TRUE(fs::exists(dir / "report.txt"));
}

TEST(PipelineTest, MissingBibEntryIsFatal) {
  PipelineConfig config = FixtureConfig(1);
  config.citation_key = "NOPE";
  EXPECT_THROW(RunPipeline(config, ShippedGlossary(), FixtureBibliography()),
               MissingBibEntryError);
}

TEST(ConfigTest, FromJsonResolvesPaths) {
  PipelineConfig c = PipelineConfig::FromJson(
      R"json({"input": ["a", "/abs/b"], "glossary": "g.json", "bib": "b.json",
          "out": "o.xml", "report": "r.txt", "corpus": "DLMF", "workers": 3,
          "endpoint": "http://localhost:8089/convert",
          "name_keywords": ["orthogonality"]})json",
      "/base");
  ASSERT_EQ(c.inputs.size(), 2u);
  EXPECT_EQ(c.inputs[0], fs::path("/base/a"));
  EXPECT_EQ(c.inputs[1], fs::path("/abs/b"));
  EXPECT_EQ(c.glossary, fs::path("/base/g.json"));
  EXPECT_EQ(c.report, fs::path("/base/r.txt"));
  EXPECT_EQ(c.corpus, "DLMF");
  EXPECT_EQ(c.EffectiveCitationKey(), "DLMF");
  EXPECT_EQ(c.workers, 3u);
  EXPECT_EQ(c.metadata.name_keywords, std::vector<std::string>{"orthogonality"});
}

TEST(ConfigTest, RejectsBadInput) {
  EXPECT_THROW(PipelineConfig::FromJson("{"), ConfigInvalidError);
  EXPECT_THROW(PipelineConfig::FromJson(R"json({"bogus": 1})json"), ConfigInvalidError);
  EXPECT_THROW(PipelineConfig::FromJson(R"json({"workers": "x"})json"), ConfigInvalidError);
  PipelineConfig c = FixtureConfig(1);
  c.endpoint = "localhost:8089";
  EXPECT_THROW(c.Validate(), ConfigInvalidError);
  c = FixtureConfig(0);
  EXPECT_THROW(c.Validate(), ConfigInvalidError);
  c = FixtureConfig(1);
  c.inputs = {"/does/not/exist"};
  EXPECT_THROW(c.Validate(), ConfigInvalidError);
  EXPECT_NO_THROW(FixtureConfig(1).Validate());
}

TEST(ConfigTest, ShippedExampleLoads) {
  PipelineConfig c = PipelineConfig::Load(testing::ShippedDataDir() / "semtex.example.json");
  EXPECT_EQ(c.corpus, "KLS");
  EXPECT_FALSE(c.inputs.empty());
}

TEST(ReplaceInSourceTest, KeepsProseBytes) {
  std::string src = "Prose \\Gamma(z) here. \\begin{equation}\\Gamma\\left(z\\right)+1"
                    "\\end{equation} and $\\sin z$.";
  EXPECT_EQ(ReplaceInSource(src, ShippedGlossary()),
            "Prose \\Gamma(z) here. \\begin{equation}\\EulerGamma@{z}+1"
            "\\end{equation} and $\\sin@@{z}$.");
}

TEST(ReplaceInSourceTest, RunReplaceWritesFiles) {
  fs::path out = testing::MakeTempDir("replace");
  std::vector<std::string> errors;
  int status = RunReplace({TestDataDir() / "corpus_errors"}, ShippedGlossary(), out,
                          &errors);
  EXPECT_EQ(status, 1);
  EXPECT_EQ(errors.size(), 1u);
  EXPECT_TRUE(fs::exists(out / "a.tex"));
  EXPECT_FALSE(fs::exists(out / "b.tex"));
  EXPECT_NE(testing::ReadText(out / "a.tex").find("\\EulerGamma@{z+1}"),
            std::string::npos);
}

}  // namespace
}  // namespace semtex
