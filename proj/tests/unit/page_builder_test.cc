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


#include "semtex/page_builder.h"

#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "semtex/error.h"
#include "semtex/render_client.h"
#include "test_support.h"

namespace semtex {
namespace {

using testing::ShippedGlossary;

Formula Make(std::string_view body, std::string id = "f1") {
  SegmentOptions opts;
  opts.citation_key = "KLS";
  std::string doc = "\\begin{equation}" + std::string(body) + "\\end{equation}";
  Formula f = SegmentFormulae(doc, opts).formulae.at(0);
  f.id = std::move(id);
  ApplyConstraints(f, MetadataConfig::Default());
  EnrichFormula(f, ShippedGlossary());
  return f;
}

std::vector<std::string> Heads(const std::vector<SymbolsListEntry>& entries) {
  std::vector<std::string> out;
  for (const SymbolsListEntry& e : entries) out.push_back(e.macro_name);
  return out;
}

TEST(SymbolsListTest, DeduplicatesHeads) {
  Formula f = Make("\\Gamma(z)+\\Gamma(w)");
  EXPECT_EQ(Heads(BuildSymbolsList(f, ShippedGlossary())),
            std::vector<std::string>{"EulerGamma"});
}

TEST(SymbolsListTest, EmptyWithoutMacros) {
  EXPECT_TRUE(BuildSymbolsList(Make("x+y"), ShippedGlossary()).empty());
}

TEST(SymbolsListTest, IncludesConstraintMacros) {
  Formula f = Make("P_n^{(\\alpha,\\beta)}(x)=1, (q;q)_n>0");
  ASSERT_EQ(f.AnnotationsOf(AnnotationKind::kConstraint).size(), 1u);
  std::vector<SymbolsListEntry> s = BuildSymbolsList(f, ShippedGlossary());
  EXPECT_EQ(Heads(s), (std::vector<std::string>{"Jacobi", "qPochhammer"}));
  EXPECT_EQ(s[0].rendered_form, "\\Jacobi{\\alpha}{\\beta}{n}@{x}");
  EXPECT_EQ(s[0].definition_link, "https://dlmf.nist.gov/18.3#T1.t1.r2");
}

TEST(RenderPageTest, OmitsEmptySections) {
  Formula f = Make("\\Gamma(z+1)=z\\Gamma(z), \\Re z>0");
  FormulaPage p = RenderPage(f, ShippedGlossary(), testing::FixtureBibliography(), "KLS");
  EXPECT_EQ(p.title, "Formula:KLS:f1");
  EXPECT_NE(p.wikitext.find("== Constraints =="), std::string::npos);
  EXPECT_EQ(p.wikitext.find("== Substitutions =="), std::string::npos);
  EXPECT_EQ(p.wikitext.find("== Proof =="), std::string::npos);
  EXPECT_NE(p.wikitext.find("== Symbols List =="), std::string::npos);
  EXPECT_NE(p.wikitext.find("== Bibliography =="), std::string::npos);
}

TEST(RenderPageTest, GoldenWikitext) {
  Formula f = Make("\\Gamma(z+1)=z\\Gamma(z), \\Re z>0", "eq:gamma:rec");
  f.annotations.push_back({AnnotationKind::kName, "Gamma function recurrence relation",
                           "eq:gamma:rec"});
  f.citation.tag = "eq:gamma:rec";
  FormulaPage p = RenderPage(f, ShippedGlossary(), testing::FixtureBibliography(), "KLS");
  std::string golden = testing::ReadText(testing::TestDataDir() / "golden" /
                                         "gamma_rec.wikitext");
  EXPECT_EQ(p.wikitext, golden);
}

TEST(RenderPageTest, MissingBibliographyEntryThrows) {
  Formula f = Make("x");
  try {
    RenderPage(f, ShippedGlossary(), Bibliography{}, "KLS");
    FAIL() << "expected MissingBibEntryError";
  } catch (const MissingBibEntryError& e) {
    EXPECT_EQ(e.key(), "KLS");
  }
}

TEST(RenderPageTest, MathBlockEqualsSemanticSource) {
  for (const char* body : {"\\Gamma(z)<1", "a&b", "\\sin z\\cos z"}) {
    Formula f = Make(body);
    FormulaPage p = RenderPage(f, ShippedGlossary(), testing::FixtureBibliography(), "KLS");
    EXPECT_EQ(ExtractMathBlock(p.wikitext), f.source_semantic) << body;
  }
}

TEST(EmitDumpTest, EmptyDumpIsWellFormed) {
  std::string dump = EmitDump({});
  EXPECT_TRUE(IsWellFormedXml(dump));
  EXPECT_NE(dump.find("<siteinfo>"), std::string::npos);
  EXPECT_EQ(dump.find("<page>"), std::string::npos);
}

TEST(EmitDumpTest, EscapesMarkup) {
  Formula f = Make("a<b");
  std::vector<FormulaPage> pages = {
      RenderPage(f, ShippedGlossary(), testing::FixtureBibliography(), "KLS")};
  std::string dump = EmitDump(pages);
  EXPECT_NE(dump.find("a&lt;b"), std::string::npos);
  EXPECT_EQ(dump.find("a<b"), std::string::npos);
  EXPECT_TRUE(IsWellFormedXml(dump));
}

TEST(EmitDumpTest, DuplicateTitleThrows) {
  Formula a = Make("x", "eq:same");
  Formula b = Make("y", "eq:same");
  std::vector<FormulaPage> pages = {
      RenderPage(a, ShippedGlossary(), testing::FixtureBibliography(), "KLS"),
      RenderPage(b, ShippedGlossary(), testing::FixtureBibliography(), "KLS")};
  try {
    EmitDump(pages);
    FAIL() << "expected DuplicateTitleError";
  } catch (const DuplicateTitleError& e) {
    EXPECT_EQ(e.title(), "Formula:KLS:eq:same");
  }
}

TEST(EmitDumpTest, Deterministic) {
  std::vector<FormulaPage> pages = {
      RenderPage(Make("\\Gamma(z)", "a"), ShippedGlossary(),
                 testing::FixtureBibliography(), "KLS"),
      RenderPage(Make("\\sin z", "b"), ShippedGlossary(),
                 testing::FixtureBibliography(), "KLS")};
  EXPECT_EQ(EmitDump(pages), EmitDump(pages));
}

TEST(XmlEscapeTest, Escapes) {
  EXPECT_EQ(XmlEscape("a<b&c>\"d\""), "a&lt;b&amp;c&gt;&quot;d&quot;");
}

TEST(BibliographyTest, ParsesAndRejects) {
  Bibliography b = ParseBibliography(
      R"json({"X": {"authors": "A", "title": "T", "publisher": "P", "year": 2020}})json");
  EXPECT_EQ(b.Get("X").year, "2020");
  EXPECT_THROW(b.Get("Y"), MissingBibEntryError);
  EXPECT_THROW(ParseBibliography("{"), ConfigInvalidError);
  EXPECT_THROW(ParseBibliography(R"json({"X": {"authors": "A"}})json"), ConfigInvalidError);
}

TEST(StatsReportTest, EmptyCorpusIsAllZero) {
  std::string r = StatsReport(ReportInput{});
  EXPECT_NE(r.find("formulae segmented: 0"), std::string::npos);
  EXPECT_NE(r.find("pages: 0"), std::string::npos);
  EXPECT_NE(r.find("replacements total: 0"), std::string::npos);
  EXPECT_NE(r.find("replacements per formula: 0.00"), std::string::npos);
}

TEST(StatsReportTest, AverageHasTwoDecimals) {
  ReportInput in;
  in.stats.Record("sin", 10);
  in.stats.formulae = 3;
  std::string r = StatsReport(in);
  EXPECT_NE(r.find("replacements per formula: 3.33"), std::string::npos);
}

}  // namespace
}  // namespace semtex
