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


#include "semtex/metadata.h"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "semtex/error.h"
#include "test_support.h"

namespace semtex {
namespace {

using testing::ShippedGlossary;

std::string Fixture(const std::string& name) {
  return testing::ReadText(testing::TestDataDir() / "metadata" / name);
}

std::string Corpus() {
  return testing::ReadText(testing::TestDataDir() / "corpus" / "kls_mini.tex");
}

// Segmentation, constraints and enrichment, as the pipeline runs them.
std::vector<Formula> Prepare(std::string_view doc) {
  SegmentOptions opts;
  opts.citation_key = "KLS";
  opts.canonicalizer = &ShippedGlossary().canonicalizer();
  std::vector<Formula> fs = SegmentFormulae(doc, opts).formulae;
  for (Formula& f : fs) {
    ApplyConstraints(f, MetadataConfig::Default(), opts.canonicalizer);
    EnrichFormula(f, ShippedGlossary());
  }
  return fs;
}

const Formula* ById(const std::vector<Formula>& fs, const std::string& id) {
  for (const Formula& f : fs) {
    if (f.id == id) return &f;
  }
  return nullptr;
}

std::vector<std::string> Bodies(const Formula& f, AnnotationKind kind) {
  std::vector<std::string> out;
  for (const Annotation* a : f.AnnotationsOf(kind)) out.push_back(a->body);
  return out;
}

TEST(SegmentTest, FixtureHasThirtyFormulae) {
  SegmentResult r = SegmentFormulae(Corpus());
  EXPECT_EQ(r.formulae.size(), 30u);
  EXPECT_EQ(r.display_rows, 30u);
  EXPECT_TRUE(r.warnings.empty());
  std::set<std::string> ids;
  for (const Formula& f : r.formulae) ids.insert(f.id);
  EXPECT_EQ(ids.size(), 30u);
}

TEST(SegmentTest, NoDisplayMathGivesNothing) {
  EXPECT_TRUE(SegmentFormulae("Plain prose with $x$ inline.").formulae.empty());
  EXPECT_TRUE(SegmentFormulae("").formulae.empty());
}

TEST(SegmentTest, AlignRowsBecomeFormulae) {
  SegmentResult r = SegmentFormulae(
      "\\begin{align}a&=b\\label{x:1}\\\\c&=d\\\\e&=f\\end{align}");
  ASSERT_EQ(r.formulae.size(), 3u);
  EXPECT_EQ(r.formulae[0].id, "x:1");
  EXPECT_EQ(r.formulae[1].id, "f2");
  EXPECT_EQ(Render(r.formulae[2].source_canonical.tree), "e=f");
}

TEST(SegmentTest, OrdinalBaseShiftsIds) {
  SegmentOptions opts;
  opts.ordinal_base = 10;
  SegmentResult r = SegmentFormulae("\\[x\\]", opts);
  ASSERT_EQ(r.formulae.size(), 1u);
  EXPECT_EQ(r.formulae[0].id, "f11");
  EXPECT_EQ(r.formulae[0].ordinal, 11u);
}

TEST(SegmentTest, ProofCommentsBecomeAnnotations) {
  std::vector<Formula> fs = SegmentFormulae(Corpus()).formulae;
  const Formula* gen = ById(fs, "eq:lql:gen");
  ASSERT_NE(gen, nullptr);
  EXPECT_EQ(Bodies(*gen, AnnotationKind::kProof),
            std::vector<std::string>{"expand both sides"});
}

TEST(SegmentTest, MismatchedLeftRightIsAWarning) {
  SegmentResult r = SegmentFormulae(
      "\\begin{equation}\\left(x\\end{equation}\\begin{equation}y\\end{equation}");
  EXPECT_EQ(r.formulae.size(), 1u);
  EXPECT_EQ(r.warnings.size(), 1u);
}

TEST(ConstraintTest, TrailingClauseIsSplit) {
  std::vector<Formula> fs =
      SegmentFormulae("\\begin{equation}p_n(x;a|q), \\quad 0<a<q^{-1}\\end{equation}")
          .formulae;
  ASSERT_EQ(fs.size(), 1u);
  ConstraintSplit s = DetectConstraints(fs[0]);
  EXPECT_EQ(Render(s.core.tree), "p_n(x;a|q)");
  ASSERT_EQ(s.constraints.size(), 1u);
  EXPECT_EQ(s.constraints[0].body, "0<a<q^{-1}");
  EXPECT_EQ(s.constraints[0].kind, AnnotationKind::kConstraint);
}

TEST(ConstraintTest, NoClauseLeavesBody) {
  std::vector<Formula> fs =
      SegmentFormulae("\\begin{equation}f(x,y)=g(x, y)\\end{equation}").formulae;
  ConstraintSplit s = DetectConstraints(fs[0]);
  EXPECT_EQ(s.core.tree, fs[0].source_canonical.tree);
  EXPECT_TRUE(s.constraints.empty());
}

TEST(ConstraintTest, SeveralClausesKeepOrder) {
  std::vector<Formula> fs = SegmentFormulae(Corpus()).formulae;
  const Formula* orth = ById(fs, "eq:jacobi:orth");
  ASSERT_NE(orth, nullptr);
  ConstraintSplit s = DetectConstraints(*orth);
  ASSERT_EQ(s.constraints.size(), 2u);
  EXPECT_EQ(s.constraints[0].body, "\\alpha>-1");
  EXPECT_EQ(s.constraints[1].body, "\\beta>-1");
}

TEST(ConstraintTest, CoreIsAPrefixOfTheBody) {
  // Splitting only removes the trailing clauses and their commas.
  for (const Formula& f : SegmentFormulae(Corpus()).formulae) {
    ConstraintSplit s = DetectConstraints(f);
    TokenStream body = Flatten(f.source_canonical.tree);
    TokenStream core = Flatten(s.core.tree);
    ASSERT_LE(core.size(), body.size()) << f.id;
    for (std::size_t i = 0; i < core.size(); ++i) {
      EXPECT_TRUE(SameToken(core[i], body[i])) << f.id;
    }
    if (s.constraints.empty()) {
      EXPECT_EQ(core.size(), body.size()) << f.id;
    } else {
      EXPECT_TRUE(body[core.size()].IsChar(",")) << f.id;
    }
  }
}

TEST(ConstraintTest, ProseAfterFormula) {
  std::vector<Formula> fs = Prepare(Fixture("prose.tex"));
  ASSERT_EQ(fs.size(), 1u);
  std::vector<std::string> want = {"0<q<1"};
  EXPECT_EQ(Bodies(fs[0], AnnotationKind::kConstraint), want);
  EXPECT_EQ(fs[0].AnnotationsOf(AnnotationKind::kConstraint)[0]->origin,
            "eq:prose:gen#following-prose");
}

TEST(SubstitutionTest, LambdaIsDetectedInFixture) {
  std::vector<Formula> fs = Prepare(Corpus());
  std::vector<SubstitutionDef> defs = DetectSubstitutions(fs, ShippedGlossary());
  std::set<std::string> ids;
  for (const SubstitutionDef& d : defs) ids.insert(d.def_formula_id);
  EXPECT_TRUE(ids.contains("eq:racah:lambda"));
  auto it = std::find_if(defs.begin(), defs.end(), [](const SubstitutionDef& d) {
    return d.def_formula_id == "eq:racah:lambda";
  });
  EXPECT_EQ(it->equation, "\\lambda(x)=x(x+\\gamma+\\delta+1)");
}

TEST(SubstitutionTest, NoReuseNoDefinition) {
  std::vector<Formula> fs = Prepare(
      "\\begin{equation}u=1\\end{equation}\\begin{equation}v=2\\end{equation}");
  EXPECT_TRUE(DetectSubstitutions(fs, ShippedGlossary()).empty());
}

TEST(SubstitutionTest, GlossaryMacroIsNotADefinition) {
  std::vector<Formula> fs = Prepare(
      "\\begin{equation}\\Gamma(z)=w\\end{equation}"
      "\\begin{equation}\\Gamma(z)+1\\end{equation}");
  ASSERT_EQ(fs[0].source_semantic, "\\EulerGamma@{z}=w");
  EXPECT_TRUE(DetectSubstitutions(fs, ShippedGlossary()).empty());
}

TEST(SubstitutionTest, InlinedIntoUsersAndDropped) {
  std::vector<Formula> fs = Prepare(Corpus());
  std::vector<SubstitutionDef> defs = DetectSubstitutions(fs, ShippedGlossary());
  std::vector<Formula> out = InlineSubstitutions(fs, defs);
  EXPECT_EQ(fs.size(), out.size() + defs.size());
  EXPECT_EQ(ById(out, "eq:racah:lambda"), nullptr);
  std::set<std::string> equations;
  for (const SubstitutionDef& d : defs) equations.insert(d.equation);
  std::size_t lambda_users = 0;
  for (const Formula& f : out) {
    for (const Annotation* a : f.AnnotationsOf(AnnotationKind::kSubstitution)) {
      EXPECT_TRUE(equations.contains(a->body)) << a->body;
      if (a->origin == "eq:racah:lambda") ++lambda_users;
    }
  }
  EXPECT_GE(lambda_users, 2u);
}

TEST(SubstitutionTest, NoDefsIsIdentity) {
  std::vector<Formula> fs = Prepare(Corpus());
  std::vector<Formula> out = InlineSubstitutions(fs, {});
  ASSERT_EQ(out.size(), fs.size());
  for (std::size_t i = 0; i < fs.size(); ++i) {
    EXPECT_EQ(out[i].id, fs[i].id);
    EXPECT_EQ(out[i].annotations, fs[i].annotations);
  }
}

TEST(SubstitutionTest, DefinitionsAreTransitive) {
  std::vector<Formula> fs = Prepare(Fixture("transitive.tex"));
  std::vector<SubstitutionDef> defs = DetectSubstitutions(fs, ShippedGlossary());
  ASSERT_EQ(defs.size(), 2u);
  std::vector<Formula> out = InlineSubstitutions(fs, defs);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].id, "eq:t:use");
  std::vector<std::string> want = {"A(x)=B(x)+1", "B(x)=x^2"};
  EXPECT_EQ(Bodies(out[0], AnnotationKind::kSubstitution), want);
}

TEST(SubstitutionTest, CycleThrows) {
  std::vector<Formula> fs = Prepare(Fixture("cycle.tex"));
  std::vector<SubstitutionDef> defs = DetectSubstitutions(fs, ShippedGlossary());
  ASSERT_EQ(defs.size(), 2u);
  try {
    InlineSubstitutions(fs, defs);
    FAIL() << "expected SubstitutionCycleError";
  } catch (const SubstitutionCycleError& e) {
    EXPECT_GE(e.ids().size(), 2u);
  }
}

TEST(HarvestTest, HeadingAndKeywordMakeName) {
  std::vector<Formula> fs = HarvestNamesAndNotes(Prepare(Corpus()));
  const Formula* orth = ById(fs, "eq:jacobi:orth");
  ASSERT_NE(orth, nullptr);
  EXPECT_EQ(Bodies(*orth, AnnotationKind::kName),
            std::vector<std::string>{"Jacobi orthogonality relation"});
  EXPECT_EQ(Bodies(*orth, AnnotationKind::kNote),
            std::vector<std::string>{"The weight is a beta density on the interval."});
}

TEST(HarvestTest, NoSectioningNoName) {
  std::vector<Formula> fs = HarvestNamesAndNotes(Prepare(Fixture("plain.tex")));
  ASSERT_EQ(fs.size(), 1u);
  EXPECT_TRUE(fs[0].AnnotationsOf(AnnotationKind::kName).empty());
}

TEST(HarvestTest, ParagraphBecomesNote) {
  std::vector<Formula> fs = HarvestNamesAndNotes(Prepare(Fixture("notes.tex")));
  ASSERT_EQ(fs.size(), 1u);
  EXPECT_EQ(Bodies(fs[0], AnnotationKind::kNote),
            std::vector<std::string>{
                "These polynomials satisfy a second order differential equation."});
}

TEST(HarvestTest, Idempotent) {
  std::vector<Formula> once = HarvestNamesAndNotes(Prepare(Corpus()));
  std::vector<Formula> twice = HarvestNamesAndNotes(once);
  ASSERT_EQ(once.size(), twice.size());
  for (std::size_t i = 0; i < once.size(); ++i) {
    EXPECT_EQ(once[i].annotations, twice[i].annotations) << once[i].id;
  }
}

TEST(EnrichTest, ConstraintsAreEnriched) {
  std::vector<Formula> fs = Prepare(Corpus());
  const Formula* limit = ById(fs, "eq:lql:limit");
  ASSERT_NE(limit, nullptr);
  EXPECT_EQ(Bodies(*limit, AnnotationKind::kConstraint),
            std::vector<std::string>{"\\qPochhammer{q}{\\infty}@{q}>0"});
  EXPECT_GT(limit->stats.total, 0u);
}

}  // namespace
}  // namespace semtex
