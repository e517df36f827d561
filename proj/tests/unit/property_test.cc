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


// Randomized properties over seeded generator inputs.

#include <cstddef>
#include <numeric>
#include <string>

#include <gtest/gtest.h>

#include "generators.h"
#include "oracle.h"
#include "semtex/canonicalizer.h"
#include "semtex/error.h"
#include "semtex/lexer.h"
#include "semtex/macro_engine.h"
#include "test_support.h"

namespace semtex {
namespace {

constexpr int kCases = 1000;

using testing::LatexGenerator;
using testing::ShippedGlossary;

TEST(LexerPropertyTest, RoundTripOnArbitraryBytes) {
  LatexGenerator gen(11);
  for (int i = 0; i < kCases; ++i) {
    std::string s = gen.Bytes();
    ASSERT_EQ(Detokenize(Tokenize(s)), s) << s;
  }
}

TEST(LexerPropertyTest, FlattenRebuildsGroupedStream) {
  LatexGenerator gen(12);
  int built = 0;
  for (int i = 0; i < kCases; ++i) {
    std::string s = gen.Bytes();
    TokenStream ts = Tokenize(s);
    TokenTree tree;
    try {
      tree = BuildGroups(ts);
    } catch (const UnbalancedGroupError&) {
      continue;
    }
    ++built;
    TokenStream back = Flatten(tree);
    ASSERT_EQ(back.size(), ts.size()) << s;
    for (std::size_t k = 0; k < ts.size(); ++k) {
      ASSERT_TRUE(SameToken(back[k], ts[k])) << s;
      ASSERT_EQ(back[k].span, ts[k].span) << s;
    }
  }
  EXPECT_GT(built, kCases / 10);
}

TEST(LexerPropertyTest, MathAndProseTileDocuments) {
  LatexGenerator gen(13);
  for (int i = 0; i < kCases; ++i) {
    std::string doc = gen.Document();
    auto spans = ExtractMath(doc);
    std::vector<Span> prose = ProseSpans(spans, doc.size());
    ASSERT_EQ(prose.size(), spans.size() + 1);
    std::string rebuilt;
    for (std::size_t k = 0; k < spans.size(); ++k) {
      rebuilt += doc.substr(prose[k].begin, prose[k].size());
      rebuilt += doc.substr(spans[k].span.begin, spans[k].span.size());
    }
    rebuilt += doc.substr(prose.back().begin, prose.back().size());
    ASSERT_EQ(rebuilt, doc);
  }
}

TEST(CanonicalizePropertyTest, Idempotent) {
  LatexGenerator gen(21);
  const Canonicalizer& canon = ShippedGlossary().canonicalizer();
  for (int i = 0; i < kCases; ++i) {
    std::string s = gen.Math();
    CanonicalTree once = canon.Canonicalize(BuildGroups(Tokenize(s)));
    ASSERT_EQ(canon.Canonicalize(once.tree).tree, once.tree) << s;
  }
}

TEST(ReplaceAllPropertyTest, Idempotent) {
  LatexGenerator gen(31);
  for (int i = 0; i < kCases; ++i) {
    std::string s = gen.Math();
    ReplaceResult once = ReplaceAll(testing::CanonicalOf(s), ShippedGlossary());
    ReplaceResult twice = ReplaceAll(once.tree, ShippedGlossary());
    ASSERT_EQ(twice.tree.tree, once.tree.tree) << s;
    ASSERT_EQ(twice.stats.total, 0u) << s;
  }
}

TEST(ReplaceAllPropertyTest, CountsMatchBruteForceOracle) {
  LatexGenerator gen(41);
  int checked = 0;
  for (int i = 0; i < 2 * kCases; ++i) {
    std::string s = gen.Math();
    CanonicalTree c = testing::CanonicalOf(s);
    TokenStream flat = Flatten(c.tree);
    if (flat.size() > 200) continue;
    ++checked;
    ReplaceResult r = ReplaceAll(c, ShippedGlossary());
    ASSERT_EQ(r.stats.per_rule, testing::BruteForceCounts(flat, ShippedGlossary().rules()))
        << s;
    std::uint64_t sum = 0;
    for (const auto& [name, n] : r.stats.per_rule) sum += n;
    ASSERT_EQ(r.stats.total, sum) << s;
  }
  EXPECT_GE(checked, kCases);
}

}  // namespace
}  // namespace semtex
