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


// Throughput of the per-formula stages on the bundled fixture.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "semtex/canonicalizer.h"
#include "semtex/glossary.h"
#include "semtex/lexer.h"
#include "semtex/macro_engine.h"
#include "semtex/metadata.h"

namespace {

std::string Fixture() {
  std::ifstream in(SEMTEX_FIXTURE_PATH, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const semtex::Glossary& Shipped() {
  static const semtex::Glossary g = semtex::LoadGlossary(SEMTEX_GLOSSARY_PATH);
  return g;
}

void BM_Tokenize(benchmark::State& state) {
  std::string doc = Fixture();
  for (auto _ : state) benchmark::DoNotOptimize(semtex::Tokenize(doc));
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * doc.size()));
}
BENCHMARK(BM_Tokenize);

void BM_ExtractMath(benchmark::State& state) {
  std::string doc = Fixture();
  for (auto _ : state) benchmark::DoNotOptimize(semtex::ExtractMath(doc));
}
BENCHMARK(BM_ExtractMath);

void BM_Canonicalize(benchmark::State& state) {
  std::vector<semtex::MathSpan> spans = semtex::ExtractMath(Fixture());
  const semtex::Canonicalizer& canon = Shipped().canonicalizer();
  for (auto _ : state) {
    for (const semtex::MathSpan& m : spans) {
      benchmark::DoNotOptimize(canon.Canonicalize(m.body));
    }
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * spans.size()));
}
BENCHMARK(BM_Canonicalize);

void BM_ReplaceAll(benchmark::State& state) {
  std::vector<semtex::CanonicalTree> trees;
  for (const semtex::MathSpan& m : semtex::ExtractMath(Fixture())) {
    trees.push_back(Shipped().canonicalizer().Canonicalize(m.body));
  }
  for (auto _ : state) {
    for (const semtex::CanonicalTree& t : trees) {
      benchmark::DoNotOptimize(semtex::ReplaceAll(t, Shipped()));
    }
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * trees.size()));
}
BENCHMARK(BM_ReplaceAll);

void BM_SegmentFormulae(benchmark::State& state) {
  std::string doc = Fixture();
  semtex::SegmentOptions opts;
  opts.canonicalizer = &Shipped().canonicalizer();
  for (auto _ : state) benchmark::DoNotOptimize(semtex::SegmentFormulae(doc, opts));
}
BENCHMARK(BM_SegmentFormulae);

}  // namespace

BENCHMARK_MAIN();
