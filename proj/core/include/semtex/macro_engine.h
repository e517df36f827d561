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

#ifndef SEMTEX_MACRO_ENGINE_H_
#define SEMTEX_MACRO_ENGINE_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "semtex/canonicalizer.h"
#include "semtex/glossary.h"
#include "semtex/lexer.h"

namespace semtex {

using CaptureSet = std::map<std::string, std::vector<Node>>;

struct Match {
  CaptureSet captures;
  // Number of nodes consumed at the level the match started on.
  std::size_t length = 0;
};

// Tries `rule` at nodes[pos]. Subscript and superscript arguments may be
// braced or bare; captured groups yield their contents.
std::optional<Match> MatchAt(const MacroRule& rule, std::span<const Node> nodes,
                             std::size_t pos);
std::optional<Match> MatchAt(const MacroRule& rule, const CanonicalTree& tree,
                             std::size_t pos);

struct ReplacementStats {
  std::map<std::string, std::uint64_t> per_rule;
  std::uint64_t total = 0;
  // Formulae processed and formulae with at least one replacement; callers
  // record these through AddFormula.
  std::uint64_t formulae = 0;
  std::uint64_t formulae_touched = 0;

  void Record(const std::string& rule, std::uint64_t n = 1);
  // Folds one formula's replacement counts into the running totals.
  void AddFormula(const ReplacementStats& formula);
  // Associative and commutative.
  void Merge(const ReplacementStats& other);
  // total / formulae, 0 when nothing was processed.
  double AveragePerFormula() const;

  bool operator==(const ReplacementStats&) const = default;
};

// One outermost replacement, located in the original source.
struct Replacement {
  std::string rule;
  Span source;
  std::string text;
};

struct ReplaceResult {
  CanonicalTree tree;
  ReplacementStats stats;
  std::vector<Replacement> replacements;
};

// Leftmost scan; at each position the first matching rule in glossary order
// fires. Captures are rewritten recursively. Output nodes are inert, and
// semantic macro calls already present in the input are left untouched.
ReplaceResult ReplaceAll(const CanonicalTree& tree, const Glossary& glossary);

// Expands every semantic macro call back to its presentation pattern. Throws
// UnknownSemanticMacroError for a `\name...@` call no rule produces.
TokenTree StripSemantics(const TokenTree& tree, const Glossary& glossary);

// Length in nodes of the semantic macro call starting at nodes[pos], or 0.
std::size_t SemanticCallLength(std::span<const Node> nodes, std::size_t pos,
                               const Glossary& glossary);

// Heads of the semantic macro calls in `nodes`, recursively, in order of
// appearance (with repeats).
std::vector<std::string> SemanticHeads(std::span<const Node> nodes,
                                       const Glossary& glossary);
std::vector<std::string> SemanticHeads(std::string_view latex,
                                       const Glossary& glossary);

// Canonicalize with the glossary's configuration, then ReplaceAll, returning
// the rendered semantic LaTeX.
std::string EnrichSource(std::string_view latex, const Glossary& glossary);

}  // namespace semtex

#endif  // SEMTEX_MACRO_ENGINE_H_
