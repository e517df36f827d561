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

// Formula segmentation and rule-based metadata extraction.
//
// A document is cut into one Formula per display-math row. Each formula then
// collects annotations:
//
//   Constraint    trailing `, <relation>` clause, or a "where $0<q<1$"
//                 sentence right after the environment
//   Substitution  a `H = RHS` formula whose head H is used by other formulae
//                 of the same (sub)section; the definition is folded into
//                 every user and dropped from the formula list
//   Name          enclosing heading plus the nearest relation keyword
//   Proof         `% proof: ...` comments inside the formula
//   Note          remaining prose of the paragraph before the formula

#ifndef SEMTEX_METADATA_H_
#define SEMTEX_METADATA_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "semtex/canonicalizer.h"
#include "semtex/glossary.h"
#include "semtex/lexer.h"
#include "semtex/macro_engine.h"

namespace semtex {

enum class AnnotationKind { kConstraint, kSubstitution, kName, kProof, kNote };

const char* AnnotationKindName(AnnotationKind kind);

struct Annotation {
  AnnotationKind kind = AnnotationKind::kNote;
  // Semantic LaTeX for constraints and substitutions, prose otherwise.
  std::string body;
  // Formula id or "<begin>-<end>" byte range the annotation was taken from.
  std::string origin;

  bool operator==(const Annotation&) const = default;
};

struct Citation {
  std::string key;
  std::string tag;
};

struct MetadataConfig {
  std::vector<std::string> name_keywords;
  std::vector<std::string> constraint_introducers;

  static MetadataConfig Default();
};

struct Formula {
  std::string id;
  std::optional<std::string> label;
  std::size_t ordinal = 0;
  MathEnvironment environment = MathEnvironment::kEquation;
  std::size_t row = 0;
  std::string source_file;
  Span source_span;
  std::string source_original;
  // Canonical core (constraint clauses split off once DetectConstraints ran).
  CanonicalTree source_canonical;
  // ReplaceAll output for the core, and its rendering.
  TokenTree semantic;
  std::string source_semantic;
  ReplacementStats stats;
  Citation citation;
  std::vector<Annotation> annotations;

  // Context captured at segmentation time.
  std::size_t unit = 0;
  std::string heading;
  std::size_t environment_index = 0;
  std::string preceding_prose;
  std::string following_prose;

  std::vector<const Annotation*> AnnotationsOf(AnnotationKind kind) const;
};

struct SegmentOptions {
  // Added to each row's 1-based position for `f<ordinal>` ids.
  std::size_t ordinal_base = 0;
  std::string source_file;
  std::string citation_key;
  const Canonicalizer* canonicalizer = nullptr;
};

struct SegmentResult {
  std::vector<Formula> formulae;
  // Per-formula failures (e.g. \left without \right); the formula is dropped.
  std::vector<std::string> warnings;
  std::size_t display_rows = 0;
};

// One Formula per display-math row, with its canonical body, `\label`-derived
// or ordinal id, proof comments, and surrounding prose. Throws lexer errors.
SegmentResult SegmentFormulae(std::string_view doc,
                              const SegmentOptions& options = {});

struct ConstraintSplit {
  CanonicalTree core;
  std::vector<Annotation> constraints;
};

// Splits trailing top-level relational clauses off the canonical body, and
// reads "where/for/provided $...$" sentences following the formula.
ConstraintSplit DetectConstraints(const Formula& f,
                                  const MetadataConfig& config = MetadataConfig::Default(),
                                  const Canonicalizer* canonicalizer = nullptr);

// Runs DetectConstraints and stores the core and constraint annotations.
void ApplyConstraints(Formula& f, const MetadataConfig& config,
                      const Canonicalizer* canonicalizer = nullptr);

// ReplaceAll over the core and every constraint body; fills semantic,
// source_semantic and stats.
void EnrichFormula(Formula& f, const Glossary& glossary);

// Whether the nodes contain a relational token anywhere.
bool ContainsRelation(std::span<const Node> nodes);

struct SubstitutionDef {
  // Head tokens of the left-hand side (e.g. `\lambda` or `B_n`).
  TokenStream lhs_head;
  TokenTree lhs;
  TokenTree rhs;
  std::string equation;
  std::string def_formula_id;
  std::size_t unit = 0;
};

// A formula defines a substitution when its semantic core is one equation
// `H = RHS` with H a simple symbol or an application of simple symbols, H is
// not a glossary macro, and H occurs in another formula of the same unit.
std::vector<SubstitutionDef> DetectSubstitutions(std::span<const Formula> fs,
                                                 const Glossary& glossary);

// Attaches each definition (and, depth-first, the definitions it uses) to
// every formula using it, and removes the defining formulae. Throws
// SubstitutionCycleError.
std::vector<Formula> InlineSubstitutions(std::vector<Formula> fs,
                                         std::span<const SubstitutionDef> defs);

// Name and Note annotations from headings and the prose before each formula.
std::vector<Formula> HarvestNamesAndNotes(
    std::vector<Formula> fs, const MetadataConfig& config = MetadataConfig::Default());

// Whether `needle` occurs as a contiguous token run in `haystack`, ignoring
// group braces on both sides.
bool ContainsHead(std::span<const Node> haystack, std::span<const Token> needle);

}  // namespace semtex

#endif  // SEMTEX_METADATA_H_
