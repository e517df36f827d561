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

// The glossary: one rewrite rule per semantic macro.
//
// A rule pairs a presentation pattern, e.g. for the Jacobi polynomial
//
//   P _ <n> ^ { ( <a> , <b> ) } ( <x> )
//
// with a semantic template `\Jacobi{#a}{#b}{#n}@{#x}`. Template groups before
// the `@`/`@@` marker are parameters, groups after it are arguments. Every
// template group holds exactly one placeholder, which keeps the rewrite
// invertible (see StripSemantics).

#ifndef SEMTEX_GLOSSARY_H_
#define SEMTEX_GLOSSARY_H_

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "semtex/canonicalizer.h"
#include "semtex/lexer.h"

namespace semtex {

enum class CaptureMode {
  // Maximal run of nodes up to the next top-level separator or closing
  // delimiter; balanced in `(`/`)` and `[`/`]`.
  kBalanced,
  // Exactly one `{...}` group; captures its contents.
  kSingleGroup,
  // One group (captures its contents) or one symbol token: a letter, digit,
  // non-ASCII character, or control sequence other than a delimiter.
  kSingleToken,
};

struct PatternAtom {
  enum class Kind { kLiteral, kCapture, kSeparator, kOpen, kClose };

  Kind kind = Kind::kLiteral;
  Token literal;
  std::string capture;
  CaptureMode mode = CaptureMode::kBalanced;
  // Separator character (`,` `;` `|`) or delimiter (`(` `[` `{` and closers).
  std::string delimiter;

  static PatternAtom Literal(Token t);
  static PatternAtom Capture(std::string name, CaptureMode mode);
  static PatternAtom Separator(std::string c);
  static PatternAtom Open(std::string c);
  static PatternAtom Close(std::string c);
};

struct SemanticTemplate {
  std::string head;
  std::vector<std::string> params;
  std::string at;
  std::vector<std::string> args;
};

struct MacroRule {
  std::string name;
  std::vector<PatternAtom> pattern;
  std::string template_source;
  SemanticTemplate semantic;
  std::string at_variant;
  int priority = 0;
  std::string definition_link;
  std::string description;
  // Semantic form shown in symbols lists; defaults to the template with the
  // `#` placeholder markers dropped.
  std::string symbol;
};

// Builds and validates a rule: unique capture names, matched open/close atoms,
// well-formed template, placeholders equal to captures.
MacroRule MakeRule(std::string name, std::vector<PatternAtom> pattern,
                   std::string template_source, std::string at_variant,
                   int priority = 0, std::string definition_link = {},
                   std::string description = {});

class Glossary {
 public:
  Glossary() = default;
  // Validates uniqueness and sorts by (priority desc, pattern length desc,
  // name asc). Throws DuplicateMacroError.
  Glossary(std::vector<MacroRule> rules, CanonicalizationConfig canonicalization);

  const std::vector<MacroRule>& rules() const { return rules_; }
  const CanonicalizationConfig& canonicalization() const {
    return canonicalization_;
  }
  const Canonicalizer& canonicalizer() const { return *canonicalizer_; }

  const MacroRule* FindByName(std::string_view name) const;
  bool IsSemanticHead(std::string_view head) const;
  // Rules whose template starts with `\head`, in glossary order.
  std::vector<const MacroRule*> RulesWithHead(std::string_view head) const;
  // The rule describing a head in symbols lists: the rule named like the
  // head if any, else the first rule with that head.
  const MacroRule* PrimaryRule(std::string_view head) const;

 private:
  std::vector<MacroRule> rules_;
  CanonicalizationConfig canonicalization_ = CanonicalizationConfig::Default();
  std::shared_ptr<const Canonicalizer> canonicalizer_ =
      std::make_shared<Canonicalizer>();
  std::map<std::string, std::vector<std::size_t>, std::less<>> by_head_;
};

// Throws GlossaryParseError, DuplicateMacroError,
// TemplateCaptureMismatchError.
Glossary ParseGlossary(std::string_view json_text);
Glossary LoadGlossary(const std::filesystem::path& path);

}  // namespace semtex

#endif  // SEMTEX_GLOSSARY_H_
