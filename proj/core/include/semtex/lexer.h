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

// LaTeX lexing with fixed (standard) category codes.
//
// Tokens keep their exact source bytes, so Detokenize(Tokenize(s)) == s for
// every input. Token trees group `{ ... }` pairs and are the unit every later
// stage (canonicalization, macro replacement) operates on.

#ifndef SEMTEX_LEXER_H_
#define SEMTEX_LEXER_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace semtex {

// Half-open byte range [begin, end) into a source document.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool operator==(const Span&) const = default;
};

// Smallest span covering both.
Span Cover(Span a, Span b);

enum class TokenKind {
  kControlSequence,
  kCharacter,
  kGroupOpen,
  kGroupClose,
  kMathShift,
  kSuperscript,
  kSubscript,
  kAlignmentTab,
  kComment,
  kWhitespace,
};

const char* TokenKindName(TokenKind kind);

struct Token {
  TokenKind kind = TokenKind::kCharacter;
  // Exact source bytes. For control sequences this includes the backslash.
  std::string text;
  Span span;

  // Control-sequence name without the backslash; empty for other kinds and
  // for a lone trailing backslash.
  std::string_view name() const;
  bool IsControlSequence(std::string_view n) const {
    return kind == TokenKind::kControlSequence && name() == n;
  }
  bool IsChar(std::string_view c) const {
    return kind == TokenKind::kCharacter && text == c;
  }
  // A control word is a control sequence whose name is made of letters.
  bool IsControlWord() const;

  static Token ControlSequence(std::string_view name, Span span = {});
  static Token Character(std::string_view ch, Span span = {});
  static Token Of(TokenKind kind, std::string_view text, Span span = {});
};

// Kind and text equality; spans are provenance, not identity.
bool SameToken(const Token& a, const Token& b);

using TokenStream = std::vector<Token>;

// A node of a token tree: either a leaf token or a `{ ... }` group.
struct Node {
  // Leaf token, or the opening brace for a group.
  Token token;
  // Closing brace; groups only.
  Token close;
  std::vector<Node> children;
  bool is_group = false;
  // Set on macro-replacement output; the replacement engine never rematches
  // an inert node.
  bool inert = false;

  static Node Leaf(Token t);
  static Node Group(std::vector<Node> children, Token open = {}, Token close = {});

  bool IsLeaf(TokenKind kind) const { return !is_group && token.kind == kind; }
  bool IsControlSequence(std::string_view n) const {
    return !is_group && token.IsControlSequence(n);
  }
  bool IsChar(std::string_view c) const { return !is_group && token.IsChar(c); }

  // Source span of the whole node, braces included.
  Span span() const;
};

// Structural equality ignoring spans and inert flags.
bool operator==(const Node& a, const Node& b);

struct TokenTree {
  std::vector<Node> nodes;
  bool operator==(const TokenTree& other) const = default;
};

// Lexing is total: every byte of `source` is covered by exactly one token.
TokenStream Tokenize(std::string_view source);

// Concatenates token texts. A single space is inserted between a control word
// and a following token that starts with an ASCII letter, which only happens
// for streams that had whitespace removed; on Tokenize output this is the
// exact inverse.
std::string Detokenize(std::span<const Token> tokens);

// Throws UnbalancedGroupError on a stray `}` or an unclosed `{`.
TokenTree BuildGroups(std::span<const Token> tokens);

TokenStream Flatten(std::span<const Node> nodes);
inline TokenStream Flatten(const TokenTree& tree) { return Flatten(tree.nodes); }

// Detokenize(Flatten(nodes)).
std::string Render(std::span<const Node> nodes);
inline std::string Render(const TokenTree& tree) { return Render(tree.nodes); }

enum class MathEnvironment {
  kEquation,
  kEquationStar,
  kAlign,
  kAlignStar,
  kEqnarray,
  kDisplayMath,
  kInlineDollar,
  kBracketDisplay,
};

std::string_view EnvironmentName(MathEnvironment env);
bool IsDisplay(MathEnvironment env);
// Environments whose body is split into one span per `\\` row.
bool IsAlignment(MathEnvironment env);

struct MathSpan {
  MathEnvironment environment = MathEnvironment::kEquation;
  TokenTree body;
  std::optional<std::string> label;
  // Bytes attributed to this span. Rows of an alignment environment tile the
  // environment: delimiters and `\\` separators belong to the adjacent row.
  Span span;
  // Bytes of the body (row content) alone.
  Span body_span;
  // The whole enclosing environment, delimiters included.
  Span environment_span;
  // Row index within the environment; 0 for non-alignment environments.
  std::size_t row = 0;
};

// Locates math in document order. Math nested inside a reported span is not
// reported again. Throws UnterminatedEnvironmentError or UnbalancedGroupError.
std::vector<MathSpan> ExtractMath(std::string_view doc);
std::vector<MathSpan> ExtractMath(std::string_view doc,
                                  std::span<const Token> tokens);

// The complement of `spans` in [0, doc_size): one (possibly empty) prose span
// before each math span and one after the last.
std::vector<Span> ProseSpans(std::span<const MathSpan> spans,
                             std::size_t doc_size);

// Text of a `\label{...}` found at the top level of `nodes`.
std::optional<std::string> FindLabel(std::span<const Node> nodes);

}  // namespace semtex

#endif  // SEMTEX_LEXER_H_
