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

#include "semtex/lexer.h"

#include <algorithm>
#include <utility>

#include "semtex/error.h"

namespace semtex {
namespace {

bool IsAsciiLetter(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

// Length of the UTF-8 sequence starting at s[i]; malformed sequences count as
// a single byte so lexing stays total.
std::size_t CodePointLength(std::string_view s, std::size_t i) {
  auto lead = static_cast<unsigned char>(s[i]);
  std::size_t n = 1;
  if (lead >= 0xF0 && lead <= 0xF4) {
    n = 4;
  } else if (lead >= 0xE0) {
    n = 3;
  } else if (lead >= 0xC2 && lead <= 0xDF) {
    n = 2;
  }
  if (lead >= 0xF5) n = 1;
  if (i + n > s.size()) return 1;
  for (std::size_t k = 1; k < n; ++k) {
    auto c = static_cast<unsigned char>(s[i + k]);
    if ((c & 0xC0) != 0x80) return 1;
  }
  return n;
}

std::optional<MathEnvironment> EnvironmentFromName(std::string_view name) {
  if (name == "equation") return MathEnvironment::kEquation;
  if (name == "equation*") return MathEnvironment::kEquationStar;
  if (name == "align") return MathEnvironment::kAlign;
  if (name == "align*") return MathEnvironment::kAlignStar;
  if (name == "eqnarray" || name == "eqnarray*") {
    return MathEnvironment::kEqnarray;
  }
  if (name == "displaymath") return MathEnvironment::kDisplayMath;
  return std::nullopt;
}

bool IsInsignificant(const Token& t) {
  return t.kind == TokenKind::kWhitespace || t.kind == TokenKind::kComment;
}

// If tokens[i] starts `\begin{name}` or `\end{name}` (selected by `command`),
// stores the name and returns the index one past the closing brace.
std::optional<std::size_t> ParseEnvCommand(std::span<const Token> tokens,
                                           std::size_t i,
                                           std::string_view command,
                                           std::string* name) {
  if (!tokens[i].IsControlSequence(command)) return std::nullopt;
  std::size_t j = i + 1;
  while (j < tokens.size() && tokens[j].kind == TokenKind::kWhitespace) ++j;
  if (j >= tokens.size() || tokens[j].kind != TokenKind::kGroupOpen) {
    return std::nullopt;
  }
  std::string n;
  for (++j; j < tokens.size(); ++j) {
    if (tokens[j].kind == TokenKind::kGroupClose) {
      *name = std::move(n);
      return j + 1;
    }
    if (tokens[j].kind != TokenKind::kCharacter) return std::nullopt;
    n += tokens[j].text;
  }
  return std::nullopt;
}

struct RawSpan {
  MathEnvironment env;
  std::size_t body_begin;  // token index
  std::size_t body_end;    // token index, exclusive
  Span outer;
};

Span TokenRangeSpan(std::span<const Token> tokens, std::size_t begin,
                    std::size_t end, std::size_t fallback) {
  if (begin >= end) return {fallback, fallback};
  return {tokens[begin].span.begin, tokens[end - 1].span.end};
}

// Splits an alignment body at top-level `\\`, ignoring separators nested in
// groups or inner environments. Returns [begin, end) token ranges and the
// index of each separator (or `end` for the last row).
struct RowRange {
  std::size_t begin;
  std::size_t end;
};

std::vector<RowRange> SplitRows(std::span<const Token> tokens,
                                std::size_t begin, std::size_t end) {
  std::vector<RowRange> rows;
  int depth = 0;
  int env_depth = 0;
  std::size_t row_begin = begin;
  for (std::size_t i = begin; i < end; ++i) {
    const Token& t = tokens[i];
    if (t.kind == TokenKind::kGroupOpen) {
      ++depth;
    } else if (t.kind == TokenKind::kGroupClose) {
      --depth;
    } else if (t.IsControlSequence("begin")) {
      ++env_depth;
    } else if (t.IsControlSequence("end")) {
      --env_depth;
    } else if (depth == 0 && env_depth == 0 && t.IsControlSequence("\\")) {
      rows.push_back({row_begin, i});
      row_begin = i + 1;
    }
  }
  rows.push_back({row_begin, end});
  return rows;
}

bool RowIsEmpty(std::span<const Token> tokens, RowRange r) {
  for (std::size_t i = r.begin; i < r.end; ++i) {
    if (!IsInsignificant(tokens[i])) return false;
  }
  return true;
}

}  // namespace

Span Cover(Span a, Span b) {
  return {std::min(a.begin, b.begin), std::max(a.end, b.end)};
}

const char* TokenKindName(TokenKind kind) {
  switch (kind) {
    case TokenKind::kControlSequence: return "ControlSequence";
    case TokenKind::kCharacter:       return "Character";
    case TokenKind::kGroupOpen:       return "GroupOpen";
    case TokenKind::kGroupClose:      return "GroupClose";
    case TokenKind::kMathShift:       return "MathShift";
    case TokenKind::kSuperscript:     return "Superscript";
    case TokenKind::kSubscript:       return "Subscript";
    case TokenKind::kAlignmentTab:    return "AlignmentTab";
    case TokenKind::kComment:         return "Comment";
    case TokenKind::kWhitespace:      return "Whitespace";
  }
  return "Unknown";
}

std::string_view Token::name() const {
  if (kind != TokenKind::kControlSequence || text.empty()) return {};
  return std::string_view(text).substr(1);
}

bool Token::IsControlWord() const {
  auto n = name();
  return !n.empty() && IsAsciiLetter(n.front());
}

Token Token::ControlSequence(std::string_view name, Span span) {
  return Token{TokenKind::kControlSequence, "\\" + std::string(name), span};
}

Token Token::Character(std::string_view ch, Span span) {
  return Token{TokenKind::kCharacter, std::string(ch), span};
}

Token Token::Of(TokenKind kind, std::string_view text, Span span) {
  return Token{kind, std::string(text), span};
}

bool SameToken(const Token& a, const Token& b) {
  return a.kind == b.kind && a.text == b.text;
}

Node Node::Leaf(Token t) {
  Node n;
  n.token = std::move(t);
  return n;
}

Node Node::Group(std::vector<Node> children, Token open, Token close) {
  Node n;
  n.is_group = true;
  open.kind = TokenKind::kGroupOpen;
  if (open.text.empty()) open.text = "{";
  close.kind = TokenKind::kGroupClose;
  if (close.text.empty()) close.text = "}";
  n.token = std::move(open);
  n.close = std::move(close);
  n.children = std::move(children);
  return n;
}

Span Node::span() const {
  if (!is_group) return token.span;
  return Cover(token.span, close.span);
}

bool operator==(const Node& a, const Node& b) {
  if (a.is_group != b.is_group) return false;
  if (!a.is_group) return SameToken(a.token, b.token);
  return a.children == b.children;
}

TokenStream Tokenize(std::string_view s) {
  TokenStream out;
  std::size_t i = 0;
  auto emit = [&](TokenKind kind, std::size_t len) {
    out.push_back(Token{kind, std::string(s.substr(i, len)), {i, i + len}});
    i += len;
  };
  while (i < s.size()) {
    char c = s[i];
    switch (c) {
      case '\\': {
        if (i + 1 >= s.size()) {
          emit(TokenKind::kControlSequence, 1);
        } else if (IsAsciiLetter(s[i + 1])) {
          std::size_t j = i + 1;
          while (j < s.size() && IsAsciiLetter(s[j])) ++j;
          emit(TokenKind::kControlSequence, j - i);
        } else {
          emit(TokenKind::kControlSequence, 1 + CodePointLength(s, i + 1));
        }
        break;
      }
      case '{': emit(TokenKind::kGroupOpen, 1); break;
      case '}': emit(TokenKind::kGroupClose, 1); break;
      case '$': emit(TokenKind::kMathShift, 1); break;
      case '^': emit(TokenKind::kSuperscript, 1); break;
      case '_': emit(TokenKind::kSubscript, 1); break;
      case '&': emit(TokenKind::kAlignmentTab, 1); break;
      case '%': {
        std::size_t j = s.find('\n', i);
        if (j == std::string_view::npos) j = s.size();
        emit(TokenKind::kComment, j - i);
        break;
      }
      default: {
        if (IsSpace(c)) {
          std::size_t j = i;
          while (j < s.size() && IsSpace(s[j])) ++j;
          emit(TokenKind::kWhitespace, j - i);
        } else {
          emit(TokenKind::kCharacter, CodePointLength(s, i));
        }
      }
    }
  }
  return out;
}

std::string Detokenize(std::span<const Token> tokens) {
  std::string out;
  const Token* prev = nullptr;
  for (const Token& t : tokens) {
    if (prev != nullptr && prev->IsControlWord() && !t.text.empty() &&
        IsAsciiLetter(t.text.front())) {
      out += ' ';
    }
    out += t.text;
    prev = &t;
  }
  return out;
}

TokenTree BuildGroups(std::span<const Token> tokens) {
  // Explicit stack: each frame collects the children of one open group.
  struct Frame {
    Token open;
    std::vector<Node> children;
  };
  std::vector<Frame> stack(1);
  for (const Token& t : tokens) {
    if (t.kind == TokenKind::kGroupOpen) {
      stack.push_back(Frame{t, {}});
    } else if (t.kind == TokenKind::kGroupClose) {
      if (stack.size() == 1) throw UnbalancedGroupError(t.span.begin);
      Frame done = std::move(stack.back());
      stack.pop_back();
      stack.back().children.push_back(
          Node::Group(std::move(done.children), std::move(done.open), t));
    } else {
      stack.back().children.push_back(Node::Leaf(t));
    }
  }
  if (stack.size() != 1) throw UnbalancedGroupError(stack.back().open.span.begin);
  return TokenTree{std::move(stack.front().children)};
}

namespace {

void FlattenInto(std::span<const Node> nodes, TokenStream* out) {
  for (const Node& n : nodes) {
    if (n.is_group) {
      out->push_back(n.token);
      FlattenInto(n.children, out);
      out->push_back(n.close);
    } else {
      out->push_back(n.token);
    }
  }
}

}  // namespace

TokenStream Flatten(std::span<const Node> nodes) {
  TokenStream out;
  FlattenInto(nodes, &out);
  return out;
}

std::string Render(std::span<const Node> nodes) {
  TokenStream flat = Flatten(nodes);
  return Detokenize(flat);
}

std::string_view EnvironmentName(MathEnvironment env) {
  switch (env) {
    case MathEnvironment::kEquation:       return "equation";
    case MathEnvironment::kEquationStar:   return "equation*";
    case MathEnvironment::kAlign:          return "align";
    case MathEnvironment::kAlignStar:      return "align*";
    case MathEnvironment::kEqnarray:       return "eqnarray";
    case MathEnvironment::kDisplayMath:    return "displaymath";
    case MathEnvironment::kInlineDollar:   return "inline-dollar";
    case MathEnvironment::kBracketDisplay: return "bracket-display";
  }
  return "unknown";
}

bool IsDisplay(MathEnvironment env) {
  return env != MathEnvironment::kInlineDollar;
}

bool IsAlignment(MathEnvironment env) {
  return env == MathEnvironment::kAlign || env == MathEnvironment::kAlignStar ||
         env == MathEnvironment::kEqnarray;
}

std::optional<std::string> FindLabel(std::span<const Node> nodes) {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!nodes[i].IsControlSequence("label")) continue;
    std::size_t j = i + 1;
    while (j < nodes.size() && nodes[j].IsLeaf(TokenKind::kWhitespace)) ++j;
    if (j < nodes.size() && nodes[j].is_group) {
      return Render(nodes[j].children);
    }
  }
  return std::nullopt;
}

std::vector<MathSpan> ExtractMath(std::string_view doc) {
  TokenStream tokens = Tokenize(doc);
  return ExtractMath(doc, tokens);
}

std::vector<MathSpan> ExtractMath(std::string_view doc,
                                  std::span<const Token> tokens) {
  std::vector<RawSpan> raw;
  std::size_t i = 0;
  const std::size_t n = tokens.size();
  while (i < n) {
    const Token& t = tokens[i];
    std::string name;
    if (auto after = ParseEnvCommand(tokens, i, "begin", &name)) {
      auto env = EnvironmentFromName(name);
      if (!env) {
        i = *after;
        continue;
      }
      std::size_t j = *after;
      std::optional<std::size_t> end_after;
      std::size_t end_index = 0;
      for (; j < n; ++j) {
        std::string end_name;
        auto e = ParseEnvCommand(tokens, j, "end", &end_name);
        if (e && end_name == name) {
          end_after = e;
          end_index = j;
          break;
        }
      }
      if (!end_after) throw UnterminatedEnvironmentError(name, t.span.begin);
      raw.push_back({*env, *after, end_index,
                     {t.span.begin, tokens[*end_after - 1].span.end}});
      i = *end_after;
    } else if (t.IsControlSequence("[")) {
      std::size_t j = i + 1;
      while (j < n && !tokens[j].IsControlSequence("]")) ++j;
      if (j >= n) throw UnterminatedEnvironmentError("\\[", t.span.begin);
      raw.push_back({MathEnvironment::kBracketDisplay, i + 1, j,
                     {t.span.begin, tokens[j].span.end}});
      i = j + 1;
    } else if (t.kind == TokenKind::kMathShift) {
      bool display = i + 1 < n && tokens[i + 1].kind == TokenKind::kMathShift;
      std::size_t body = i + (display ? 2 : 1);
      std::size_t j = body;
      for (; j < n; ++j) {
        if (tokens[j].kind != TokenKind::kMathShift) continue;
        if (!display) break;
        if (j + 1 < n && tokens[j + 1].kind == TokenKind::kMathShift) break;
      }
      if (j >= n) {
        throw UnterminatedEnvironmentError(display ? "$$" : "$", t.span.begin);
      }
      std::size_t close_end = j + (display ? 2 : 1);
      raw.push_back({display ? MathEnvironment::kBracketDisplay
                             : MathEnvironment::kInlineDollar,
                     body, j, {t.span.begin, tokens[close_end - 1].span.end}});
      i = close_end;
    } else {
      ++i;
    }
  }

  std::vector<MathSpan> out;
  for (const RawSpan& r : raw) {
    std::vector<RowRange> rows;
    if (IsAlignment(r.env)) {
      rows = SplitRows(tokens, r.body_begin, r.body_end);
      std::vector<RowRange> kept;
      for (const RowRange& row : rows) {
        if (!RowIsEmpty(tokens, row)) kept.push_back(row);
      }
      if (kept.empty()) kept.push_back({r.body_begin, r.body_end});
      rows = std::move(kept);
    } else {
      rows.push_back({r.body_begin, r.body_end});
    }
    std::size_t first_out = out.size();
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const RowRange& row = rows[k];
      MathSpan m;
      m.environment = r.env;
      m.row = k;
      m.environment_span = r.outer;
      std::size_t fallback = row.begin < n ? tokens[row.begin].span.begin
                                           : doc.size();
      if (row.begin == row.end && row.begin > 0) {
        fallback = tokens[row.begin - 1].span.end;
      }
      m.body_span = TokenRangeSpan(tokens, row.begin, row.end, fallback);
      m.body = BuildGroups(tokens.subspan(row.begin, row.end - row.begin));
      m.label = FindLabel(m.body.nodes);
      out.push_back(std::move(m));
    }
    // Tile the environment: each row owns everything up to the start of the
    // next row's body.
    for (std::size_t k = first_out; k < out.size(); ++k) {
      Span& s = out[k].span;
      s.begin = k == first_out ? r.outer.begin : out[k - 1].span.end;
      s.end = k + 1 == out.size() ? r.outer.end : out[k + 1].body_span.begin;
    }
  }
  return out;
}

std::vector<Span> ProseSpans(std::span<const MathSpan> spans,
                             std::size_t doc_size) {
  std::vector<Span> prose;
  std::size_t pos = 0;
  for (const MathSpan& m : spans) {
    prose.push_back({pos, m.span.begin});
    pos = m.span.end;
  }
  prose.push_back({pos, doc_size});
  return prose;
}

}  // namespace semtex
