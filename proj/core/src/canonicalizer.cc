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

#include "semtex/canonicalizer.h"

#include <optional>

#include "semtex/error.h"

namespace semtex {
namespace {

// Parses a one-token snippet such as `\,`, `~` or `(`.
std::optional<Token> SingleToken(const std::string& snippet) {
  TokenStream ts = Tokenize(snippet);
  if (ts.size() != 1) return std::nullopt;
  ts[0].span = {};
  return ts[0];
}

bool IsSkippable(const Node& n) {
  return n.IsLeaf(TokenKind::kWhitespace) || n.IsLeaf(TokenKind::kComment);
}

void CollectProvenance(const std::vector<Node>& nodes, std::vector<Span>* out) {
  for (const Node& n : nodes) {
    out->push_back(n.token.span);
    if (n.is_group) {
      CollectProvenance(n.children, out);
      out->push_back(n.close.span);
    }
  }
}

std::vector<Node> DropLayoutTokens(const std::vector<Node>& nodes) {
  std::vector<Node> out;
  out.reserve(nodes.size());
  for (const Node& n : nodes) {
    if (n.IsLeaf(TokenKind::kAlignmentTab) || n.IsLeaf(TokenKind::kComment)) {
      continue;
    }
    if (n.is_group) {
      Node g = n;
      g.children = DropLayoutTokens(n.children);
      out.push_back(std::move(g));
    } else {
      out.push_back(n);
    }
  }
  return out;
}

}  // namespace

CanonicalizationConfig CanonicalizationConfig::Default() {
  CanonicalizationConfig c;
  c.spacing_tokens = {"\\,", "\\!", "\\;", "\\:", "\\>", "\\ ", "\\quad",
                      "\\qquad", "~", "\\hspace{}", "\\mspace{}",
                      "\\thinspace", "\\medspace", "\\thickspace",
                      "\\negthinspace", "\\enspace"};
  c.delimiter_classes = {
      {"(", {"\\lparen"}},      {")", {"\\rparen"}},
      {"[", {"\\lbrack"}},      {"]", {"\\rbrack"}},
      {"\\{", {"\\lbrace"}},    {"\\}", {"\\rbrace"}},
  };
  c.size_prefixes = {"\\left",  "\\right", "\\middle", "\\big",   "\\Big",
                     "\\bigg",  "\\Bigg",  "\\bigl",   "\\bigr",  "\\Bigl",
                     "\\Bigr",  "\\biggl", "\\biggr",  "\\Biggl", "\\Biggr",
                     "\\bigm",  "\\Bigm",  "\\biggm",  "\\Biggm"};
  c.bar_synonyms = {"\\mid", "\\vert", "\\lvert", "\\rvert"};
  return c;
}

Canonicalizer::Canonicalizer()
    : Canonicalizer(CanonicalizationConfig::Default()) {}

Canonicalizer::Canonicalizer(const CanonicalizationConfig& config) {
  for (const std::string& s : config.spacing_tokens) {
    TokenStream ts = Tokenize(s);
    bool with_arg = ts.size() == 3 && ts[1].kind == TokenKind::kGroupOpen &&
                    ts[2].kind == TokenKind::kGroupClose;
    if (ts.empty() || (ts.size() != 1 && !with_arg)) {
      throw ConfigInvalidError("invalid spacing token '" + s + "'");
    }
    Key key{ts[0].kind, ts[0].text};
    spacing_.insert(key);
    if (with_arg) spacing_with_arg_.insert(key);
  }
  for (const std::string& s : config.size_prefixes) {
    auto t = SingleToken(s);
    if (!t || t->kind != TokenKind::kControlSequence) {
      throw ConfigInvalidError("invalid size prefix '" + s + "'");
    }
    size_prefixes_.insert(std::string(t->name()));
  }
  for (const DelimiterClass& d : config.delimiter_classes) {
    auto canonical = SingleToken(d.canonical);
    if (!canonical) {
      throw ConfigInvalidError("invalid delimiter '" + d.canonical + "'");
    }
    delimiter_map_[{canonical->kind, canonical->text}] = *canonical;
    for (const std::string& v : d.variants) {
      auto t = SingleToken(v);
      if (!t) throw ConfigInvalidError("invalid delimiter '" + v + "'");
      delimiter_map_[{t->kind, t->text}] = *canonical;
    }
  }
  Token bar = Token::Character("|");
  for (const std::string& s : config.bar_synonyms) {
    auto t = SingleToken(s);
    if (!t) throw ConfigInvalidError("invalid bar synonym '" + s + "'");
    delimiter_map_[{t->kind, t->text}] = bar;
  }
}

std::vector<Node> Canonicalizer::Strip(const std::vector<Node>& nodes) const {
  std::vector<Node> out;
  out.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node& n = nodes[i];
    if (n.is_group) {
      Node g = n;
      g.children = Strip(n.children);
      out.push_back(std::move(g));
      continue;
    }
    if (n.token.kind == TokenKind::kWhitespace) continue;
    Key key{n.token.kind, n.token.text};
    if (!spacing_.contains(key)) {
      out.push_back(n);
      continue;
    }
    if (spacing_with_arg_.contains(key)) {
      std::size_t j = i + 1;
      if (j < nodes.size() && nodes[j].IsChar("*")) ++j;
      while (j < nodes.size() && IsSkippable(nodes[j])) ++j;
      if (j < nodes.size() && nodes[j].is_group) i = j;
    }
  }
  return out;
}

std::vector<Node> Canonicalizer::Normalize(
    const std::vector<Node>& nodes) const {
  std::vector<Node> out;
  out.reserve(nodes.size());
  std::vector<std::size_t> open_lefts;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node& n = nodes[i];
    if (n.is_group) {
      Node g = n;
      g.children = Normalize(n.children);
      out.push_back(std::move(g));
      continue;
    }
    const Token& t = n.token;
    if (t.kind == TokenKind::kControlSequence &&
        size_prefixes_.contains(std::string(t.name()))) {
      if (t.name() == "left") {
        open_lefts.push_back(t.span.begin);
      } else if (t.name() == "right") {
        if (open_lefts.empty()) throw MismatchedLeftRightError(t.span.begin);
        open_lefts.pop_back();
      }
      std::size_t j = i + 1;
      while (j < nodes.size() && IsSkippable(nodes[j])) ++j;
      if (j >= nodes.size() || nodes[j].is_group) continue;
      const Token& delim = nodes[j].token;
      i = j;
      if (delim.IsChar(".")) continue;
      Span merged = Cover(t.span, delim.span);
      auto it = delimiter_map_.find({delim.kind, delim.text});
      Token canonical = it != delimiter_map_.end() ? it->second : delim;
      canonical.span = merged;
      out.push_back(Node::Leaf(std::move(canonical)));
      continue;
    }
    auto it = delimiter_map_.find({t.kind, t.text});
    if (it != delimiter_map_.end()) {
      Token canonical = it->second;
      canonical.span = t.span;
      out.push_back(Node::Leaf(std::move(canonical)));
    } else {
      out.push_back(n);
    }
  }
  if (!open_lefts.empty()) throw MismatchedLeftRightError(open_lefts.back());
  return out;
}

TokenTree Canonicalizer::StripSpacing(const TokenTree& tree) const {
  return TokenTree{Strip(tree.nodes)};
}

TokenTree Canonicalizer::NormalizeDelimiters(const TokenTree& tree) const {
  return TokenTree{Normalize(tree.nodes)};
}

CanonicalTree Canonicalizer::Canonicalize(const TokenTree& tree) const {
  CanonicalTree out;
  out.tree.nodes = DropLayoutTokens(Normalize(Strip(tree.nodes)));
  CollectProvenance(out.tree.nodes, &out.provenance);
  return out;
}

namespace {

const Canonicalizer& DefaultCanonicalizer() {
  static const Canonicalizer* c = new Canonicalizer();
  return *c;
}

}  // namespace

TokenTree StripSpacing(const TokenTree& tree) {
  return DefaultCanonicalizer().StripSpacing(tree);
}

TokenTree NormalizeDelimiters(const TokenTree& tree) {
  return DefaultCanonicalizer().NormalizeDelimiters(tree);
}

CanonicalTree Canonicalize(const TokenTree& tree) {
  return DefaultCanonicalizer().Canonicalize(tree);
}

CanonicalTree CanonicalizeSource(std::string_view source) {
  TokenStream ts = Tokenize(source);
  return Canonicalize(BuildGroups(ts));
}

}  // namespace semtex
