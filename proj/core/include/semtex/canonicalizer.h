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

#ifndef SEMTEX_CANONICALIZER_H_
#define SEMTEX_CANONICALIZER_H_

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "semtex/lexer.h"

namespace semtex {

struct DelimiterClass {
  std::string canonical;
  std::vector<std::string> variants;
};

// Token sets that carry no meaning for matching. Entries are LaTeX snippets;
// a spacing entry ending in `{}` (e.g. `\hspace{}`) also consumes the group
// argument that follows it, with an optional `*`.
struct CanonicalizationConfig {
  std::vector<std::string> spacing_tokens;
  std::vector<DelimiterClass> delimiter_classes;
  // Delimiter-size prefixes (`\left`, `\bigl`, ...). `\left` and `\right` must
  // pair up within one group.
  std::vector<std::string> size_prefixes;
  std::vector<std::string> bar_synonyms;

  static CanonicalizationConfig Default();
};

// A canonical tree plus, for every token of Flatten(tree), the original
// source bytes it came from.
struct CanonicalTree {
  TokenTree tree;
  std::vector<Span> provenance;
};

class Canonicalizer {
 public:
  Canonicalizer();
  explicit Canonicalizer(const CanonicalizationConfig& config);

  TokenTree StripSpacing(const TokenTree& tree) const;
  // Throws MismatchedLeftRightError.
  TokenTree NormalizeDelimiters(const TokenTree& tree) const;
  // StripSpacing, NormalizeDelimiters, then drops alignment tabs and comments.
  CanonicalTree Canonicalize(const TokenTree& tree) const;

 private:
  using Key = std::pair<TokenKind, std::string>;

  std::vector<Node> Strip(const std::vector<Node>& nodes) const;
  std::vector<Node> Normalize(const std::vector<Node>& nodes) const;

  std::set<Key> spacing_;
  std::set<Key> spacing_with_arg_;
  std::set<std::string> size_prefixes_;
  std::map<Key, Token> delimiter_map_;
};

TokenTree StripSpacing(const TokenTree& tree);
TokenTree NormalizeDelimiters(const TokenTree& tree);
CanonicalTree Canonicalize(const TokenTree& tree);

// Tokenizes, groups, and canonicalizes a math snippet with the default config.
CanonicalTree CanonicalizeSource(std::string_view source);

}  // namespace semtex

#endif  // SEMTEX_CANONICALIZER_H_
