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

#include "semtex/macro_engine.h"

#include <set>
#include <string_view>
#include <utility>

#include "semtex/error.h"

namespace semtex {
namespace {

using Atoms = std::vector<PatternAtom>;

bool IsSeparatorNode(const Node& n) {
  return n.IsChar(",") || n.IsChar(";") || n.IsChar("|");
}

bool IsOpenDelimiter(const Node& n) {
  return n.IsChar("(") || n.IsChar("[") || n.IsControlSequence("{");
}

bool IsCloseDelimiter(const Node& n) {
  return n.IsChar(")") || n.IsChar("]") || n.IsControlSequence("}");
}

const std::set<std::string_view>& NonSymbolWords() {
  static const auto* words = new std::set<std::string_view>{
      "left",   "right",  "middle", "langle", "rangle", "lfloor",
      "rfloor", "lceil",  "rceil",  "begin",  "end",    "label"};
  return *words;
}

bool IsAsciiAlnum(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9');
}

// Whether n can stand alone as a bare single-token argument.
bool IsSymbolLeaf(const Node& n) {
  if (n.is_group) return false;
  const Token& t = n.token;
  if (t.kind == TokenKind::kCharacter) {
    return !t.text.empty() &&
           (IsAsciiAlnum(t.text[0]) || static_cast<unsigned char>(t.text[0]) >= 0x80);
  }
  if (t.kind == TokenKind::kControlSequence) {
    return t.IsControlWord() && !NonSymbolWords().contains(t.name());
  }
  return false;
}

// Index of the Close atom matching the Open atom at `open`.
std::size_t MatchingClose(const Atoms& atoms, std::size_t open) {
  int depth = 0;
  for (std::size_t k = open; k < atoms.size(); ++k) {
    if (atoms[k].kind == PatternAtom::Kind::kOpen) ++depth;
    if (atoms[k].kind == PatternAtom::Kind::kClose && --depth == 0) return k;
  }
  return atoms.size();
}

class Matcher {
 public:
  Matcher(const MacroRule& rule, const Glossary* glossary)
      : atoms_(rule.pattern), glossary_(glossary) {}

  // Matches atoms [a, a_end) against nodes starting at ni. When `whole` is
  // set the atoms must consume every node. Returns the node index reached.
  std::optional<std::size_t> Level(std::size_t a, std::size_t a_end,
                                   std::span<const Node> nodes, std::size_t ni,
                                   bool whole, CaptureSet* caps) const {
    while (a < a_end) {
      const PatternAtom& atom = atoms_[a];
      switch (atom.kind) {
        case PatternAtom::Kind::kLiteral: {
          if (ni >= nodes.size() || nodes[ni].is_group || nodes[ni].inert ||
              !SameToken(nodes[ni].token, atom.literal)) {
            return std::nullopt;
          }
          ++ni;
          ++a;
          break;
        }
        case PatternAtom::Kind::kSeparator:
        case PatternAtom::Kind::kClose: {
          if (atom.delimiter == "}") return std::nullopt;  // handled by kOpen
          if (ni >= nodes.size() || !nodes[ni].IsChar(atom.delimiter)) {
            return std::nullopt;
          }
          ++ni;
          ++a;
          break;
        }
        case PatternAtom::Kind::kOpen: {
          if (atom.delimiter == "{") {
            std::size_t close = MatchingClose(atoms_, a);
            if (ni >= nodes.size() || !nodes[ni].is_group || nodes[ni].inert) {
              return std::nullopt;
            }
            if (!Level(a + 1, close, nodes[ni].children, 0, true, caps)) {
              return std::nullopt;
            }
            ++ni;
            a = close + 1;
          } else {
            if (ni >= nodes.size() || !nodes[ni].IsChar(atom.delimiter)) {
              return std::nullopt;
            }
            ++ni;
            ++a;
          }
          break;
        }
        case PatternAtom::Kind::kCapture: {
          auto end = Capture(atom, nodes, ni, caps);
          if (!end) return std::nullopt;
          ni = *end;
          ++a;
          break;
        }
      }
    }
    if (whole && ni != nodes.size()) return std::nullopt;
    return ni;
  }

 private:
  std::optional<std::size_t> Capture(const PatternAtom& atom,
                                     std::span<const Node> nodes,
                                     std::size_t ni, CaptureSet* caps) const {
    if (ni >= nodes.size()) return std::nullopt;
    const Node& n = nodes[ni];
    switch (atom.mode) {
      case CaptureMode::kSingleGroup:
        if (!n.is_group || n.inert) return std::nullopt;
        (*caps)[atom.capture] = n.children;
        return ni + 1;
      case CaptureMode::kSingleToken:
        if (n.inert) return std::nullopt;
        if (n.is_group) {
          if (n.children.empty()) return std::nullopt;
          (*caps)[atom.capture] = n.children;
          return ni + 1;
        }
        if (!IsSymbolLeaf(n) || StartsSemanticCall(nodes, ni)) {
          return std::nullopt;
        }
        (*caps)[atom.capture] = {n};
        return ni + 1;
      case CaptureMode::kBalanced: {
        int depth = 0;
        std::size_t j = ni;
        for (; j < nodes.size(); ++j) {
          const Node& c = nodes[j];
          if (depth == 0 && (IsSeparatorNode(c) || IsCloseDelimiter(c))) break;
          if (IsOpenDelimiter(c)) ++depth;
          if (IsCloseDelimiter(c)) --depth;
        }
        if (depth != 0 || j == ni) return std::nullopt;
        (*caps)[atom.capture] =
            std::vector<Node>(nodes.begin() + ni, nodes.begin() + j);
        return j;
      }
    }
    return std::nullopt;
  }

  bool StartsSemanticCall(std::span<const Node> nodes, std::size_t ni) const {
    return glossary_ != nullptr && SemanticCallLength(nodes, ni, *glossary_) > 0;
  }

  const Atoms& atoms_;
  const Glossary* glossary_;
};

std::optional<Match> MatchWith(const MacroRule& rule,
                               std::span<const Node> nodes, std::size_t pos,
                               const Glossary* glossary) {
  if (pos >= nodes.size() || nodes[pos].inert) return std::nullopt;
  Matcher m(rule, glossary);
  Match out;
  auto end = m.Level(0, rule.pattern.size(), nodes, pos, false, &out.captures);
  if (!end) return std::nullopt;
  out.length = *end - pos;
  return out;
}

void MarkInert(Node& n) {
  n.inert = true;
  for (Node& c : n.children) MarkInert(c);
}

Node GroupOf(std::vector<Node> children, Span span) {
  return Node::Group(std::move(children),
                     Token::Of(TokenKind::kGroupOpen, "{", span),
                     Token::Of(TokenKind::kGroupClose, "}", span));
}

std::vector<Node> Instantiate(const MacroRule& rule, CaptureSet& caps,
                              Span span) {
  std::vector<Node> out;
  out.push_back(Node::Leaf(Token::ControlSequence(rule.semantic.head, span)));
  for (const std::string& p : rule.semantic.params) {
    out.push_back(GroupOf(std::move(caps[p]), span));
  }
  for (char c : rule.semantic.at) {
    out.push_back(Node::Leaf(Token::Character(std::string(1, c), span)));
  }
  for (const std::string& p : rule.semantic.args) {
    out.push_back(GroupOf(std::move(caps[p]), span));
  }
  for (Node& n : out) MarkInert(n);
  return out;
}

struct ScanState {
  const Glossary& glossary;
  ReplacementStats stats;
  std::vector<Replacement> replacements;
};

std::vector<Node> ReplaceSeq(std::span<const Node> nodes, ScanState& st,
                             bool record) {
  std::vector<Node> out;
  out.reserve(nodes.size());
  std::size_t i = 0;
  while (i < nodes.size()) {
    const Node& node = nodes[i];
    if (node.inert) {
      out.push_back(node);
      ++i;
      continue;
    }
    if (std::size_t len = SemanticCallLength(nodes, i, st.glossary)) {
      for (std::size_t k = 0; k < len; ++k) {
        Node copy = nodes[i + k];
        MarkInert(copy);
        out.push_back(std::move(copy));
      }
      i += len;
      continue;
    }
    bool fired = false;
    for (const MacroRule& rule : st.glossary.rules()) {
      auto m = MatchWith(rule, nodes, i, &st.glossary);
      if (!m) continue;
      for (auto& [name, value] : m->captures) {
        value = ReplaceSeq(value, st, false);
      }
      Span span = Cover(nodes[i].span(), nodes[i + m->length - 1].span());
      std::vector<Node> emitted = Instantiate(rule, m->captures, span);
      st.stats.Record(rule.name);
      if (record) {
        st.replacements.push_back({rule.name, span, Render(emitted)});
      }
      for (Node& e : emitted) out.push_back(std::move(e));
      i += m->length;
      fired = true;
      break;
    }
    if (fired) continue;
    if (node.is_group) {
      Node g = node;
      g.children = ReplaceSeq(node.children, st, record);
      out.push_back(std::move(g));
    } else {
      out.push_back(node);
    }
    ++i;
  }
  return out;
}

// Binds a semantic call's groups to the rule's placeholders.
CaptureSet BindCall(const MacroRule& rule, std::span<const Node> call) {
  CaptureSet caps;
  std::size_t k = 1;
  for (const std::string& p : rule.semantic.params) caps[p] = call[k++].children;
  k += rule.semantic.at.size();
  for (const std::string& p : rule.semantic.args) caps[p] = call[k++].children;
  return caps;
}

std::vector<Node> ExpandPattern(const MacroRule& rule, CaptureSet& caps) {
  std::vector<std::vector<Node>> stack(1);
  for (const PatternAtom& a : rule.pattern) {
    switch (a.kind) {
      case PatternAtom::Kind::kLiteral:
        stack.back().push_back(Node::Leaf(a.literal));
        break;
      case PatternAtom::Kind::kSeparator:
        stack.back().push_back(Node::Leaf(Token::Character(a.delimiter)));
        break;
      case PatternAtom::Kind::kOpen:
        if (a.delimiter == "{") {
          stack.emplace_back();
        } else {
          stack.back().push_back(Node::Leaf(Token::Character(a.delimiter)));
        }
        break;
      case PatternAtom::Kind::kClose:
        if (a.delimiter == "}") {
          std::vector<Node> children = std::move(stack.back());
          stack.pop_back();
          stack.back().push_back(Node::Group(std::move(children)));
        } else {
          stack.back().push_back(Node::Leaf(Token::Character(a.delimiter)));
        }
        break;
      case PatternAtom::Kind::kCapture: {
        std::vector<Node>& value = caps[a.capture];
        if (a.mode == CaptureMode::kBalanced) {
          for (Node& n : value) stack.back().push_back(std::move(n));
        } else if (a.mode == CaptureMode::kSingleToken && value.size() == 1 &&
                   IsSymbolLeaf(value[0])) {
          stack.back().push_back(std::move(value[0]));
        } else {
          stack.back().push_back(Node::Group(std::move(value)));
        }
        break;
      }
    }
  }
  return std::move(stack.front());
}

// Whether nodes[pos] has the surface shape `\name{...}*@`.
bool LooksLikeSemanticCall(std::span<const Node> nodes, std::size_t pos) {
  if (pos >= nodes.size() || nodes[pos].is_group ||
      !nodes[pos].token.IsControlWord()) {
    return false;
  }
  std::size_t j = pos + 1;
  while (j < nodes.size() && nodes[j].is_group) ++j;
  return j < nodes.size() && nodes[j].IsChar("@");
}

std::vector<Node> StripSeq(std::span<const Node> nodes,
                           const Glossary& glossary) {
  std::vector<Node> out;
  std::size_t i = 0;
  while (i < nodes.size()) {
    if (LooksLikeSemanticCall(nodes, i)) {
      std::size_t len = SemanticCallLength(nodes, i, glossary);
      if (len == 0) {
        throw UnknownSemanticMacroError(std::string(nodes[i].token.name()));
      }
      // SemanticCallLength picked the first rule fitting the call's shape.
      std::span<const Node> call = nodes.subspan(i, len);
      const MacroRule* rule = nullptr;
      for (const MacroRule* r : glossary.RulesWithHead(call[0].token.name())) {
        std::size_t want = 1 + r->semantic.params.size() + r->semantic.at.size() +
                           r->semantic.args.size();
        if (want == len && call[1 + r->semantic.params.size()].IsChar("@") &&
            (r->semantic.at.size() == 1 ||
             call[2 + r->semantic.params.size()].IsChar("@"))) {
          rule = r;
          break;
        }
      }
      CaptureSet caps = BindCall(*rule, call);
      for (auto& [name, value] : caps) value = StripSeq(value, glossary);
      for (Node& n : ExpandPattern(*rule, caps)) out.push_back(std::move(n));
      i += len;
      continue;
    }
    const Node& n = nodes[i];
    if (n.is_group) {
      Node g = n;
      g.children = StripSeq(n.children, glossary);
      g.inert = false;
      out.push_back(std::move(g));
    } else {
      Node leaf = n;
      leaf.inert = false;
      out.push_back(std::move(leaf));
    }
    ++i;
  }
  return out;
}

void CollectHeads(std::span<const Node> nodes, const Glossary& glossary,
                  std::vector<std::string>* out) {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (SemanticCallLength(nodes, i, glossary) > 0) {
      out->emplace_back(nodes[i].token.name());
    }
    if (nodes[i].is_group) CollectHeads(nodes[i].children, glossary, out);
  }
}

}  // namespace

std::optional<Match> MatchAt(const MacroRule& rule, std::span<const Node> nodes,
                             std::size_t pos) {
  return MatchWith(rule, nodes, pos, nullptr);
}

std::optional<Match> MatchAt(const MacroRule& rule, const CanonicalTree& tree,
                             std::size_t pos) {
  return MatchAt(rule, tree.tree.nodes, pos);
}

void ReplacementStats::Record(const std::string& rule, std::uint64_t n) {
  per_rule[rule] += n;
  total += n;
}

void ReplacementStats::AddFormula(const ReplacementStats& formula) {
  for (const auto& [rule, n] : formula.per_rule) Record(rule, n);
  ++formulae;
  if (formula.total > 0) ++formulae_touched;
}

void ReplacementStats::Merge(const ReplacementStats& other) {
  for (const auto& [rule, n] : other.per_rule) Record(rule, n);
  formulae += other.formulae;
  formulae_touched += other.formulae_touched;
}

double ReplacementStats::AveragePerFormula() const {
  if (formulae == 0) return 0.0;
  return static_cast<double>(total) / static_cast<double>(formulae);
}

std::size_t SemanticCallLength(std::span<const Node> nodes, std::size_t pos,
                               const Glossary& glossary) {
  if (pos >= nodes.size() || nodes[pos].is_group ||
      nodes[pos].token.kind != TokenKind::kControlSequence) {
    return 0;
  }
  std::string_view head = nodes[pos].token.name();
  if (!glossary.IsSemanticHead(head)) return 0;
  std::size_t j = pos + 1;
  std::size_t params = 0;
  while (j < nodes.size() && nodes[j].is_group) {
    ++params;
    ++j;
  }
  std::size_t at = 0;
  while (j < nodes.size() && nodes[j].IsChar("@") && at < 2) {
    ++at;
    ++j;
  }
  if (at == 0) return 0;
  std::size_t args = 0;
  while (j + args < nodes.size() && nodes[j + args].is_group) ++args;
  for (const MacroRule* r : glossary.RulesWithHead(head)) {
    if (r->semantic.at.size() == at && r->semantic.params.size() == params &&
        r->semantic.args.size() <= args) {
      return 1 + params + at + r->semantic.args.size();
    }
  }
  return 0;
}

ReplaceResult ReplaceAll(const CanonicalTree& tree, const Glossary& glossary) {
  ScanState st{glossary, {}, {}};
  ReplaceResult out;
  out.tree.tree.nodes = ReplaceSeq(tree.tree.nodes, st, true);
  out.tree.provenance.reserve(tree.provenance.size());
  for (const Token& t : Flatten(out.tree.tree)) {
    out.tree.provenance.push_back(t.span);
  }
  out.stats = std::move(st.stats);
  out.replacements = std::move(st.replacements);
  return out;
}

TokenTree StripSemantics(const TokenTree& tree, const Glossary& glossary) {
  return TokenTree{StripSeq(tree.nodes, glossary)};
}

std::vector<std::string> SemanticHeads(std::span<const Node> nodes,
                                       const Glossary& glossary) {
  std::vector<std::string> out;
  CollectHeads(nodes, glossary, &out);
  return out;
}

std::vector<std::string> SemanticHeads(std::string_view latex,
                                       const Glossary& glossary) {
  TokenStream ts;
  for (Token& t : Tokenize(latex)) {
    if (t.kind != TokenKind::kWhitespace && t.kind != TokenKind::kComment) {
      ts.push_back(std::move(t));
    }
  }
  try {
    return SemanticHeads(BuildGroups(ts).nodes, glossary);
  } catch (const UnbalancedGroupError&) {
    return {};
  }
}

std::string EnrichSource(std::string_view latex, const Glossary& glossary) {
  TokenStream ts = Tokenize(latex);
  CanonicalTree c = glossary.canonicalizer().Canonicalize(BuildGroups(ts));
  return Render(ReplaceAll(c, glossary).tree.tree);
}

}  // namespace semtex
