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

#include "semtex/metadata.h"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <utility>

#include "semtex/error.h"

namespace semtex {
namespace {

const Canonicalizer& OrDefault(const Canonicalizer* c) {
  static const Canonicalizer* fallback = new Canonicalizer();
  return c != nullptr ? *c : *fallback;
}

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string Trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\n' || s[b] == '\t')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\n' || s[e - 1] == '\t')) --e;
  return std::string(s.substr(b, e - b));
}

bool IsAsciiLetter(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

void RecomputeProvenance(CanonicalTree& c) {
  c.provenance.clear();
  for (const Token& t : Flatten(c.tree)) c.provenance.push_back(t.span);
}

void AddAnnotation(Formula& f, Annotation a) {
  if (std::find(f.annotations.begin(), f.annotations.end(), a) ==
      f.annotations.end()) {
    f.annotations.push_back(std::move(a));
  }
}

struct Heading {
  Span span;
  std::string text;
};

// Index one past the group starting at tokens[i] (which must be `{`).
std::size_t SkipGroup(std::span<const Token> tokens, std::size_t i) {
  int depth = 0;
  for (; i < tokens.size(); ++i) {
    if (tokens[i].kind == TokenKind::kGroupOpen) ++depth;
    if (tokens[i].kind == TokenKind::kGroupClose && --depth == 0) return i + 1;
  }
  return i;
}

std::size_t SkipSpaces(std::span<const Token> tokens, std::size_t i) {
  while (i < tokens.size() && tokens[i].kind == TokenKind::kWhitespace) ++i;
  return i;
}

std::string CollapseSpaces(std::string_view s) {
  std::string out;
  bool space = false;
  for (char c : s) {
    if (c == ' ' || c == '\n' || c == '\t' || c == '\r') {
      space = true;
      continue;
    }
    if (space && !out.empty()) out += ' ';
    space = false;
    out += c;
  }
  return out;
}

std::vector<Heading> FindHeadings(std::span<const Token> tokens) {
  std::vector<Heading> out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const Token& t = tokens[i];
    if (!t.IsControlSequence("section") && !t.IsControlSequence("subsection")) {
      continue;
    }
    std::size_t j = i + 1;
    if (j < tokens.size() && tokens[j].IsChar("*")) ++j;
    j = SkipSpaces(tokens, j);
    if (j >= tokens.size() || tokens[j].kind != TokenKind::kGroupOpen) continue;
    std::size_t end = SkipGroup(tokens, j);
    std::string text;
    for (std::size_t k = j + 1; k + 1 < end; ++k) {
      if (tokens[k].kind == TokenKind::kMathShift ||
          tokens[k].kind == TokenKind::kComment) {
        continue;
      }
      text += tokens[k].text;
    }
    out.push_back({{t.span.begin, tokens[end - 1].span.end},
                   CollapseSpaces(text)});
    i = end - 1;
  }
  return out;
}

// Prose between two byte offsets with comments, labels, index entries and
// environment markers removed and whitespace collapsed.
std::string CleanProse(std::span<const Token> tokens, Span range) {
  auto first = std::lower_bound(
      tokens.begin(), tokens.end(), range.begin,
      [](const Token& t, std::size_t pos) { return t.span.begin < pos; });
  std::size_t i = static_cast<std::size_t>(first - tokens.begin());
  std::string out;
  while (i < tokens.size() && tokens[i].span.end <= range.end) {
    const Token& t = tokens[i];
    if (t.kind == TokenKind::kComment) {
      ++i;
      continue;
    }
    if (t.IsControlSequence("label") || t.IsControlSequence("index") ||
        t.IsControlSequence("begin") || t.IsControlSequence("end")) {
      std::size_t j = SkipSpaces(tokens, i + 1);
      if (j < tokens.size() && tokens[j].kind == TokenKind::kGroupOpen) {
        i = SkipGroup(tokens, j);
      } else {
        ++i;
      }
      continue;
    }
    if (t.IsControlSequence("noindent") || t.IsControlSequence("par") ||
        t.IsControlSequence("medskip") || t.IsControlSequence("smallskip") ||
        t.IsControlSequence("bigskip")) {
      ++i;
      continue;
    }
    out += t.kind == TokenKind::kWhitespace ? std::string(" ") : t.text;
    ++i;
  }
  return CollapseSpaces(out);
}

// Splits prose after `.`, `:`, `!` or `?` followed by a space, outside `$`.
std::vector<std::string> Sentences(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  bool in_math = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    cur += c;
    if (c == '$' && (i == 0 || text[i - 1] != '\\')) in_math = !in_math;
    bool end = !in_math && (c == '.' || c == ':' || c == '!' || c == '?') &&
               (i + 1 == text.size() || text[i + 1] == ' ');
    if (end) {
      std::string s = Trim(cur);
      if (!s.empty()) out.push_back(std::move(s));
      cur.clear();
    }
  }
  std::string s = Trim(cur);
  if (!s.empty()) out.push_back(std::move(s));
  return out;
}

// Contents of the `$...$` pieces of a sentence.
std::vector<std::string> InlineMath(std::string_view sentence) {
  std::vector<std::string> out;
  TokenStream ts = Tokenize(sentence);
  std::optional<std::size_t> open;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (ts[i].kind != TokenKind::kMathShift) continue;
    if (!open) {
      open = i;
    } else {
      out.push_back(Detokenize(std::span<const Token>(ts).subspan(
          *open + 1, i - *open - 1)));
      open.reset();
    }
  }
  return out;
}

bool StartsWithWord(std::string_view sentence,
                    const std::vector<std::string>& words) {
  std::string lower = Lower(sentence);
  for (const std::string& w : words) {
    std::string lw = Lower(w);
    if (lower.size() >= lw.size() && lower.compare(0, lw.size(), lw) == 0 &&
        (lower.size() == lw.size() || !IsAsciiLetter(lower[lw.size()]))) {
      return true;
    }
  }
  return false;
}

std::optional<CanonicalTree> CanonicalizeSnippet(std::string_view latex,
                                                 const Canonicalizer& canon) {
  try {
    TokenStream ts = Tokenize(latex);
    return canon.Canonicalize(BuildGroups(ts));
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::vector<CanonicalTree> ProseConstraintTrees(std::string_view sentence,
                                                const MetadataConfig& config,
                                                const Canonicalizer& canon) {
  std::vector<CanonicalTree> out;
  if (!StartsWithWord(sentence, config.constraint_introducers)) return out;
  for (const std::string& m : InlineMath(sentence)) {
    auto c = CanonicalizeSnippet(m, canon);
    if (c && ContainsRelation(c->tree.nodes)) out.push_back(std::move(*c));
  }
  return out;
}

bool IsConstraintSentence(std::string_view sentence,
                          const MetadataConfig& config) {
  return !ProseConstraintTrees(sentence, config, OrDefault(nullptr)).empty();
}

// Longest configured keyword occurring in the sentence.
std::optional<std::string> FindKeyword(std::string_view sentence,
                                       const MetadataConfig& config) {
  std::string lower = Lower(sentence);
  std::optional<std::string> best;
  for (const std::string& k : config.name_keywords) {
    std::string lk = Lower(k);
    if (lower.find(lk) != std::string::npos &&
        (!best || lk.size() > best->size())) {
      best = lk;
    }
  }
  return best;
}

// Short keyword sentences ("Orthogonality relation.") become the phrase as a
// whole; longer ones contribute just the keyword.
std::string NamePhrase(std::string_view sentence, const std::string& keyword) {
  std::string s = Trim(sentence);
  while (!s.empty() && (s.back() == '.' || s.back() == ':')) s.pop_back();
  std::size_t words = 1 + static_cast<std::size_t>(std::count(s.begin(), s.end(), ' '));
  if (words <= 5 && s.find('$') == std::string::npos) return Lower(s);
  return keyword;
}

bool IsProofComment(const Token& t, std::string* body) {
  if (t.kind != TokenKind::kComment) return false;
  std::string rest = Trim(std::string_view(t.text).substr(1));
  std::string lower = Lower(rest);
  if (lower.rfind("proof:", 0) != 0) return false;
  *body = Trim(std::string_view(rest).substr(6));
  return true;
}

void CollectProofs(std::span<const Node> nodes, std::vector<std::string>* out) {
  for (const Node& n : nodes) {
    std::string body;
    if (n.is_group) {
      CollectProofs(n.children, out);
    } else if (IsProofComment(n.token, &body)) {
      out->push_back(std::move(body));
    }
  }
}

// Drops `\label{...}`, `\nonumber` and `\notag` from a row body.
std::vector<Node> DropRowMarkup(std::span<const Node> nodes) {
  std::vector<Node> out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node& n = nodes[i];
    if (n.IsControlSequence("nonumber") || n.IsControlSequence("notag")) continue;
    if (n.IsControlSequence("label")) {
      std::size_t j = i + 1;
      while (j < nodes.size() && nodes[j].IsLeaf(TokenKind::kWhitespace)) ++j;
      if (j < nodes.size() && nodes[j].is_group) i = j;
      continue;
    }
    out.push_back(n);
  }
  return out;
}

void TrimTrailingPunctuation(CanonicalTree& c) {
  auto& nodes = c.tree.nodes;
  while (!nodes.empty() && (nodes.back().IsChar(".") || nodes.back().IsChar(","))) {
    nodes.pop_back();
  }
  RecomputeProvenance(c);
}

bool IsRelationToken(const Token& t) {
  static const std::set<std::string, std::less<>> chars = {
      "<", ">", "=", "\xE2\x89\xA4", "\xE2\x89\xA5", "\xE2\x89\xA0",
      "\xE2\x88\x88"};
  static const std::set<std::string, std::less<>> words = {
      "le",  "leq", "ge",       "geq",      "ne",  "neq",
      "in",  "lt",  "gt",       "leqslant", "geqslant", "notin"};
  if (t.kind == TokenKind::kCharacter) return chars.contains(t.text);
  if (t.kind == TokenKind::kControlSequence) return words.contains(t.name());
  return false;
}

bool IsOpenDelim(const Node& n) {
  return n.IsChar("(") || n.IsChar("[") || n.IsControlSequence("{");
}

bool IsCloseDelim(const Node& n) {
  return n.IsChar(")") || n.IsChar("]") || n.IsControlSequence("}");
}

// Parses a simple symbol at nodes[i]: a letter or control word with optional
// sub/superscript. Returns the index past it.
std::optional<std::size_t> SimpleSymbol(std::span<const Node> nodes,
                                        std::size_t i,
                                        const Glossary& glossary) {
  if (i >= nodes.size() || nodes[i].is_group) return std::nullopt;
  const Token& t = nodes[i].token;
  bool ok = false;
  if (t.kind == TokenKind::kCharacter) {
    ok = IsAsciiLetter(t.text[0]) || static_cast<unsigned char>(t.text[0]) >= 0x80;
  } else if (t.kind == TokenKind::kControlSequence && t.IsControlWord()) {
    ok = !glossary.IsSemanticHead(t.name()) && t.name() != "left" &&
         t.name() != "right" && t.name() != "frac" && t.name() != "sqrt";
  }
  if (!ok) return std::nullopt;
  ++i;
  bool sub = false;
  bool sup = false;
  while (i + 1 < nodes.size()) {
    if (!sub && nodes[i].IsLeaf(TokenKind::kSubscript)) {
      sub = true;
    } else if (!sup && nodes[i].IsLeaf(TokenKind::kSuperscript)) {
      sup = true;
    } else {
      break;
    }
    i += 2;
  }
  return i;
}

// Head token run of a substitution left-hand side, if it has the shape
// `H` or `H(a, b, ...)`.
std::optional<std::size_t> SubstitutionHead(std::span<const Node> lhs,
                                            const Glossary& glossary) {
  auto head_end = SimpleSymbol(lhs, 0, glossary);
  if (!head_end) return std::nullopt;
  std::size_t i = *head_end;
  if (i == lhs.size()) return head_end;
  if (!lhs[i].IsChar("(")) return std::nullopt;
  ++i;
  while (true) {
    auto arg_end = SimpleSymbol(lhs, i, glossary);
    if (!arg_end) return std::nullopt;
    i = *arg_end;
    if (i < lhs.size() && lhs[i].IsChar(",")) {
      ++i;
      continue;
    }
    break;
  }
  if (i + 1 != lhs.size() || !lhs[i].IsChar(")")) return std::nullopt;
  return head_end;
}

TokenStream WithoutBraces(const TokenStream& ts) {
  TokenStream out;
  for (const Token& t : ts) {
    if (t.kind != TokenKind::kGroupOpen && t.kind != TokenKind::kGroupClose) {
      out.push_back(t);
    }
  }
  return out;
}

}  // namespace

const char* AnnotationKindName(AnnotationKind kind) {
  switch (kind) {
    case AnnotationKind::kConstraint:   return "Constraint";
    case AnnotationKind::kSubstitution: return "Substitution";
    case AnnotationKind::kName:         return "Name";
    case AnnotationKind::kProof:        return "Proof";
    case AnnotationKind::kNote:         return "Note";
  }
  return "Unknown";
}

MetadataConfig MetadataConfig::Default() {
  MetadataConfig c;
  c.name_keywords = {"orthogonality",
                     "recurrence relation",
                     "generating function",
                     "difference equation",
                     "normalized recurrence relation",
                     "forward shift",
                     "backward shift",
                     "Rodrigues-type formula",
                     "limit relation",
                     "definition"};
  c.constraint_introducers = {"where", "for", "provided"};
  return c;
}

std::vector<const Annotation*> Formula::AnnotationsOf(AnnotationKind kind) const {
  std::vector<const Annotation*> out;
  for (const Annotation& a : annotations) {
    if (a.kind == kind) out.push_back(&a);
  }
  return out;
}

bool ContainsRelation(std::span<const Node> nodes) {
  for (const Node& n : nodes) {
    if (n.is_group) {
      if (ContainsRelation(n.children)) return true;
    } else if (IsRelationToken(n.token)) {
      return true;
    }
  }
  return false;
}

SegmentResult SegmentFormulae(std::string_view doc,
                              const SegmentOptions& options) {
  const Canonicalizer& canon = OrDefault(options.canonicalizer);
  TokenStream tokens = Tokenize(doc);
  BuildGroups(tokens);
  std::vector<MathSpan> math = ExtractMath(doc, tokens);
  std::vector<Heading> headings = FindHeadings(tokens);

  struct Env {
    Span outer;
    std::vector<const MathSpan*> rows;
  };
  std::vector<Env> envs;
  for (const MathSpan& m : math) {
    if (!IsDisplay(m.environment)) continue;
    if (envs.empty() || envs.back().outer != m.environment_span) {
      envs.push_back({m.environment_span, {}});
    }
    envs.back().rows.push_back(&m);
  }

  SegmentResult result;
  std::size_t ordinal = 0;
  for (std::size_t e = 0; e < envs.size(); ++e) {
    const Env& env = envs[e];
    std::size_t unit = 0;
    std::string heading;
    std::size_t heading_end = 0;
    std::size_t next_heading = doc.size();
    for (std::size_t h = 0; h < headings.size(); ++h) {
      if (headings[h].span.end <= env.outer.begin) {
        unit = h + 1;
        heading = headings[h].text;
        heading_end = headings[h].span.end;
      } else if (headings[h].span.begin >= env.outer.end) {
        next_heading = headings[h].span.begin;
        break;
      }
    }
    std::size_t prev_end = e > 0 ? envs[e - 1].outer.end : 0;
    std::size_t next_begin = e + 1 < envs.size() ? envs[e + 1].outer.begin
                                                 : doc.size();
    Span before{std::max(prev_end, heading_end), env.outer.begin};
    Span after{env.outer.end, std::min(next_begin, next_heading)};
    std::string preceding = CleanProse(tokens, before);
    std::string following = CleanProse(tokens, after);

    for (const MathSpan* row : env.rows) {
      ++ordinal;
      ++result.display_rows;
      Formula f;
      f.ordinal = options.ordinal_base + ordinal;
      f.label = row->label;
      f.id = row->label ? *row->label : "f" + std::to_string(f.ordinal);
      f.environment = row->environment;
      f.row = row->row;
      f.source_file = options.source_file;
      f.source_span = row->body_span;
      f.source_original = std::string(
          doc.substr(row->body_span.begin, row->body_span.size()));
      f.unit = unit;
      f.heading = heading;
      f.environment_index = e;
      f.preceding_prose = preceding;
      f.following_prose = following;
      f.citation = {options.citation_key, f.label ? *f.label : f.id};

      std::vector<std::string> proofs;
      CollectProofs(row->body.nodes, &proofs);
      for (std::string& p : proofs) {
        f.annotations.push_back({AnnotationKind::kProof, std::move(p), f.id});
      }
      try {
        f.source_canonical =
            canon.Canonicalize(TokenTree{DropRowMarkup(row->body.nodes)});
      } catch (const MismatchedLeftRightError& err) {
        result.warnings.push_back(options.source_file + ": formula " + f.id +
                                  ": " + err.what());
        continue;
      }
      TrimTrailingPunctuation(f.source_canonical);
      result.formulae.push_back(std::move(f));
    }
  }
  return result;
}

ConstraintSplit DetectConstraints(const Formula& f, const MetadataConfig& config,
                                  const Canonicalizer* canonicalizer) {
  ConstraintSplit out;
  std::vector<Node> core = f.source_canonical.tree.nodes;
  std::vector<Annotation> trailing;
  while (true) {
    int depth = 0;
    std::optional<std::size_t> last_comma;
    for (std::size_t i = 0; i < core.size(); ++i) {
      if (IsOpenDelim(core[i])) ++depth;
      if (IsCloseDelim(core[i])) --depth;
      if (depth == 0 && core[i].IsChar(",")) last_comma = i;
    }
    if (!last_comma || *last_comma == 0) break;
    std::span<const Node> clause =
        std::span<const Node>(core).subspan(*last_comma + 1);
    if (clause.empty() || !ContainsRelation(clause)) break;
    trailing.push_back({AnnotationKind::kConstraint, Render(clause), f.id});
    core.resize(*last_comma);
  }
  std::reverse(trailing.begin(), trailing.end());
  out.constraints = std::move(trailing);

  std::vector<std::string> sentences = Sentences(f.following_prose);
  if (!sentences.empty()) {
    for (CanonicalTree& c : ProseConstraintTrees(sentences.front(), config,
                                                 OrDefault(canonicalizer))) {
      out.constraints.push_back(
          {AnnotationKind::kConstraint, Render(c.tree), f.id + "#following-prose"});
    }
  }
  out.core.tree.nodes = std::move(core);
  RecomputeProvenance(out.core);
  return out;
}

void ApplyConstraints(Formula& f, const MetadataConfig& config,
                      const Canonicalizer* canonicalizer) {
  ConstraintSplit split = DetectConstraints(f, config, canonicalizer);
  f.source_canonical = std::move(split.core);
  for (Annotation& a : split.constraints) AddAnnotation(f, std::move(a));
}

void EnrichFormula(Formula& f, const Glossary& glossary) {
  ReplacementStats stats;
  ReplaceResult core = ReplaceAll(f.source_canonical, glossary);
  f.semantic = core.tree.tree;
  f.source_semantic = Render(f.semantic);
  stats.Merge(core.stats);
  for (Annotation& a : f.annotations) {
    if (a.kind != AnnotationKind::kConstraint) continue;
    auto c = CanonicalizeSnippet(a.body, glossary.canonicalizer());
    if (!c) continue;
    ReplaceResult r = ReplaceAll(*c, glossary);
    a.body = Render(r.tree.tree);
    stats.Merge(r.stats);
  }
  f.stats = std::move(stats);
}

bool ContainsHead(std::span<const Node> haystack, std::span<const Token> needle) {
  TokenStream hay = WithoutBraces(Flatten(haystack));
  TokenStream pin = WithoutBraces(TokenStream(needle.begin(), needle.end()));
  if (pin.empty() || pin.size() > hay.size()) return false;
  for (std::size_t i = 0; i + pin.size() <= hay.size(); ++i) {
    bool all = true;
    for (std::size_t k = 0; k < pin.size() && all; ++k) {
      all = SameToken(hay[i + k], pin[k]);
    }
    if (all) return true;
  }
  return false;
}

std::vector<SubstitutionDef> DetectSubstitutions(std::span<const Formula> fs,
                                                 const Glossary& glossary) {
  std::vector<SubstitutionDef> defs;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const auto& nodes = fs[i].semantic.nodes;
    std::optional<std::size_t> eq;
    bool other_relation = false;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      if (nodes[k].IsChar("=")) {
        if (eq) other_relation = true;
        eq = k;
      } else if (!nodes[k].is_group && IsRelationToken(nodes[k].token)) {
        other_relation = true;
      }
    }
    if (!eq || other_relation || *eq == 0 || *eq + 1 == nodes.size()) continue;
    std::span<const Node> lhs = std::span<const Node>(nodes).first(*eq);
    auto head_end = SubstitutionHead(lhs, glossary);
    if (!head_end) continue;
    TokenStream head = Flatten(lhs.first(*head_end));
    bool used = false;
    for (std::size_t j = 0; j < fs.size() && !used; ++j) {
      if (j == i || fs[j].unit != fs[i].unit) continue;
      used = ContainsHead(fs[j].semantic.nodes, head);
    }
    if (!used) continue;
    SubstitutionDef d;
    d.lhs_head = std::move(head);
    d.lhs.nodes.assign(lhs.begin(), lhs.end());
    d.rhs.nodes.assign(nodes.begin() + *eq + 1, nodes.end());
    d.equation = fs[i].source_semantic;
    d.def_formula_id = fs[i].id;
    d.unit = fs[i].unit;
    defs.push_back(std::move(d));
  }
  return defs;
}

std::vector<Formula> InlineSubstitutions(std::vector<Formula> fs,
                                         std::span<const SubstitutionDef> defs) {
  if (defs.empty()) return fs;
  // deps[d] = definitions used by the right-hand side of d.
  std::vector<std::vector<std::size_t>> deps(defs.size());
  for (std::size_t a = 0; a < defs.size(); ++a) {
    for (std::size_t b = 0; b < defs.size(); ++b) {
      if (defs[a].unit != defs[b].unit) continue;
      if (ContainsHead(defs[a].rhs.nodes, defs[b].lhs_head)) {
        deps[a].push_back(b);
      }
    }
  }
  enum class Mark { kNone, kActive, kDone };
  std::vector<Mark> marks(defs.size(), Mark::kNone);
  std::vector<std::size_t> path;
  std::function<void(std::size_t)> check = [&](std::size_t d) {
    marks[d] = Mark::kActive;
    path.push_back(d);
    for (std::size_t next : deps[d]) {
      if (marks[next] == Mark::kActive) {
        std::vector<std::string> ids;
        auto from = std::find(path.begin(), path.end(), next);
        for (auto it = from; it != path.end(); ++it) {
          ids.push_back(defs[*it].def_formula_id);
        }
        ids.push_back(defs[next].def_formula_id);
        throw SubstitutionCycleError(std::move(ids));
      }
      if (marks[next] == Mark::kNone) check(next);
    }
    path.pop_back();
    marks[d] = Mark::kDone;
  };
  for (std::size_t d = 0; d < defs.size(); ++d) {
    if (marks[d] == Mark::kNone) check(d);
  }

  std::set<std::string> def_ids;
  for (const SubstitutionDef& d : defs) def_ids.insert(d.def_formula_id);

  std::vector<Formula> out;
  for (Formula& f : fs) {
    if (def_ids.contains(f.id)) continue;
    std::vector<bool> added(defs.size(), false);
    std::function<void(std::size_t)> visit = [&](std::size_t d) {
      if (added[d]) return;
      added[d] = true;
      AddAnnotation(f, {AnnotationKind::kSubstitution, defs[d].equation,
                        defs[d].def_formula_id});
      for (std::size_t next : deps[d]) visit(next);
    };
    for (std::size_t d = 0; d < defs.size(); ++d) {
      if (defs[d].unit == f.unit && ContainsHead(f.semantic.nodes, defs[d].lhs_head)) {
        visit(d);
      }
    }
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<Formula> HarvestNamesAndNotes(std::vector<Formula> fs,
                                          const MetadataConfig& config) {
  std::optional<std::size_t> env;
  std::string phrase;
  std::vector<std::string> notes;
  for (Formula& f : fs) {
    bool first_row = !env || *env != f.environment_index;
    if (first_row) {
      env = f.environment_index;
      phrase.clear();
      notes.clear();
      for (const std::string& s : Sentences(f.preceding_prose)) {
        if (auto kw = FindKeyword(s, config)) {
          phrase = NamePhrase(s, *kw);
        } else if (!IsConstraintSentence(s, config)) {
          notes.push_back(s);
        }
      }
    }
    if (!f.heading.empty()) {
      std::string name = f.heading;
      if (!phrase.empty()) name += " " + phrase;
      AddAnnotation(f, {AnnotationKind::kName, std::move(name), f.id});
    }
    if (first_row) {
      for (const std::string& n : notes) {
        AddAnnotation(f, {AnnotationKind::kNote, n, f.id});
      }
    }
  }
  return fs;
}

}  // namespace semtex
