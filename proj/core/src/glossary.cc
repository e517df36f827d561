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

#include "semtex/glossary.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "json.hpp"
#include "semtex/error.h"

namespace semtex {
namespace {

using nlohmann::json;

std::string ClosingFor(const std::string& open) {
  if (open == "(") return ")";
  if (open == "[") return "]";
  if (open == "{") return "}";
  return {};
}

[[noreturn]] void SchemaError(const std::string& where, const std::string& why) {
  throw GlossaryParseError(0, where + ": " + why);
}

// Parses `\head{#p}...@{#a}...` into its parts.
SemanticTemplate ParseTemplate(const std::string& rule,
                               const std::string& source) {
  TokenStream ts;
  for (Token& t : Tokenize(source)) {
    if (t.kind != TokenKind::kWhitespace) ts.push_back(std::move(t));
  }
  TokenTree tree;
  try {
    tree = BuildGroups(ts);
  } catch (const UnbalancedGroupError&) {
    SchemaError("rule " + rule, "template has unbalanced braces");
  }
  const auto& nodes = tree.nodes;
  if (nodes.empty() || !nodes[0].token.IsControlWord() || nodes[0].is_group) {
    SchemaError("rule " + rule, "template must start with a macro");
  }
  SemanticTemplate out;
  out.head = std::string(nodes[0].token.name());
  std::size_t i = 1;
  auto placeholder = [&](const Node& g) {
    std::string name;
    if (!g.is_group || g.children.size() < 2 || !g.children[0].IsChar("#")) {
      SchemaError("rule " + rule,
                  "template groups must hold exactly one #placeholder");
    }
    for (std::size_t k = 1; k < g.children.size(); ++k) {
      const Node& c = g.children[k];
      if (c.is_group || c.token.kind != TokenKind::kCharacter ||
          c.token.text == "#") {
        SchemaError("rule " + rule, "malformed placeholder in template");
      }
      name += c.token.text;
    }
    return name;
  };
  for (; i < nodes.size() && nodes[i].is_group; ++i) {
    out.params.push_back(placeholder(nodes[i]));
  }
  for (; i < nodes.size() && nodes[i].IsChar("@"); ++i) out.at += "@";
  if (out.at != "@" && out.at != "@@") {
    SchemaError("rule " + rule, "template needs exactly one @ or @@ marker");
  }
  for (; i < nodes.size() && nodes[i].is_group; ++i) {
    out.args.push_back(placeholder(nodes[i]));
  }
  if (i != nodes.size()) {
    SchemaError("rule " + rule, "unexpected tokens after template arguments");
  }
  return out;
}

std::string DefaultSymbol(const std::string& template_source) {
  std::string out;
  for (char c : template_source) {
    if (c != '#') out += c;
  }
  return out;
}

CaptureMode ParseMode(const std::string& where, const std::string& mode) {
  if (mode == "balanced") return CaptureMode::kBalanced;
  if (mode == "group") return CaptureMode::kSingleGroup;
  if (mode == "token") return CaptureMode::kSingleToken;
  SchemaError(where, "unknown capture mode '" + mode + "'");
}

std::vector<PatternAtom> ParsePattern(const std::string& where,
                                      const json& atoms) {
  if (!atoms.is_array()) SchemaError(where, "pattern must be an array");
  std::vector<PatternAtom> out;
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    const json& a = atoms[k];
    std::string at = where + "[" + std::to_string(k) + "]";
    if (!a.is_object() || a.size() == 0) SchemaError(at, "atom must be an object");
    if (a.contains("lit")) {
      for (Token& t : Tokenize(a.at("lit").get<std::string>())) {
        if (t.kind == TokenKind::kWhitespace) continue;
        if (t.kind == TokenKind::kGroupOpen || t.kind == TokenKind::kGroupClose) {
          SchemaError(at, "literal braces must use open/close atoms");
        }
        t.span = {};
        out.push_back(PatternAtom::Literal(std::move(t)));
      }
    } else if (a.contains("capture")) {
      out.push_back(PatternAtom::Capture(
          a.at("capture").get<std::string>(),
          ParseMode(at, a.value("mode", std::string("balanced")))));
    } else if (a.contains("sep")) {
      std::string c = a.at("sep").get<std::string>();
      if (c != "," && c != ";" && c != "|") {
        SchemaError(at, "separator must be one of , ; |");
      }
      out.push_back(PatternAtom::Separator(c));
    } else if (a.contains("open")) {
      std::string c = a.at("open").get<std::string>();
      if (ClosingFor(c).empty()) SchemaError(at, "open must be ( [ or {");
      out.push_back(PatternAtom::Open(c));
    } else if (a.contains("close")) {
      out.push_back(PatternAtom::Close(a.at("close").get<std::string>()));
    } else {
      SchemaError(at, "unknown atom kind");
    }
  }
  return out;
}

std::vector<std::string> StringArray(const json& obj, const char* key,
                                     std::vector<std::string> fallback) {
  if (!obj.contains(key)) return fallback;
  const json& arr = obj.at(key);
  if (!arr.is_array()) SchemaError(std::string("canonicalization.") + key,
                                   "must be an array");
  std::vector<std::string> out;
  for (const json& v : arr) out.push_back(v.get<std::string>());
  return out;
}

CanonicalizationConfig ParseCanonicalization(const json& root) {
  CanonicalizationConfig c = CanonicalizationConfig::Default();
  if (!root.contains("canonicalization")) return c;
  const json& obj = root.at("canonicalization");
  if (!obj.is_object()) SchemaError("canonicalization", "must be an object");
  c.spacing_tokens = StringArray(obj, "spacing_tokens", c.spacing_tokens);
  c.size_prefixes = StringArray(obj, "size_prefixes", c.size_prefixes);
  c.bar_synonyms = StringArray(obj, "bar_synonyms", c.bar_synonyms);
  if (obj.contains("delimiter_classes")) {
    c.delimiter_classes.clear();
    for (const json& d : obj.at("delimiter_classes")) {
      DelimiterClass cls;
      cls.canonical = d.at("canonical").get<std::string>();
      for (const json& v : d.value("variants", json::array())) {
        cls.variants.push_back(v.get<std::string>());
      }
      c.delimiter_classes.push_back(std::move(cls));
    }
  }
  return c;
}

std::size_t LineOfByte(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(
                 std::count(text.begin(), text.begin() + byte, '\n'));
}

}  // namespace

PatternAtom PatternAtom::Literal(Token t) {
  PatternAtom a;
  a.kind = Kind::kLiteral;
  a.literal = std::move(t);
  return a;
}

PatternAtom PatternAtom::Capture(std::string name, CaptureMode mode) {
  PatternAtom a;
  a.kind = Kind::kCapture;
  a.capture = std::move(name);
  a.mode = mode;
  return a;
}

PatternAtom PatternAtom::Separator(std::string c) {
  PatternAtom a;
  a.kind = Kind::kSeparator;
  a.delimiter = std::move(c);
  return a;
}

PatternAtom PatternAtom::Open(std::string c) {
  PatternAtom a;
  a.kind = Kind::kOpen;
  a.delimiter = std::move(c);
  return a;
}

PatternAtom PatternAtom::Close(std::string c) {
  PatternAtom a;
  a.kind = Kind::kClose;
  a.delimiter = std::move(c);
  return a;
}

MacroRule MakeRule(std::string name, std::vector<PatternAtom> pattern,
                   std::string template_source, std::string at_variant,
                   int priority, std::string definition_link,
                   std::string description) {
  if (name.empty()) SchemaError("rule", "name must be nonempty");
  if (pattern.empty()) SchemaError("rule " + name, "pattern is empty");

  std::set<std::string> captures;
  std::vector<std::string> open_stack;
  for (const PatternAtom& a : pattern) {
    switch (a.kind) {
      case PatternAtom::Kind::kCapture:
        if (a.capture.empty() || !captures.insert(a.capture).second) {
          SchemaError("rule " + name,
                      "capture names must be unique and nonempty");
        }
        break;
      case PatternAtom::Kind::kOpen:
        open_stack.push_back(a.delimiter);
        break;
      case PatternAtom::Kind::kClose:
        if (open_stack.empty() ||
            ClosingFor(open_stack.back()) != a.delimiter) {
          SchemaError("rule " + name, "close '" + a.delimiter +
                                          "' does not match an open atom");
        }
        open_stack.pop_back();
        break;
      default:
        break;
    }
  }
  if (!open_stack.empty()) {
    SchemaError("rule " + name, "open '" + open_stack.back() + "' never closed");
  }

  SemanticTemplate semantic = ParseTemplate(name, template_source);
  if (semantic.at != at_variant) {
    SchemaError("rule " + name, "template marker '" + semantic.at +
                                    "' differs from at variant '" +
                                    at_variant + "'");
  }
  std::set<std::string> placeholders;
  std::size_t count = 0;
  for (const auto* list : {&semantic.params, &semantic.args}) {
    for (const std::string& p : *list) {
      placeholders.insert(p);
      ++count;
    }
  }
  if (placeholders != captures || count != captures.size()) {
    std::string detail = "placeholders {";
    for (const auto& p : placeholders) detail += " " + p;
    detail += " } vs captures {";
    for (const auto& c : captures) detail += " " + c;
    detail += " }";
    throw TemplateCaptureMismatchError(name, detail);
  }

  MacroRule r;
  r.name = std::move(name);
  r.pattern = std::move(pattern);
  r.symbol = DefaultSymbol(template_source);
  r.template_source = std::move(template_source);
  r.semantic = std::move(semantic);
  r.at_variant = std::move(at_variant);
  r.priority = priority;
  r.definition_link = std::move(definition_link);
  r.description = std::move(description);
  return r;
}

Glossary::Glossary(std::vector<MacroRule> rules,
                   CanonicalizationConfig canonicalization)
    : rules_(std::move(rules)),
      canonicalization_(std::move(canonicalization)),
      canonicalizer_(std::make_shared<Canonicalizer>(canonicalization_)) {
  std::set<std::string, std::less<>> names;
  for (const MacroRule& r : rules_) {
    if (!names.insert(r.name).second) throw DuplicateMacroError(r.name);
  }
  std::sort(rules_.begin(), rules_.end(),
            [](const MacroRule& a, const MacroRule& b) {
              if (a.priority != b.priority) return a.priority > b.priority;
              if (a.pattern.size() != b.pattern.size()) {
                return a.pattern.size() > b.pattern.size();
              }
              return a.name < b.name;
            });
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    by_head_[rules_[i].semantic.head].push_back(i);
  }
}

const MacroRule* Glossary::FindByName(std::string_view name) const {
  for (const MacroRule& r : rules_) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

bool Glossary::IsSemanticHead(std::string_view head) const {
  return by_head_.find(head) != by_head_.end();
}

std::vector<const MacroRule*> Glossary::RulesWithHead(
    std::string_view head) const {
  std::vector<const MacroRule*> out;
  auto it = by_head_.find(head);
  if (it == by_head_.end()) return out;
  for (std::size_t i : it->second) out.push_back(&rules_[i]);
  return out;
}

const MacroRule* Glossary::PrimaryRule(std::string_view head) const {
  auto rules = RulesWithHead(head);
  if (rules.empty()) return nullptr;
  for (const MacroRule* r : rules) {
    if (r->name == head) return r;
  }
  return rules.front();
}

Glossary ParseGlossary(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw GlossaryParseError(LineOfByte(text, e.byte), e.what());
  }
  if (!root.is_object()) SchemaError("$", "top level must be an object");
  try {
    CanonicalizationConfig canon = ParseCanonicalization(root);
    if (!root.contains("rules") || !root.at("rules").is_array()) {
      SchemaError("rules", "missing rules array");
    }
    std::vector<MacroRule> rules;
    const json& arr = root.at("rules");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const json& r = arr[i];
      std::string where = "rules[" + std::to_string(i) + "]";
      if (!r.is_object()) SchemaError(where, "rule must be an object");
      for (const char* key : {"name", "pattern", "template", "at"}) {
        if (!r.contains(key)) SchemaError(where, std::string("missing ") + key);
      }
      MacroRule rule = MakeRule(
          r.at("name").get<std::string>(),
          ParsePattern(where + ".pattern", r.at("pattern")),
          r.at("template").get<std::string>(), r.at("at").get<std::string>(),
          r.value("priority", 0), r.value("url", std::string()),
          r.value("description", std::string()));
      if (r.contains("symbol")) rule.symbol = r.at("symbol").get<std::string>();
      rules.push_back(std::move(rule));
    }
    try {
      return Glossary(std::move(rules), std::move(canon));
    } catch (const ConfigInvalidError& e) {
      SchemaError("canonicalization", e.what());
    }
  } catch (const json::exception& e) {
    SchemaError("$", e.what());
  }
}

Glossary LoadGlossary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw GlossaryParseError(0, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ParseGlossary(ss.str());
}

}  // namespace semtex
