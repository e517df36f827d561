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


#include "semtex/page_builder.h"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "semtex/error.h"

namespace semtex {
namespace {

using nlohmann::json;

std::string Percent(std::size_t num, std::size_t den) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f",
                den == 0 ? 0.0 : 100.0 * static_cast<double>(num) /
                                     static_cast<double>(den));
  return buf;
}

bool IsUrl(std::string_view link) {
  return link.starts_with("http://") || link.starts_with("https://");
}

std::string FormatSymbol(const SymbolsListEntry& e) {
  std::string line = "* <math>" + e.rendered_form + "</math> : ";
  if (IsUrl(e.definition_link)) {
    line += "[" + e.definition_link;
    if (!e.description.empty()) line += " " + e.description;
    line += "]";
  } else {
    line += "[[" + e.definition_link;
    if (!e.description.empty()) line += "|" + e.description;
    line += "]]";
  }
  return line;
}

void Section(std::string& out, std::string_view heading,
             const std::vector<std::string>& lines) {
  if (lines.empty()) return;
  out += "\n== ";
  out += heading;
  out += " ==\n";
  for (const std::string& l : lines) out += l + "\n";
}

std::vector<std::string> MathLines(const Formula& f, AnnotationKind kind) {
  std::vector<std::string> out;
  for (const Annotation* a : f.AnnotationsOf(kind)) {
    out.push_back("* <math>" + a->body + "</math>");
  }
  return out;
}

std::vector<std::string> ProseLines(const Formula& f, AnnotationKind kind) {
  std::vector<std::string> out;
  for (const Annotation* a : f.AnnotationsOf(kind)) out.push_back(a->body);
  return out;
}

}  // namespace

const BibEntry& Bibliography::Get(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) throw MissingBibEntryError(key);
  return it->second;
}

Bibliography ParseBibliography(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigInvalidError(std::string("bibliography: ") + e.what());
  }
  if (!doc.is_object()) {
    throw ConfigInvalidError("bibliography: top level must be an object");
  }
  std::map<std::string, BibEntry> entries;
  for (const auto& [key, value] : doc.items()) {
    if (!value.is_object()) {
      throw ConfigInvalidError("bibliography: entry '" + key +
                               "' must be an object");
    }
    BibEntry e;
    e.key = key;
    auto field = [&](const char* name) -> std::string {
      if (!value.contains(name)) return {};
      const json& v = value.at(name);
      if (v.is_string()) return v.get<std::string>();
      if (v.is_number_integer()) return std::to_string(v.get<long long>());
      throw ConfigInvalidError("bibliography: '" + key + "." + name +
                               "' must be a string");
    };
    e.authors = field("authors");
    e.title = field("title");
    e.publisher = field("publisher");
    e.year = field("year");
    if (e.title.empty()) {
      throw ConfigInvalidError("bibliography: entry '" + key + "' has no title");
    }
    entries.emplace(key, std::move(e));
  }
  return Bibliography(std::move(entries));
}

Bibliography LoadBibliography(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigInvalidError("cannot read bibliography " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ParseBibliography(ss.str());
}

std::vector<SymbolsListEntry> BuildSymbolsList(const Formula& f,
                                               const Glossary& glossary) {
  std::set<std::string> heads;
  for (std::string& h : SemanticHeads(f.semantic.nodes, glossary)) {
    heads.insert(std::move(h));
  }
  for (const Annotation& a : f.annotations) {
    if (a.kind != AnnotationKind::kConstraint &&
        a.kind != AnnotationKind::kSubstitution) {
      continue;
    }
    for (std::string& h : SemanticHeads(a.body, glossary)) {
      heads.insert(std::move(h));
    }
  }
  std::vector<SymbolsListEntry> out;
  for (const std::string& head : heads) {
    const MacroRule* rule = glossary.PrimaryRule(head);
    if (rule == nullptr) continue;
    SymbolsListEntry e;
    e.macro_name = head;
    e.rendered_form = rule->symbol;
    e.definition_link = rule->definition_link.empty()
                            ? "Definition:" + head
                            : rule->definition_link;
    e.description = rule->description;
    out.push_back(std::move(e));
  }
  return out;
}

FormulaPage RenderPage(const Formula& f, const Glossary& glossary,
                       const Bibliography& bib, std::string_view corpus) {
  const BibEntry& book = bib.Get(f.citation.key);
  FormulaPage page;
  page.formula_id = f.id;
  page.title = "Formula:" + std::string(corpus) + ":" + f.id;
  page.symbols = BuildSymbolsList(f, glossary);

  std::string& w = page.wikitext;
  for (const Annotation* a : f.AnnotationsOf(AnnotationKind::kName)) {
    w += "'''" + a->body + "'''\n\n";
  }
  w += "<math>" + f.source_semantic + "</math>\n";
  Section(w, "Constraints", MathLines(f, AnnotationKind::kConstraint));
  Section(w, "Substitutions", MathLines(f, AnnotationKind::kSubstitution));
  Section(w, "Proof", ProseLines(f, AnnotationKind::kProof));
  Section(w, "Notes", ProseLines(f, AnnotationKind::kNote));
  std::vector<std::string> symbols;
  for (const SymbolsListEntry& e : page.symbols) symbols.push_back(FormatSymbol(e));
  Section(w, "Symbols List", symbols);

  std::string cite = "* ";
  if (!book.authors.empty()) cite += book.authors + ", ";
  cite += "''" + book.title + "''";
  if (!book.publisher.empty()) cite += ", " + book.publisher;
  if (!book.year.empty()) cite += ", " + book.year;
  cite += ". Equation (" + f.citation.tag + ").";
  Section(w, "Bibliography", {cite});
  return page;
}

std::string ExtractMathBlock(std::string_view wikitext) {
  std::size_t open = wikitext.find("<math>");
  if (open == std::string_view::npos) return {};
  open += 6;
  std::size_t close = wikitext.find("</math>", open);
  if (close == std::string_view::npos) return {};
  return std::string(wikitext.substr(open, close - open));
}

std::string XmlEscape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string EmitDump(std::span<const FormulaPage> pages,
                     const SiteInfo& siteinfo) {
  std::set<std::string> titles;
  for (const FormulaPage& p : pages) {
    if (!titles.insert(p.title).second) throw DuplicateTitleError(p.title);
  }
  std::string x;
  x += "<mediawiki xmlns=\"http://www.mediawiki.org/xml/export-0.10/\" "
       "xmlns:xsi=\"http://www.w3.org/2001/XMLSchema-instance\" "
       "xsi:schemaLocation=\"http://www.mediawiki.org/xml/export-0.10/ "
       "http://www.mediawiki.org/xml/export-0.10.xsd\" version=\"0.10\" "
       "xml:lang=\"en\">\n";
  x += "  <siteinfo>\n";
  x += "    <sitename>" + XmlEscape(siteinfo.sitename) + "</sitename>\n";
  x += "    <dbname>" + XmlEscape(siteinfo.dbname) + "</dbname>\n";
  x += "    <base>" + XmlEscape(siteinfo.base) + "</base>\n";
  x += "    <generator>" + XmlEscape(siteinfo.generator) + "</generator>\n";
  x += "    <case>first-letter</case>\n";
  x += "    <namespaces>\n";
  x += "      <namespace key=\"0\" case=\"first-letter\" />\n";
  x += "      <namespace key=\"100\" case=\"first-letter\">Formula</namespace>\n";
  x += "    </namespaces>\n";
  x += "  </siteinfo>\n";
  std::size_t id = 0;
  for (const FormulaPage& p : pages) {
    ++id;
    std::string n = std::to_string(id);
    x += "  <page>\n";
    x += "    <title>" + XmlEscape(p.title) + "</title>\n";
    x += "    <ns>100</ns>\n";
    x += "    <id>" + n + "</id>\n";
    x += "    <revision>\n";
    x += "      <id>" + n + "</id>\n";
    x += "      <timestamp>" + XmlEscape(siteinfo.timestamp) + "</timestamp>\n";
    x += "      <contributor>\n";
    x += "        <username>" + XmlEscape(siteinfo.contributor) + "</username>\n";
    x += "        <id>1</id>\n";
    x += "      </contributor>\n";
    x += "      <model>wikitext</model>\n";
    x += "      <format>text/x-wiki</format>\n";
    x += "      <text xml:space=\"preserve\" bytes=\"" +
         std::to_string(p.wikitext.size()) + "\">" + XmlEscape(p.wikitext) +
         "</text>\n";
    x += "    </revision>\n";
    x += "  </page>\n";
  }
  x += "</mediawiki>\n";
  return x;
}

std::string StatsReport(const ReportInput& in) {
  std::size_t annotated = 0;
  for (const Formula& f : in.formulae) {
    if (!f.AnnotationsOf(AnnotationKind::kSubstitution).empty()) ++annotated;
  }
  std::size_t nonempty = 0;
  for (const FormulaPage& p : in.pages) {
    if (!p.symbols.empty()) ++nonempty;
  }
  char avg[32];
  std::snprintf(avg, sizeof avg, "%.2f", in.stats.AveragePerFormula());

  std::ostringstream r;
  r << "semtex conversion report\n";
  r << "formulae segmented: " << in.formulae_segmented << "\n";
  r << "pages: " << in.pages.size() << "\n";
  r << "replacements total: " << in.stats.total << "\n";
  r << "replacements per formula: " << avg << "\n";
  r << "formulae with replacements: " << in.stats.formulae_touched << "\n";
  r << "substitution definitions: " << in.substitution_defs << "\n";
  r << "formulae with substitution annotations: " << annotated << "\n";
  r << "substitution definition pages: removed (folded into users as "
       "annotations)\n";
  r << "non-empty symbols lists: " << nonempty << "/" << in.pages.size()
    << " (" << Percent(nonempty, in.pages.size()) << "%)\n";
  r << "\nreplacements per rule:\n";
  if (in.stats.per_rule.empty()) r << "  (none)\n";
  for (const auto& [rule, n] : in.stats.per_rule) {
    r << "  " << rule << ": " << n << "\n";
  }
  r << "\nfile errors: " << in.file_errors.size() << "\n";
  for (const std::string& e : in.file_errors) r << "  " << e << "\n";
  r << "\nwarnings: " << in.warnings.size() << "\n";
  for (const std::string& w : in.warnings) r << "  " << w << "\n";
  return r.str();
}

}  // namespace semtex
