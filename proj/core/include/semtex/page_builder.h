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


// Formula home pages as Wikitext, the MediaWiki XML export that bundles them,
// and the plain-text statistics report.

#ifndef SEMTEX_PAGE_BUILDER_H_
#define SEMTEX_PAGE_BUILDER_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "semtex/glossary.h"
#include "semtex/macro_engine.h"
#include "semtex/metadata.h"

namespace semtex {

struct SymbolsListEntry {
  std::string macro_name;
  std::string rendered_form;
  // DLMF URL, or a wiki page title when no DLMF definition exists.
  std::string definition_link;
  std::string description;

  bool operator==(const SymbolsListEntry&) const = default;
};

struct BibEntry {
  std::string key;
  std::string authors;
  std::string title;
  std::string publisher;
  std::string year;
};

class Bibliography {
 public:
  Bibliography() = default;
  explicit Bibliography(std::map<std::string, BibEntry> entries)
      : entries_(std::move(entries)) {}

  // Throws MissingBibEntryError.
  const BibEntry& Get(const std::string& key) const;
  bool Contains(const std::string& key) const { return entries_.contains(key); }

 private:
  std::map<std::string, BibEntry> entries_;
};

// JSON object mapping citation keys to {authors, title, publisher, year}.
// Throws ConfigInvalidError on malformed input.
Bibliography ParseBibliography(std::string_view json_text);
Bibliography LoadBibliography(const std::filesystem::path& path);

struct FormulaPage {
  std::string title;
  std::string formula_id;
  std::string wikitext;
  std::vector<SymbolsListEntry> symbols;
};

struct SiteInfo {
  std::string sitename = "Semantic Formula Wiki";
  std::string dbname = "semtexwiki";
  std::string base = "https://wiki.example.org/wiki/Main_Page";
  std::string generator = "semtex 0.1.0";
  // Pinned so that dumps are byte-identical across runs.
  std::string timestamp = "2026-01-01T00:00:00Z";
  std::string contributor = "SemtexBot";
};

// Glossary macros used by the formula or any of its annotations, one entry
// per macro head, sorted by head.
std::vector<SymbolsListEntry> BuildSymbolsList(const Formula& f,
                                               const Glossary& glossary);

// Title is "Formula:<corpus>:<id>". Throws MissingBibEntryError when `bib`
// lacks the formula's citation key.
FormulaPage RenderPage(const Formula& f, const Glossary& glossary,
                       const Bibliography& bib, std::string_view corpus);

// Math block of a rendered page, i.e. the text of its first <math> tag.
std::string ExtractMathBlock(std::string_view wikitext);

// MediaWiki export-0.10 XML, pages in the given order. Throws
// DuplicateTitleError.
std::string EmitDump(std::span<const FormulaPage> pages,
                     const SiteInfo& siteinfo = {});

std::string XmlEscape(std::string_view text);

struct ReportInput {
  ReplacementStats stats;
  std::vector<Formula> formulae;
  std::vector<FormulaPage> pages;
  std::size_t formulae_segmented = 0;
  std::size_t substitution_defs = 0;
  std::vector<std::string> file_errors;
  std::vector<std::string> warnings;
};

std::string StatsReport(const ReportInput& in);

}  // namespace semtex

#endif  // SEMTEX_PAGE_BUILDER_H_
