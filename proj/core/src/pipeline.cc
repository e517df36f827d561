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


#include "semtex/pipeline.h"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "semtex/error.h"
#include "semtex/macro_engine.h"
#include "semtex/render_client.h"

namespace semtex {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const fs::path& path, std::string_view text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

// Runs fn(i) for i in [0, n) on up to `workers` threads.
template <typename Fn>
void ParallelFor(std::size_t n, std::size_t workers, Fn fn) {
  workers = std::max<std::size_t>(1, std::min(workers, n));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
  for (std::thread& t : pool) t.join();
}

struct FileResult {
  std::optional<std::string> error;
  std::vector<Formula> formulae;
  std::vector<std::string> warnings;
  ReplacementStats stats;
  std::size_t segmented = 0;
  std::size_t defs = 0;
};

// Display rows in a file, or 0 when it does not lex.
std::size_t CountDisplayRows(const std::string& text) {
  try {
    TokenStream tokens = Tokenize(text);
    BuildGroups(tokens);
    std::size_t n = 0;
    for (const MathSpan& m : ExtractMath(text, tokens)) {
      if (IsDisplay(m.environment)) ++n;
    }
    return n;
  } catch (const Error&) {
    return 0;
  }
}

FileResult ProcessFile(const std::string& text, const std::string& name,
                       std::size_t ordinal_base, const PipelineConfig& config,
                       const Glossary& glossary) {
  FileResult r;
  SegmentOptions options;
  options.ordinal_base = ordinal_base;
  options.source_file = name;
  options.citation_key = config.EffectiveCitationKey();
  options.canonicalizer = &glossary.canonicalizer();
  SegmentResult seg;
  try {
    seg = SegmentFormulae(text, options);
  } catch (const Error& e) {
    r.error = name + ": " + e.what();
    return r;
  }
  r.warnings = std::move(seg.warnings);
  r.segmented = seg.formulae.size();
  std::vector<Formula> fs = std::move(seg.formulae);
  for (Formula& f : fs) {
    ApplyConstraints(f, config.metadata, &glossary.canonicalizer());
    EnrichFormula(f, glossary);
    r.stats.AddFormula(f.stats);
  }
  std::vector<SubstitutionDef> defs = DetectSubstitutions(fs, glossary);
  try {
    fs = InlineSubstitutions(std::move(fs), defs);
    r.defs = defs.size();
  } catch (const SubstitutionCycleError& e) {
    r.warnings.push_back(name + ": " + e.what() +
                         "; definitions kept as formulae");
  }
  r.formulae = HarvestNamesAndNotes(std::move(fs), config.metadata);
  return r;
}

std::vector<std::string> StringList(const json& v, const char* key) {
  if (!v.is_array()) {
    throw ConfigInvalidError(std::string("config: '") + key +
                             "' must be an array of strings");
  }
  std::vector<std::string> out;
  for (const json& s : v) {
    if (!s.is_string()) {
      throw ConfigInvalidError(std::string("config: '") + key +
                               "' must be an array of strings");
    }
    out.push_back(s.get<std::string>());
  }
  return out;
}

}  // namespace

PipelineConfig PipelineConfig::FromJson(std::string_view json_text,
                                        const fs::path& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigInvalidError(std::string("config: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigInvalidError("config: expected an object");
  auto path_of = [&](const json& v, const char* key) {
    if (!v.is_string()) {
      throw ConfigInvalidError(std::string("config: '") + key +
                               "' must be a string");
    }
    fs::path p = v.get<std::string>();
    return p.is_relative() && !base_dir.empty() ? base_dir / p : p;
  };
  auto string_of = [&](const json& v, const char* key) {
    if (!v.is_string()) {
      throw ConfigInvalidError(std::string("config: '") + key +
                               "' must be a string");
    }
    return v.get<std::string>();
  };
  PipelineConfig c;
  for (const auto& [key, v] : doc.items()) {
    if (key == "input") {
      if (v.is_string()) {
        c.inputs.push_back(path_of(v, "input"));
      } else {
        for (const std::string& s : StringList(v, "input")) {
          c.inputs.push_back(path_of(json(s), "input"));
        }
      }
    } else if (key == "glossary") {
      c.glossary = path_of(v, "glossary");
    } else if (key == "bib") {
      c.bibliography = path_of(v, "bib");
    } else if (key == "out") {
      c.output = path_of(v, "out");
    } else if (key == "report") {
      c.report = path_of(v, "report");
    } else if (key == "corpus") {
      c.corpus = string_of(v, "corpus");
    } else if (key == "citation_key") {
      c.citation_key = string_of(v, "citation_key");
    } else if (key == "endpoint") {
      c.endpoint = string_of(v, "endpoint");
    } else if (key == "workers") {
      if (!v.is_number_integer() || v.get<long long>() < 1) {
        throw ConfigInvalidError("config: 'workers' must be a positive integer");
      }
      c.workers = v.get<std::size_t>();
    } else if (key == "name_keywords") {
      c.metadata.name_keywords = StringList(v, "name_keywords");
    } else if (key == "constraint_introducers") {
      c.metadata.constraint_introducers = StringList(v, "constraint_introducers");
    } else if (key == "siteinfo") {
      if (!v.is_object()) throw ConfigInvalidError("config: 'siteinfo' must be an object");
      for (const auto& [field, s] : v.items()) {
        std::string value = string_of(s, "siteinfo");
        if (field == "sitename") c.siteinfo.sitename = value;
        else if (field == "dbname") c.siteinfo.dbname = value;
        else if (field == "base") c.siteinfo.base = value;
        else if (field == "generator") c.siteinfo.generator = value;
        else if (field == "timestamp") c.siteinfo.timestamp = value;
        else if (field == "contributor") c.siteinfo.contributor = value;
        else throw ConfigInvalidError("config: unknown siteinfo field '" + field + "'");
      }
    } else {
      throw ConfigInvalidError("config: unknown key '" + key + "'");
    }
  }
  return c;
}

PipelineConfig PipelineConfig::Load(const fs::path& path) {
  std::string text;
  try {
    text = ReadFile(path);
  } catch (const Error& e) {
    throw ConfigInvalidError(e.what());
  }
  return FromJson(text, path.parent_path());
}

void PipelineConfig::Validate(bool need_bibliography) const {
  if (inputs.empty()) throw ConfigInvalidError("config: no input paths");
  for (const fs::path& p : inputs) {
    if (!fs::exists(p)) throw ConfigInvalidError("input not found: " + p.string());
  }
  if (glossary.empty() || !fs::is_regular_file(glossary)) {
    throw ConfigInvalidError("glossary not found: " + glossary.string());
  }
  if (need_bibliography &&
      (bibliography.empty() || !fs::is_regular_file(bibliography))) {
    throw ConfigInvalidError("bibliography not found: " + bibliography.string());
  }
  if (endpoint) ParseEndpoint(*endpoint);
  if (workers == 0) throw ConfigInvalidError("workers must be at least 1");
}

std::vector<fs::path> CollectInputs(const std::vector<fs::path>& inputs) {
  std::vector<fs::path> out;
  for (const fs::path& p : inputs) {
    if (fs::is_directory(p)) {
      std::vector<fs::path> files;
      for (const auto& entry : fs::directory_iterator(p)) {
        if (entry.is_regular_file() && entry.path().extension() == ".tex") {
          files.push_back(entry.path());
        }
      }
      std::sort(files.begin(), files.end());
      out.insert(out.end(), files.begin(), files.end());
    } else if (fs::exists(p)) {
      out.push_back(p);
    } else {
      throw ConfigInvalidError("input not found: " + p.string());
    }
  }
  return out;
}

PipelineResult RunPipeline(const PipelineConfig& config, const Glossary& glossary,
                           const Bibliography& bibliography) {
  bibliography.Get(config.EffectiveCitationKey());
  std::vector<fs::path> files = CollectInputs(config.inputs);
  std::vector<std::optional<std::string>> texts(files.size());
  std::vector<std::size_t> rows(files.size(), 0);
  ParallelFor(files.size(), config.workers, [&](std::size_t i) {
    try {
      texts[i] = ReadFile(files[i]);
      rows[i] = CountDisplayRows(*texts[i]);
    } catch (const Error&) {
    }
  });
  std::vector<std::size_t> base(files.size(), 0);
  for (std::size_t i = 1; i < files.size(); ++i) base[i] = base[i - 1] + rows[i - 1];

  std::vector<FileResult> results(files.size());
  ParallelFor(files.size(), config.workers, [&](std::size_t i) {
    std::string name = files[i].filename().string();
    if (!texts[i]) {
      results[i].error = name + ": cannot read file";
      return;
    }
    results[i] = ProcessFile(*texts[i], name, base[i], config, glossary);
  });

  PipelineResult out;
  ReportInput& report = out.report_input;
  for (FileResult& r : results) {
    if (r.error) {
      report.file_errors.push_back(*r.error);
      out.exit_status = 1;
      continue;
    }
    report.stats.Merge(r.stats);
    report.formulae_segmented += r.segmented;
    report.substitution_defs += r.defs;
    for (std::string& w : r.warnings) report.warnings.push_back(std::move(w));
    for (Formula& f : r.formulae) out.formulae.push_back(std::move(f));
  }
  out.pages.resize(out.formulae.size());
  ParallelFor(out.formulae.size(), config.workers, [&](std::size_t i) {
    out.pages[i] = RenderPage(out.formulae[i], glossary, bibliography,
                              config.corpus);
  });
  out.dump = EmitDump(out.pages, config.siteinfo);
  report.formulae = out.formulae;
  report.pages = out.pages;
  out.report = StatsReport(report);
  return out;
}

int RunConvert(const PipelineConfig& config) {
  config.Validate();
  Glossary glossary = LoadGlossary(config.glossary);
  Bibliography bib = LoadBibliography(config.bibliography);
  PipelineResult result = RunPipeline(config, glossary, bib);
  WriteFile(config.output, result.dump);
  if (config.report) WriteFile(*config.report, result.report);
  return result.exit_status;
}

std::string ReplaceInSource(std::string_view latex, const Glossary& glossary) {
  TokenStream tokens = Tokenize(latex);
  BuildGroups(tokens);
  std::vector<Replacement> all;
  for (const MathSpan& m : ExtractMath(latex, tokens)) {
    CanonicalTree c = glossary.canonicalizer().Canonicalize(m.body);
    ReplaceResult r = ReplaceAll(c, glossary);
    all.insert(all.end(), r.replacements.begin(), r.replacements.end());
  }
  std::sort(all.begin(), all.end(), [](const Replacement& a, const Replacement& b) {
    return a.source.begin < b.source.begin;
  });
  std::string out;
  std::size_t pos = 0;
  for (const Replacement& r : all) {
    if (r.source.begin < pos) continue;
    out.append(latex.substr(pos, r.source.begin - pos));
    out += r.text;
    pos = r.source.end;
  }
  out.append(latex.substr(pos));
  return out;
}

int RunReplace(const std::vector<fs::path>& inputs, const Glossary& glossary,
               const fs::path& out_dir, std::vector<std::string>* errors) {
  int status = 0;
  for (const fs::path& file : CollectInputs(inputs)) {
    try {
      WriteFile(out_dir / file.filename(), ReplaceInSource(ReadFile(file), glossary));
    } catch (const Error& e) {
      errors->push_back(file.filename().string() + ": " + e.what());
      status = 1;
    }
  }
  return status;
}

VerifyResult VerifyRender(const std::vector<std::string>& semantic_latex,
                          const std::string& endpoint) {
  VerifyResult out;
  for (const std::string& latex : semantic_latex) {
    ++out.requested;
    try {
      RequestMathML(latex, endpoint);
      ++out.rendered;
    } catch (const ServiceUnreachableError& e) {
      out.warnings.push_back(e.what());
    } catch (const ServiceRejectedError& e) {
      out.warnings.push_back(std::string(e.what()) + " for '" + latex + "'");
    }
  }
  return out;
}

}  // namespace semtex
