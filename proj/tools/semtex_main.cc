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


// semtex: convert generic LaTeX formula collections into semantic LaTeX and a
// MediaWiki XML dump.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "semtex/error.h"
#include "semtex/glossary.h"
#include "semtex/page_builder.h"
#include "semtex/pipeline.h"

namespace fs = std::filesystem;

namespace {

struct CommonFlags {
  std::vector<std::string> inputs;
  std::string glossary;
  std::string bib;
  std::string config;
  std::string corpus;
  std::optional<std::size_t> workers;
};

void AddCommon(CLI::App* cmd, CommonFlags* f) {
  cmd->add_option("--input", f->inputs, "Input .tex files or directories");
  cmd->add_option("--glossary", f->glossary, "Glossary JSON");
  cmd->add_option("--config", f->config, "JSON config; flags override it");
  cmd->add_option("--corpus", f->corpus, "Corpus prefix used in page titles");
  cmd->add_option("--workers", f->workers, "Files processed concurrently")
      ->check(CLI::PositiveNumber);
}

semtex::PipelineConfig Resolve(const CommonFlags& f) {
  semtex::PipelineConfig c;
  if (!f.config.empty()) c = semtex::PipelineConfig::Load(f.config);
  if (!f.inputs.empty()) c.inputs.assign(f.inputs.begin(), f.inputs.end());
  if (!f.glossary.empty()) c.glossary = f.glossary;
  if (!f.bib.empty()) c.bibliography = f.bib;
  if (!f.corpus.empty()) c.corpus = f.corpus;
  if (f.workers) c.workers = *f.workers;
  if (!c.endpoint) {
    if (const char* env = std::getenv("SEMTEX_ENDPOINT"); env && *env) {
      c.endpoint = env;
    }
  }
  return c;
}

int Convert(const CommonFlags& f, const std::string& out,
            const std::string& report) {
  semtex::PipelineConfig c = Resolve(f);
  if (!out.empty()) c.output = out;
  if (!report.empty()) c.report = report;
  if (c.output.empty()) throw semtex::ConfigInvalidError("--out is required");
  c.Validate();
  semtex::Glossary glossary = semtex::LoadGlossary(c.glossary);
  semtex::Bibliography bib = semtex::LoadBibliography(c.bibliography);
  semtex::PipelineResult r = semtex::RunPipeline(c, glossary, bib);
  if (c.output.has_parent_path()) fs::create_directories(c.output.parent_path());
  std::ofstream(c.output, std::ios::binary) << r.dump;
  if (c.report) {
    std::ofstream(*c.report, std::ios::binary) << r.report;
  }
  for (const std::string& e : r.report_input.file_errors) {
    std::cerr << "semtex: " << e << "\n";
  }
  std::cerr << "semtex: wrote " << r.pages.size() << " pages to "
            << c.output.string() << "\n";
  return r.exit_status;
}

int Stats(const CommonFlags& f) {
  semtex::PipelineConfig c = Resolve(f);
  c.Validate(/*need_bibliography=*/false);
  semtex::Glossary glossary = semtex::LoadGlossary(c.glossary);
  semtex::Bibliography bib;
  if (!c.bibliography.empty()) {
    bib = semtex::LoadBibliography(c.bibliography);
  } else {
    bib = semtex::Bibliography(
        {{c.EffectiveCitationKey(),
          {c.EffectiveCitationKey(), "", c.EffectiveCitationKey(), "", ""}}});
  }
  semtex::PipelineResult r = semtex::RunPipeline(c, glossary, bib);
  std::cout << r.report;
  return r.exit_status;
}

int Replace(const CommonFlags& f, const std::string& out) {
  semtex::PipelineConfig c = Resolve(f);
  if (out.empty()) throw semtex::ConfigInvalidError("--out is required");
  c.Validate(/*need_bibliography=*/false);
  semtex::Glossary glossary = semtex::LoadGlossary(c.glossary);
  std::vector<std::string> errors;
  int status = semtex::RunReplace(c.inputs, glossary, out, &errors);
  for (const std::string& e : errors) std::cerr << "semtex: " << e << "\n";
  return status;
}

int VerifyRender(const CommonFlags& f, const std::string& endpoint_flag,
                 const std::vector<std::string>& latex) {
  semtex::PipelineConfig c = Resolve(f);
  if (!endpoint_flag.empty()) c.endpoint = endpoint_flag;
  if (!c.endpoint) {
    throw semtex::ConfigInvalidError(
        "no endpoint: pass --endpoint or set SEMTEX_ENDPOINT");
  }
  std::vector<std::string> formulae = latex;
  if (!c.inputs.empty()) {
    c.Validate(/*need_bibliography=*/false);
    semtex::Glossary glossary = semtex::LoadGlossary(c.glossary);
    semtex::Bibliography bib(
        {{c.EffectiveCitationKey(), {c.EffectiveCitationKey(), "", "-", "", ""}}});
    for (const semtex::Formula& fm : semtex::RunPipeline(c, glossary, bib).formulae) {
      formulae.push_back(fm.source_semantic);
    }
  }
  semtex::VerifyResult r = semtex::VerifyRender(formulae, *c.endpoint);
  for (const std::string& w : r.warnings) std::cout << "warning: " << w << "\n";
  std::cout << "rendered " << r.rendered << "/" << r.requested << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semantic enrichment of LaTeX formula collections"};
  app.require_subcommand(1);

  CommonFlags convert_flags;
  std::string convert_out;
  std::string convert_report;
  CLI::App* convert = app.add_subcommand("convert", "Full pipeline to an XML dump");
  AddCommon(convert, &convert_flags);
  convert->add_option("--bib", convert_flags.bib, "Bibliography JSON");
  convert->add_option("--out", convert_out, "Output dump path");
  convert->add_option("--report", convert_report, "Statistics report path");

  CommonFlags replace_flags;
  std::string replace_out;
  CLI::App* replace =
      app.add_subcommand("replace", "Write enriched LaTeX sources for review");
  AddCommon(replace, &replace_flags);
  replace->add_option("--out", replace_out, "Output directory");

  CommonFlags stats_flags;
  CLI::App* stats = app.add_subcommand("stats", "Print the statistics report");
  AddCommon(stats, &stats_flags);
  stats->add_option("--bib", stats_flags.bib, "Bibliography JSON");

  CommonFlags verify_flags;
  std::string endpoint;
  std::vector<std::string> latex;
  CLI::App* verify = app.add_subcommand(
      "verify-render", "Spot-check formulae against a rendering service");
  AddCommon(verify, &verify_flags);
  verify->add_option("--endpoint", endpoint,
                     "Service URL (default: $SEMTEX_ENDPOINT)");
  verify->add_option("--latex", latex, "Semantic LaTeX to render");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*convert) return Convert(convert_flags, convert_out, convert_report);
    if (*replace) return Replace(replace_flags, replace_out);
    if (*stats) return Stats(stats_flags);
    if (*verify) return VerifyRender(verify_flags, endpoint, latex);
  } catch (const semtex::Error& e) {
    std::cerr << "semtex: error: " << e.what() << "\n";
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "semtex: error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
