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


// End-to-end conversion: LaTeX files in, MediaWiki dump and report out.

#ifndef SEMTEX_PIPELINE_H_
#define SEMTEX_PIPELINE_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "semtex/glossary.h"
#include "semtex/metadata.h"
#include "semtex/page_builder.h"

namespace semtex {

struct PipelineConfig {
  // Files, or directories whose *.tex files are taken in name order.
  std::vector<std::filesystem::path> inputs;
  std::filesystem::path glossary;
  std::filesystem::path bibliography;
  std::filesystem::path output;
  std::optional<std::filesystem::path> report;
  std::string corpus = "KLS";
  // Bibliography key cited by every page; defaults to the corpus prefix.
  std::string citation_key;
  MetadataConfig metadata = MetadataConfig::Default();
  std::optional<std::string> endpoint;
  SiteInfo siteinfo;
  std::size_t workers = 1;

  // Reads a JSON config; relative paths resolve against `base_dir`.
  static PipelineConfig FromJson(std::string_view json_text,
                                 const std::filesystem::path& base_dir = {});
  static PipelineConfig Load(const std::filesystem::path& path);

  // Throws ConfigInvalidError for missing inputs, glossary or bibliography,
  // a non-absolute endpoint, or zero workers.
  void Validate(bool need_bibliography = true) const;

  std::string EffectiveCitationKey() const {
    return citation_key.empty() ? corpus : citation_key;
  }
};

// Input files of `inputs` in processing order. Throws ConfigInvalidError
// for a path that does not exist.
std::vector<std::filesystem::path> CollectInputs(
    const std::vector<std::filesystem::path>& inputs);

struct PipelineResult {
  // 0 when every file was processed, 1 otherwise.
  int exit_status = 0;
  std::vector<Formula> formulae;
  std::vector<FormulaPage> pages;
  std::string dump;
  std::string report;
  ReportInput report_input;
};

// Runs every stage in memory; per-formula failures become warnings and
// file-level errors are listed in the report.
PipelineResult RunPipeline(const PipelineConfig& config, const Glossary& glossary,
                           const Bibliography& bibliography);

// Loads the glossary and bibliography named by `config`, runs the pipeline
// and writes the dump (and report, if configured). Returns the exit status.
int RunConvert(const PipelineConfig& config);

// Enriched copy of `latex`: every math region is replaced in place, and all
// other bytes are kept as they are.
std::string ReplaceInSource(std::string_view latex, const Glossary& glossary);

// Writes ReplaceInSource of each input to `out_dir` under the same file name.
// Returns the exit status; errors are printed to `errors`.
int RunReplace(const std::vector<std::filesystem::path>& inputs,
               const Glossary& glossary, const std::filesystem::path& out_dir,
               std::vector<std::string>* errors);

struct VerifyResult {
  std::size_t requested = 0;
  std::size_t rendered = 0;
  std::vector<std::string> warnings;
};

// Sends each formula to the rendering service. Failures are warnings.
VerifyResult VerifyRender(const std::vector<std::string>& semantic_latex,
                          const std::string& endpoint);

}  // namespace semtex

#endif  // SEMTEX_PIPELINE_H_
