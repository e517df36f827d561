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

#include "semtex/error.h"

#include <utility>

namespace semtex {
namespace {

std::string Join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += " -> ";
    out += p;
  }
  return out;
}

}  // namespace

UnbalancedGroupError::UnbalancedGroupError(std::size_t position)
    : Error("unbalanced group at byte " + std::to_string(position)),
      position_(position) {}

UnterminatedEnvironmentError::UnterminatedEnvironmentError(
    std::string name, std::size_t position)
    : Error("unterminated environment '" + name + "' opened at byte " +
            std::to_string(position)),
      name_(std::move(name)),
      position_(position) {}

MismatchedLeftRightError::MismatchedLeftRightError(std::size_t position)
    : Error("\\left/\\right mismatch at byte " + std::to_string(position)),
      position_(position) {}

GlossaryParseError::GlossaryParseError(std::size_t line, std::string reason)
    : Error("glossary parse error (line " + std::to_string(line) +
            "): " + reason),
      line_(line),
      reason_(std::move(reason)) {}

DuplicateMacroError::DuplicateMacroError(std::string name)
    : Error("duplicate glossary macro '" + name + "'"),
      name_(std::move(name)) {}

TemplateCaptureMismatchError::TemplateCaptureMismatchError(std::string name,
                                                           std::string detail)
    : Error("template/capture mismatch in rule '" + name + "': " + detail),
      name_(std::move(name)) {}

UnknownSemanticMacroError::UnknownSemanticMacroError(std::string name)
    : Error("unknown semantic macro '\\" + name + "'"),
      name_(std::move(name)) {}

SubstitutionCycleError::SubstitutionCycleError(std::vector<std::string> ids)
    : Error("substitution cycle: " + Join(ids)), ids_(std::move(ids)) {}

MissingBibEntryError::MissingBibEntryError(std::string key)
    : Error("missing bibliography entry '" + key + "'"),
      key_(std::move(key)) {}

DuplicateTitleError::DuplicateTitleError(std::string title)
    : Error("duplicate page title '" + title + "'"),
      title_(std::move(title)) {}

ServiceUnreachableError::ServiceUnreachableError(std::string endpoint,
                                                 std::string detail)
    : Error("rendering service unreachable at " + endpoint + ": " + detail),
      endpoint_(std::move(endpoint)) {}

ServiceRejectedError::ServiceRejectedError(int status, std::string body)
    : Error("rendering service rejected request (HTTP " +
            std::to_string(status) + ")"),
      status_(status),
      body_(std::move(body)) {}

}  // namespace semtex
