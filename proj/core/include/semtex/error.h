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

#ifndef SEMTEX_ERROR_H_
#define SEMTEX_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace semtex {

// Base class of every error raised by the library. Each subclass carries the
// structured fields of its condition in addition to a readable message.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnbalancedGroupError : public Error {
 public:
  explicit UnbalancedGroupError(std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class UnterminatedEnvironmentError : public Error {
 public:
  UnterminatedEnvironmentError(std::string name, std::size_t position);
  const std::string& name() const { return name_; }
  std::size_t position() const { return position_; }

 private:
  std::string name_;
  std::size_t position_;
};

class MismatchedLeftRightError : public Error {
 public:
  explicit MismatchedLeftRightError(std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Line 0 means the file parsed as JSON but violates the glossary schema; the
// reason then names the offending path.
class GlossaryParseError : public Error {
 public:
  GlossaryParseError(std::size_t line, std::string reason);
  std::size_t line() const { return line_; }
  const std::string& reason() const { return reason_; }

 private:
  std::size_t line_;
  std::string reason_;
};

class DuplicateMacroError : public Error {
 public:
  explicit DuplicateMacroError(std::string name);
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class TemplateCaptureMismatchError : public Error {
 public:
  TemplateCaptureMismatchError(std::string name, std::string detail);
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class UnknownSemanticMacroError : public Error {
 public:
  explicit UnknownSemanticMacroError(std::string name);
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class SubstitutionCycleError : public Error {
 public:
  explicit SubstitutionCycleError(std::vector<std::string> ids);
  const std::vector<std::string>& ids() const { return ids_; }

 private:
  std::vector<std::string> ids_;
};

class MissingBibEntryError : public Error {
 public:
  explicit MissingBibEntryError(std::string key);
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

class DuplicateTitleError : public Error {
 public:
  explicit DuplicateTitleError(std::string title);
  const std::string& title() const { return title_; }

 private:
  std::string title_;
};

class ConfigInvalidError : public Error {
 public:
  using Error::Error;
};

class ServiceUnreachableError : public Error {
 public:
  explicit ServiceUnreachableError(std::string endpoint, std::string detail);
  const std::string& endpoint() const { return endpoint_; }

 private:
  std::string endpoint_;
};

class ServiceRejectedError : public Error {
 public:
  ServiceRejectedError(int status, std::string body);
  int status() const { return status_; }
  const std::string& body() const { return body_; }

 private:
  int status_;
  std::string body_;
};

}  // namespace semtex

#endif  // SEMTEX_ERROR_H_
