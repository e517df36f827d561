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


// Client for a LaTeXML-style rendering service. Only spot checks use it;
// dump generation never touches the network.

#ifndef SEMTEX_RENDER_CLIENT_H_
#define SEMTEX_RENDER_CLIENT_H_

#include <chrono>
#include <string>
#include <string_view>

namespace semtex {

struct RenderedMath {
  std::string presentation;
  std::string content;
};

// Splits "http://host:port/path" into origin ("http://host:port") and path
// ("/path", default "/"). Throws ConfigInvalidError unless the URL is absolute
// http(s).
struct Endpoint {
  std::string origin;
  std::string path;
};
Endpoint ParseEndpoint(std::string_view url);

// POSTs the semantic LaTeX as text/plain and expects
//   <rendering><presentation>MathML</presentation>
//              <content>MathML</content></rendering>
// Throws ServiceUnreachableError when no HTTP exchange happens, and
// ServiceRejectedError for a non-200 status or a malformed body.
RenderedMath RequestMathML(std::string_view semantic_latex,
                           std::string_view endpoint,
                           std::chrono::milliseconds timeout =
                               std::chrono::milliseconds(5000));

// Whether `xml` parses as a single well-formed XML document.
bool IsWellFormedXml(std::string_view xml);

}  // namespace semtex

#endif  // SEMTEX_RENDER_CLIENT_H_
