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


#include "semtex/render_client.h"

#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "httplib.h"
#include "semtex/error.h"

namespace semtex {
namespace {

// Inner text of the first <tag>...</tag>, including nested markup.
bool InnerXml(std::string_view body, std::string_view tag, std::string* out) {
  std::string open = "<" + std::string(tag) + ">";
  std::string close = "</" + std::string(tag) + ">";
  std::size_t b = body.find(open);
  if (b == std::string_view::npos) return false;
  b += open.size();
  std::size_t e = body.find(close, b);
  if (e == std::string_view::npos) return false;
  *out = std::string(body.substr(b, e - b));
  return true;
}

}  // namespace

Endpoint ParseEndpoint(std::string_view url) {
  std::size_t scheme_end = url.find("://");
  if (scheme_end == std::string_view::npos) {
    throw ConfigInvalidError("endpoint is not an absolute URL: " +
                             std::string(url));
  }
  std::string_view scheme = url.substr(0, scheme_end);
  if (scheme != "http" && scheme != "https") {
    throw ConfigInvalidError("endpoint scheme must be http or https: " +
                             std::string(url));
  }
  std::size_t host_begin = scheme_end + 3;
  std::size_t slash = url.find('/', host_begin);
  std::string_view host = url.substr(host_begin, slash - host_begin);
  if (host.empty()) {
    throw ConfigInvalidError("endpoint has no host: " + std::string(url));
  }
  Endpoint e;
  e.origin = std::string(url.substr(0, slash == std::string_view::npos
                                           ? url.size()
                                           : slash));
  e.path = slash == std::string_view::npos ? "/" : std::string(url.substr(slash));
  return e;
}

bool IsWellFormedXml(std::string_view xml) {
  namespace pt = boost::property_tree;
  std::istringstream in{std::string(xml)};
  pt::ptree tree;
  try {
    pt::read_xml(in, tree);
  } catch (const pt::xml_parser_error&) {
    return false;
  }
  return tree.size() == 1;
}

RenderedMath RequestMathML(std::string_view semantic_latex,
                           std::string_view endpoint,
                           std::chrono::milliseconds timeout) {
  Endpoint ep = ParseEndpoint(endpoint);
  httplib::Client client(ep.origin);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);
  auto res = client.Post(ep.path, std::string(semantic_latex), "text/plain");
  if (!res) {
    throw ServiceUnreachableError(std::string(endpoint),
                                  httplib::to_string(res.error()));
  }
  if (res->status != 200) throw ServiceRejectedError(res->status, res->body);
  RenderedMath out;
  if (!InnerXml(res->body, "presentation", &out.presentation) ||
      !InnerXml(res->body, "content", &out.content) ||
      !IsWellFormedXml(out.presentation) || !IsWellFormedXml(out.content)) {
    throw ServiceRejectedError(res->status, res->body);
  }
  return out;
}

}  // namespace semtex
