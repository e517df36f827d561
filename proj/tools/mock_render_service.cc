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


#include "mock_render_service.h"

#include "httplib.h"
#include "semtex/page_builder.h"

namespace semtex {
namespace {

constexpr char kMathNs[] = "<math xmlns=\"http://www.w3.org/1998/Math/MathML\">";

void Install(httplib::Server& server) {
  server.Post(".*", [](const httplib::Request& req, httplib::Response& res) {
    if (req.body.empty()) {
      res.status = 400;
      res.set_content("empty formula", "text/plain");
      return;
    }
    res.set_content(MockRenderingFor(req.body), "application/xml");
  });
}

}  // namespace

std::string MockRenderingFor(std::string_view latex) {
  std::string presentation;
  std::string content;
  if (latex == "\\EulerGamma@{z}") {
    presentation = std::string(kMathNs) +
                   "<mrow><mi mathvariant=\"normal\">\xCE\x93</mi>"
                   "<mo>\xE2\x81\xA1</mo><mrow><mo>(</mo><mi>z</mi><mo>)</mo>"
                   "</mrow></mrow></math>";
    content = std::string(kMathNs) +
              "<apply><csymbol cd=\"dlmf\">EulerGamma</csymbol><ci>z</ci>"
              "</apply></math>";
  } else {
    presentation = std::string(kMathNs) + "<mtext>" + XmlEscape(latex) +
                   "</mtext></math>";
    content = std::string(kMathNs) + "<csymbol cd=\"latex\">" +
              XmlEscape(latex) + "</csymbol></math>";
  }
  return "<rendering><presentation>" + presentation +
         "</presentation><content>" + content + "</content></rendering>";
}

MockRenderService::MockRenderService()
    : server_(std::make_unique<httplib::Server>()) {
  Install(*server_);
}

MockRenderService::~MockRenderService() { Stop(); }

int MockRenderService::Start(const std::string& host, int port) {
  host_ = host;
  port_ = port == 0 ? server_->bind_to_any_port(host) : port;
  if (port != 0 && !server_->bind_to_port(host, port)) port_ = -1;
  if (port_ < 0) return -1;
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return port_;
}

bool MockRenderService::Listen(const std::string& host, int port) {
  host_ = host;
  port_ = port;
  return server_->listen(host, port);
}

void MockRenderService::Stop() {
  if (server_) server_->stop();
  if (thread_.joinable()) thread_.join();
}

std::string MockRenderService::Endpoint() const {
  return "http://" + host_ + ":" + std::to_string(port_) + "/convert";
}

}  // namespace semtex
