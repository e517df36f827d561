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


// In-process stand-in for a LaTeXML-style rendering service, used by the
// `semtex-mock-render` binary and by tests.

#ifndef SEMTEX_TOOLS_MOCK_RENDER_SERVICE_H_
#define SEMTEX_TOOLS_MOCK_RENDER_SERVICE_H_

#include <memory>
#include <string>
#include <string_view>
#include <thread>

namespace httplib {
class Server;
}  // namespace httplib

namespace semtex {

// Response body for a POSTed formula: canned MathML for `\EulerGamma@{z}`,
// a generic <mtext>/<csymbol> pair for anything else.
std::string MockRenderingFor(std::string_view latex);

class MockRenderService {
 public:
  MockRenderService();
  ~MockRenderService();
  MockRenderService(const MockRenderService&) = delete;
  MockRenderService& operator=(const MockRenderService&) = delete;

  // Binds to host:port (port 0 picks a free one) and serves in a background
  // thread. Returns the bound port, or -1.
  int Start(const std::string& host = "127.0.0.1", int port = 0);
  // Blocks serving on host:port. Returns false when binding fails.
  bool Listen(const std::string& host, int port);
  void Stop();

  std::string Endpoint() const;

 private:
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  std::string host_;
  int port_ = -1;
};

}  // namespace semtex

#endif  // SEMTEX_TOOLS_MOCK_RENDER_SERVICE_H_
