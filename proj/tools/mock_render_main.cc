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


// Stand-alone mock rendering service for offline `verify-render` runs.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "mock_render_service.h"

int main(int argc, char** argv) {
  CLI::App app{"Mock LaTeX-to-MathML rendering service"};
  std::string host = "127.0.0.1";
  int port = 8089;
  app.add_option("--host", host, "Address to bind");
  app.add_option("--port", port, "Port to bind");
  CLI11_PARSE(app, argc, argv);

  semtex::MockRenderService service;
  std::cerr << "listening on http://" << host << ":" << port << "/convert\n";
  if (!service.Listen(host, port)) {
    std::cerr << "cannot bind " << host << ":" << port << "\n";
    return 1;
  }
  return 0;
}
