/* Copyright 2026 The Quill Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// Runs the built CLI through the shell.

#ifndef QUILL_TESTS_CLI_HPP
#define QUILL_TESTS_CLI_HPP

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

namespace quill::testcli {

struct Run {
  int exit = -1;
  std::string out;  // stdout only
};

inline Run run(const std::string& args) {
  std::string cmd = std::string("\"") + QUILL_CLI + "\" " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.exit = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

inline std::string corpusFile(const std::string& name) {
  return std::string("\"") + QUILL_CORPUS_DIR + "/" + name + "\"";
}

}  // namespace quill::testcli

#endif  // QUILL_TESTS_CLI_HPP
