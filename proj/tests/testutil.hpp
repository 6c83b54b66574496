// Copyright 2026 The sublm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SUBLM_TESTS_TESTUTIL_HPP_
#define SUBLM_TESTS_TESTUTIL_HPP_

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "sublm/corpus.hpp"

namespace testutil {

// Scratch directory, removed on scope exit.
class TempDir {
 public:
  TempDir() {
    static std::atomic<unsigned> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("sublm_test_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter.fetch_add(1)));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path file(const std::string& name) const {
    return path_ / name;
  }

 private:
  std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& p, const std::string& s) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << s;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Builds a corpus from whitespace-separated sentence strings.
inline sublm::NormalizedCorpus corpus(const std::vector<std::string>& lines) {
  sublm::NormalizedCorpus c;
  for (const auto& line : lines) c.sentences.push_back(sublm::tokenize(line));
  return c;
}

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

// Runs the CLI binary with the given argument string, capturing both streams.
inline CliResult run_cli(const std::string& args, const TempDir& tmp) {
  std::filesystem::path out_p = tmp.file("cli_stdout.txt");
  std::filesystem::path err_p = tmp.file("cli_stderr.txt");
  std::string cmd = std::string(SUBLM_CLI_PATH) + " " + args + " > " +
                    out_p.string() + " 2> " + err_p.string();
  int rc = std::system(cmd.c_str());
  CliResult r;
  r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  r.out = slurp(out_p);
  r.err = slurp(err_p);
  return r;
}

}  // namespace testutil

#endif  // SUBLM_TESTS_TESTUTIL_HPP_
