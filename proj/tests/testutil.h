// tests/testutil.h

// Copyright 2026 The duotrain Authors
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

#ifndef DUOTRAIN_TESTS_TESTUTIL_H_
#define DUOTRAIN_TESTS_TESTUTIL_H_

#include <cstdlib>
#include <filesystem>
#include <string>

namespace duotrain::testutil {

inline std::string FixturePath(const std::string& name) {
  if (const char* env = std::getenv("DUOTRAIN_FIXTURES")) {
    return std::string(env) + "/" + name;
  }
  // Fallback for running a test binary by hand from the repo root or build/.
  for (const char* base : {"tests/fixtures", "../tests/fixtures", "../../tests/fixtures"}) {
    std::string candidate = std::string(base) + "/" + name;
    if (std::filesystem::exists(candidate)) return candidate;
  }
  return "tests/fixtures/" + name;
}

// Fresh scratch directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    path_ = (std::filesystem::temp_directory_path() /
             ("duotrain_" + tag + "_" + std::to_string(::getpid())))
                .string();
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::string& path() const { return path_; }
  std::string File(const std::string& name) const { return path_ + "/" + name; }

 private:
  std::string path_;
};

}  // namespace duotrain::testutil

#endif  // DUOTRAIN_TESTS_TESTUTIL_H_
