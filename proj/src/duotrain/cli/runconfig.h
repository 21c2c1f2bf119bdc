// cli/runconfig.h

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

#ifndef DUOTRAIN_CLI_RUNCONFIG_H_
#define DUOTRAIN_CLI_RUNCONFIG_H_

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace duotrain::cli {

// Configuration or input validation problem; the driver maps it to exit
// code 1 (runtime failures exit 2).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// One nested JSON config per run, plus --dot.path value overrides. Unknown
// keys are rejected with their full path.
struct RunConfig {
  nlohmann::json root;

  // Defaults for every known key.
  static nlohmann::json Schema();

  // Load defaults, overlay the file (optional), then the CLI overrides.
  static RunConfig Load(const std::string& config_path,
                        const std::vector<std::pair<std::string, std::string>>&
                            overrides);

  const nlohmann::json& At(const std::string& dot_path) const;
  std::string PathValue(const std::string& dot_path) const;  // string field
  // Nonempty string field that must name an existing file.
  std::string RequiredFile(const std::string& dot_path) const;
  std::string RequiredValue(const std::string& dot_path) const;
};

}  // namespace duotrain::cli

#endif  // DUOTRAIN_CLI_RUNCONFIG_H_
