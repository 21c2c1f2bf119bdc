// tools/duotrain_main.cc

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

#include <iostream>
#include <string>
#include <vector>

#include "duotrain/cli/commands.h"
#include "duotrain/cli/runconfig.h"

int main(int argc, char** argv) {
  using duotrain::cli::ConfigError;
  std::vector<std::string> args(argv + 1, argv + argc);
  if (args.empty() || args[0] == "--help" || args[0] == "-h") {
    std::cout << duotrain::cli::UsageText();
    return args.empty() ? 1 : 0;
  }
  const std::string subcommand = args[0];

  std::string config_path;
  std::vector<std::pair<std::string, std::string>> overrides;
  try {
    for (size_t i = 1; i < args.size(); ++i) {
      const std::string& arg = args[i];
      if (arg == "--help" || arg == "-h") {
        std::cout << duotrain::cli::UsageText();
        return 0;
      }
      if (arg.rfind("--", 0) != 0) {
        throw ConfigError("unexpected argument '" + arg + "'\n" +
                          duotrain::cli::UsageText());
      }
      if (i + 1 >= args.size()) {
        throw ConfigError("flag '" + arg + "' is missing a value");
      }
      const std::string key = arg.substr(2);
      const std::string& value = args[++i];
      if (key == "config") {
        config_path = value;
      } else {
        overrides.emplace_back(key, value);
      }
    }
    const auto cfg = duotrain::cli::RunConfig::Load(config_path, overrides);
    duotrain::cli::RunCommand(subcommand, cfg);
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return 2;
  }
}
