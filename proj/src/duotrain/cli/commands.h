// cli/commands.h

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

#ifndef DUOTRAIN_CLI_COMMANDS_H_
#define DUOTRAIN_CLI_COMMANDS_H_

#include <string>

#include "duotrain/cli/runconfig.h"

namespace duotrain::cli {

// Subcommands: prepare-text, prepare-audio, train, average, decode, score,
// gen-synth. Throws ConfigError for validation problems (exit 1) and other
// exceptions for runtime failures (exit 2).
void RunCommand(const std::string& subcommand, const RunConfig& cfg);

std::string UsageText();

}  // namespace duotrain::cli

#endif  // DUOTRAIN_CLI_COMMANDS_H_
