// numcore/adam.h

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

#ifndef DUOTRAIN_NUMCORE_ADAM_H_
#define DUOTRAIN_NUMCORE_ADAM_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "duotrain/numcore/tensor.h"

namespace duotrain::num {

struct AdamConfig {
  float lr = 1e-3f;
  float beta1 = 0.9f;
  float beta2 = 0.98f;
  float eps = 1e-9f;
};

// First/second moments and step count, kept per named parameter. A parameter
// absent from a step's update set keeps its slot untouched, so parameters
// outside the active task's gradient support stay bitwise frozen.
struct AdamState {
  struct Slot {
    std::vector<float> m;
    std::vector<float> v;
    int64_t t = 0;
  };
  AdamConfig config;
  std::map<std::string, Slot> slots;
};

// One bias-corrected Adam update for each (name, tensor) pair, consuming the
// gradients accumulated on the tensors.
void AdamStep(const std::vector<std::pair<std::string, Tensor>>& params,
              AdamState& state);

}  // namespace duotrain::num

#endif  // DUOTRAIN_NUMCORE_ADAM_H_
