// numcore/adam.cc

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

#include "duotrain/numcore/adam.h"

#include <cmath>
#include <stdexcept>

namespace duotrain::num {

void AdamStep(const std::vector<std::pair<std::string, Tensor>>& params,
              AdamState& state) {
  const AdamConfig& cfg = state.config;
  for (const auto& [name, param] : params) {
    Tensor p = param;
    auto values = p.values();
    auto grad = p.grad();
    auto& slot = state.slots[name];
    if (slot.m.empty()) {
      slot.m.assign(values.size(), 0.0f);
      slot.v.assign(values.size(), 0.0f);
    }
    if (slot.m.size() != values.size()) {
      throw std::invalid_argument("AdamStep: state shape mismatch for " + name);
    }
    slot.t += 1;
    const float bc1 = 1.0f - std::pow(cfg.beta1, static_cast<float>(slot.t));
    const float bc2 = 1.0f - std::pow(cfg.beta2, static_cast<float>(slot.t));
    for (size_t i = 0; i < values.size(); ++i) {
      const float g = grad[i];
      slot.m[i] = cfg.beta1 * slot.m[i] + (1.0f - cfg.beta1) * g;
      slot.v[i] = cfg.beta2 * slot.v[i] + (1.0f - cfg.beta2) * g * g;
      const float mhat = slot.m[i] / bc1;
      const float vhat = slot.v[i] / bc2;
      values[i] -= cfg.lr * mhat / (std::sqrt(vhat) + cfg.eps);
    }
  }
}

}  // namespace duotrain::num
