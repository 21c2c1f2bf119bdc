// trainer/checkpoint.h

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

#ifndef DUOTRAIN_TRAINER_CHECKPOINT_H_
#define DUOTRAIN_TRAINER_CHECKPOINT_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "duotrain/model/params.h"
#include "duotrain/numcore/adam.h"

namespace duotrain::train {

// On-disk model state. Format: magic "DTCKPT01"; u32 version; u32 JSON
// header length + UTF-8 JSON {config, epoch, step, rng_state}; u32 parameter
// record count; records of (u32 name length, name, u32 rank, u32 dims...,
// f32 payload); then the optimizer section in the same record format
// (adam.m.*, adam.v.*, adam.t.*). All little-endian. Saving stores only
// storage-unique parameters (canonical names), so tied layers are written
// once; loading re-establishes aliases through the model's tying map.
struct CheckpointTensor {
  std::vector<int> shape;
  std::vector<float> values;
};

struct Checkpoint {
  uint32_t version = 1;
  nn::ModelConfig config;
  std::map<std::string, CheckpointTensor> tensors;
  std::map<std::string, CheckpointTensor> optimizer;
  int64_t epoch = 0;
  int64_t step = 0;
  std::string rng_state;  // hex-serialized generator state

  static Checkpoint FromModel(const nn::ModelParameters& params,
                              const num::AdamState* adam, int64_t epoch,
                              int64_t step, const std::string& rng_state);

  // Copies every tensor into the matching named parameter (shape-checked).
  void ApplyToModel(nn::ModelParameters& params) const;

  // Copies only components under the given name prefixes; throws if a
  // prefixed tensor is missing on either side or shaped differently.
  void ApplyComponents(nn::ModelParameters& params,
                       const std::vector<std::string>& prefixes) const;

  num::AdamState RestoreAdam() const;
};

void SaveCheckpoint(const Checkpoint& ckpt, const std::string& path);
Checkpoint LoadCheckpoint(const std::string& path);

// Elementwise mean of the parameter tensors (double accumulation); requires
// identical configs, drops optimizer state, keeps metadata of the newest
// (highest epoch, ties to the later path).
Checkpoint AverageCheckpoints(const std::vector<std::string>& paths);

}  // namespace duotrain::train

#endif  // DUOTRAIN_TRAINER_CHECKPOINT_H_
