// trainer/checkpoint.cc

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

#include "duotrain/trainer/checkpoint.h"

#include <cstring>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "duotrain/common/io.h"

namespace duotrain::train {

namespace {

constexpr char kMagic[] = "DTCKPT01";

void WriteRecord(std::ostream& os, const std::string& name,
                 const CheckpointTensor& tensor) {
  WriteU32(os, static_cast<uint32_t>(name.size()));
  WriteBytes(os, name.data(), name.size());
  WriteU32(os, static_cast<uint32_t>(tensor.shape.size()));
  for (int d : tensor.shape) WriteU32(os, static_cast<uint32_t>(d));
  WriteF32Array(os, tensor.values.data(), tensor.values.size());
}

std::pair<std::string, CheckpointTensor> ReadRecord(std::istream& is) {
  const uint32_t name_len = ReadU32(is);
  std::string name(name_len, '\0');
  ReadBytes(is, name.data(), name_len);
  const uint32_t rank = ReadU32(is);
  CheckpointTensor tensor;
  tensor.shape.resize(rank);
  int64_t numel = 1;
  for (uint32_t i = 0; i < rank; ++i) {
    tensor.shape[i] = static_cast<int>(ReadU32(is));
    numel *= tensor.shape[i];
  }
  tensor.values.resize(static_cast<size_t>(numel));
  ReadF32Array(is, tensor.values.data(), tensor.values.size());
  return {std::move(name), std::move(tensor)};
}

}  // namespace

Checkpoint Checkpoint::FromModel(const nn::ModelParameters& params,
                                 const num::AdamState* adam, int64_t epoch,
                                 int64_t step, const std::string& rng_state) {
  Checkpoint ckpt;
  ckpt.config = params.config;
  ckpt.epoch = epoch;
  ckpt.step = step;
  ckpt.rng_state = rng_state;
  for (const auto& [name, tensor] : params.UniqueParams()) {
    CheckpointTensor t;
    t.shape = tensor.shape();
    t.values.assign(tensor.values().begin(), tensor.values().end());
    ckpt.tensors.emplace(name, std::move(t));
  }
  if (adam != nullptr) {
    for (const auto& [name, slot] : adam->slots) {
      ckpt.optimizer["adam.m." + name] = {
          {static_cast<int>(slot.m.size())}, slot.m};
      ckpt.optimizer["adam.v." + name] = {
          {static_cast<int>(slot.v.size())}, slot.v};
      ckpt.optimizer["adam.t." + name] = {
          {1}, {static_cast<float>(slot.t)}};
    }
  }
  return ckpt;
}

void Checkpoint::ApplyToModel(nn::ModelParameters& params) const {
  for (const auto& [name, tensor] : tensors) {
    auto it = params.named.find(name);
    if (it == params.named.end()) {
      throw std::runtime_error("checkpoint tensor '" + name +
                               "' has no matching model parameter");
    }
    if (it->second.shape() != tensor.shape) {
      throw std::runtime_error("checkpoint tensor '" + name + "' shape mismatch");
    }
    std::copy(tensor.values.begin(), tensor.values.end(),
              it->second.values().begin());
  }
}

void Checkpoint::ApplyComponents(nn::ModelParameters& params,
                                 const std::vector<std::string>& prefixes) const {
  for (const auto& prefix : prefixes) {
    bool any = false;
    for (const auto& [name, tensor] : tensors) {
      if (name.rfind(prefix, 0) != 0) continue;
      any = true;
      auto it = params.named.find(name);
      if (it == params.named.end()) {
        throw std::runtime_error("checkpoint tensor '" + name +
                                 "' has no matching model parameter");
      }
      if (it->second.shape() != tensor.shape) {
        throw std::runtime_error("checkpoint tensor '" + name +
                                 "' shape mismatch");
      }
      std::copy(tensor.values.begin(), tensor.values.end(),
                it->second.values().begin());
    }
    if (!any) {
      throw std::runtime_error("checkpoint has no tensors under '" + prefix + "'");
    }
  }
}

num::AdamState Checkpoint::RestoreAdam() const {
  num::AdamState state;
  for (const auto& [key, tensor] : optimizer) {
    if (key.rfind("adam.m.", 0) == 0) {
      state.slots[key.substr(7)].m = tensor.values;
    } else if (key.rfind("adam.v.", 0) == 0) {
      state.slots[key.substr(7)].v = tensor.values;
    } else if (key.rfind("adam.t.", 0) == 0) {
      state.slots[key.substr(7)].t = static_cast<int64_t>(tensor.values.at(0));
    }
  }
  return state;
}

void SaveCheckpoint(const Checkpoint& ckpt, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write checkpoint: " + path);
  os.write(kMagic, 8);
  WriteU32(os, ckpt.version);
  nlohmann::json header{{"config", ckpt.config.ToJson()},
                        {"epoch", ckpt.epoch},
                        {"step", ckpt.step},
                        {"rng_state", ckpt.rng_state}};
  const std::string header_str = header.dump();
  WriteU32(os, static_cast<uint32_t>(header_str.size()));
  WriteBytes(os, header_str.data(), header_str.size());
  WriteU32(os, static_cast<uint32_t>(ckpt.tensors.size()));
  for (const auto& [name, tensor] : ckpt.tensors) WriteRecord(os, name, tensor);
  WriteU32(os, static_cast<uint32_t>(ckpt.optimizer.size()));
  for (const auto& [name, tensor] : ckpt.optimizer) WriteRecord(os, name, tensor);
  if (!os) throw std::runtime_error("write failed: " + path);
}

Checkpoint LoadCheckpoint(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open checkpoint: " + path);
  char magic[8];
  ReadBytes(is, magic, 8);
  if (std::string(magic, 8) != kMagic) {
    throw std::runtime_error(path + ": bad checkpoint magic");
  }
  Checkpoint ckpt;
  ckpt.version = ReadU32(is);
  if (ckpt.version != 1) {
    throw std::runtime_error(path + ": unsupported checkpoint version " +
                             std::to_string(ckpt.version));
  }
  const uint32_t header_len = ReadU32(is);
  std::string header_str(header_len, '\0');
  ReadBytes(is, header_str.data(), header_len);
  const auto header = nlohmann::json::parse(header_str);
  ckpt.config = nn::ModelConfig::FromJson(header.at("config"));
  ckpt.epoch = header.at("epoch").get<int64_t>();
  ckpt.step = header.at("step").get<int64_t>();
  ckpt.rng_state = header.value("rng_state", "");
  const uint32_t n_tensors = ReadU32(is);
  for (uint32_t i = 0; i < n_tensors; ++i) ckpt.tensors.insert(ReadRecord(is));
  const uint32_t n_opt = ReadU32(is);
  for (uint32_t i = 0; i < n_opt; ++i) ckpt.optimizer.insert(ReadRecord(is));
  return ckpt;
}

Checkpoint AverageCheckpoints(const std::vector<std::string>& paths) {
  if (paths.empty()) {
    throw std::invalid_argument("AverageCheckpoints: no checkpoints given");
  }
  Checkpoint first = LoadCheckpoint(paths[0]);
  Checkpoint newest = first;
  std::map<std::string, std::vector<double>> sums;
  for (const auto& [name, tensor] : first.tensors) {
    sums[name].assign(tensor.values.begin(), tensor.values.end());
  }
  for (size_t i = 1; i < paths.size(); ++i) {
    Checkpoint ckpt = LoadCheckpoint(paths[i]);
    if (!(ckpt.config == first.config)) {
      throw std::runtime_error("AverageCheckpoints: config mismatch in " + paths[i]);
    }
    for (const auto& [name, tensor] : ckpt.tensors) {
      auto it = sums.find(name);
      if (it == sums.end() || it->second.size() != tensor.values.size()) {
        throw std::runtime_error("AverageCheckpoints: tensor set mismatch at '" +
                                 name + "'");
      }
      for (size_t j = 0; j < tensor.values.size(); ++j) {
        it->second[j] += tensor.values[j];
      }
    }
    if (ckpt.epoch >= newest.epoch) newest = std::move(ckpt);
  }
  Checkpoint out;
  out.config = first.config;
  out.epoch = newest.epoch;
  out.step = newest.step;
  out.rng_state = newest.rng_state;
  const double inv = 1.0 / static_cast<double>(paths.size());
  for (auto& [name, sum] : sums) {
    CheckpointTensor t;
    t.shape = first.tensors.at(name).shape;
    t.values.resize(sum.size());
    for (size_t j = 0; j < sum.size(); ++j) {
      t.values[j] = static_cast<float>(sum[j] * inv);
    }
    out.tensors.emplace(name, std::move(t));
  }
  return out;
}

}  // namespace duotrain::train
