// common/rng.h

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

#ifndef DUOTRAIN_COMMON_RNG_H_
#define DUOTRAIN_COMMON_RNG_H_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace duotrain {

// Self-contained xoshiro256++ generator. All randomness in the pipeline goes
// through this class so that runs are reproducible across platforms and
// standard-library versions; the state is small enough to store in
// checkpoints verbatim.
class Rng {
 public:
  explicit Rng(uint64_t seed = 0) { Seed(seed); }

  void Seed(uint64_t seed);

  uint64_t NextU64();

  // Uniform integer in [0, n). n must be > 0.
  uint64_t UniformInt(uint64_t n);

  // Uniform in [0, 1).
  double Uniform();

  // Standard normal via Box-Muller.
  double Gaussian();

  // Derives an independent generator; advances this one by one draw.
  Rng Fork() { return Rng(NextU64()); }

  template <typename T>
  void Shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(UniformInt(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  // k distinct indices drawn uniformly from [0, n), in selection order.
  std::vector<size_t> SampleWithoutReplacement(size_t n, size_t k);

  std::array<uint64_t, 4> state() const { return state_; }
  void set_state(const std::array<uint64_t, 4>& s) { state_ = s; }

  std::string StateHex() const;
  static Rng FromStateHex(const std::string& hex);

 private:
  std::array<uint64_t, 4> state_{};
};

}  // namespace duotrain

#endif  // DUOTRAIN_COMMON_RNG_H_
