// numcore/gradcheck.h

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

// Central finite-difference verification of reverse-mode gradients. The
// check re-evaluates the scalar function from scratch at perturbed inputs,
// so it stays independent of the tape it is validating. Meant to run on
// TensorT<double>.

#ifndef DUOTRAIN_NUMCORE_GRADCHECK_H_
#define DUOTRAIN_NUMCORE_GRADCHECK_H_

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "duotrain/numcore/autodiff.h"
#include "duotrain/numcore/tensor.h"

namespace duotrain::num {

struct GradCheckResult {
  double max_rel_error = 0.0;
  int64_t checked = 0;
  std::string worst;  // "input i element j" of the worst offender
  bool ok(double tol) const { return max_rel_error < tol; }
};

// fn must build a fresh graph from `inputs` and return a scalar loss.
// Every element of every input marked requires_grad is perturbed by ±h.
inline GradCheckResult CheckGradients(
    std::vector<TensorT<double>> inputs,
    const std::function<TensorT<double>(std::vector<TensorT<double>>&)>& fn,
    double h = 1e-5, int64_t max_elements_per_input = -1) {
  // Analytic pass.
  for (auto& in : inputs) in.ZeroGrad();
  TensorT<double> loss = fn(inputs);
  Backward(loss);
  std::vector<std::vector<double>> analytic;
  analytic.reserve(inputs.size());
  for (auto& in : inputs) {
    analytic.emplace_back(in.grad().begin(), in.grad().end());
  }

  GradCheckResult res;
  for (size_t ii = 0; ii < inputs.size(); ++ii) {
    if (!inputs[ii].requires_grad()) continue;
    const int64_t n = inputs[ii].numel();
    const int64_t limit =
        max_elements_per_input > 0 ? std::min(n, max_elements_per_input) : n;
    for (int64_t j = 0; j < limit; ++j) {
      auto elem = inputs[ii].values();
      const double saved = elem[j];
      elem[j] = saved + h;
      const double lp = fn(inputs).item();
      elem[j] = saved - h;
      const double lm = fn(inputs).item();
      elem[j] = saved;
      const double fd = (lp - lm) / (2.0 * h);
      const double an = analytic[ii][static_cast<size_t>(j)];
      const double denom = std::max({std::abs(fd), std::abs(an), 1e-4});
      const double rel = std::abs(fd - an) / denom;
      ++res.checked;
      if (rel > res.max_rel_error) {
        res.max_rel_error = rel;
        res.worst = "input " + std::to_string(ii) + " element " + std::to_string(j);
      }
    }
  }
  return res;
}

}  // namespace duotrain::num

#endif  // DUOTRAIN_NUMCORE_GRADCHECK_H_
