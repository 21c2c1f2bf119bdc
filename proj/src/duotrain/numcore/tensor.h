// numcore/tensor.h

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

#ifndef DUOTRAIN_NUMCORE_TENSOR_H_
#define DUOTRAIN_NUMCORE_TENSOR_H_

#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace duotrain::num {

// Thrown when a primitive produces NaN/Inf (and by the trainer on divergence).
class NonFiniteError : public std::runtime_error {
 public:
  explicit NonFiniteError(const std::string& what) : std::runtime_error(what) {}
};

// Global toggle for the per-primitive finite scan; on by default.
bool FiniteChecksEnabled();
void SetFiniteChecks(bool enabled);

inline int64_t NumelOf(const std::vector<int>& shape) {
  int64_t n = 1;
  for (int d : shape) n *= d;
  return n;
}

template <typename T>
struct TensorImpl {
  std::vector<int> shape;
  std::vector<T> values;
  std::vector<T> grad;  // empty until touched by backward or EnsureGrad
  bool requires_grad = false;

  // Reverse-mode tape linkage. backward_fn reads this node's grad and
  // accumulates into the parents' grads.
  std::vector<std::shared_ptr<TensorImpl>> parents;
  std::function<void(TensorImpl&)> backward_fn;

  int64_t numel() const { return static_cast<int64_t>(values.size()); }

  void EnsureGrad() {
    if (grad.size() != values.size()) grad.assign(values.size(), T(0));
  }
};

// Value-semantic handle onto shared tensor storage. Copying a TensorT aliases
// the underlying buffer; two handles to one impl see each other's writes,
// which is exactly what parameter tying relies on.
template <typename T>
class TensorT {
 public:
  TensorT() = default;
  explicit TensorT(std::shared_ptr<TensorImpl<T>> impl) : impl_(std::move(impl)) {}

  static TensorT Zeros(std::vector<int> shape, bool requires_grad = false) {
    auto impl = std::make_shared<TensorImpl<T>>();
    impl->shape = std::move(shape);
    impl->values.assign(static_cast<size_t>(NumelOf(impl->shape)), T(0));
    impl->requires_grad = requires_grad;
    return TensorT(std::move(impl));
  }

  static TensorT Full(std::vector<int> shape, T v, bool requires_grad = false) {
    TensorT t = Zeros(std::move(shape), requires_grad);
    for (auto& x : t.values()) x = v;
    return t;
  }

  static TensorT FromVector(std::vector<int> shape, std::vector<T> data,
                            bool requires_grad = false) {
    auto impl = std::make_shared<TensorImpl<T>>();
    if (NumelOf(shape) != static_cast<int64_t>(data.size())) {
      throw std::invalid_argument("Tensor::FromVector: shape/data mismatch");
    }
    impl->shape = std::move(shape);
    impl->values = std::move(data);
    impl->requires_grad = requires_grad;
    return TensorT(std::move(impl));
  }

  bool defined() const { return impl_ != nullptr; }
  const std::vector<int>& shape() const { return impl_->shape; }
  int dim(int i) const { return impl_->shape.at(static_cast<size_t>(i)); }
  int rank() const { return static_cast<int>(impl_->shape.size()); }
  int64_t numel() const { return impl_->numel(); }

  std::span<T> values() { return impl_->values; }
  std::span<const T> values() const { return impl_->values; }
  T item() const {
    if (numel() != 1) throw std::invalid_argument("Tensor::item: not a scalar");
    return impl_->values[0];
  }

  bool requires_grad() const { return impl_->requires_grad; }
  void set_requires_grad(bool b) { impl_->requires_grad = b; }

  std::span<T> grad() {
    impl_->EnsureGrad();
    return impl_->grad;
  }
  void ZeroGrad() {
    impl_->EnsureGrad();
    std::fill(impl_->grad.begin(), impl_->grad.end(), T(0));
  }

  std::shared_ptr<TensorImpl<T>> impl() const { return impl_; }
  TensorImpl<T>* raw() const { return impl_.get(); }

  // Deep copy of values (no graph linkage).
  TensorT Clone() const {
    return FromVector(impl_->shape,
                      std::vector<T>(impl_->values.begin(), impl_->values.end()),
                      impl_->requires_grad);
  }

 private:
  std::shared_ptr<TensorImpl<T>> impl_;
};

using Tensor = TensorT<float>;

}  // namespace duotrain::num

#endif  // DUOTRAIN_NUMCORE_TENSOR_H_
