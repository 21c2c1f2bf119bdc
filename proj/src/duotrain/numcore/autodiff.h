// numcore/autodiff.h

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

// Reverse-mode primitives over TensorT<T>. Each op records parents and a
// backward closure on the result when gradients are needed; Backward()
// replays them in reverse topological order. Compute is float in training
// and double in the gradient-check path (both instantiations share this
// code).

#ifndef DUOTRAIN_NUMCORE_AUTODIFF_H_
#define DUOTRAIN_NUMCORE_AUTODIFF_H_

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "duotrain/common/rng.h"
#include "duotrain/common/threading.h"
#include "duotrain/numcore/tensor.h"

namespace duotrain::num {

template <typename T>
void VerifyFinite(const TensorT<T>& t, const char* op) {
  if (!FiniteChecksEnabled()) return;
  for (T v : t.values()) {
    if (!std::isfinite(v)) {
      throw NonFiniteError(std::string("non-finite value produced by ") + op);
    }
  }
}

namespace detail {

template <typename T>
TensorT<T> MakeNode(std::vector<int> shape, std::vector<T> values,
                    std::vector<TensorT<T>> parents,
                    std::function<void(TensorImpl<T>&)> backward_fn) {
  TensorT<T> out = TensorT<T>::FromVector(std::move(shape), std::move(values));
  bool rg = false;
  for (const auto& p : parents) rg = rg || p.requires_grad();
  if (rg) {
    out.set_requires_grad(true);
    auto impl = out.impl();
    for (auto& p : parents) impl->parents.push_back(p.impl());
    impl->backward_fn = std::move(backward_fn);
  }
  return out;
}

inline bool IsSuffixShape(const std::vector<int>& small,
                          const std::vector<int>& big) {
  if (small.size() > big.size()) return false;
  return std::equal(small.rbegin(), small.rend(), big.rbegin());
}

// C[m,n] += A[m,k] * B[k,n]
template <typename T>
void GemmNN(const T* a, const T* b, T* c, int64_t m, int64_t k, int64_t n,
            bool parallel) {
  auto body = [=](int64_t lo, int64_t hi) {
    for (int64_t i = lo; i < hi; ++i) {
      const T* arow = a + i * k;
      T* crow = c + i * n;
      for (int64_t kk = 0; kk < k; ++kk) {
        const T av = arow[kk];
        const T* brow = b + kk * n;
        for (int64_t j = 0; j < n; ++j) crow[j] += av * brow[j];
      }
    }
  };
  if (parallel) ParallelFor(m, body); else body(0, m);
}

// C[m,k] += A[m,n] * B[k,n]^T
template <typename T>
void GemmNT(const T* a, const T* b, T* c, int64_t m, int64_t n, int64_t k,
            bool parallel) {
  auto body = [=](int64_t lo, int64_t hi) {
    for (int64_t i = lo; i < hi; ++i) {
      const T* arow = a + i * n;
      T* crow = c + i * k;
      for (int64_t kk = 0; kk < k; ++kk) {
        const T* brow = b + kk * n;
        T acc = 0;
        for (int64_t j = 0; j < n; ++j) acc += arow[j] * brow[j];
        crow[kk] += acc;
      }
    }
  };
  if (parallel) ParallelFor(m, body); else body(0, m);
}

// C[k,n] += A[m,k]^T * B[m,n]
template <typename T>
void GemmTN(const T* a, const T* b, T* c, int64_t m, int64_t k, int64_t n,
            bool parallel) {
  auto body = [=](int64_t lo, int64_t hi) {
    for (int64_t i = 0; i < m; ++i) {
      const T* brow = b + i * n;
      for (int64_t kk = lo; kk < hi; ++kk) {
        const T av = a[i * k + kk];
        if (av == T(0)) continue;
        T* crow = c + kk * n;
        for (int64_t j = 0; j < n; ++j) crow[j] += av * brow[j];
      }
    }
  };
  if (parallel) ParallelFor(k, body); else body(0, k);
}

}  // namespace detail

// ───────────────────────── elementwise ─────────────────────────

// b's shape must equal a's or be a suffix of it (bias/position broadcast).
template <typename T>
TensorT<T> Add(const TensorT<T>& a, const TensorT<T>& b) {
  if (!detail::IsSuffixShape(b.shape(), a.shape())) {
    throw std::invalid_argument("Add: b shape is not a suffix of a shape");
  }
  const int64_t nb = b.numel();
  std::vector<T> out(a.values().begin(), a.values().end());
  const auto bv = b.values();
  for (int64_t i = 0; i < a.numel(); ++i) out[static_cast<size_t>(i)] += bv[i % nb];
  auto ai = a.impl();
  auto bi = b.impl();
  TensorT<T> r = detail::MakeNode<T>(
      a.shape(), std::move(out), {a, b}, [ai, bi, nb](TensorImpl<T>& node) {
        if (ai->requires_grad) {
          ai->EnsureGrad();
          for (int64_t i = 0; i < node.numel(); ++i) ai->grad[i] += node.grad[i];
        }
        if (bi->requires_grad) {
          bi->EnsureGrad();
          for (int64_t i = 0; i < node.numel(); ++i) bi->grad[i % nb] += node.grad[i];
        }
      });
  VerifyFinite(r, "add");
  return r;
}

template <typename T>
TensorT<T> Mul(const TensorT<T>& a, const TensorT<T>& b) {
  if (!detail::IsSuffixShape(b.shape(), a.shape())) {
    throw std::invalid_argument("Mul: b shape is not a suffix of a shape");
  }
  const int64_t nb = b.numel();
  const auto av = a.values();
  const auto bv = b.values();
  std::vector<T> out(static_cast<size_t>(a.numel()));
  for (int64_t i = 0; i < a.numel(); ++i) out[static_cast<size_t>(i)] = av[i] * bv[i % nb];
  auto ai = a.impl();
  auto bi = b.impl();
  TensorT<T> r = detail::MakeNode<T>(
      a.shape(), std::move(out), {a, b}, [ai, bi, nb](TensorImpl<T>& node) {
        if (ai->requires_grad) {
          ai->EnsureGrad();
          for (int64_t i = 0; i < node.numel(); ++i) {
            ai->grad[i] += node.grad[i] * bi->values[i % nb];
          }
        }
        if (bi->requires_grad) {
          bi->EnsureGrad();
          for (int64_t i = 0; i < node.numel(); ++i) {
            bi->grad[i % nb] += node.grad[i] * ai->values[i];
          }
        }
      });
  VerifyFinite(r, "mul");
  return r;
}

template <typename T>
TensorT<T> Scale(const TensorT<T>& a, T s) {
  const auto av = a.values();
  std::vector<T> out(static_cast<size_t>(a.numel()));
  for (int64_t i = 0; i < a.numel(); ++i) out[static_cast<size_t>(i)] = av[i] * s;
  auto ai = a.impl();
  TensorT<T> r = detail::MakeNode<T>(
      a.shape(), std::move(out), {a}, [ai, s](TensorImpl<T>& node) {
        ai->EnsureGrad();
        for (int64_t i = 0; i < node.numel(); ++i) ai->grad[i] += node.grad[i] * s;
      });
  VerifyFinite(r, "scale");
  return r;
}

template <typename T>
TensorT<T> Relu(const TensorT<T>& a) {
  const auto av = a.values();
  std::vector<T> out(static_cast<size_t>(a.numel()));
  for (int64_t i = 0; i < a.numel(); ++i) out[static_cast<size_t>(i)] = av[i] > T(0) ? av[i] : T(0);
  auto ai = a.impl();
  TensorT<T> r = detail::MakeNode<T>(
      a.shape(), std::move(out), {a}, [ai](TensorImpl<T>& node) {
        ai->EnsureGrad();
        for (int64_t i = 0; i < node.numel(); ++i) {
          if (ai->values[i] > T(0)) ai->grad[i] += node.grad[i];
        }
      });
  VerifyFinite(r, "relu");
  return r;
}

template <typename T>
TensorT<T> Sum(const TensorT<T>& a) {
  T acc = 0;
  for (T v : a.values()) acc += v;
  auto ai = a.impl();
  TensorT<T> r = detail::MakeNode<T>(
      {1}, {acc}, {a}, [ai](TensorImpl<T>& node) {
        ai->EnsureGrad();
        const T go = node.grad[0];
        for (auto& g : ai->grad) g += go;
      });
  VerifyFinite(r, "sum");
  return r;
}

// ───────────────────────── shape ops ─────────────────────────

template <typename T>
TensorT<T> Reshape(const TensorT<T>& a, std::vector<int> shape) {
  if (NumelOf(shape) != a.numel()) {
    throw std::invalid_argument("Reshape: element count mismatch");
  }
  auto ai = a.impl();
  return detail::MakeNode<T>(
      std::move(shape), std::vector<T>(a.values().begin(), a.values().end()),
      {a}, [ai](TensorImpl<T>& node) {
        ai->EnsureGrad();
        for (int64_t i = 0; i < node.numel(); ++i) ai->grad[i] += node.grad[i];
      });
}

namespace detail {

// Walks output positions in order while tracking the matching input offset
// via permuted strides; visit(dst, src) is called once per element.
template <typename Fn>
void ForEachTransposed(const std::vector<int>& out_shape,
                       const std::vector<int64_t>& perm_strides, Fn&& visit) {
  const int r = static_cast<int>(out_shape.size());
  const int64_t n = NumelOf(out_shape);
  std::vector<int64_t> counter(static_cast<size_t>(r), 0);
  int64_t src = 0;
  for (int64_t dst = 0; dst < n; ++dst) {
    visit(dst, src);
    for (int ax = r - 1; ax >= 0; --ax) {
      if (++counter[ax] < out_shape[ax]) {
        src += perm_strides[ax];
        break;
      }
      src -= perm_strides[ax] * (out_shape[ax] - 1);
      counter[ax] = 0;
    }
  }
}

}  // namespace detail

// Swaps two axes.
template <typename T>
TensorT<T> Transpose(const TensorT<T>& a, int axis0, int axis1) {
  const auto& sh = a.shape();
  const int r = a.rank();
  if (axis0 < 0 || axis1 < 0 || axis0 >= r || axis1 >= r) {
    throw std::invalid_argument("Transpose: axis out of range");
  }
  std::vector<int> osh = sh;
  std::swap(osh[axis0], osh[axis1]);

  // Input strides, reordered to output axis order.
  std::vector<int64_t> perm_strides(static_cast<size_t>(r), 1);
  for (int i = r - 2; i >= 0; --i) perm_strides[i] = perm_strides[i + 1] * sh[i + 1];
  std::swap(perm_strides[axis0], perm_strides[axis1]);

  const auto av = a.values();
  std::vector<T> out(static_cast<size_t>(a.numel()));
  detail::ForEachTransposed(osh, perm_strides, [&](int64_t dst, int64_t src) {
    out[static_cast<size_t>(dst)] = av[src];
  });

  auto ai = a.impl();
  return detail::MakeNode<T>(
      osh, std::move(out), {a},
      [ai, perm_strides, osh](TensorImpl<T>& node) {
        ai->EnsureGrad();
        detail::ForEachTransposed(osh, perm_strides, [&](int64_t dst, int64_t src) {
          ai->grad[src] += node.grad[dst];
        });
      });
}

// ───────────────────────── matmul ─────────────────────────

template <typename T>
TensorT<T> MatMul(const TensorT<T>& a, const TensorT<T>& b) {
  if (a.rank() != 2 || b.rank() != 2 || a.dim(1) != b.dim(0)) {
    throw std::invalid_argument("MatMul: incompatible shapes");
  }
  const int64_t m = a.dim(0), k = a.dim(1), n = b.dim(1);
  std::vector<T> out(static_cast<size_t>(m * n), T(0));
  detail::GemmNN(a.values().data(), b.values().data(), out.data(), m, k, n, true);
  auto ai = a.impl();
  auto bi = b.impl();
  TensorT<T> r = detail::MakeNode<T>(
      {static_cast<int>(m), static_cast<int>(n)}, std::move(out), {a, b},
      [ai, bi, m, k, n](TensorImpl<T>& node) {
        if (ai->requires_grad) {
          ai->EnsureGrad();
          detail::GemmNT(node.grad.data(), bi->values.data(), ai->grad.data(), m, n, k, true);
        }
        if (bi->requires_grad) {
          bi->EnsureGrad();
          detail::GemmTN(ai->values.data(), node.grad.data(), bi->grad.data(), m, k, n, true);
        }
      });
  VerifyFinite(r, "matmul");
  return r;
}

// [B,m,k] x [B,k,n]; with transpose_b, [B,m,k] x [B,n,k] read as B^T.
template <typename T>
TensorT<T> BatchMatMul(const TensorT<T>& a, const TensorT<T>& b,
                       bool transpose_b = false) {
  if (a.rank() != 3 || b.rank() != 3 || a.dim(0) != b.dim(0)) {
    throw std::invalid_argument("BatchMatMul: incompatible shapes");
  }
  const int64_t batch = a.dim(0), m = a.dim(1), k = a.dim(2);
  const int64_t n = transpose_b ? b.dim(1) : b.dim(2);
  if ((transpose_b ? b.dim(2) : b.dim(1)) != k) {
    throw std::invalid_argument("BatchMatMul: inner dimension mismatch");
  }
  std::vector<T> out(static_cast<size_t>(batch * m * n), T(0));
  {
    const T* ap = a.values().data();
    const T* bp = b.values().data();
    T* cp = out.data();
    ParallelFor(batch, [&](int64_t lo, int64_t hi) {
      for (int64_t bb = lo; bb < hi; ++bb) {
        const T* ab = ap + bb * m * k;
        const T* bbp = bp + bb * k * n;
        T* cb = cp + bb * m * n;
        if (transpose_b) {
          detail::GemmNT(ab, bbp, cb, m, k, n, false);
        } else {
          detail::GemmNN(ab, bbp, cb, m, k, n, false);
        }
      }
    });
  }
  auto ai = a.impl();
  auto bi = b.impl();
  TensorT<T> r = detail::MakeNode<T>(
      {static_cast<int>(batch), static_cast<int>(m), static_cast<int>(n)},
      std::move(out), {a, b},
      [ai, bi, batch, m, k, n, transpose_b](TensorImpl<T>& node) {
        for (int64_t bb = 0; bb < batch; ++bb) {
          const T* ab = ai->values.data() + bb * m * k;
          const T* bbp = bi->values.data() + bb * (transpose_b ? n * k : k * n);
          const T* gb = node.grad.data() + bb * m * n;
          if (ai->requires_grad) {
            ai->EnsureGrad();
            T* gab = ai->grad.data() + bb * m * k;
            if (transpose_b) {
              // dA += dC * B  (B stored [n,k])
              detail::GemmNN(gb, bbp, gab, m, n, k, false);
            } else {
              detail::GemmNT(gb, bbp, gab, m, n, k, false);
            }
          }
          if (bi->requires_grad) {
            bi->EnsureGrad();
            T* gbb = bi->grad.data() + bb * (transpose_b ? n * k : k * n);
            if (transpose_b) {
              // dB[n,k] += dC^T[n,m] * A[m,k]
              detail::GemmTN(gb, ab, gbb, m, n, k, false);
            } else {
              detail::GemmTN(ab, gb, gbb, m, k, n, false);
            }
          }
        }
      });
  VerifyFinite(r, "bmm");
  return r;
}

// ───────────────────────── softmax / layer norm ─────────────────────────

template <typename T>
TensorT<T> Softmax(const TensorT<T>& a) {
  if (a.rank() < 1) throw std::invalid_argument("Softmax: rank-0 input");
  const int64_t cols = a.dim(a.rank() - 1);
  const int64_t rows = a.numel() / cols;
  const auto av = a.values();
  std::vector<T> out(static_cast<size_t>(a.numel()));
  for (int64_t rix = 0; rix < rows; ++rix) {
    const T* x = av.data() + rix * cols;
    T* y = out.data() + rix * cols;
    T mx = x[0];
    for (int64_t j = 1; j < cols; ++j) mx = std::max(mx, x[j]);
    T denom = 0;
    for (int64_t j = 0; j < cols; ++j) {
      y[j] = std::exp(x[j] - mx);
      denom += y[j];
    }
    const T inv = T(1) / denom;
    for (int64_t j = 0; j < cols; ++j) y[j] *= inv;
  }
  auto ai = a.impl();
  TensorT<T> r = detail::MakeNode<T>(
      a.shape(), std::move(out), {a}, [ai, rows, cols](TensorImpl<T>& node) {
        ai->EnsureGrad();
        for (int64_t rix = 0; rix < rows; ++rix) {
          const T* y = node.values.data() + rix * cols;
          const T* gy = node.grad.data() + rix * cols;
          T* gx = ai->grad.data() + rix * cols;
          T dot = 0;
          for (int64_t j = 0; j < cols; ++j) dot += y[j] * gy[j];
          for (int64_t j = 0; j < cols; ++j) gx[j] += y[j] * (gy[j] - dot);
        }
      });
  VerifyFinite(r, "softmax");
  return r;
}

// Normalizes the last dimension, then applies the affine pair (gamma, beta).
template <typename T>
TensorT<T> LayerNorm(const TensorT<T>& a, const TensorT<T>& gamma,
                     const TensorT<T>& beta, T eps = T(1e-5)) {
  const int64_t cols = a.dim(a.rank() - 1);
  const int64_t rows = a.numel() / cols;
  if (gamma.numel() != cols || beta.numel() != cols) {
    throw std::invalid_argument("LayerNorm: affine shape mismatch");
  }
  const auto av = a.values();
  const auto gv = gamma.values();
  const auto bv = beta.values();
  std::vector<T> out(static_cast<size_t>(a.numel()));
  std::vector<T> inv_std(static_cast<size_t>(rows));
  std::vector<T> xhat(static_cast<size_t>(a.numel()));
  for (int64_t rix = 0; rix < rows; ++rix) {
    const T* x = av.data() + rix * cols;
    T mean = 0;
    for (int64_t j = 0; j < cols; ++j) mean += x[j];
    mean /= static_cast<T>(cols);
    T var = 0;
    for (int64_t j = 0; j < cols; ++j) {
      const T d = x[j] - mean;
      var += d * d;
    }
    var /= static_cast<T>(cols);
    const T istd = T(1) / std::sqrt(var + eps);
    inv_std[static_cast<size_t>(rix)] = istd;
    T* xh = xhat.data() + rix * cols;
    T* y = out.data() + rix * cols;
    for (int64_t j = 0; j < cols; ++j) {
      xh[j] = (x[j] - mean) * istd;
      y[j] = xh[j] * gv[j] + bv[j];
    }
  }
  auto ai = a.impl();
  auto gi = gamma.impl();
  auto bi = beta.impl();
  TensorT<T> r = detail::MakeNode<T>(
      a.shape(), std::move(out), {a, gamma, beta},
      [ai, gi, bi, rows, cols, inv_std = std::move(inv_std),
       xhat = std::move(xhat)](TensorImpl<T>& node) {
        if (gi->requires_grad) gi->EnsureGrad();
        if (bi->requires_grad) bi->EnsureGrad();
        if (ai->requires_grad) ai->EnsureGrad();
        for (int64_t rix = 0; rix < rows; ++rix) {
          const T* gy = node.grad.data() + rix * cols;
          const T* xh = xhat.data() + rix * cols;
          if (gi->requires_grad || bi->requires_grad) {
            for (int64_t j = 0; j < cols; ++j) {
              if (gi->requires_grad) gi->grad[j] += gy[j] * xh[j];
              if (bi->requires_grad) bi->grad[j] += gy[j];
            }
          }
          if (ai->requires_grad) {
            // dxhat = gy * gamma; dx = istd * (dxhat - mean(dxhat) - xhat * mean(dxhat*xhat))
            T mean_dxh = 0, mean_dxh_xh = 0;
            for (int64_t j = 0; j < cols; ++j) {
              const T dxh = gy[j] * gi->values[j];
              mean_dxh += dxh;
              mean_dxh_xh += dxh * xh[j];
            }
            mean_dxh /= static_cast<T>(cols);
            mean_dxh_xh /= static_cast<T>(cols);
            T* gx = ai->grad.data() + rix * cols;
            const T istd = inv_std[static_cast<size_t>(rix)];
            for (int64_t j = 0; j < cols; ++j) {
              const T dxh = gy[j] * gi->values[j];
              gx[j] += istd * (dxh - mean_dxh - xh[j] * mean_dxh_xh);
            }
          }
        }
      });
  VerifyFinite(r, "layer_norm");
  return r;
}

// ───────────────────────── convolution ─────────────────────────

// x: [B, L, Cin], w: [K, Cin, Cout], bias: [Cout]. Zero padding.
template <typename T>
TensorT<T> Conv1d(const TensorT<T>& x, const TensorT<T>& w,
                  const TensorT<T>& bias, int stride, int padding) {
  if (x.rank() != 3 || w.rank() != 3) {
    throw std::invalid_argument("Conv1d: expects rank-3 input and weight");
  }
  const int64_t B = x.dim(0), L = x.dim(1), Ci = x.dim(2);
  const int64_t K = w.dim(0), Co = w.dim(2);
  if (w.dim(1) != Ci || bias.numel() != Co) {
    throw std::invalid_argument("Conv1d: channel mismatch");
  }
  if (stride < 1 || padding < 0) throw std::invalid_argument("Conv1d: bad stride/padding");
  const int64_t Lo = (L + 2 * padding - K) / stride + 1;
  if (Lo < 1) throw std::invalid_argument("Conv1d: input too short");

  const T* xp = x.values().data();
  const T* wp = w.values().data();
  const T* bp = bias.values().data();
  std::vector<T> out(static_cast<size_t>(B * Lo * Co));
  ParallelFor(B * Lo, [&](int64_t lo_i, int64_t hi_i) {
    for (int64_t i = lo_i; i < hi_i; ++i) {
      const int64_t b = i / Lo, t = i % Lo;
      T* orow = out.data() + i * Co;
      for (int64_t co = 0; co < Co; ++co) orow[co] = bp[co];
      for (int64_t dk = 0; dk < K; ++dk) {
        const int64_t tau = t * stride - padding + dk;
        if (tau < 0 || tau >= L) continue;
        const T* xrow = xp + (b * L + tau) * Ci;
        const T* wk = wp + dk * Ci * Co;
        for (int64_t ci = 0; ci < Ci; ++ci) {
          const T xv = xrow[ci];
          if (xv == T(0)) continue;
          const T* wrow = wk + ci * Co;
          for (int64_t co = 0; co < Co; ++co) orow[co] += xv * wrow[co];
        }
      }
    }
  });

  auto xi = x.impl();
  auto wi = w.impl();
  auto bi = bias.impl();
  TensorT<T> r = detail::MakeNode<T>(
      {static_cast<int>(B), static_cast<int>(Lo), static_cast<int>(Co)},
      std::move(out), {x, w, bias},
      [xi, wi, bi, B, L, Ci, K, Co, Lo, stride, padding](TensorImpl<T>& node) {
        if (xi->requires_grad) xi->EnsureGrad();
        if (wi->requires_grad) wi->EnsureGrad();
        if (bi->requires_grad) bi->EnsureGrad();
        const T* gp = node.grad.data();
        for (int64_t b = 0; b < B; ++b) {
          for (int64_t t = 0; t < Lo; ++t) {
            const T* grow = gp + (b * Lo + t) * Co;
            if (bi->requires_grad) {
              for (int64_t co = 0; co < Co; ++co) bi->grad[co] += grow[co];
            }
            for (int64_t dk = 0; dk < K; ++dk) {
              const int64_t tau = t * stride - padding + dk;
              if (tau < 0 || tau >= L) continue;
              const T* xrow = xi->values.data() + (b * L + tau) * Ci;
              for (int64_t ci = 0; ci < Ci; ++ci) {
                const T* wrow = wi->values.data() + (dk * Ci + ci) * Co;
                if (xi->requires_grad) {
                  T acc = 0;
                  for (int64_t co = 0; co < Co; ++co) acc += grow[co] * wrow[co];
                  xi->grad[(b * L + tau) * Ci + ci] += acc;
                }
                if (wi->requires_grad) {
                  const T xv = xrow[ci];
                  T* gwrow = wi->grad.data() + (dk * Ci + ci) * Co;
                  for (int64_t co = 0; co < Co; ++co) gwrow[co] += grow[co] * xv;
                }
              }
            }
          }
        }
      });
  VerifyFinite(r, "conv1d");
  return r;
}

// ───────────────────────── embedding ─────────────────────────

// table: [V, D]; ids laid out as id_shape. Output: [*id_shape, D].
template <typename T>
TensorT<T> Embedding(const TensorT<T>& table, const std::vector<int>& ids,
                     std::vector<int> id_shape) {
  if (table.rank() != 2) throw std::invalid_argument("Embedding: table must be [V,D]");
  if (NumelOf(id_shape) != static_cast<int64_t>(ids.size())) {
    throw std::invalid_argument("Embedding: id shape mismatch");
  }
  const int64_t V = table.dim(0), D = table.dim(1);
  for (int id : ids) {
    if (id < 0 || id >= V) {
      throw std::out_of_range("Embedding: token id " + std::to_string(id) +
                              " outside vocabulary of size " + std::to_string(V));
    }
  }
  std::vector<T> out(ids.size() * static_cast<size_t>(D));
  const T* tp = table.values().data();
  for (size_t i = 0; i < ids.size(); ++i) {
    std::copy_n(tp + static_cast<int64_t>(ids[i]) * D, D, out.data() + i * D);
  }
  std::vector<int> osh = std::move(id_shape);
  osh.push_back(static_cast<int>(D));
  auto ti = table.impl();
  TensorT<T> r = detail::MakeNode<T>(
      std::move(osh), std::move(out), {table}, [ti, ids, D](TensorImpl<T>& node) {
        ti->EnsureGrad();
        for (size_t i = 0; i < ids.size(); ++i) {
          const T* g = node.grad.data() + i * D;
          T* dst = ti->grad.data() + static_cast<int64_t>(ids[i]) * D;
          for (int64_t j = 0; j < D; ++j) dst[j] += g[j];
        }
      });
  VerifyFinite(r, "embedding");
  return r;
}

// ───────────────────────── dropout ─────────────────────────

// Inverted dropout. Identity when rate == 0 or rng is null (inference).
template <typename T>
TensorT<T> Dropout(const TensorT<T>& a, double rate, Rng* rng) {
  if (rate < 0.0 || rate >= 1.0) {
    throw std::invalid_argument("Dropout: rate must be in [0, 1)");
  }
  if (rate == 0.0 || rng == nullptr) return a;
  const T scale = T(1.0 / (1.0 - rate));
  std::vector<T> mask(static_cast<size_t>(a.numel()));
  for (auto& m : mask) m = rng->Uniform() >= rate ? scale : T(0);
  const auto av = a.values();
  std::vector<T> out(static_cast<size_t>(a.numel()));
  for (int64_t i = 0; i < a.numel(); ++i) out[static_cast<size_t>(i)] = av[i] * mask[static_cast<size_t>(i)];
  auto ai = a.impl();
  TensorT<T> r = detail::MakeNode<T>(
      a.shape(), std::move(out), {a}, [ai, mask = std::move(mask)](TensorImpl<T>& node) {
        ai->EnsureGrad();
        for (int64_t i = 0; i < node.numel(); ++i) ai->grad[i] += node.grad[i] * mask[static_cast<size_t>(i)];
      });
  VerifyFinite(r, "dropout");
  return r;
}

// ───────────────────────── fused losses ─────────────────────────

// Label-smoothed cross entropy over [R, V] logits. Rows whose target is
// pad_id are excluded; the smoothing mass spreads uniformly over the
// vocabulary minus pad. Returns the mean loss over counted rows and writes
// the row count to token_count.
template <typename T>
TensorT<T> CrossEntropySmoothed(const TensorT<T>& logits,
                                const std::vector<int>& targets, int pad_id,
                                double smoothing, int64_t* token_count) {
  if (logits.rank() != 2) throw std::invalid_argument("CrossEntropySmoothed: logits must be [R,V]");
  const int64_t R = logits.dim(0), V = logits.dim(1);
  if (static_cast<int64_t>(targets.size()) != R) {
    throw std::invalid_argument("CrossEntropySmoothed: target length mismatch");
  }
  if (smoothing < 0.0 || smoothing >= 1.0) {
    throw std::invalid_argument("CrossEntropySmoothed: smoothing must be in [0,1)");
  }
  const T eps = static_cast<T>(smoothing);
  const T smooth_unit = V > 1 ? eps / static_cast<T>(V - 1) : T(0);
  int64_t count = 0;
  for (int t : targets) {
    if (t != pad_id) {
      if (t < 0 || t >= V) throw std::out_of_range("CrossEntropySmoothed: target id out of range");
      ++count;
    }
  }
  if (count == 0) throw std::invalid_argument("CrossEntropySmoothed: all targets are padding");
  if (token_count != nullptr) *token_count = count;

  const T* lp = logits.values().data();
  // Cache softmax probabilities for backward.
  std::vector<T> probs(static_cast<size_t>(R * V));
  T total = 0;
  for (int64_t rix = 0; rix < R; ++rix) {
    if (targets[static_cast<size_t>(rix)] == pad_id) continue;
    const T* x = lp + rix * V;
    T* p = probs.data() + rix * V;
    T mx = x[0];
    for (int64_t j = 1; j < V; ++j) mx = std::max(mx, x[j]);
    T denom = 0;
    for (int64_t j = 0; j < V; ++j) {
      p[j] = std::exp(x[j] - mx);
      denom += p[j];
    }
    const T lse = mx + std::log(denom);
    const T inv = T(1) / denom;
    T sum_all = 0;
    for (int64_t j = 0; j < V; ++j) {
      sum_all += x[j];
      p[j] *= inv;
    }
    const int y = targets[static_cast<size_t>(rix)];
    // (1-eps) * nll(y) + eps/(V-1) * sum_{v != pad} nll(v)
    const T nll_target = lse - x[y];
    const T sum_non_pad = sum_all - x[pad_id];
    const T smooth_term = static_cast<T>(V - 1) * lse - sum_non_pad;
    total += (T(1) - eps) * nll_target + smooth_unit * smooth_term;
  }
  total /= static_cast<T>(count);

  auto li = logits.impl();
  std::vector<int> tcopy = targets;
  TensorT<T> r = detail::MakeNode<T>(
      {1}, {total}, {logits},
      [li, tcopy = std::move(tcopy), probs = std::move(probs), pad_id, eps,
       smooth_unit, count, R, V](TensorImpl<T>& node) {
        li->EnsureGrad();
        const T go = node.grad[0] / static_cast<T>(count);
        for (int64_t rix = 0; rix < R; ++rix) {
          const int y = tcopy[static_cast<size_t>(rix)];
          if (y == pad_id) continue;
          const T* p = probs.data() + rix * V;
          T* g = li->grad.data() + rix * V;
          for (int64_t j = 0; j < V; ++j) {
            T q = j == pad_id ? T(0) : smooth_unit;
            if (j == y) q += T(1) - eps;
            g[j] += go * (p[j] - q);
          }
        }
      });
  VerifyFinite(r, "cross_entropy_smoothed");
  return r;
}

// ───────────────────────── positions ─────────────────────────

// pe[pos, 2i] = sin(pos / 10000^(2i/dim)), pe[pos, 2i+1] = cos(same).
template <typename T>
TensorT<T> SinusoidalPositions(int length, int dim) {
  if (dim <= 0 || dim % 2 != 0) {
    throw std::invalid_argument("SinusoidalPositions: dim must be even and positive");
  }
  if (length < 0) throw std::invalid_argument("SinusoidalPositions: negative length");
  std::vector<T> out(static_cast<size_t>(length) * static_cast<size_t>(dim));
  for (int pos = 0; pos < length; ++pos) {
    T* row = out.data() + static_cast<int64_t>(pos) * dim;
    for (int i = 0; i < dim / 2; ++i) {
      const double angle = pos * std::exp(-std::log(10000.0) * (2.0 * i / dim));
      row[2 * i] = static_cast<T>(std::sin(angle));
      row[2 * i + 1] = static_cast<T>(std::cos(angle));
    }
  }
  return TensorT<T>::FromVector({length, dim}, std::move(out));
}

// ───────────────────────── backward ─────────────────────────

template <typename T>
void Backward(const TensorT<T>& loss) {
  if (loss.numel() != 1) {
    throw std::invalid_argument("Backward: loss must be a scalar");
  }
  // Topological order over the tape (iterative DFS).
  std::vector<TensorImpl<T>*> order;
  std::unordered_set<TensorImpl<T>*> visited;
  std::vector<std::pair<TensorImpl<T>*, size_t>> stack;
  stack.emplace_back(loss.raw(), 0);
  visited.insert(loss.raw());
  while (!stack.empty()) {
    auto& [node, next] = stack.back();
    if (next < node->parents.size()) {
      TensorImpl<T>* p = node->parents[next++].get();
      if (p->requires_grad && !visited.count(p)) {
        visited.insert(p);
        stack.emplace_back(p, 0);
      }
    } else {
      order.push_back(node);
      stack.pop_back();
    }
  }
  loss.impl()->EnsureGrad();
  loss.impl()->grad[0] = T(1);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    TensorImpl<T>* node = *it;
    if (node->backward_fn) {
      node->EnsureGrad();
      node->backward_fn(*node);
    }
  }
}

}  // namespace duotrain::num

#endif  // DUOTRAIN_NUMCORE_AUTODIFF_H_
