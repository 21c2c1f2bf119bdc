// common/threading.cc

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

#include "duotrain/common/threading.h"

#include <algorithm>
#include <condition_variable>
#include <cstdlib>
#include <mutex>
#include <thread>
#include <vector>

namespace duotrain {

namespace {

// Persistent pool; workers sleep between ParallelFor calls.
class Pool {
 public:
  explicit Pool(int workers) : chunk_fn_(nullptr) {
    for (int i = 1; i < workers; ++i) {
      threads_.emplace_back([this, i] { WorkerLoop(i); });
    }
  }

  ~Pool() {
    {
      std::unique_lock<std::mutex> lk(mu_);
      stop_ = true;
    }
    cv_.notify_all();
    for (auto& t : threads_) t.join();
  }

  int width() const { return static_cast<int>(threads_.size()) + 1; }

  void Run(int64_t n, const std::function<void(int64_t, int64_t)>& fn) {
    const int w = width();
    chunk_ = (n + w - 1) / w;
    total_ = n;
    {
      std::unique_lock<std::mutex> lk(mu_);
      chunk_fn_ = &fn;
      pending_ = static_cast<int>(threads_.size());
      ++epoch_;
    }
    cv_.notify_all();
    RunChunk(0, fn);
    std::unique_lock<std::mutex> lk(mu_);
    done_cv_.wait(lk, [this] { return pending_ == 0; });
    chunk_fn_ = nullptr;
  }

 private:
  void RunChunk(int idx, const std::function<void(int64_t, int64_t)>& fn) {
    int64_t lo = std::min<int64_t>(total_, idx * chunk_);
    int64_t hi = std::min<int64_t>(total_, lo + chunk_);
    if (lo < hi) fn(lo, hi);
  }

  void WorkerLoop(int idx) {
    uint64_t seen = 0;
    for (;;) {
      const std::function<void(int64_t, int64_t)>* fn = nullptr;
      {
        std::unique_lock<std::mutex> lk(mu_);
        cv_.wait(lk, [&] { return stop_ || epoch_ != seen; });
        if (stop_) return;
        seen = epoch_;
        fn = chunk_fn_;
      }
      RunChunk(idx, *fn);
      {
        std::unique_lock<std::mutex> lk(mu_);
        if (--pending_ == 0) done_cv_.notify_all();
      }
    }
  }

  std::vector<std::thread> threads_;
  std::mutex mu_;
  std::condition_variable cv_, done_cv_;
  const std::function<void(int64_t, int64_t)>* chunk_fn_;
  int64_t chunk_ = 0, total_ = 0;
  int pending_ = 0;
  uint64_t epoch_ = 0;
  bool stop_ = false;
};

Pool& GetPool() {
  static Pool pool(NumThreads());
  return pool;
}

}  // namespace

int NumThreads() {
  static int n = [] {
    if (const char* env = std::getenv("DUOTRAIN_THREADS")) {
      int v = std::atoi(env);
      if (v > 0) return std::min(v, 256);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
  }();
  return n;
}

void ParallelFor(int64_t n, const std::function<void(int64_t, int64_t)>& fn) {
  if (n <= 0) return;
  if (NumThreads() == 1 || n < 256) {
    fn(0, n);
    return;
  }
  GetPool().Run(n, fn);
}

}  // namespace duotrain
