// Copyright 2026 The advlab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ADVLAB_PARALLEL_H_
#define ADVLAB_PARALLEL_H_

#include <cstddef>
#include <functional>
#include <vector>

namespace advlab {

// Worker count used by ParallelFor. Defaults to hardware concurrency.
std::size_t WorkerCount();
void SetWorkerCount(std::size_t workers);

// Runs body(i) for i in [0, count) on a static partition of worker threads.
// The first exception thrown by any body is rethrown on the caller.
void ParallelFor(std::size_t count, const std::function<void(std::size_t)>& body);

// ParallelFor that collects body(i) into slot i, so results are ordered by
// index regardless of scheduling.
template <typename T>
std::vector<T> ParallelMap(std::size_t count,
                           const std::function<T(std::size_t)>& body) {
  std::vector<T> out(count);
  ParallelFor(count, [&](std::size_t i) { out[i] = body(i); });
  return out;
}

}  // namespace advlab

#endif  // ADVLAB_PARALLEL_H_
