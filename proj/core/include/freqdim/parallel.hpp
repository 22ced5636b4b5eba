// Copyright 2026 The freqdim Authors
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


// Process-wide worker count and an index-parallel loop. Every index writes
// only its own result slot, so output does not depend on the worker count.
#ifndef FREQDIM_PARALLEL_HPP_
#define FREQDIM_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace freqdim {

// 0 selects std::thread::hardware_concurrency().
void set_worker_threads(unsigned count);
unsigned worker_threads();

// Calls fn(i) for i in [0, count). The first exception thrown (lowest index
// among those observed) is rethrown after all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace freqdim

#endif  // FREQDIM_PARALLEL_HPP_
