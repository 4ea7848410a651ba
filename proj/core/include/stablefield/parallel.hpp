// Copyright 2026 The stablefield Authors
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

#ifndef STABLEFIELD_PARALLEL_HPP
#define STABLEFIELD_PARALLEL_HPP

#include <cstddef>
#include <functional>
#include <optional>

namespace stablefield {

/// Worker count used by parallel_for. Falls back to STABLE_FIELD_THREADS, then to the
/// hardware concurrency.
std::size_t thread_count() noexcept;

/// Override the worker count for this process; nullopt restores the default lookup.
void set_thread_count(std::optional<std::size_t> threads) noexcept;

/// Run body(i) for i in [0, n). Iterations are distributed dynamically, so bodies must only
/// write to per-index state. The first exception thrown by a body is rethrown here. Calls
/// made from inside a body run serially on the calling worker.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace stablefield

#endif  // STABLEFIELD_PARALLEL_HPP
