// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>

namespace rsrr
{

/// Worker cap for parallel maps. Defaults to RSRR_NUM_THREADS when set, otherwise the
/// hardware concurrency.
std::size_t thread_limit();
void set_thread_limit(std::size_t n);

/// Runs body(i) for i in [0, count). Each index writes only its own output slot, so the
/// result never depends on scheduling. If any call throws, the exception from the lowest
/// failing index is rethrown after all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)> &body);

}  // namespace rsrr
