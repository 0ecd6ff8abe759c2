#pragma once

#include <cstddef>
#include <functional>

namespace kfibpal {

/// Worker count from KFIBPAL_WORKERS, else the hardware concurrency.
int worker_count();

/// Runs body(0) .. body(count - 1) on worker_count() threads. Indices are
/// handed out dynamically; the first exception thrown by any body is
/// rethrown on the calling thread after all workers stop.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace kfibpal
