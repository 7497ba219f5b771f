#pragma once

#include <cstddef>
#include <functional>

namespace akb {

/// Runs task(i) for i in [0, count) on up to `jobs` threads. Tasks must write
/// only to their own output slot. The first exception thrown by any task is
/// rethrown after all threads join; remaining tasks still run.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& task);

/// Hardware concurrency, at least 1.
int default_jobs();

}  // namespace akb
