#pragma once

#include <cstddef>
#include <functional>

namespace hkp {

/// Worker cap: HKP_THREADS if set and positive, else hardware concurrency.
std::size_t worker_count();

/// Runs body(i) for i in [0, n). Results must be written by index so the
/// outcome does not depend on scheduling. Nested calls run serially. The
/// first exception thrown by any worker is rethrown on the caller.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace hkp
