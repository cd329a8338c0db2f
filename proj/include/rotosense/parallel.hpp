#pragma once

#include <cstdint>
#include <functional>

namespace rotosense {

/// Worker count: ROTOSENSE_THREADS if set and positive, else hardware concurrency.
int worker_count();

/// Runs body(i) for i in [0, n) on up to worker_count() threads. Each index is
/// handled exactly once; callers write results into per-index slots so the
/// outcome does not depend on scheduling. The first exception is rethrown.
void parallel_for(int n, const std::function<void(int)>& body);

/// splitmix64 step; used to derive independent child seeds.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace rotosense
