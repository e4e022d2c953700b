#pragma once

#include <cstdint>
#include <functional>

namespace bflights {

// Worker count: explicit argument > BFLIGHTS_WORKERS env > hardware.
int resolve_workers(int requested = 0);

// Static partition of [0, n) into one contiguous chunk per worker; fn is
// called as fn(worker, begin, end) from worker threads (worker 0 inline).
void parallel_chunks(std::int64_t n, int workers,
                     const std::function<void(int, std::int64_t, std::int64_t)>& fn);

}  // namespace bflights
