#include "bflights/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace bflights {

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("BFLIGHTS_WORKERS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

void parallel_chunks(std::int64_t n, int workers,
                     const std::function<void(int, std::int64_t, std::int64_t)>& fn) {
  workers = std::max(1, static_cast<int>(std::min<std::int64_t>(workers, n)));
  if (n <= 0) return;
  if (workers == 1) {
    fn(0, 0, n);
    return;
  }
  std::vector<std::thread> threads;
  std::exception_ptr error;
  std::mutex error_mu;
  auto body = [&](int w) {
    const std::int64_t b = n * w / workers;
    const std::int64_t e = n * (w + 1) / workers;
    try {
      fn(w, b, e);
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mu);
      if (!error) error = std::current_exception();
    }
  };
  threads.reserve(static_cast<std::size_t>(workers) - 1);
  for (int w = 1; w < workers; ++w) threads.emplace_back(body, w);
  body(0);
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace bflights
