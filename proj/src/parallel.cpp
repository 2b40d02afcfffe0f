#include "irslab/parallel.hpp"

#include <atomic>
#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace irslab::parallel {

namespace {
std::atomic<int> g_default_threads{0};
}

void set_default_threads(int threads) { g_default_threads.store(threads); }

int default_threads() {
    const int configured = g_default_threads.load();
    if (configured > 0) return configured;
    const unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(std::clamp(hw, 1u, 8u));
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, int threads) {
    if (n == 0) return;
    int k = threads > 0 ? threads : default_threads();
    k = static_cast<int>(std::min<std::size_t>(k, n));
    if (k <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(k);
    for (int t = 0; t < k; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace irslab::parallel
