#include "topowave/parallel.hpp"

#include <cstdlib>
#include <string>
#include <thread>

namespace topowave {

unsigned max_threads() {
    if (const char* env = std::getenv("TOPOWAVE_THREADS")) {
        try {
            const long n = std::stol(env);
            if (n >= 1) return static_cast<unsigned>(n);
        } catch (const std::exception&) {
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

}  // namespace topowave
