#include "npi/parallel.hpp"

#include <cstdlib>
#include <string>

namespace npi {

std::size_t default_thread_count() {
    if (const char* env = std::getenv("NPI_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<std::size_t>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

} // namespace npi
