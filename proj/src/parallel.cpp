#include "orthokin/parallel.hpp"

#include <cstdlib>
#include <string>

namespace orthokin {

int thread_cap() {
    if (const char* env = std::getenv("ORTHOKIN_THREADS")) {
        try {
            return std::max(1, std::stoi(env));
        } catch (...) {
            return 1;
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : int(hw);
}

}  // namespace orthokin
