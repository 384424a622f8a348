#include "specf/parallel.hpp"

#include <cstdlib>
#include <string>

namespace specf {

int default_jobs() {
    if (const char* env = std::getenv("SPECF_JOBS")) {
        try {
            const int jobs = std::stoi(env);
            if (jobs >= 1) return jobs;
        } catch (...) {
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

}  // namespace specf
