#pragma once

// Thread-count policy for the OpenMP kernels. ERGO_THREADS overrides the
// OpenMP default outright (values above the core count oversubscribe, which
// the concurrency tests use to shake out races); unset means the default.

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ergo {

inline int max_threads() {
#ifdef _OPENMP
    int n = omp_get_max_threads();
    if (const char* cap = std::getenv("ERGO_THREADS")) {
        try {
            const int c = std::stoi(cap);
            if (c >= 1) n = c;
        } catch (...) {
            // ignore malformed values, keep the OpenMP default
        }
    }
    return n;
#else
    return 1;
#endif
}

}  // namespace ergo
