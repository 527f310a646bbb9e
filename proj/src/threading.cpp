#include "jastrow/threading.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace jastrow {

int max_threads() {
#ifdef _OPENMP
    int n = omp_get_max_threads();
    if (const char* cap = std::getenv("JASTROW_LAB_THREADS")) {
        try {
            const int c = std::stoi(cap);
            if (c >= 1) n = std::min(n, c);
        } catch (...) {
            // ignore malformed values, keep the OpenMP default
        }
    }
    return std::max(1, n);
#else
    return 1;
#endif
}

}  // namespace jastrow
