#include "colorpoincare/parallel.hpp"

#include <algorithm>
#include <cstdlib>

#ifdef COLORPOINCARE_HAVE_OPENMP
#include <omp.h>
#endif

namespace colorpoincare {

int effective_threads() {
#ifdef COLORPOINCARE_HAVE_OPENMP
    int t = omp_get_max_threads();
    if (const char* env = std::getenv("COLORPOINCARE_THREADS")) {
        int cap = std::atoi(env);
        if (cap >= 1) t = std::min(t, cap);
    }
    return std::max(1, t);
#else
    return 1;
#endif
}

void parallel_for(long long n, bool parallel, const std::function<void(long long)>& body) {
#ifdef COLORPOINCARE_HAVE_OPENMP
    if (parallel && n > 1) {
        int threads = effective_threads();
#pragma omp parallel for schedule(static) num_threads(threads)
        for (long long i = 0; i < n; ++i) body(i);
        return;
    }
#endif
    (void)parallel;
    for (long long i = 0; i < n; ++i) body(i);
}

}  // namespace colorpoincare
