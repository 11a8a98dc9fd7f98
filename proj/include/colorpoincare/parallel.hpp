#pragma once

#include <functional>

namespace colorpoincare {

// Number of worker threads the OpenMP kernels will use. Respects the
// COLORPOINCARE_THREADS environment variable; 1 when built without OpenMP.
int effective_threads();

// Runs body(i) for i in [0, n). With parallel=true the iterations are split
// across OpenMP threads (static schedule); body must only touch state owned
// by iteration i or thread-local accumulators. parallel=false is the serial
// reference path used to cross-check the parallel one.
void parallel_for(long long n, bool parallel, const std::function<void(long long)>& body);

}  // namespace colorpoincare
