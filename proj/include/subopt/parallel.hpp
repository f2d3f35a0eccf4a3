#pragma once

// Thread-count policy and the one parallel primitive used by the library.
// SUBSAMPLE_OPT_THREADS caps the number of threads (0 or unset = auto).
// Every parallel kernel has a serial twin selected by a flag, kept so
// tests and benchmarks can compare the two paths bit for bit.

#include <functional>

namespace subopt {

// Resolved thread budget: min(hardware, SUBSAMPLE_OPT_THREADS when set
// nonzero). Always at least 1.
int effective_thread_count();

// Runs body(i) for i in [0, n). With use_parallel and an OpenMP build the
// iterations are chunked across threads; otherwise they run in order.
// body must write to disjoint slots; the caller owns any reduction so
// results stay deterministic.
void parallel_for(int n, const std::function<void(int)>& body, bool use_parallel);

} // namespace subopt
