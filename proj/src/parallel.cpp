#include "subopt/parallel.hpp"

#include <cstdlib>
#include <string>
#include <thread>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace subopt {

int effective_thread_count() {
#ifdef _OPENMP
    int hw = omp_get_max_threads();
#else
    int hw = static_cast<int>(std::thread::hardware_concurrency());
#endif
    if (hw < 1) hw = 1;
    const char* env = std::getenv("SUBSAMPLE_OPT_THREADS");
    if (env != nullptr && *env != '\0') {
        try {
            int cap = std::stoi(env);
            if (cap > 0 && cap < hw) return cap;
        } catch (const std::exception&) {
            // Unparseable value behaves like "auto".
        }
    }
    return hw;
}

void parallel_for(int n, const std::function<void(int)>& body, bool use_parallel) {
#ifdef _OPENMP
    if (use_parallel) {
        const int threads = effective_thread_count();
        if (threads > 1 && n > 1) {
#pragma omp parallel for num_threads(threads) schedule(static)
            for (int i = 0; i < n; ++i) {
                body(i);
            }
            return;
        }
    }
#else
    (void)use_parallel;
#endif
    for (int i = 0; i < n; ++i) {
        body(i);
    }
}

} // namespace subopt
