#pragma once

#include <cstddef>
#include <exception>
#include <mutex>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace minmod::par {

enum class Mode { serial, openmp };

// Worker cap: MINMODLAB_THREADS if set, else the OpenMP default.
// set_thread_cap(0) restores the environment-derived value.
int thread_cap();
void set_thread_cap(int n);

Mode default_mode();
void set_default_mode(Mode m);

// Runs fn(i) for i in [0, n). Every slot is computed by exactly one
// task and no reduction happens inside, so results are identical for
// any thread count and for both modes. Exceptions are rethrown after
// the loop (first one wins).
template <typename Fn>
void for_index(std::size_t n, Fn&& fn, Mode mode = default_mode()) {
#ifdef _OPENMP
    if (mode == Mode::openmp && n > 1) {
        std::exception_ptr err;
        std::mutex err_mutex;
        const int nt = thread_cap();
        // dynamic: work per slot is wildly uneven (geometric radius grids);
        // slot-indexed writes keep the result thread-count independent
#pragma omp parallel for schedule(dynamic, 1) num_threads(nt)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
            try {
                fn(static_cast<std::size_t>(i));
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!err) err = std::current_exception();
            }
        }
        if (err) std::rethrow_exception(err);
        return;
    }
#endif
    (void)mode;
    for (std::size_t i = 0; i < n; ++i) fn(i);
}

} // namespace minmod::par
