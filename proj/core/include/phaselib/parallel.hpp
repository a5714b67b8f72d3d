#pragma once

// Fork-join helpers. All parallel loops in the library go through these so
// the worker count is controlled from one place.

#include <cstddef>
#include <utility>

#include <tbb/blocked_range.h>
#include <tbb/global_control.h>
#include <tbb/parallel_for.h>
#include <tbb/parallel_invoke.h>
#include <tbb/task_arena.h>

namespace phaselib {

inline constexpr std::size_t kDefaultGrain = 1024;

template <class F>
void parallel_for(std::size_t begin, std::size_t end, F&& f,
                  std::size_t grain = kDefaultGrain) {
  if (end <= begin) return;
  if (end - begin <= grain) {
    for (std::size_t i = begin; i < end; ++i) f(i);
    return;
  }
  tbb::parallel_for(tbb::blocked_range<std::size_t>(begin, end, grain),
                    [&](const tbb::blocked_range<std::size_t>& r) {
                      for (std::size_t i = r.begin(); i != r.end(); ++i) f(i);
                    });
}

/// Runs both closures, in parallel when `parallel` is true.
template <class F, class G>
void par_do(bool parallel, F&& f, G&& g) {
  if (parallel) {
    tbb::parallel_invoke(std::forward<F>(f), std::forward<G>(g));
  } else {
    f();
    g();
  }
}

/// Number of workers the current arena may use.
inline int current_threads() { return tbb::this_task_arena::max_concurrency(); }

/// Default worker count: PHASELIB_THREADS if set, else hardware concurrency.
int default_threads();

/// Runs `fn` inside an arena of exactly `threads` workers.
template <class F>
decltype(auto) with_threads(int threads, F&& fn) {
  if (threads < 1) threads = 1;
  tbb::global_control limit(tbb::global_control::max_allowed_parallelism,
                            static_cast<std::size_t>(threads));
  tbb::task_arena arena(threads);
  return arena.execute(std::forward<F>(fn));
}

}  // namespace phaselib
