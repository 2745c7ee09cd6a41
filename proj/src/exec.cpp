#include "autostack/exec.hpp"

#include <cstdint>

#ifdef AUTOSTACK_HAVE_OPENMP
#include <omp.h>
#endif

namespace autostack {

  namespace {
    void serial_loop(std::size_t n, std::function<void(std::size_t)> const& body) {
      for (std::size_t i = 0; i < n; ++i) {
        body(i);
      }
    }

    void parallel_loop(std::size_t n, std::function<void(std::size_t)> const& body) {
#ifdef AUTOSTACK_HAVE_OPENMP
      auto const count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 16)
      for (std::int64_t i = 0; i < count; ++i) {
        body(static_cast<std::size_t>(i));
      }
#else
      serial_loop(n, body);
#endif
    }
  }  // namespace

  void for_each_index(std::size_t n, Exec exec, std::function<void(std::size_t)> const& body) {
    if (exec == Exec::serial || n < 2) {
      serial_loop(n, body);
    } else {
      parallel_loop(n, body);
    }
  }

  int max_threads() {
#ifdef AUTOSTACK_HAVE_OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
  }

}  // namespace autostack
