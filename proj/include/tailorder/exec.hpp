#pragma once

#include <cstddef>
#include <exception>

#include "tailorder/defs.hpp"

namespace tailorder {

// Runs f(i) for i in [0, n). Work items must be mutually independent; with
// per-row RNG derivation the two policies produce identical results, so the
// serial path doubles as the reference implementation in tests. Exceptions
// thrown by work items are captured and rethrown after the region (an
// exception escaping an OpenMP loop would otherwise terminate).
template <class F>
void for_each_index(std::size_t n, Exec exec, F&& f) {
#ifdef _OPENMP
  if (exec == Exec::parallel) {
    std::exception_ptr err;
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      try {
        f(static_cast<std::size_t>(i));
      } catch (...) {
#pragma omp critical(tailorder_for_each_index_err)
        if (!err) err = std::current_exception();
      }
    }
    if (err) std::rethrow_exception(err);
    return;
  }
#endif
  (void)exec;
  for (std::size_t i = 0; i < n; ++i) f(i);
}

}  // namespace tailorder
