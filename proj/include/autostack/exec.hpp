#ifndef AUTOSTACK_EXEC_HPP_
#define AUTOSTACK_EXEC_HPP_

#include <cstddef>
#include <functional>

namespace autostack {

  //! Every data-parallel kernel has a plain serial loop (the reference used
  //! by the tests) and an OpenMP loop. Both write results into per-index
  //! slots, so the outputs are identical.
  enum class Exec { serial, parallel };

  //! Runs body(i) for i in [0, n). The body must only write to state owned
  //! by index i and must not throw.
  void for_each_index(std::size_t n, Exec exec, std::function<void(std::size_t)> const& body);

  //! Number of OpenMP threads available (1 without OpenMP).
  int max_threads();

}  // namespace autostack

#endif  // AUTOSTACK_EXEC_HPP_
