#pragma once

#include <cstddef>
#include <mutex>
#include <optional>
#include <utility>

#include "finsler/error.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace finsler {

// Execution mode for grid sweeps. Every kernel is a pure function, so the
// parallel path writes results into preallocated slots and keeps reductions
// serial; serial and parallel runs produce bit-identical output. The serial
// path is the reference the tests compare against.
enum class ExecMode { serial, parallel };

bool openmp_enabled();
int worker_count();

namespace detail {

struct SweepErrorCollector {
  std::mutex mutex;
  std::optional<std::pair<Errc, std::string>> first;

  void store(Errc code, const std::string& what) {
    std::lock_guard<std::mutex> lock(mutex);
    if (!first) first = {code, what};
  }
  void rethrow_if_any() const {
    if (first) raise(first->first, first->second);
  }
};

}  // namespace detail

// Applies body(i) for i in [0, count). Exceptions thrown by the body are
// captured and the first one is rethrown after the sweep completes.
template <class Body>
void sweep_indices(std::size_t count, ExecMode mode, Body&& body) {
  detail::SweepErrorCollector errors;
  const auto guarded = [&](std::size_t i) {
    try {
      body(i);
    } catch (const Error& e) {
      errors.store(e.code(), e.what());
    } catch (const std::exception& e) {
      errors.store(Errc::bad_config, e.what());
    }
  };

#ifdef _OPENMP
  if (mode == ExecMode::parallel) {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(count); ++i)
      guarded(static_cast<std::size_t>(i));
    errors.rethrow_if_any();
    return;
  }
#else
  (void)mode;
#endif
  for (std::size_t i = 0; i < count; ++i) guarded(i);
  errors.rethrow_if_any();
}

}  // namespace finsler
