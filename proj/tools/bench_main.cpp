// Benchmark for the parallel sweep path: evaluates the tensor kernels over a
// large (s, angle) grid in serial and OpenMP mode, checks that both modes
// produce bit-identical results, and reports throughput.

#include <chrono>
#include <cmath>
#include <cstring>
#include <iostream>
#include <vector>

#include "finsler/ad_oracle.hpp"
#include "finsler/classifier.hpp"
#include "finsler/ode_lab.hpp"

using namespace finsler;

namespace {

using Clock = std::chrono::steady_clock;

struct Workload {
  std::string name;
  std::size_t count;
  double serial_s = 0.0;
  double parallel_s = 0.0;
  bool identical = false;
};

template <class Kernel>
Workload run_workload(const std::string& name, std::size_t count, Kernel&& kernel) {
  std::vector<double> serial_out(count), parallel_out(count);

  const auto t0 = Clock::now();
  sweep_indices(count, ExecMode::serial, [&](std::size_t i) { serial_out[i] = kernel(i); });
  const auto t1 = Clock::now();
  sweep_indices(count, ExecMode::parallel, [&](std::size_t i) { parallel_out[i] = kernel(i); });
  const auto t2 = Clock::now();

  Workload w{name, count};
  w.serial_s = std::chrono::duration<double>(t1 - t0).count();
  w.parallel_s = std::chrono::duration<double>(t2 - t1).count();
  w.identical = std::memcmp(serial_out.data(), parallel_out.data(),
                            count * sizeof(double)) == 0;
  return w;
}

void report(const Workload& w) {
  std::cout << w.name << ": n=" << w.count << "  serial " << w.serial_s << " s, parallel "
            << w.parallel_s << " s, speedup " << (w.parallel_s > 0 ? w.serial_s / w.parallel_s : 0.0)
            << (w.identical ? "  [bit-identical]" : "  [MISMATCH]") << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t n_closed = 40000;
  std::size_t n_oracle = 1500;
  if (argc > 1) n_closed = std::strtoull(argv[1], nullptr, 10);
  if (argc > 2) n_oracle = std::strtoull(argv[2], nullptr, 10);

  std::cout << "workers: " << worker_count() << (openmp_enabled() ? " (openmp)" : " (serial build)")
            << "\n";

  const MetricPoint mp = standard_point(0.36);
  const PhiSpec randers = PhiSpec::make_randers();
  const PhiSpec landsberg = PhiSpec::make_shen_landsberg(1.0, 0.5, mp.b_sq);
  const double b = std::sqrt(mp.b_sq);

  const auto s_of = [&](std::size_t i, std::size_t count) {
    return -0.9 * b + 1.8 * b * (double(i) + 0.5) / double(count);
  };

  bool all_identical = true;

  {
    const Workload w = run_workload("t_coefficients randers", n_closed, [&](std::size_t i) {
      const Direction y = realize_direction(mp, s_of(i, n_closed), 0.1 + 1e-4 * double(i % 97));
      return t_coefficients(mp, y, randers).Phi;
    });
    report(w);
    all_identical = all_identical && w.identical;
  }
  {
    const Workload w = run_workload("t_lower shen_landsberg", n_closed / 8, [&](std::size_t i) {
      const Direction y = realize_direction(mp, s_of(i, n_closed / 8), 0.2);
      return t_lower(mp, y, landsberg).max_abs();
    });
    report(w);
    all_identical = all_identical && w.identical;
  }
  {
    const Workload w = run_workload("oracle_t randers", n_oracle, [&](std::size_t i) {
      const Direction y = realize_direction(mp, s_of(i, n_oracle), 0.3);
      return oracle_t(mp, y, randers).max_abs();
    });
    report(w);
    all_identical = all_identical && w.identical;
  }

  if (!all_identical) {
    std::cerr << "serial/parallel outputs differ\n";
    return 1;
  }
  return 0;
}
