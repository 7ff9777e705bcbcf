// Times the parallel grid map against the serial reference on an M_n
// oracle grid and checks that both produce bit-identical outputs.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "orthobound/grid.hpp"
#include "orthobound/mfunc.hpp"

namespace {

double now_ms() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double, std::milli>(
             clock::now().time_since_epoch())
      .count();
}

}  // namespace

int main(int argc, char** argv) {
  int reps = 3;
  if (argc > 1) reps = std::atoi(argv[1]);
  if (reps < 1) reps = 1;

  const std::vector<int> ns = {3, 4, 5, 6, 7, 8};
  const std::vector<double> bs = {1.01, 1.1, 1.5, 2.0, 5.0, 20.0};
  const std::size_t total = ns.size() * bs.size();

  orthobound::quad::Options opts;
  opts.abs_tol = 0.0;
  opts.rel_tol = 1e-8;

  auto cell = [&](std::size_t i) {
    return orthobound::mfunc::mn_oracle(static_cast<int>(ns[i / bs.size()]),
                                        bs[i % bs.size()], opts)
        .value;
  };

  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  std::printf("grid: %zu cells (M_n oracle, rel tol 1e-8), %d reps, %d threads\n",
              total, reps, threads);

  double best_serial = 1e300, best_parallel = 1e300;
  std::vector<double> serial, parallel;
  for (int r = 0; r < reps; ++r) {
    const double t0 = now_ms();
    serial = orthobound::grid::map_serial(total, cell);
    const double t1 = now_ms();
    parallel = orthobound::grid::map_parallel(total, cell);
    const double t2 = now_ms();
    best_serial = std::min(best_serial, t1 - t0);
    best_parallel = std::min(best_parallel, t2 - t1);
  }

  bool identical = serial.size() == parallel.size();
  for (std::size_t i = 0; identical && i < serial.size(); ++i)
    identical = std::memcmp(&serial[i], &parallel[i], sizeof(double)) == 0;

  std::printf("serial   : %9.2f ms (best of %d)\n", best_serial, reps);
  std::printf("parallel : %9.2f ms (best of %d)\n", best_parallel, reps);
  std::printf("speedup  : %9.2fx\n", best_serial / best_parallel);
  std::printf("outputs bit-identical: %s\n", identical ? "yes" : "NO");
  return identical ? 0 : 1;
}
