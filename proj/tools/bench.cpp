// Compares the OpenMP kernels against their serial reference twins and
// verifies that both produce identical results.

#include <omp.h>

#include <cstdio>
#include <string>

#include "covdyn/oracle.hpp"
#include "covdyn/rbn.hpp"
#include "covdyn/system.hpp"

namespace {

using namespace covdyn;

struct Timing {
  double serial_s = 0;
  double parallel_s = 0;
  bool equal = false;
};

void report(const std::string& name, const Timing& t) {
  std::printf("%-34s serial %8.3f ms   parallel %8.3f ms   speedup %5.2fx   %s\n",
              name.c_str(), t.serial_s * 1e3, t.parallel_s * 1e3,
              t.parallel_s > 0 ? t.serial_s / t.parallel_s : 0.0,
              t.equal ? "results match" : "RESULTS DIFFER");
}

Timing bench_expand(std::uint32_t genes, std::uint64_t seed) {
  const BooleanNetwork net = random_network(genes, 4, seed);
  Timing t;
  double t0 = omp_get_wtime();
  const DynamicalSystem serial = expand_serial(net);
  t.serial_s = omp_get_wtime() - t0;
  t0 = omp_get_wtime();
  const DynamicalSystem parallel = expand(net);
  t.parallel_s = omp_get_wtime() - t0;
  t.equal = serial.successor == parallel.successor;
  return t;
}

Timing bench_covariant_maps(const DynamicalSystem& sys) {
  Timing t;
  double t0 = omp_get_wtime();
  const auto serial = enumerate_covariant_serial(sys, sys, 100'000'000);
  t.serial_s = omp_get_wtime() - t0;
  t0 = omp_get_wtime();
  const auto parallel = enumerate_covariant(sys, sys, 100'000'000);
  t.parallel_s = omp_get_wtime() - t0;
  t.equal = serial.size() == parallel.size();
  for (std::size_t k = 0; t.equal && k < serial.size(); ++k) {
    t.equal = serial[k].table == parallel[k].table;
  }
  return t;
}

Timing bench_reachability(const DynamicalSystem& sys) {
  Timing t;
  double t0 = omp_get_wtime();
  const auto serial = oracle_convertible_table_serial(sys, 100'000'000);
  t.serial_s = omp_get_wtime() - t0;
  t0 = omp_get_wtime();
  const auto parallel = oracle_convertible_table(sys, 100'000'000);
  t.parallel_s = omp_get_wtime() - t0;
  t.equal = serial == parallel;
  return t;
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());

  report("rbn expand, N=16", bench_expand(16, 11));
  report("rbn expand, N=18", bench_expand(18, 12));

  // 8-state system with mixed cycle structure: 8^8 = 16.7M tables.
  const DynamicalSystem sys8 =
      build_system({1, 2, 3, 0, 5, 4, 6, 0});
  report("covariant map filter, M=8", bench_covariant_maps(sys8));
  report("covariant reachability, M=7",
         bench_reachability(build_system({1, 2, 0, 4, 3, 5, 2})));
  return 0;
}
