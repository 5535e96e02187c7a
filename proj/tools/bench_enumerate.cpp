// Compares the serial reference enumeration kernel against the OpenMP one on
// the heaviest bundled constraint systems plus a synthetic box.
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "zc1/report.hpp"

#ifdef ZC1_HAVE_OPENMP
#include <omp.h>
#endif

using namespace zc1;

namespace {

double now() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

struct BenchCase {
  std::string name;
  ConstraintSystem sys;
  SolutionBox box;
  long order;
};

void run_case(const BenchCase& bc) {
  double t0 = now();
  auto serial = enumerate_integer_solutions_serial(bc.sys, bc.box, bc.order);
  double t1 = now();
  auto parallel = enumerate_integer_solutions(bc.sys, bc.box, bc.order);
  double t2 = now();
  bool agree = serial.size() == parallel.size();
  for (size_t i = 0; agree && i < serial.size(); ++i) agree = serial[i] == parallel[i];
  std::uint64_t points = 1;
  for (size_t i = 0; i < bc.box.lo.size(); ++i)
    points *= static_cast<std::uint64_t>(bc.box.hi[i] - bc.box.lo[i] + 1);
  std::printf("%-28s %12llu box points  serial %8.3fs  parallel %8.3fs  x%.2f  %s\n",
              bc.name.c_str(), static_cast<unsigned long long>(points), t1 - t0, t2 - t1,
              (t2 - t1) > 0 ? (t1 - t0) / (t2 - t1) : 0.0, agree ? "agree" : "MISMATCH");
}

// A dense synthetic system: k variables in [-r, r], a handful of forms that
// keep most of the box alive so the scan cost dominates.
BenchCase synthetic(int k, long r) {
  BenchCase bc;
  bc.name = "synthetic k=" + std::to_string(k) + " r=" + std::to_string(r);
  bc.order = 2;
  for (int i = 0; i < k; ++i) bc.sys.variables.push_back("v" + std::to_string(i));
  Constraint sum;
  for (int i = 0; i < k; ++i) sum.form.coefficients["v" + std::to_string(i)] = Rational(1);
  sum.lo = Rational(0);
  sum.hi = Rational(1);
  sum.note = "sum";
  bc.sys.mu_forms.push_back(sum);
  Constraint alt;
  for (int i = 0; i < k; ++i)
    alt.form.coefficients["v" + std::to_string(i)] = Rational(i % 2 ? 1 : -1, 2);
  alt.lo = Rational(-3);
  alt.hi = Rational(3);
  alt.note = "alternating";
  bc.sys.mu_forms.push_back(alt);
  bc.box.lo.assign(k, -r);
  bc.box.hi.assign(k, r);
  return bc;
}

std::string data_dir() {
  if (const char* env = std::getenv("ZC1_DATA_DIR")) return env;
  return "data";
}

}  // namespace

int main() {
#ifdef ZC1_HAVE_OPENMP
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP not available; parallel kernel falls back to serial\n");
#endif
  run_case(synthetic(6, 14));
  run_case(synthetic(8, 6));

  // the heaviest bundled system: GL(2,5) at order 24
  try {
    GroupData s5 = GroupData::load_file(data_dir() + "/s5.json");
    GroupData gl = GroupData::load_file(data_dir() + "/gl25.json");
    Toggles t;
    t.modular_primes = {5};
    Engine engine(gl, &s5, t);
    for (long d : {2L, 3L, 4L, 6L, 8L, 12L}) engine.solve_order(d);
    auto assignments = enumerate_power_assignments(gl, engine.verdicts(), 24);
    if (!assignments.empty()) {
      // rebuild the first branch's system
      Engine qe(s5, nullptr, t);
      qe.verify_zc1();
      SolvedUnitPtr image;
      for (const auto& [n, v] : qe.verdicts())
        if (n == 6 && !v.solutions.empty()) image = v.solutions[0];
      ConstraintSystem sys = build_system(gl, 24, assignments[0], t, &s5, image);
      BenchCase bc{"gl25 order 24 (1st branch)", sys, solve_box(sys), 24};
      run_case(bc);
    }
  } catch (const error& e) {
    std::printf("bundled-data case skipped: %s\n", e.what());
  }
  return 0;
}
