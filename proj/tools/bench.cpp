// Benchmark comparing the fast pattern FFT against the dense Fourier-matrix
// oracle and the OpenMP kernels against their serial references.

#include <chrono>
#include <cstdio>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "lathom/experiments.hpp"

using namespace lathom;

namespace {

template <typename F>
double time_best_of(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best,
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void bench_fft() {
  std::printf("== pattern FFT vs dense Fourier matrix ==\n");
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const std::vector<std::pair<const char*, PatternMatrix>> cases = {
      {"rank-1 (8,-1;0,8)", PatternMatrix{{8, -1}, {0, 8}}},
      {"diag(64,64)", PatternMatrix{{64, 0}, {0, 64}}},
      {"rank-1 (64,32;0,1)", PatternMatrix{{64, 32}, {0, 1}}},
      {"sheared (256,0;16,64)", PatternMatrix{{256, 0}, {16, 64}}},
  };
  for (const auto& [name, m] : cases) {
    const PatternTransform t(m);
    PatternField a(t.pattern(), 1);
    for (auto& z : a.v) z = cplx(dist(rng), dist(rng));

    const double t_fast = time_best_of(5, [&] { (void)t.forward(a); });
    const double t_dense =
        time_best_of(m.point_count() > 4096 ? 1 : 3,
                     [&] { (void)dft_matrix_apply(t.pattern(), t.generating_set(), a); });
    std::printf("  %-24s m=%6lld  fast %.3e s   dense %.3e s   speedup %.1fx\n", name,
                static_cast<long long>(m.point_count()), t_fast, t_dense, t_dense / t_fast);
  }
}

void bench_kernels() {
  std::printf("== solver kernels: serial reference vs OpenMP ==\n");
#ifdef _OPENMP
  std::printf("  OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
  std::printf("  built without OpenMP; both paths run serially\n");
#endif
  const PatternTransform t(PatternMatrix{{128, 0}, {0, 128}});
  const Pattern& p = t.pattern();
  LaminateSpec lam = subsampling_laminate();
  const MaterialField mat = sample_material(p, lam);
  const ReferenceMedium c0 = choose_reference(mat);
  const auto table = kernels::GreenTable::build(t.generating_set(), c0);

  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const std::int64_t m = p.size();
  std::vector<double> eps(static_cast<size_t>(3 * m));
  for (auto& x : eps) x = dist(rng);
  std::vector<cplx> buf(eps.size());
  SymTensor2 e0(2);
  e0[0] = 1.0;

  const double pol_s =
      time_best_of(5, [&] { kernels::polarization_serial(mat, c0.c0, eps, 3, buf); });
  const double pol_p = time_best_of(5, [&] { kernels::polarization(mat, c0.c0, eps, 3, buf); });
  std::printf("  polarization  m=%lld: serial %.3e s   parallel %.3e s   speedup %.2fx\n",
              static_cast<long long>(m), pol_s, pol_p, pol_s / pol_p);

  const double grn_s =
      time_best_of(5, [&] { kernels::green_sweep_serial(table, e0, m, buf); });
  const double grn_p = time_best_of(5, [&] { kernels::green_sweep(table, e0, m, buf); });
  std::printf("  green sweep   m=%lld: serial %.3e s   parallel %.3e s   speedup %.2fx\n",
              static_cast<long long>(m), grn_s, grn_p, grn_s / grn_p);
}

void bench_solver() {
  std::printf("== end-to-end solve (subsampling study geometry) ==\n");
  for (const auto& [name, pm] :
       {std::pair<const char*, PatternMatrix>{"diag(64,64)", PatternMatrix{{64, 0}, {0, 64}}},
        {"rank-1 (64,32;0,1)", PatternMatrix{{64, 32}, {0, 1}}}}) {
    const auto rep = run_case(pm, subsampling_laminate(), {1e-9, 20000});
    std::printf("  %-20s m=%6lld iters=%4d wall %.3f s  (%.3e s/iter)\n", name,
                static_cast<long long>(rep.m), rep.iterations, rep.wall_time_s,
                rep.wall_time_s / rep.iterations);
  }
}

}  // namespace

int main() {
  bench_fft();
  bench_kernels();
  bench_solver();
  return 0;
}
