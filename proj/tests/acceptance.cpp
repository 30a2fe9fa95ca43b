// Acceptance suite: one pass/fail line per criterion, nonzero exit on failure.

#include <chrono>
#include <cstdio>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "lathom/experiments.hpp"

using namespace lathom;

namespace {

int g_failures = 0;

struct Criterion {
  std::string name;
  bool pass = true;
  std::ostringstream detail;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double budget_s;

  Criterion(std::string n, double budget) : name(std::move(n)), budget_s(budget) {}

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
  template <typename T>
  Criterion& note(const std::string& key, T value) {
    detail << ' ' << key << '=' << value;
    return *this;
  }

  void finish() {
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > budget_s) {
      pass = false;
      detail << " [failed: runtime budget " << budget_s << " s exceeded]";
    }
    std::printf("[%s] %s:%s (%.1f s)\n", pass ? "PASS" : "FAIL", name.c_str(),
                detail.str().c_str(), secs);
    std::fflush(stdout);
    if (!pass) ++g_failures;
  }
};

IMat random_regular(std::mt19937& rng, int d, std::int64_t max_abs_det, std::int64_t entry_range) {
  std::uniform_int_distribution<std::int64_t> dist(-entry_range, entry_range);
  for (;;) {
    IMat m(d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) m(i, j) = dist(rng);
    const std::int64_t dt = m.det();
    if (dt != 0 && std::abs(dt) <= max_abs_det) return m;
  }
}

PatternField random_field(const Pattern& p, std::mt19937& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  PatternField a(p, 1);
  for (auto& z : a.v) z = cplx(dist(rng), dist(rng));
  return a;
}

double max_abs(const std::vector<cplx>& v) {
  double m = 0;
  for (const auto& z : v) m = std::max(m, std::abs(z));
  return m;
}

HashinSpec example1() {
  HashinSpec s;
  s.c1 = 0.05;
  s.c2 = 0.35;
  s.c3 = std::numeric_limits<double>::infinity();
  s.rho_c = 0.0;
  s.rho_e = 0.09;
  s.n = Eigen::Vector3d(0.5, 1.0, 0.0).normalized();
  s.coating = {1.0, 1.0};
  s.core = {13.0 / 3.0, 1.0};  // kappa_c = 3 kappa_e, mu_c = mu_e (documented default)
  return s;
}

void criterion1_fft_correctness() {
  Criterion c("1. FFT correctness (oracle, round trip, Parseval)", 10.0);
  std::mt19937 rng(1001);
  double worst_oracle = 0, worst_rt = 0, worst_parseval = 0;
  for (int d : {2, 3}) {
    for (int t = 0; t < 20; ++t) {
      const PatternMatrix m(random_regular(rng, d, 64, d == 2 ? 12 : 5));
      const PatternTransform tr(m);
      const PatternField a = random_field(tr.pattern(), rng);
      const double scale = max_abs(a.v);

      const SpectralField fast = tr.forward(a);
      const SpectralField dense = dft_matrix_apply(tr.pattern(), tr.generating_set(), a);
      for (size_t i = 0; i < fast.v.size(); ++i)
        worst_oracle = std::max(worst_oracle, std::abs(fast.v[i] - dense.v[i]) / scale);

      const PatternField back = tr.inverse(fast);
      for (size_t i = 0; i < back.v.size(); ++i)
        worst_rt = std::max(worst_rt, std::abs(back.v[i] - a.v[i]) / scale);

      double lhs = 0, rhs = 0;
      for (const auto& z : a.v) lhs += std::norm(z);
      lhs /= static_cast<double>(a.size());
      for (const auto& z : fast.v) rhs += std::norm(z);
      worst_parseval = std::max(worst_parseval, std::abs(lhs - rhs) / lhs);
    }
  }
  c.note("max_oracle_err", worst_oracle).note("max_roundtrip_err", worst_rt);
  c.note("max_parseval_err", worst_parseval);
  c.require(worst_oracle <= 1e-10, "fft vs dense DFT above 1e-10");
  c.require(worst_rt <= 1e-10, "round trip above 1e-10");
  c.require(worst_parseval <= 1e-10, "Parseval above 1e-10");
  c.finish();
}

void criterion2_rank1_reduction() {
  Criterion c("2. rank-1 reduction to a single 1-D FFT", 10.0);
  const PatternTransform tr(PatternMatrix{{8, -1}, {0, 8}});
  c.require(tr.pattern().pattern_dim() == 1, "pattern dimension is not 1");
  c.require(tr.shape() == std::vector<size_t>{64}, "transform shape is not a single length-64 axis");

  std::mt19937 rng(1002);
  const PatternField a = random_field(tr.pattern(), rng);
  const SpectralField fast = tr.forward(a);
  // independent one-dimensional DFT over the lambda index
  double worst = 0;
  for (std::int64_t kappa = 0; kappa < 64; ++kappa) {
    cplx acc(0, 0);
    for (std::int64_t lambda = 0; lambda < 64; ++lambda) {
      const double phi = -2.0 * std::numbers::pi * static_cast<double>((kappa * lambda) % 64) / 64.0;
      acc += a.at(0, lambda) * cplx(std::cos(phi), std::sin(phi));
    }
    worst = std::max(worst, std::abs(fast.at(0, kappa) - acc / 64.0));
  }
  c.note("max_err_vs_1d_dft", worst);
  c.require(worst <= 1e-12, "pattern FFT differs from the 1-D DFT beyond 1e-12");
  c.finish();
}

void criterion3_aliasing() {
  Criterion c("3. aliasing of out-of-band trigonometric polynomials", 30.0);
  std::mt19937 rng(1003);
  std::uniform_int_distribution<std::int64_t> freq(-40, 40);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  const std::vector<PatternMatrix> mats = {PatternMatrix{{8, -1}, {0, 8}},
                                           PatternMatrix{{8, 0}, {0, 4}}};
  double worst = 0;
  for (int t = 0; t < 50; ++t) {
    const PatternTransform tr(mats[static_cast<size_t>(t % 2)]);
    std::map<FreqKey, cplx> coeffs;
    for (int n = 0; n < 6; ++n)
      coeffs[{freq(rng), freq(rng), 0}] += cplx(amp(rng), amp(rng));
    double scale = 0;
    for (const auto& [k, v] : coeffs) scale = std::max(scale, std::abs(v));

    const PatternField a = sample_function(tr.pattern(), [&](const RatVec& y) {
      cplx acc(0, 0);
      for (const auto& [k, v] : coeffs) {
        const double phi =
            2.0 * std::numbers::pi * (k[0] * y[0].to_double() + k[1] * y[1].to_double());
        acc += v * cplx(std::cos(phi), std::sin(phi));
      }
      return acc;
    });
    const SpectralField got = tr.forward(a);
    const SpectralField want = aliasing_check(tr, coeffs);
    for (size_t i = 0; i < got.v.size(); ++i)
      worst = std::max(worst, std::abs(got.v[i] - want.v[i]) / scale);
  }
  c.note("max_fold_err", worst);
  c.require(worst <= 1e-10, "folded coefficients differ beyond 1e-10");
  c.finish();
}

void criterion4_solver_sanity() {
  Criterion c("4. solver sanity (homogeneous one-step, pinned mean)", 60.0);
  const Pattern p = Pattern::build(PatternMatrix{{16, 0}, {0, 16}});
  MaterialField m;
  m.pattern = &p;
  m.d = 2;
  m.phases = {{isotropic_stiffness({2.0, 1.5}, 2), IsotropicMaterial{2.0, 1.5}}};
  m.phase.assign(static_cast<size_t>(p.size()), 0);
  SymTensor2 e0(2);
  e0[0] = 1.0;
  e0[2] = -0.5;

  const SolveResult hom = basic_scheme(m, e0, ReferenceMedium::isotropic({1.0, 1.0}, 2), {});
  c.note("homogeneous_iterations", hom.iterations);
  c.require(hom.converged && hom.iterations == 1, "homogeneous material took more than 1 iteration");
  double worst = 0;
  for (std::int64_t i = 0; i < p.size(); ++i) worst = std::max(worst, (hom.strain_at(i) - e0).norm());
  c.note("homogeneous_strain_err", worst);
  c.require(worst <= 1e-12, "homogeneous strain differs from e0 beyond 1e-12");

  double drift = hom.mean_drift;
  {
    LaminateSpec lam = subsampling_laminate();
    const Pattern pl = Pattern::build(PatternMatrix{{64, 0}, {0, 64}});
    const MaterialField ml = sample_material(pl, lam);
    const SolveResult r = basic_scheme(ml, e0, choose_reference(ml), {1e-9, 20000});
    drift = std::max(drift, r.mean_drift);
    c.require(r.converged, "laminate run did not converge");
  }
  {
    const HashinSpec hs = example1();
    const PatternMatrix pm{{64, 0, 0}, {4, 8, 0}, {0, 0, 1}};
    const Pattern ph = Pattern::build(pm);
    const MaterialField mh = sample_material(ph, hs);
    const SolveResult r =
        basic_scheme(mh, hashin_macroscopic_strain(hs), choose_reference(mh), {1e-9, 20000});
    drift = std::max(drift, r.mean_drift);
    c.require(r.converged, "coated-ellipsoid run did not converge");
  }
  c.note("max_mean_drift", drift);
  c.require(drift <= 1e-12, "mean strain drifted from e0 beyond 1e-12");
  c.finish();
}

void criterion5_laminate_oracle() {
  Criterion c("5. laminate oracle equivalence on diag(256,1)", 30.0);
  LaminateSpec s;
  s.g = {1, 0, 0};
  s.f1 = 0.5;
  s.mat1 = {1.0, 1.0};
  s.mat2 = {10.0, 10.0};
  s.d = 2;

  const PatternTransform tr(PatternMatrix{{256, 0}, {0, 1}});
  const MaterialField mat = sample_material(tr.pattern(), s);

  const EffectiveTensorResult eff = effective_tensor(mat, choose_reference(mat), {1e-10, 20000});
  const Tensor4Sym ana = laminate_effective(s);
  const double rel_eff = (eff.tensor.mandel() - ana.mandel()).norm() / ana.mandel().norm();
  c.note("effective_rel_err", rel_eff);
  c.require(eff.converged, "effective tensor assembly did not converge");
  c.require(rel_eff <= 1e-3, "effective tensor differs beyond 1e-3");

  SymTensor2 e0(2);
  e0[0] = 1.0;
  e0[2] = 0.3;
  const SolveResult r = basic_scheme(mat, e0, choose_reference(mat), {1e-10, 20000}, &tr);
  const auto [e1, e2] = laminate_strains(s, e0);
  double worst = 0;
  for (std::int64_t i = 0; i < tr.pattern().size(); ++i) {
    const Rat t0 = tr.pattern().point(i)[0];
    std::int64_t num = t0.num % t0.den;
    if (num < 0) num += t0.den;
    if (num == 0 || 2 * num == t0.den) continue;  // the two interface samples
    const SymTensor2& want = (2 * num < t0.den) ? e1 : e2;
    worst = std::max(worst, (r.strain_at(i) - want).norm() / want.norm());
  }
  c.note("strain_rel_err_off_interface", worst);
  c.require(worst <= 1e-4, "per-phase strains differ beyond 1e-4 away from interfaces");

  const double sigma = 2.0 * std::max(max_eigenvalue(isotropic_stiffness(s.mat1, 2)),
                                      max_eigenvalue(isotropic_stiffness(s.mat2, 2)));
  const Tensor4Sym a2 = laminate_effective(s, sigma);
  const Tensor4Sym a4 = laminate_effective(s, 2.0 * sigma);
  const double sigma_dev = (a2.mandel() - a4.mandel()).norm() / a2.mandel().norm();
  c.note("sigma0_invariance", sigma_dev);
  c.require(sigma_dev <= 1e-10, "analytic effective tensor depends on sigma0 beyond 1e-10");
  c.finish();
}

void criterion6_subsampling() {
  Criterion c("6. subsampling study M_a/M_b/M_c", 120.0);
  const auto reps = subsampling_suite({1e-9, 20000});
  const ErrorReport &a = reps[0], &b = reps[1], &cc = reps[2];
  for (const auto& r : reps) c.require(r.converged, "a study case did not converge");
  c.note("iters(a,b,c)", std::to_string(a.iterations) + "/" + std::to_string(b.iterations) + "/" +
                             std::to_string(cc.iterations));
  {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << a.e_l2 << "/" << b.e_l2 << "/" << cc.e_l2;
    c.note("e_l2(a,b,c)", os.str());
  }
  {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << a.e_eff << "/" << b.e_eff << "/" << cc.e_eff;
    c.note("e_eff(a,b,c)", os.str());
  }
  c.require(b.iterations * 5 <= a.iterations, "iterations(M_b) > iterations(M_a)/5");
  c.require(b.e_l2 < a.e_l2 && a.e_l2 < cc.e_l2, "e_l2 ordering b < a < c violated");
  c.require(b.e_eff < cc.e_eff, "e_eff ordering b < c violated");

  // order-of-magnitude reference against the reported values (unstated
  // moduli there); quantities within a factor of 3 pass-with-note
  const auto factor3 = [](double ours, double ref) {
    return ours > ref / 3.0 && ours < ref * 3.0;
  };
  std::string notes;
  if (factor3(a.e_l2, 0.109)) notes += " e_l2(a)~ref";
  if (factor3(b.e_l2, 0.0348)) notes += " e_l2(b)~ref";
  if (factor3(cc.e_l2, 0.2909)) notes += " e_l2(c)~ref";
  if (factor3(a.iterations, 94)) notes += " iters(a)~ref";
  if (factor3(b.iterations, 9)) notes += " iters(b)~ref";
  if (factor3(cc.iterations, 89)) notes += " iters(c)~ref";
  if (factor3(a.e_eff, 0.0042)) notes += " e_eff(a)~ref";
  if (factor3(b.e_eff, 0.0134)) notes += " e_eff(b)~ref";
  if (factor3(cc.e_eff, 0.0495)) notes += " e_eff(c)~ref";
  c.note("pass_with_note", notes.empty() ? "(none)" : notes);
  c.finish();
}

void criterion7_hashin_analytic() {
  Criterion c("7. coated-ellipsoid analytic field properties", 30.0);
  const HashinSpec s = example1();
  const SymTensor2 e0 = hashin_macroscopic_strain(s);

  double matrix_dev = 0;
  for (const Eigen::Vector3d& x : {Eigen::Vector3d(0.49, 0.49, 0), Eigen::Vector3d(-0.48, 0.1, 0),
                                   Eigen::Vector3d(0.2, -0.45, 0)}) {
    if (hashin_classify(x, s) != HashinRegion::Matrix) continue;
    matrix_dev = std::max(matrix_dev, (hashin_strain(x, s) - e0).norm());
  }
  c.note("matrix_region_dev", matrix_dev);
  c.require(matrix_dev == 0.0, "matrix-region strain is not exactly e0");

  const Eigen::Matrix3d r = rotation_from_axis(s.n);
  const SymTensor2 core_ref = hashin_strain(Eigen::Vector3d::Zero(), s);
  double core_dev = 0;
  for (const Eigen::Vector3d& xt :
       {Eigen::Vector3d(0.01, 0.0, 0), Eigen::Vector3d(-0.02, 0.1, 0), Eigen::Vector3d(0.0, -0.2, 0)}) {
    const Eigen::Vector3d x = r * xt;
    if (hashin_classify(x, s) != HashinRegion::Core) continue;
    core_dev = std::max(core_dev, (hashin_strain(x, s) - core_ref).norm());
  }
  c.note("core_constancy_dev", core_dev);
  c.require(core_dev <= 1e-12, "core strain is not constant");

  const Pattern p = Pattern::build(PatternMatrix{{128, 0, 0}, {0, 128, 0}, {0, 0, 1}});
  const std::vector<double> field = analytic_strain_field(p, s);
  SymTensor2 avg(3);
  for (int comp = 0; comp < 6; ++comp) {
    double sum = 0;
    for (std::int64_t i = 0; i < p.size(); ++i)
      sum += field[static_cast<size_t>(comp) * static_cast<size_t>(p.size()) + static_cast<size_t>(i)];
    avg[comp] = sum / static_cast<double>(p.size());
  }
  const double avg_err = (avg - e0).norm() / e0.norm();
  c.note("pattern_average_rel_err", avg_err);
  c.require(avg_err <= 0.01, "pattern average deviates from e0 beyond 1%");

  double worst_sum = 0;
  for (double rho : {0.0, 0.04, 0.09, 0.2}) {
    const auto d = depolarization(s.c1, s.c2, s.c3, rho, EllipsoidClass::Cylinder);
    worst_sum = std::max(worst_sum, std::abs(d[0] + d[1] - 1.0));
  }
  c.note("max|d1+d2-1|", worst_sum);
  c.require(worst_sum <= 1e-9, "cylinder depolarization sum deviates from 1 beyond 1e-9");
  c.finish();
}

void criterion8_hashin_trend() {
  Criterion c("8. coated-ellipsoid solver trend (sheared vs unsheared diag)", 300.0);
  const HashinSpec s = example1();
  const PatternMatrix sheared{{64, 0, 0}, {4, 8, 0}, {0, 0, 1}};
  const PatternMatrix unsheared{{64, 0, 0}, {0, 8, 0}, {0, 0, 1}};
  const ErrorReport rs = run_case(sheared, s, {1e-9, 40000});
  const ErrorReport rd = run_case(unsheared, s, {1e-9, 40000});
  c.require(rs.converged && rd.converged, "a run did not converge");
  c.note("e_eff_sheared", rs.e_eff).note("e_eff_diag", rd.e_eff);
  c.note("e_l2_sheared", rs.e_l2).note("e_l2_diag", rd.e_l2);
  c.require(rs.e_eff < rd.e_eff,
            "e_eff(sheared) is not below e_eff(diag); the det-2^9 sheared lattice's rows align "
            "with the thin core, overcounting its volume fraction (see notes)");
  c.finish();
}

void criterion9_lattice_algebra() {
  Criterion c("9. lattice algebra (exhaustive counts, congruence, subpattern)", 20.0);
  std::int64_t checked = 0;
  bool counts_ok = true;
  for (std::int64_t a = -4; a <= 4 && counts_ok; ++a)
    for (std::int64_t b = -4; b <= 4 && counts_ok; ++b)
      for (std::int64_t cc = -4; cc <= 4 && counts_ok; ++cc)
        for (std::int64_t d = -4; d <= 4 && counts_ok; ++d) {
          const std::int64_t dt = a * d - b * cc;
          if (dt == 0 || std::abs(dt) > 16) continue;
          const PatternMatrix m{{a, b}, {cc, d}};
          const Pattern p = Pattern::build(m);
          counts_ok = counts_ok && p.size() == std::abs(dt);
          const GeneratingSet g = GeneratingSet::build(m);
          counts_ok = counts_ok && g.size() == std::abs(dt);
          ++checked;
        }
  c.note("matrices_checked", checked);
  c.require(counts_ok, "|P(M)| = |G(M^T)| = |det M| violated");

  bool congruence_ok = true;
  for (std::int64_t m1 : {2, 4, 8})
    for (std::int64_t m2 : {2, 4})
      for (std::int64_t n = -3; n <= 3; ++n)
        congruence_ok = congruence_ok && pattern_congruent(PatternMatrix{{m1, 0}, {0, m2}},
                                                           PatternMatrix{{m1, m2 * n}, {0, m2}});
  c.require(congruence_ok, "congruence of the (m1, m2 n; 0, m2) family not detected");

  const IMat j{{1, -1}, {1, 1}};
  const IMat n{{4, 4}, {-4, 4}};
  c.require(j * n == IMat({{8, 0}, {0, 8}}), "J N factorization of the reference pair broken");
  c.require(is_subpattern(PatternMatrix(n), PatternMatrix{{8, 0}, {0, 8}}),
            "quincunx subpattern relation not detected");
  c.finish();
}

}  // namespace

int main() {
  criterion1_fft_correctness();
  criterion2_rank1_reduction();
  criterion3_aliasing();
  criterion4_solver_sanity();
  criterion5_laminate_oracle();
  criterion6_subsampling();
  criterion7_hashin_analytic();
  criterion8_hashin_trend();
  criterion9_lattice_algebra();
  if (g_failures > 0) std::printf("%d criterion(s) failed\n", g_failures);
  return g_failures;
}
