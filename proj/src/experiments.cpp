#include "lathom/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

namespace lathom {

namespace {

std::int64_t pow2(int e) {
  if (e < 0) throw std::invalid_argument("matrix family exponent must stay positive");
  return std::int64_t{1} << e;
}

int scaled_j(int j, int total) {
  const int js = static_cast<int>(std::lround(static_cast<double>(j) * total / 14.0));
  return std::clamp(js, 1, total - 1);
}

}  // namespace

double error_l2(const std::vector<double>& numeric, const std::vector<double>& analytic) {
  if (numeric.size() != analytic.size())
    throw std::invalid_argument("fields must share pattern and component count");
  double num = 0, den = 0;
  for (size_t i = 0; i < numeric.size(); ++i) {
    const double d = numeric[i] - analytic[i];
    num += d * d;
    den += analytic[i] * analytic[i];
  }
  if (den == 0.0) throw std::invalid_argument("zero-norm analytic field");
  return std::sqrt(num / den);
}

double error_eff(const SymTensor2& numeric_action, const SymTensor2& analytic_action) {
  const double den = analytic_action.norm();
  if (den == 0.0) throw std::invalid_argument("zero analytic action");
  return (numeric_action - analytic_action).norm() / den;
}

PatternMatrix shear_matrix(int j, std::int64_t k, int alpha, int total, bool two_d) {
  if (alpha != 0 && alpha != 1) throw std::invalid_argument("alpha must be 0 or 1");
  const int js = scaled_j(j, total);
  const int bs = total - js;
  // k lives in row 2 for alpha = 0 and row 1 for alpha = 1; it rescales with
  // the diagonal entry of its row
  std::int64_t ks = k;
  const int shift = alpha == 0 ? (bs - (14 - j)) : (js - j);
  if (shift >= 0)
    ks = k * pow2(shift);
  else
    ks = k / pow2(-shift);

  const std::int64_t a11 = pow2(js), a22 = pow2(bs);
  if (two_d) return PatternMatrix{{a11, alpha * ks}, {(1 - alpha) * ks, a22}};
  return PatternMatrix{{a11, alpha * ks, 0}, {(1 - alpha) * ks, a22, 0}, {0, 0, 1}};
}

PatternMatrix rotated_matrix(int j, int total, bool two_d) {
  const int js = scaled_j(j, total);
  const int bs = total - js;
  if (js < 1 || bs < 1)
    throw std::invalid_argument("rotated grid requires both exponents to be at least 1");
  const std::int64_t a = pow2(js - 1), b = pow2(bs - 1);
  if (two_d) return PatternMatrix{{a, b}, {-a, b}};
  return PatternMatrix{{a, b, 0}, {-a, b, 0}, {0, 0, 1}};
}

ErrorReport run_case(const PatternMatrix& m, const GeometryCase& geom, const SolverConfig& cfg,
                     const std::optional<SymTensor2>& loading, CaseArtifacts* artifacts) {
  const auto t0 = std::chrono::steady_clock::now();
  PatternTransform transform(m);
  const Pattern& p = transform.pattern();

  MaterialField material;
  SymTensor2 e0(p.dim());
  std::vector<double> analytic;
  SymTensor2 analytic_action(p.dim());

  if (const auto* lam = std::get_if<LaminateSpec>(&geom)) {
    material = sample_material(p, *lam);
    if (loading)
      e0 = *loading;
    else
      e0[0] = 1.0;
    analytic = analytic_strain_field(p, *lam, e0);
    analytic_action = contract(laminate_effective(*lam), e0);
  } else {
    const auto& hs = std::get<HashinSpec>(geom);
    material = sample_material(p, hs);
    e0 = hashin_macroscopic_strain(hs);
    analytic = analytic_strain_field(p, hs);
    analytic_action = hashin_effective_action(hs);
  }

  const SolveResult r = basic_scheme(material, e0, choose_reference(material), cfg, &transform);
  const auto t1 = std::chrono::steady_clock::now();

  ErrorReport rep;
  rep.matrix = m;
  rep.m = p.size();
  rep.d_m = p.pattern_dim();
  rep.iterations = r.iterations;
  rep.converged = r.converged;
  rep.e_l2 = error_l2(r.strain, analytic);
  rep.e_eff = error_eff(r.effective_action, analytic_action);
  rep.wall_time_s = std::chrono::duration<double>(t1 - t0).count();
  rep.pattern_class = format_int_matrix(hermite_representative(m).m);
  if (artifacts) {
    artifacts->numeric_strain = r.strain;
    artifacts->analytic_strain = std::move(analytic);
    artifacts->ncomp = r.ncomp;
    artifacts->transform = std::move(transform);
  }
  return rep;
}

LaminateSpec subsampling_laminate() {
  LaminateSpec s;
  s.g = {2, 1, 0};
  s.f1 = 0.5;
  s.mat1 = {1.0, 1.0};
  s.mat2 = {10.0, 10.0};
  s.d = 2;
  return s;
}

std::vector<ErrorReport> subsampling_suite(const SolverConfig& cfg, std::int64_t a) {
  if (a < 2 || a % 2 != 0) throw std::invalid_argument("subsampling expects an even grid size");
  const auto root = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(a))));
  if (root * root != a)
    throw std::invalid_argument("subsampling expects a to be a perfect square");

  const PatternMatrix ma{{a, 0}, {0, a}};
  const PatternMatrix mb{{a, a / 2}, {0, 1}};
  const PatternMatrix mc{{root, 0}, {0, root}};
  // both coarse patterns subsample the fine grid
  if (!is_subpattern(mb, ma) || !is_subpattern(mc, ma))
    throw std::logic_error("subsampling matrices lost the subpattern relation");

  const GeometryCase geom = subsampling_laminate();
  std::vector<ErrorReport> out;
  for (const auto& m : {ma, mb, mc}) out.push_back(run_case(m, geom, cfg));
  return out;
}

HashinSpec hashin_sweep_geometry() {
  HashinSpec s;
  s.c1 = 0.05;
  s.c2 = 0.35;
  s.c3 = std::numeric_limits<double>::infinity();
  s.rho_c = 0.0;
  s.rho_e = 0.09;
  s.n = Eigen::Vector3d(0.5, 1.0, 0.0).normalized();
  s.coating = {1.0, 1.0};
  s.core = {13.0 / 3.0, 1.0};  // kappa_c = 3 kappa_e
  return s;
}

namespace {

ErrorReport sweep_case(const PatternMatrix& m, int j, std::int64_t k, int alpha,
                       const SolverConfig& cfg) {
  ErrorReport rep = run_case(m, hashin_sweep_geometry(), cfg);
  rep.j = j;
  rep.k = k;
  rep.alpha = alpha;
  return rep;
}

}  // namespace

std::vector<ErrorReport> shear_sweep(int j, int alpha, int total, const SolverConfig& cfg) {
  // the family parameter k runs over 16*{-32..32}; shear_matrix rescales it
  // with its row when the exponent budget is reduced
  std::vector<ErrorReport> out;
  out.reserve(65);
  for (std::int64_t q = -32; q <= 32; ++q) {
    const std::int64_t k = 16 * q;
    out.push_back(sweep_case(shear_matrix(j, k, alpha, total), j, k, alpha, cfg));
  }
  return out;
}

std::vector<ErrorReport> hashin_table_suite(int total, const SolverConfig& cfg) {
  std::vector<ErrorReport> out;
  out.push_back(sweep_case(shear_matrix(7, 0, 0, total), 7, 0, 0, cfg));
  {
    ErrorReport r = run_case(rotated_matrix(7, total), hashin_sweep_geometry(), cfg);
    r.j = 7;
    out.push_back(r);
  }
  for (int j : {8, 9}) {
    const std::int64_t k = 16;
    out.push_back(sweep_case(shear_matrix(j, k, 0, total), j, k, 0, cfg));
    out.push_back(sweep_case(shear_matrix(j, 0, 0, total), j, 0, 0, cfg));
  }
  return out;
}

std::string report_csv_header() {
  return "matrix,j,k,alpha,m,d_M,iterations,e_l2,e_eff,wall_time_s,pattern_class";
}

std::string report_csv_row(const ErrorReport& r) {
  std::ostringstream os;
  os.precision(12);
  os << '"' << format_int_matrix(r.matrix.m) << '"' << ',' << r.j << ',' << r.k << ',' << r.alpha
     << ',' << r.m << ',' << r.d_m << ',' << r.iterations << ',' << r.e_l2 << ',' << r.e_eff << ','
     << r.wall_time_s << ',' << '"' << r.pattern_class << '"';
  return os.str();
}

}  // namespace lathom
