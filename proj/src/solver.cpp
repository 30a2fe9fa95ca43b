#include "lathom/solver.hpp"

#include <cmath>

namespace lathom {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

// Mandel slot -> (i,j) tensor pair, matching tensors.cpp
constexpr int kPairs2[3][2] = {{0, 0}, {1, 1}, {0, 1}};
constexpr int kPairs3[6][2] = {{0, 0}, {1, 1}, {2, 2}, {1, 2}, {0, 2}, {0, 1}};

inline const int (*pairs(int d))[2] { return d == 2 ? kPairs2 : kPairs3; }

}  // namespace

void MaterialField::validate() const {
  if (!pattern) throw std::invalid_argument("material field has no pattern");
  if (static_cast<std::int64_t>(phase.size()) != pattern->size())
    throw std::invalid_argument("phase index count does not match the pattern");
  if (phases.empty()) throw std::invalid_argument("empty phase table");
  for (int p : phase)
    if (p < 0 || p >= static_cast<int>(phases.size()))
      throw std::invalid_argument("phase id out of range");
  for (const auto& ph : phases)
    if (ph.stiffness.dim() != d) throw std::invalid_argument("phase stiffness dimension mismatch");
}

SymTensor2 SolveResult::strain_at(std::int64_t i) const {
  SymTensor2 t(d);
  for (int c = 0; c < ncomp; ++c)
    t[c] = strain[static_cast<size_t>(c) * static_cast<size_t>(m) + static_cast<size_t>(i)];
  return t;
}

Eigen::MatrixXd acoustic_inverse_generic(const Tensor4Sym& c0, int d,
                                         const std::array<double, 3>& h) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double s = 0;
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
          s += c0.entry(i, k, j, l) * h[static_cast<size_t>(k)] * h[static_cast<size_t>(l)];
      a(i, j) = s;
    }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  if (!lu.isInvertible()) throw std::runtime_error("singular acoustic tensor");
  return lu.inverse();
}

Eigen::MatrixXd acoustic_inverse_isotropic(const IsotropicMaterial& mat, int d,
                                           const std::array<double, 3>& h) {
  double h2 = 0;
  for (int i = 0; i < d; ++i) h2 += h[static_cast<size_t>(i)] * h[static_cast<size_t>(i)];
  if (h2 == 0.0 || mat.mu == 0.0) throw std::runtime_error("singular acoustic tensor");
  const double f = (mat.lambda + mat.mu) / (mat.lambda + 2.0 * mat.mu);
  Eigen::MatrixXd inv(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const double dir = h[static_cast<size_t>(i)] * h[static_cast<size_t>(j)] / h2;
      inv(i, j) = ((i == j ? 1.0 : 0.0) - f * dir) / (mat.mu * h2);
    }
  return inv;
}

std::array<cplx, 6> green_apply(const ReferenceMedium& c0, int d,
                                const std::array<std::int64_t, 3>& h,
                                const std::array<cplx, 6>& tau_hat) {
  std::array<double, 3> hd{static_cast<double>(h[0]), static_cast<double>(h[1]),
                           static_cast<double>(h[2])};
  const Eigen::MatrixXd ainv = c0.iso ? acoustic_inverse_isotropic(*c0.iso, d, hd)
                                      : acoustic_inverse_generic(c0.c0, d, hd);

  // tau matrix entries from Mandel components
  cplx t[3][3] = {};
  const auto* pr = pairs(d);
  const int nv = mandel_size(d);
  for (int a = 0; a < nv; ++a) {
    const int i = pr[a][0], j = pr[a][1];
    const cplx v = (a < d) ? tau_hat[static_cast<size_t>(a)] : tau_hat[static_cast<size_t>(a)] / kSqrt2;
    t[i][j] = v;
    t[j][i] = v;
  }

  cplx rhs[3] = {};
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) rhs[i] += t[i][k] * hd[static_cast<size_t>(k)];

  cplx w[3] = {};
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) w[i] += ainv(i, k) * rhs[k];

  std::array<cplx, 6> out{};
  for (int a = 0; a < nv; ++a) {
    const int i = pr[a][0], j = pr[a][1];
    if (i == j)
      out[static_cast<size_t>(a)] = -hd[static_cast<size_t>(i)] * w[i];
    else
      out[static_cast<size_t>(a)] =
          -(hd[static_cast<size_t>(i)] * w[j] + hd[static_cast<size_t>(j)] * w[i]) / kSqrt2;
  }
  return out;
}

SymTensor2 green_apply(const ReferenceMedium& c0, const std::array<std::int64_t, 3>& h,
                       const SymTensor2& tau_hat) {
  std::array<cplx, 6> tc{};
  for (int i = 0; i < tau_hat.size(); ++i) tc[static_cast<size_t>(i)] = tau_hat[i];
  const auto rc = green_apply(c0, tau_hat.dim(), h, tc);
  SymTensor2 out(tau_hat.dim());
  for (int i = 0; i < out.size(); ++i) out[i] = rc[static_cast<size_t>(i)].real();
  return out;
}

ReferenceMedium choose_reference(const MaterialField& material) {
  if (material.phases.empty()) throw std::invalid_argument("empty phase table");
  bool all_iso = true;
  for (const auto& p : material.phases) all_iso = all_iso && p.iso.has_value();

  if (all_iso) {
    double lmin = material.phases[0].iso->lambda, lmax = lmin;
    double mmin = material.phases[0].iso->mu, mmax = mmin;
    for (const auto& p : material.phases) {
      lmin = std::min(lmin, p.iso->lambda);
      lmax = std::max(lmax, p.iso->lambda);
      mmin = std::min(mmin, p.iso->mu);
      mmax = std::max(mmax, p.iso->mu);
    }
    return ReferenceMedium::isotropic({0.5 * (lmin + lmax), 0.5 * (mmin + mmax)}, material.d);
  }

  double emin = min_eigenvalue(material.phases[0].stiffness);
  double emax = max_eigenvalue(material.phases[0].stiffness);
  for (const auto& p : material.phases) {
    emin = std::min(emin, min_eigenvalue(p.stiffness));
    emax = std::max(emax, max_eigenvalue(p.stiffness));
  }
  // Mandel eigenvalues of an isotropic medium include 2 mu
  return ReferenceMedium::isotropic({0.0, 0.25 * (emin + emax)}, material.d);
}

namespace kernels {

namespace {

inline void polarization_point(const std::vector<Eigen::MatrixXd>& dc, const int* phase,
                               const double* eps, std::int64_t m, int nv, std::int64_t i,
                               cplx* tau) {
  const Eigen::MatrixXd& c = dc[static_cast<size_t>(phase[i])];
  for (int a = 0; a < nv; ++a) {
    double s = 0;
    for (int b = 0; b < nv; ++b)
      s += c(a, b) * eps[static_cast<size_t>(b) * static_cast<size_t>(m) + static_cast<size_t>(i)];
    tau[static_cast<size_t>(a) * static_cast<size_t>(m) + static_cast<size_t>(i)] = cplx(s, 0.0);
  }
}

std::vector<Eigen::MatrixXd> delta_stiffness(const MaterialField& material, const Tensor4Sym& c0) {
  std::vector<Eigen::MatrixXd> dc;
  dc.reserve(material.phases.size());
  for (const auto& p : material.phases) dc.push_back(p.stiffness.mandel() - c0.mandel());
  return dc;
}

inline void green_point(const GreenTable& g, std::int64_t m, int nv, std::int64_t i, cplx* sp) {
  const int d = g.d;
  const double* h = &g.h[static_cast<size_t>(3 * i)];
  const double* ainv = &g.ainv[static_cast<size_t>(d * d * i)];
  const auto* pr = pairs(d);

  cplx t[3][3] = {};
  for (int a = 0; a < nv; ++a) {
    const cplx v = sp[static_cast<size_t>(a) * static_cast<size_t>(m) + static_cast<size_t>(i)];
    const int pi = pr[a][0], pj = pr[a][1];
    const cplx e = (a < d) ? v : v / kSqrt2;
    t[pi][pj] = e;
    t[pj][pi] = e;
  }
  cplx rhs[3] = {}, w[3] = {};
  for (int r = 0; r < d; ++r)
    for (int k = 0; k < d; ++k) rhs[r] += t[r][k] * h[k];
  for (int r = 0; r < d; ++r)
    for (int k = 0; k < d; ++k) w[r] += ainv[r * d + k] * rhs[k];
  for (int a = 0; a < nv; ++a) {
    const int pi = pr[a][0], pj = pr[a][1];
    const cplx v = (pi == pj) ? -h[pi] * w[pi] : -(h[pi] * w[pj] + h[pj] * w[pi]) / kSqrt2;
    sp[static_cast<size_t>(a) * static_cast<size_t>(m) + static_cast<size_t>(i)] = v;
  }
}

}  // namespace

void polarization_serial(const MaterialField& material, const Tensor4Sym& c0,
                         const std::vector<double>& eps, int ncomp, std::vector<cplx>& tau) {
  const std::int64_t m = material.size();
  const auto dc = delta_stiffness(material, c0);
  for (std::int64_t i = 0; i < m; ++i)
    polarization_point(dc, material.phase.data(), eps.data(), m, ncomp, i, tau.data());
}

void polarization(const MaterialField& material, const Tensor4Sym& c0,
                  const std::vector<double>& eps, int ncomp, std::vector<cplx>& tau) {
  const std::int64_t m = material.size();
  const auto dc = delta_stiffness(material, c0);
  const int* phase = material.phase.data();
  const double* e = eps.data();
  cplx* t = tau.data();
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < m; ++i) polarization_point(dc, phase, e, m, ncomp, i, t);
}

kernels::GreenTable GreenTable::build(const GeneratingSet& gset, const ReferenceMedium& c0) {
  GreenTable g;
  const int d = gset.dim();
  g.d = d;
  const std::int64_t m = gset.size();
  g.h.resize(static_cast<size_t>(3 * m), 0.0);
  g.ainv.resize(static_cast<size_t>(d * d * m), 0.0);
  for (std::int64_t i = 1; i < m; ++i) {
    const auto& h = gset.frequency(i);
    std::array<double, 3> hd{static_cast<double>(h[0]), static_cast<double>(h[1]),
                             static_cast<double>(h[2])};
    for (int k = 0; k < 3; ++k) g.h[static_cast<size_t>(3 * i + k)] = hd[static_cast<size_t>(k)];
    const Eigen::MatrixXd ainv = c0.iso ? acoustic_inverse_isotropic(*c0.iso, d, hd)
                                        : acoustic_inverse_generic(c0.c0, d, hd);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) g.ainv[static_cast<size_t>(d * d * i + r * d + c)] = ainv(r, c);
  }
  return g;
}

void green_sweep_serial(const GreenTable& table, const SymTensor2& e0, std::int64_t m,
                        std::vector<cplx>& spectral) {
  const int nv = e0.size();
  for (std::int64_t i = 1; i < m; ++i) green_point(table, m, nv, i, spectral.data());
  for (int c = 0; c < nv; ++c)
    spectral[static_cast<size_t>(c) * static_cast<size_t>(m)] = cplx(e0[c], 0.0);
}

void green_sweep(const GreenTable& table, const SymTensor2& e0, std::int64_t m,
                 std::vector<cplx>& spectral) {
  const int nv = e0.size();
  cplx* sp = spectral.data();
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 1; i < m; ++i) green_point(table, m, nv, i, sp);
  for (int c = 0; c < nv; ++c)
    spectral[static_cast<size_t>(c) * static_cast<size_t>(m)] = cplx(e0[c], 0.0);
}

}  // namespace kernels

SolveResult basic_scheme(const MaterialField& material, const SymTensor2& e0,
                         const ReferenceMedium& c0, const SolverConfig& cfg,
                         const PatternTransform* transform) {
  material.validate();
  if (e0.dim() != material.d) throw std::invalid_argument("loading dimension mismatch");
  if (cfg.tolerance <= 0) throw std::invalid_argument("tolerance must be positive");

  std::optional<PatternTransform> local;
  if (!transform) {
    local.emplace(material.pattern->matrix());
    transform = &*local;
  }

  const std::int64_t m = material.size();
  const int nv = e0.size();
  const size_t total = static_cast<size_t>(nv) * static_cast<size_t>(m);

  SolveResult res;
  res.d = material.d;
  res.ncomp = nv;
  res.m = m;
  res.strain.resize(total);
  for (int c = 0; c < nv; ++c)
    for (std::int64_t i = 0; i < m; ++i)
      res.strain[static_cast<size_t>(c) * static_cast<size_t>(m) + static_cast<size_t>(i)] = e0[c];

  const double denom = (cfg.denominator == SolverConfig::Denominator::Field)
                           ? e0.norm() * std::sqrt(static_cast<double>(m))
                           : e0.norm();
  if (denom == 0.0) throw std::invalid_argument("zero loading gives an empty Cauchy criterion");

  const auto table = kernels::GreenTable::build(transform->generating_set(), c0);
  std::vector<cplx> work(total);

  for (int iter = 1; iter <= cfg.max_iterations; ++iter) {
    kernels::polarization(material, c0.c0, res.strain, nv, work);
    transform->forward_inplace(work.data(), nv);
    kernels::green_sweep(table, e0, m, work);
    transform->inverse_inplace(work.data(), nv);

    double diff2 = 0, max_im = 0, norm2 = 0;
    for (size_t k = 0; k < total; ++k) {
      const double re = work[k].real();
      const double dd = re - res.strain[k];
      diff2 += dd * dd;
      norm2 += re * re;
      max_im = std::max(max_im, std::abs(work[k].imag()));
      res.strain[k] = re;
    }
    if (norm2 > 0) res.imag_residue = std::max(res.imag_residue, max_im / std::sqrt(norm2));

    for (int c = 0; c < nv; ++c) {
      double mean = 0;
      for (std::int64_t i = 0; i < m; ++i)
        mean += res.strain[static_cast<size_t>(c) * static_cast<size_t>(m) + static_cast<size_t>(i)];
      mean /= static_cast<double>(m);
      res.mean_drift = std::max(res.mean_drift, std::abs(mean - e0[c]));
    }

    const double residual = std::sqrt(diff2) / denom;
    res.residuals.push_back(residual);
    res.iterations = iter;
    if (residual <= cfg.tolerance) {
      res.converged = true;
      break;
    }
  }

  res.effective_action = effective_action(res.strain, nv, material);
  return res;
}

SymTensor2 effective_action(const std::vector<double>& strain, int ncomp,
                            const MaterialField& material) {
  const std::int64_t m = material.size();
  SymTensor2 acc(material.d);
  // accumulate per phase first; the stress average then groups into
  // volume-fraction weighted phase averages exactly
  const size_t nph = material.phases.size();
  std::vector<Eigen::VectorXd> sums(nph, Eigen::VectorXd::Zero(ncomp));
  for (std::int64_t i = 0; i < m; ++i) {
    Eigen::VectorXd& s = sums[static_cast<size_t>(material.phase[static_cast<size_t>(i)])];
    for (int c = 0; c < ncomp; ++c)
      s(c) += strain[static_cast<size_t>(c) * static_cast<size_t>(m) + static_cast<size_t>(i)];
  }
  Eigen::VectorXd total = Eigen::VectorXd::Zero(ncomp);
  for (size_t p = 0; p < nph; ++p) total += material.phases[p].stiffness.mandel() * sums[p];
  for (int c = 0; c < ncomp; ++c) acc[c] = total(c) / static_cast<double>(m);
  return acc;
}

SymTensor2 effective_action(const SolveResult& result, const MaterialField& material) {
  return effective_action(result.strain, result.ncomp, material);
}

EffectiveTensorResult effective_tensor(const MaterialField& material, const ReferenceMedium& c0,
                                       const SolverConfig& cfg) {
  material.validate();
  const int nv = mandel_size(material.d);
  const PatternTransform transform(material.pattern->matrix());

  EffectiveTensorResult out;
  Eigen::MatrixXd c(nv, nv);
  for (int b = 0; b < nv; ++b) {
    SymTensor2 e0(material.d);
    e0[b] = 1.0;
    const SolveResult r = basic_scheme(material, e0, c0, cfg, &transform);
    out.converged = out.converged && r.converged;
    out.max_iterations_used = std::max(out.max_iterations_used, r.iterations);
    for (int a = 0; a < nv; ++a) c(a, b) = r.effective_action[a];
  }
  out.raw_asymmetry = (c - c.transpose()).norm() / std::max(c.norm(), 1e-300);
  out.tensor = Tensor4Sym(material.d, 0.5 * (c + c.transpose()));
  return out;
}

}  // namespace lathom
