#include "lathom/geometry.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>

namespace lathom {

namespace {

// adaptive Simpson on [a,b] to the given absolute tolerance
template <typename F>
double simpson_rec(const F& f, double a, double b, double fa, double fm, double fb, double whole,
                   double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <typename F>
double integrate(const F& f, double a, double b, double tol) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

Eigen::MatrixXd acoustic_tensor(const Tensor4Sym& c, const Eigen::VectorXd& n) {
  const int d = c.dim();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) {
      double s = 0;
      for (int j = 0; j < d; ++j)
        for (int l = 0; l < d; ++l) s += c.entry(i, j, k, l) * n(j) * n(l);
      a(i, k) = s;
    }
  return a;
}

}  // namespace

void LaminateSpec::validate() const {
  if (d != 2 && d != 3) throw std::invalid_argument("laminate dimension must be 2 or 3");
  std::int64_t gc = 0;
  for (int i = 0; i < d; ++i) gc = std::gcd(gc, g[static_cast<size_t>(i)]);
  if (gc == 0) throw std::invalid_argument("laminate normal must be nonzero");
  if (gc != 1) throw std::invalid_argument("laminate normal entries must be coprime");
  if (!(f1 > 0.0 && f1 < 1.0)) throw std::invalid_argument("volume fraction must be in (0,1)");
}

Eigen::VectorXd LaminateSpec::unit_normal() const {
  Eigen::VectorXd n(d);
  for (int i = 0; i < d; ++i) n(i) = static_cast<double>(g[static_cast<size_t>(i)]);
  return n / n.norm();
}

int laminate_phase(const RatVec& x, const LaminateSpec& spec) {
  Rat t(0);
  for (int i = 0; i < spec.d; ++i) t = t + spec.g[static_cast<size_t>(i)] * x[i];
  std::int64_t num = t.num % t.den;
  if (num < 0) num += t.den;  // g.x mod 1 in [0,1), exactly
  return static_cast<double>(num) < spec.f1 * static_cast<double>(t.den) ? 0 : 1;
}

int laminate_phase(const Eigen::VectorXd& x, const LaminateSpec& spec) {
  double t = 0;
  for (int i = 0; i < spec.d; ++i) t += static_cast<double>(spec.g[static_cast<size_t>(i)]) * x(i);
  t -= std::floor(t);
  return t < spec.f1 ? 0 : 1;
}

Tensor4Sym laminate_effective(const LaminateSpec& spec, double sigma0) {
  spec.validate();
  const int d = spec.d;
  const Tensor4Sym c1 = isotropic_stiffness(spec.mat1, d);
  const Tensor4Sym c2 = isotropic_stiffness(spec.mat2, d);
  if (sigma0 <= 0.0) sigma0 = 2.0 * std::max(max_eigenvalue(c1), max_eigenvalue(c2));

  const Eigen::VectorXd n = spec.unit_normal();
  const Tensor4Sym t = Tensor4Sym::from_ijkl(d, [&](int i, int j, int k, int l) {
    auto kr = [](int a, int b) { return a == b ? 1.0 : 0.0; };
    return 0.5 * (n(i) * kr(j, k) * n(l) + n(i) * kr(j, l) * n(k) + n(j) * kr(i, k) * n(l) +
                  n(j) * kr(i, l) * n(k)) -
           n(i) * n(j) * n(k) * n(l);
  });

  const Tensor4Sym id = Tensor4Sym::identity(d);
  try {
    const Tensor4Sym s1 = sigma0 * invert(sigma0 * id - c1);
    const Tensor4Sym s2 = sigma0 * invert(sigma0 * id - c2);
    const Tensor4Sym h = spec.f1 * invert(s1 - t) + (1.0 - spec.f1) * invert(s2 - t);
    const Tensor4Sym s = t + invert(h);
    return sigma0 * id - sigma0 * invert(s);
  } catch (const std::invalid_argument&) {
    throw std::runtime_error("laminate effective tensor: inversion failed, increase sigma0");
  }
}

std::pair<SymTensor2, SymTensor2> laminate_strains(const LaminateSpec& spec,
                                                   const SymTensor2& e0) {
  spec.validate();
  const int d = spec.d;
  const Tensor4Sym c1 = isotropic_stiffness(spec.mat1, d);
  const Tensor4Sym c2 = isotropic_stiffness(spec.mat2, d);
  const Eigen::VectorXd n = spec.unit_normal();
  const double f1 = spec.f1, f2 = 1.0 - spec.f1;

  // strain jump e2 - e1 = sym(a x n); traction continuity gives a d x d
  // system with the volume-fraction weighted acoustic tensors
  const Eigen::MatrixXd k = f2 * acoustic_tensor(c1, n) + f1 * acoustic_tensor(c2, n);
  const SymTensor2 dce0 = contract(c1 - c2, e0);
  const Eigen::VectorXd rhs = dce0.matrix() * n;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(k);
  if (!lu.isInvertible())
    throw std::runtime_error("laminate strains: degenerate traction system");
  const Eigen::VectorXd a = lu.solve(rhs);

  const Eigen::MatrixXd jump = 0.5 * (a * n.transpose() + n * a.transpose());
  const SymTensor2 s = SymTensor2::from_matrix(jump);
  return {e0 - f2 * s, e0 + f1 * s};
}

void HashinSpec::validate() const {
  if (!(c1 >= 0.0 && c1 <= c2)) throw std::invalid_argument("semi-axes must satisfy 0 <= c1 <= c2");
  if (!is_cylinder() && c2 > c3) throw std::invalid_argument("semi-axes must satisfy c2 <= c3");
  if (!(rho_c > -c1 * c1)) throw std::invalid_argument("rho_c must exceed -c1^2");
  if (!(rho_e > rho_c)) throw std::invalid_argument("rho_e must exceed rho_c");
  const double louter = is_cylinder() ? std::sqrt(c2 * c2 + rho_e) : std::sqrt(c3 * c3 + rho_e);
  if (!(louter < 0.5))
    throw std::invalid_argument("exterior ellipsoid must fit inside the unit cell");
  if (std::abs(core.kappa() - coating.kappa()) < 1e-14)
    throw std::invalid_argument("neutral-inclusion construction undefined for kappa_c = kappa_e");
  if (std::abs(n.norm() - 1.0) > 1e-12 && n.norm() == 0.0)
    throw std::invalid_argument("orientation must be a nonzero vector");
}

EllipsoidClass classify_axes(double c1, double c2, double c3) {
  if (std::isinf(c3)) return EllipsoidClass::Cylinder;
  if (c1 == c2) return EllipsoidClass::Prolate;  // includes the sphere limit
  if (c2 == c3) return EllipsoidClass::Oblate;
  throw std::invalid_argument("axes must form a prolate or oblate spheroid or a cylinder");
}

double ellipsoidal_radius(const Eigen::Vector3d& x, double c1, double c2, double c3,
                          bool* degenerate) {
  const bool cyl = std::isinf(c3);
  const int nterms = cyl ? 2 : 3;
  const std::array<double, 3> c2s{c1 * c1, c2 * c2, cyl ? 0.0 : c3 * c3};
  if (degenerate) *degenerate = false;

  double norm2 = 0;
  for (int i = 0; i < nterms; ++i) norm2 += x(i) * x(i);
  if (norm2 == 0.0) {
    if (degenerate) *degenerate = true;
    return -c2s[0];
  }

  const auto h = [&](double rho) {
    double s = -1.0;
    for (int i = 0; i < nterms; ++i) s += x(i) * x(i) / (c2s[static_cast<size_t>(i)] + rho);
    return s;
  };
  const auto dh = [&](double rho) {
    double s = 0;
    for (int i = 0; i < nterms; ++i) {
      const double q = c2s[static_cast<size_t>(i)] + rho;
      s -= x(i) * x(i) / (q * q);
    }
    return s;
  };

  double lo = -c2s[0];
  double hi = norm2;
  if (x(0) == 0.0) {
    // on the focal plane the first term vanishes; the radius may degenerate
    if (h(lo) <= 0.0) return lo;
  }
  // expand lo slightly off the pole where h -> +inf
  double rho = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double hv = h(rho);
    if (std::abs(hv) <= 1e-13) break;
    if (hv > 0)
      lo = rho;
    else
      hi = rho;
    const double step = hv / dh(rho);
    double next = rho - step;  // Newton, safeguarded by the bracket
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    rho = next;
  }
  return rho;
}

std::array<double, 3> depolarization(double c1, double c2, double c3, double rho,
                                     EllipsoidClass klass) {
  if (classify_axes(c1, c2, c3) != klass)
    throw std::invalid_argument("ellipsoid class does not match the axes");
  const bool cyl = klass == EllipsoidClass::Cylinder;
  const int nterms = cyl ? 2 : 3;
  const std::array<double, 3> c2s{c1 * c1, c2 * c2, cyl ? 0.0 : c3 * c3};
  for (int i = 0; i < nterms; ++i)
    if (!(c2s[static_cast<size_t>(i)] + rho > 0.0))
      throw std::invalid_argument("rho must exceed -c1^2");

  const auto g = [&](double t) {
    double p = 1.0;
    for (int i = 0; i < nterms; ++i) p *= c2s[static_cast<size_t>(i)] + t;
    return p;
  };
  const double sqrt_g_rho = std::sqrt(g(rho));
  // scale of the substitution t = rho + s v/(1-v)
  const double s = c2s[static_cast<size_t>(nterms - 1)] + rho;

  std::array<double, 3> d{0, 0, 0};
  for (int i = 0; i < nterms; ++i) {
    const auto integrand = [&](double v) {
      if (v >= 1.0) return cyl ? 1.0 / s : 0.0;
      const double t = rho + s * v / (1.0 - v);
      const double jac = s / ((1.0 - v) * (1.0 - v));
      return jac / ((c2s[static_cast<size_t>(i)] + t) * std::sqrt(g(t)));
    };
    d[static_cast<size_t>(i)] = 0.5 * sqrt_g_rho * integrate(integrand, 0.0, 1.0, 1e-13);
  }
  return d;
}

std::array<double, 3> depolarization_printed(double c1, double c2, double c3, double rho,
                                             EllipsoidClass klass) {
  const auto l = [&](double c, double r) { return std::sqrt(c * c + r); };
  switch (klass) {
    case EllipsoidClass::Cylinder: {
      const double l1 = l(c1, rho), l2 = l(c2, rho);
      return {l2 / (l1 + l2), l1 / (l1 + l2), 0.0};
    }
    case EllipsoidClass::Prolate: {
      const double delta = std::sqrt(1.0 - (l(c2, rho) * l(c2, rho)) / (l(c3, rho) * l(c3, rho)));
      const double d3 = (1.0 - delta * delta) / (delta * delta) *
                        (0.5 / delta * std::log((1.0 + delta) / (1.0 - delta)));
      const double d2 = 2.0 - 2.0 * d3;
      return {d2, d2, d3};
    }
    case EllipsoidClass::Oblate: {
      const double delta = std::sqrt(1.0 - (l(c1, rho) * l(c1, rho)) / (l(c2, rho) * l(c2, rho)));
      const double d1 =
          1.0 / (delta * delta) * (1.0 - std::sqrt(1.0 - delta * delta) / delta * std::asin(delta));
      const double d2 = 2.0 - 2.0 * d1;
      return {d1, d2, d2};
    }
  }
  throw std::logic_error("unreachable");
}

Eigen::Matrix3d rotation_from_axis(Eigen::Vector3d n) {
  const double nn = n.norm();
  if (nn == 0.0) throw std::invalid_argument("zero orientation vector");
  if (std::abs(nn - 1.0) > 1e-12) {
    std::fprintf(stderr, "rotation_from_axis: normalizing non-unit direction (|n| = %.6g)\n", nn);
    n /= nn;
  }
  const double t = n(1) * n(1) + n(2) * n(2);
  if (t < 1e-14) {
    Eigen::Matrix3d r = Eigen::Matrix3d::Identity();
    if (n(0) < 0) {
      r(0, 0) = -1.0;
      r(1, 1) = -1.0;
    }
    return r;
  }
  Eigen::Matrix3d r;
  r << 1, -n(1), -n(2), n(1), 1, 0, n(2), 0, 1;
  Eigen::Matrix3d corr;
  corr << -t, 0, 0, 0, -n(1) * n(1), -n(1) * n(2), 0, -n(1) * n(2), -n(2) * n(2);
  r += (1.0 - n(0)) / t * corr;
  return r;
}

HashinRegion hashin_classify(const Eigen::Vector3d& x, const HashinSpec& spec) {
  const Eigen::Matrix3d r = rotation_from_axis(spec.n);
  const Eigen::Vector3d xt = r.transpose() * x;  // R^{-1} = R^T
  const double rho = ellipsoidal_radius(xt, spec.c1, spec.c2, spec.c3);
  if (rho <= spec.rho_c) return HashinRegion::Core;
  if (rho <= spec.rho_e) return HashinRegion::Coating;
  return HashinRegion::Matrix;
}

double hashin_g(const HashinSpec& spec, double rho) {
  double p = (spec.c1 * spec.c1 + rho) * (spec.c2 * spec.c2 + rho);
  if (!spec.is_cylinder()) p *= spec.c3 * spec.c3 + rho;
  return p;
}

double hashin_f(const HashinSpec& spec, double rho) {
  return std::sqrt(hashin_g(spec, spec.rho_c)) / std::sqrt(hashin_g(spec, rho));
}

namespace {

Eigen::Matrix3d depolarization_diag(const HashinSpec& spec, double rho) {
  const auto d =
      depolarization(spec.c1, spec.c2, spec.c3, rho, classify_axes(spec.c1, spec.c2, spec.c3));
  return Eigen::Vector3d(d[0], d[1], d[2]).asDiagonal();
}

Eigen::Matrix3d hashin_s(const HashinSpec& spec, double rho) {
  const double f = hashin_f(spec, rho);
  if (std::abs(1.0 - f) < 1e-14)
    throw std::invalid_argument("S(rho) is undefined at the core radius (f = 1)");
  return (depolarization_diag(spec, spec.rho_c) - f * depolarization_diag(spec, rho)) / (1.0 - f);
}

double hashin_core_constant(const HashinSpec& spec) {
  const double kc = spec.core.kappa(), ke = spec.coating.kappa(), me = spec.coating.mu;
  return (3.0 * ke + 4.0 * me) / (9.0 * (kc - ke));
}

}  // namespace

SymTensor2 hashin_macroscopic_strain(const HashinSpec& spec) {
  spec.validate();
  const Eigen::Matrix3d r = rotation_from_axis(spec.n);
  const double fe = hashin_f(spec, spec.rho_e);
  const Eigen::Matrix3d mid = hashin_core_constant(spec) * Eigen::Matrix3d::Identity() +
                              (1.0 - fe) * hashin_s(spec, spec.rho_e);
  return SymTensor2::from_matrix(r * mid * r.transpose());
}

SymTensor2 hashin_effective_action(const HashinSpec& spec) {
  spec.validate();
  const Eigen::Matrix3d r = rotation_from_axis(spec.n);
  const double kc = spec.core.kappa(), ke = spec.coating.kappa(), me = spec.coating.mu;
  const double fe = hashin_f(spec, spec.rho_e);
  const double spherical = ke / (kc - ke) * (kc + 4.0 / 3.0 * me) + 4.0 / 3.0 * me * fe;
  const Eigen::Matrix3d mid =
      spherical * Eigen::Matrix3d::Identity() +
      2.0 / 3.0 * me * (1.0 - fe) * (3.0 * hashin_s(spec, spec.rho_e) - Eigen::Matrix3d::Identity());
  return SymTensor2::from_matrix(r * mid * r.transpose());
}

Tensor4Sym hashin_matrix_material(const HashinSpec& spec) {
  if (spec.matrix_material) return *spec.matrix_material;
  const SymTensor2 e0 = hashin_macroscopic_strain(spec);
  const SymTensor2 action = hashin_effective_action(spec);
  const double tr = e0.trace();
  if (std::abs(tr) < 1e-14)
    throw std::invalid_argument("neutral matrix default needs a non-deviatoric loading");
  const double kappa = action.trace() / (3.0 * tr);
  const double mu = spec.coating.mu;
  return isotropic_stiffness({kappa - 2.0 / 3.0 * mu, mu}, 3);
}

SymTensor2 hashin_strain(const Eigen::Vector3d& x, const HashinSpec& spec) {
  const Eigen::Matrix3d r = rotation_from_axis(spec.n);
  const Eigen::Vector3d xt = r.transpose() * x;
  const double rho = ellipsoidal_radius(xt, spec.c1, spec.c2, spec.c3);

  if (rho <= spec.rho_c)
    return SymTensor2::from_matrix(hashin_core_constant(spec) *
                                   (r * Eigen::Matrix3d::Identity() * r.transpose()));
  if (rho > spec.rho_e) return hashin_macroscopic_strain(spec);

  const bool cyl = spec.is_cylinder();
  const int nterms = cyl ? 2 : 3;
  const std::array<double, 3> c2s{spec.c1 * spec.c1, spec.c2 * spec.c2,
                                  cyl ? 0.0 : spec.c3 * spec.c3};
  const double f = hashin_f(spec, rho);
  const double g = hashin_g(spec, rho);

  Eigen::Vector3d q = Eigen::Vector3d::Zero();
  Eigen::Vector3d grad = Eigen::Vector3d::Zero();
  double denom = 0;
  for (int i = 0; i < nterms; ++i) {
    const double ci2r = c2s[static_cast<size_t>(i)] + rho;
    denom += xt(i) * xt(i) / (ci2r * ci2r);
  }
  for (int i = 0; i < nterms; ++i) {
    const double ci2r = c2s[static_cast<size_t>(i)] + rho;
    q(i) = xt(i) / (ci2r * std::sqrt(g));
    grad(i) = 2.0 * xt(i) / ci2r / denom;
  }

  const Eigen::Matrix3d dyad = 0.5 * (q * grad.transpose() + grad * q.transpose());
  const Eigen::Matrix3d mid = hashin_core_constant(spec) * Eigen::Matrix3d::Identity() +
                              depolarization_diag(spec, spec.rho_c) -
                              f * depolarization_diag(spec, rho) +
                              0.5 * std::sqrt(hashin_g(spec, spec.rho_c)) * dyad;
  return SymTensor2::from_matrix(r * mid * r.transpose());
}

MaterialField sample_material(const Pattern& p, const LaminateSpec& spec) {
  spec.validate();
  if (p.dim() != spec.d) throw std::invalid_argument("pattern and laminate dimension mismatch");
  MaterialField m;
  m.pattern = &p;
  m.d = spec.d;
  m.phases = {{isotropic_stiffness(spec.mat1, spec.d), spec.mat1},
              {isotropic_stiffness(spec.mat2, spec.d), spec.mat2}};
  m.phase.resize(static_cast<size_t>(p.size()));
  for (std::int64_t i = 0; i < p.size(); ++i)
    m.phase[static_cast<size_t>(i)] = laminate_phase(p.point(i), spec);
  return m;
}

MaterialField sample_material(const Pattern& p, const HashinSpec& spec) {
  spec.validate();
  if (p.dim() != 3) throw std::invalid_argument("the coated ellipsoid is sampled in 3-D");
  MaterialField m;
  m.pattern = &p;
  m.d = 3;
  m.phases = {{isotropic_stiffness(spec.core, 3), spec.core},
              {isotropic_stiffness(spec.coating, 3), spec.coating},
              {hashin_matrix_material(spec), std::nullopt}};
  m.phase.resize(static_cast<size_t>(p.size()));
  for (std::int64_t i = 0; i < p.size(); ++i) {
    Eigen::Vector3d x(p.point(i)[0].to_double(), p.point(i)[1].to_double(),
                      p.point(i)[2].to_double());
    m.phase[static_cast<size_t>(i)] = static_cast<int>(hashin_classify(x, spec));
  }
  return m;
}

std::vector<double> analytic_strain_field(const Pattern& p, const LaminateSpec& spec,
                                          const SymTensor2& e0) {
  const auto [e1, e2] = laminate_strains(spec, e0);
  const int nv = e0.size();
  const std::int64_t m = p.size();
  std::vector<double> field(static_cast<size_t>(nv) * static_cast<size_t>(m));
  for (std::int64_t i = 0; i < m; ++i) {
    const SymTensor2& e = laminate_phase(p.point(i), spec) == 0 ? e1 : e2;
    for (int c = 0; c < nv; ++c)
      field[static_cast<size_t>(c) * static_cast<size_t>(m) + static_cast<size_t>(i)] = e[c];
  }
  return field;
}

std::vector<double> analytic_strain_field(const Pattern& p, const HashinSpec& spec) {
  if (p.dim() != 3) throw std::invalid_argument("the coated ellipsoid is sampled in 3-D");
  const std::int64_t m = p.size();
  std::vector<double> field(static_cast<size_t>(6) * static_cast<size_t>(m));
  for (std::int64_t i = 0; i < m; ++i) {
    Eigen::Vector3d x(p.point(i)[0].to_double(), p.point(i)[1].to_double(),
                      p.point(i)[2].to_double());
    const SymTensor2 e = hashin_strain(x, spec);
    for (int c = 0; c < 6; ++c)
      field[static_cast<size_t>(c) * static_cast<size_t>(m) + static_cast<size_t>(i)] = e[c];
  }
  return field;
}

}  // namespace lathom
