#pragma once

#include <cmath>
#include <limits>
#include <optional>

#include "lathom/solver.hpp"

namespace lathom {

/// Two-phase periodic laminate with integer normal direction g; the unit
/// normal is g/|g|.  Phase 1 occupies { x : (g.x mod 1) in [0, f1) }.
struct LaminateSpec {
  std::array<std::int64_t, 3> g{1, 0, 0};
  double f1 = 0.5;
  IsotropicMaterial mat1;
  IsotropicMaterial mat2;
  int d = 2;

  void validate() const;
  Eigen::VectorXd unit_normal() const;
};

/// Phase of a unit-cell point; 0 = phase 1, 1 = phase 2.  Exact for rational
/// points, which is what keeps points on the interface classified
/// deterministically.
int laminate_phase(const RatVec& x, const LaminateSpec& spec);
int laminate_phase(const Eigen::VectorXd& x, const LaminateSpec& spec);

/// Milton's effective tensor for the laminate; sigma0 <= 0 selects the
/// default 2 * (largest stiffness eigenvalue).
Tensor4Sym laminate_effective(const LaminateSpec& spec, double sigma0 = 0.0);

/// The per-phase constant strains of the laminate under mean strain e0,
/// solving the rank-1 compatibility + traction continuity + average system.
std::pair<SymTensor2, SymTensor2> laminate_strains(const LaminateSpec& spec, const SymTensor2& e0);

/// Coated confocal ellipsoid acting neutrally under its specific macroscopic
/// strain.  All quantities are three-dimensional; elliptic cylinders use
/// c3 = infinity and are sampled with one point in the x3 direction.
struct HashinSpec {
  double c1 = 0.05;
  double c2 = 0.35;
  double c3 = std::numeric_limits<double>::infinity();
  double rho_c = 0.0;
  double rho_e = 0.09;
  Eigen::Vector3d n{1.0, 0.0, 0.0};  // direction of the shortest semi-axis
  IsotropicMaterial core;
  IsotropicMaterial coating;
  std::optional<Tensor4Sym> matrix_material;  // overrides the neutral default

  bool is_cylinder() const { return std::isinf(c3); }
  void validate() const;
};

enum class HashinRegion { Core, Coating, Matrix };

enum class EllipsoidClass { Prolate, Oblate, Cylinder };
EllipsoidClass classify_axes(double c1, double c2, double c3);

/// Largest root rho >= -c1^2 of sum_i x_i^2/(c_i^2+rho) = 1; the center maps
/// to -c1^2 (degenerate, reported through the optional flag).
double ellipsoidal_radius(const Eigen::Vector3d& x, double c1, double c2, double c3,
                          bool* degenerate = nullptr);

/// Depolarization factors by the canonical integral
/// d_i = sqrt(g(rho))/2 * int_rho^inf dt / ((c_i^2+t) sqrt(g(t))),
/// evaluated with adaptive quadrature; d3 = 0 for cylinders.
std::array<double, 3> depolarization(double c1, double c2, double c3, double rho,
                                     EllipsoidClass klass);

/// The closed forms as printed in the reference; retained as a cross-check
/// only (the cylinder case matches the integral, the spheroid cases do not
/// normalize consistently).
std::array<double, 3> depolarization_printed(double c1, double c2, double c3, double rho,
                                             EllipsoidClass klass);

/// Rotation taking (1,0,0) to the unit vector n.
Eigen::Matrix3d rotation_from_axis(Eigen::Vector3d n);

HashinRegion hashin_classify(const Eigen::Vector3d& x, const HashinSpec& spec);

/// Core volume fraction function f and the semi-axis product g.
double hashin_g(const HashinSpec& spec, double rho);
double hashin_f(const HashinSpec& spec, double rho);

/// The macroscopic strain the inclusion is neutral to.
SymTensor2 hashin_macroscopic_strain(const HashinSpec& spec);

/// C_eff : e0 for that strain (also the action of the matrix material).
SymTensor2 hashin_effective_action(const HashinSpec& spec);

/// Neutral matrix material: explicit override if configured, otherwise the
/// isotropic tensor with mu = mu_e and kappa matched to the spherical part
/// of the effective action.
Tensor4Sym hashin_matrix_material(const HashinSpec& spec);

/// Analytic strain field (constant in core and matrix, the coating formula
/// with the symmetrized dyadic term in between).
SymTensor2 hashin_strain(const Eigen::Vector3d& x, const HashinSpec& spec);

MaterialField sample_material(const Pattern& p, const LaminateSpec& spec);
MaterialField sample_material(const Pattern& p, const HashinSpec& spec);

/// Analytic strain fields sampled on a pattern, component-major like
/// SolveResult::strain.
std::vector<double> analytic_strain_field(const Pattern& p, const LaminateSpec& spec,
                                          const SymTensor2& e0);
std::vector<double> analytic_strain_field(const Pattern& p, const HashinSpec& spec);

}  // namespace lathom
