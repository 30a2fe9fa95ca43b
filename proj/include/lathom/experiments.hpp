#pragma once

#include <string>
#include <variant>

#include "lathom/geometry.hpp"

namespace lathom {

using GeometryCase = std::variant<LaminateSpec, HashinSpec>;

struct ErrorReport {
  PatternMatrix matrix;
  int j = 0;
  std::int64_t k = 0;
  int alpha = 0;
  std::int64_t m = 0;
  int d_m = 0;
  int iterations = 0;
  bool converged = true;
  double e_l2 = 0;
  double e_eff = 0;
  double wall_time_s = 0;
  std::string pattern_class;  // Hermite representative; tags congruent rows
};

/// Relative discrete l2 strain error over a pattern (component-major fields).
double error_l2(const std::vector<double>& numeric, const std::vector<double>& analytic);

/// Relative error of the effective action in the Mandel norm.
double error_eff(const SymTensor2& numeric_action, const SymTensor2& analytic_action);

/// The shear family (2^j', alpha k'; (1-alpha) k', 2^(T-j'))
/// with a third unit row in 3-D.  total is the determinant exponent budget;
/// the printed family has total = 14, smaller budgets shrink the exponents
/// proportionally and rescale k with its row.
PatternMatrix shear_matrix(int j, std::int64_t k, int alpha, int total = 14, bool two_d = false);

/// The rotated grids (2^(j'-1), 2^(T-j'-1); -2^(j'-1), 2^(T-j'-1)) of
/// determinant 2^(T-1).
PatternMatrix rotated_matrix(int j, int total = 14, bool two_d = false);

/// Field-level leftovers of a case run, for dumps and image export.
struct CaseArtifacts {
  std::optional<PatternTransform> transform;
  std::vector<double> numeric_strain;
  std::vector<double> analytic_strain;
  int ncomp = 0;
};

/// Sample the geometry on P(M), run the basic scheme, and compare strain and
/// effective action against the analytic solution.  The loading defaults to
/// the geometry's natural one: the neutral strain for the coated ellipsoid,
/// unit uniaxial strain for the laminate.
ErrorReport run_case(const PatternMatrix& m, const GeometryCase& geom, const SolverConfig& cfg,
                     const std::optional<SymTensor2>& loading = std::nullopt,
                     CaseArtifacts* artifacts = nullptr);

/// Laminate defaults for the subsampling study: phases (1,1)/(10,10),
/// normal g = (2,1), f1 = 1/2.
LaminateSpec subsampling_laminate();

/// Coated-ellipsoid defaults for the sweeps: the reference cylinder geometry
/// with coating (1,1) and the core bulk modulus three times the coating's.
HashinSpec hashin_sweep_geometry();

/// The three-pattern subsampling study on M_a = diag(a,a),
/// M_b = (a, a/2; 0, 1), M_c = diag(sqrt a, sqrt a); a must be an even square.
std::vector<ErrorReport> subsampling_suite(const SolverConfig& cfg, std::int64_t a = 64);

/// Shear sweep over k in step*{-32..32} for one (j, alpha) on the coated
/// ellipsoid; step defaults to 16 at full scale and shrinks with the budget.
std::vector<ErrorReport> shear_sweep(int j, int alpha, int total, const SolverConfig& cfg);

/// The table comparison set: unsheared grid, rotated grid, and the aligned
/// sheared patterns, all on the coated ellipsoid.
std::vector<ErrorReport> hashin_table_suite(int total, const SolverConfig& cfg);

std::string report_csv_header();
std::string report_csv_row(const ErrorReport& r);

}  // namespace lathom
