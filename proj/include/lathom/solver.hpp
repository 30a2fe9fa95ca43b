#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "lathom/pattern_fft.hpp"
#include "lathom/tensors.hpp"

namespace lathom {

/// Stiffness distribution sampled at the pattern points: a phase id per
/// point plus a phase table.
struct MaterialField {
  const Pattern* pattern = nullptr;
  int d = 0;
  std::vector<int> phase;  // one id per point, pattern order

  struct Phase {
    Tensor4Sym stiffness;
    std::optional<IsotropicMaterial> iso;
  };
  std::vector<Phase> phases;

  std::int64_t size() const { return pattern ? pattern->size() : 0; }
  void validate() const;
};

/// Constant reference stiffness C0 of the Lippmann-Schwinger split.
struct ReferenceMedium {
  Tensor4Sym c0;
  std::optional<IsotropicMaterial> iso;

  static ReferenceMedium isotropic(const IsotropicMaterial& m, int d) {
    return ReferenceMedium{isotropic_stiffness(m, d), m};
  }
};

struct SolverConfig {
  double tolerance = 1e-9;
  int max_iterations = 10000;
  /// Denominator of the Cauchy criterion: the l2 norm of the initial field
  /// (default) or of the loading tensor alone (differs by sqrt(m)).
  enum class Denominator { Field, Point };
  Denominator denominator = Denominator::Field;
};

struct SolveResult {
  int d = 0;
  int ncomp = 0;
  std::int64_t m = 0;
  /// Converged strain, Mandel components, component-major: strain[c*m + i].
  std::vector<double> strain;
  int iterations = 0;
  bool converged = false;
  std::vector<double> residuals;
  SymTensor2 effective_action;
  /// max over iterations of |mean(strain) - e0| (mean pinning check)
  double mean_drift = 0;
  /// max imaginary residue discarded by the real-part projection, relative
  double imag_residue = 0;

  SymTensor2 strain_at(std::int64_t i) const;
};

/// Green operator action for one nonzero frequency:
/// eps_hat = -sym(h w^T) with A(h) w = tau_hat . h and A the acoustic tensor
/// of the reference medium.  Components are Mandel, complex.
std::array<cplx, 6> green_apply(const ReferenceMedium& c0, int d,
                                const std::array<std::int64_t, 3>& h,
                                const std::array<cplx, 6>& tau_hat);

/// Real-valued convenience overload.
SymTensor2 green_apply(const ReferenceMedium& c0, const std::array<std::int64_t, 3>& h,
                       const SymTensor2& tau_hat);

/// Acoustic tensor inverse, generic path (full tensor contraction).
Eigen::MatrixXd acoustic_inverse_generic(const Tensor4Sym& c0, int d,
                                         const std::array<double, 3>& h);
/// Acoustic tensor inverse, isotropic rank-one-update closed form.
Eigen::MatrixXd acoustic_inverse_isotropic(const IsotropicMaterial& mat, int d,
                                           const std::array<double, 3>& h);

/// Midpoint reference medium: isotropic midpoint Lame parameters when all
/// phases are isotropic, otherwise mu0 from the extreme Mandel eigenvalues.
ReferenceMedium choose_reference(const MaterialField& material);

/// The fixed-point Basic Scheme on the pattern.  A prebuilt transform for the
/// same matrix may be passed to share setup between loadings.
SolveResult basic_scheme(const MaterialField& material, const SymTensor2& e0,
                         const ReferenceMedium& c0, const SolverConfig& cfg,
                         const PatternTransform* transform = nullptr);

/// Volume average of the stress (1/m) sum_y C_y : eps_y.
SymTensor2 effective_action(const std::vector<double>& strain, int ncomp,
                            const MaterialField& material);
SymTensor2 effective_action(const SolveResult& result, const MaterialField& material);

struct EffectiveTensorResult {
  Tensor4Sym tensor;
  double raw_asymmetry = 0;  // relative, before symmetrization
  bool converged = true;
  int max_iterations_used = 0;
};

/// Assemble C_eff column-by-column from Mandel unit loadings.
EffectiveTensorResult effective_tensor(const MaterialField& material, const ReferenceMedium& c0,
                                       const SolverConfig& cfg);

/// Data-parallel kernels with serial reference implementations; the solver
/// calls the parallel versions, the tests and the benchmark compare both.
namespace kernels {

/// tau[c*m+i] = sum_b (C_{phase(i)} - C0)(c,b) * eps[b*m+i], written into a
/// complex buffer with zero imaginary parts.
void polarization_serial(const MaterialField& material, const Tensor4Sym& c0,
                         const std::vector<double>& eps, int ncomp, std::vector<cplx>& tau);
void polarization(const MaterialField& material, const Tensor4Sym& c0,
                  const std::vector<double>& eps, int ncomp, std::vector<cplx>& tau);

/// Per-frequency Green application for h != 0, in place on the spectral
/// buffer; the zero frequency is pinned to e0.
struct GreenTable {
  int d = 0;
  std::vector<double> h;     // 3 per frequency
  std::vector<double> ainv;  // d*d per frequency, row-major; identity at h=0
  static GreenTable build(const GeneratingSet& gset, const ReferenceMedium& c0);
};
void green_sweep_serial(const GreenTable& table, const SymTensor2& e0, std::int64_t m,
                        std::vector<cplx>& spectral);
void green_sweep(const GreenTable& table, const SymTensor2& e0, std::int64_t m,
                 std::vector<cplx>& spectral);

}  // namespace kernels

}  // namespace lathom
