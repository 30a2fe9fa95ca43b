#pragma once

#include <Eigen/Dense>
#include <array>
#include <stdexcept>

namespace lathom {

/// Number of Mandel components of a symmetric tensor in dimension d.
constexpr int mandel_size(int d) { return d * (d + 1) / 2; }

/// Symmetric second-order tensor in the orthonormal Mandel flattening.
/// Component order: (11, 22, sqrt2*12) in 2-D and
/// (11, 22, 33, sqrt2*23, sqrt2*13, sqrt2*12) in 3-D, so that the Euclidean
/// inner product of component vectors equals the full double contraction.
class SymTensor2 {
 public:
  SymTensor2() = default;
  explicit SymTensor2(int d) : d_(d), c_{} { check_dim(d); }
  SymTensor2(int d, const std::array<double, 6>& mandel) : d_(d), c_(mandel) { check_dim(d); }

  static SymTensor2 zero(int d) { return SymTensor2(d); }
  static SymTensor2 identity(int d) {
    SymTensor2 t(d);
    for (int i = 0; i < d; ++i) t.c_[static_cast<size_t>(i)] = 1.0;
    return t;
  }
  /// From a (not necessarily exactly symmetric) matrix; symmetrizes.
  static SymTensor2 from_matrix(const Eigen::MatrixXd& m);

  int dim() const { return d_; }
  int size() const { return mandel_size(d_); }
  double& operator[](int i) { return c_[static_cast<size_t>(i)]; }
  double operator[](int i) const { return c_[static_cast<size_t>(i)]; }

  Eigen::VectorXd vector() const;
  Eigen::MatrixXd matrix() const;

  /// Tensor entry (i,j) of the symmetric matrix.
  double entry(int i, int j) const;

  double trace() const {
    double t = 0;
    for (int i = 0; i < d_; ++i) t += c_[static_cast<size_t>(i)];
    return t;
  }
  /// Frobenius norm of the tensor = Euclidean norm of the Mandel vector.
  double norm() const;
  double dot(const SymTensor2& o) const;

  friend SymTensor2 operator+(const SymTensor2& a, const SymTensor2& b);
  friend SymTensor2 operator-(const SymTensor2& a, const SymTensor2& b);
  friend SymTensor2 operator*(double s, const SymTensor2& a);

 private:
  static void check_dim(int d) {
    if (d != 2 && d != 3) throw std::invalid_argument("tensor dimension must be 2 or 3");
  }
  int d_ = 0;
  std::array<double, 6> c_{};
};

/// Fourth-order tensor with minor and major symmetries as a symmetric
/// Mandel matrix.
class Tensor4Sym {
 public:
  Tensor4Sym() = default;
  explicit Tensor4Sym(int d) : d_(d), m_(Eigen::MatrixXd::Zero(mandel_size(d), mandel_size(d))) {}
  Tensor4Sym(int d, Eigen::MatrixXd m) : d_(d), m_(std::move(m)) {
    if (m_.rows() != mandel_size(d) || m_.cols() != mandel_size(d))
      throw std::invalid_argument("Mandel matrix has wrong size");
  }

  static Tensor4Sym identity(int d) {
    return Tensor4Sym(d, Eigen::MatrixXd::Identity(mandel_size(d), mandel_size(d)));
  }
  /// Build from an index expression C_{ijkl}; minor symmetry is assumed, the
  /// result is symmetrized to enforce major symmetry exactly.
  template <typename F>
  static Tensor4Sym from_ijkl(int d, F&& c);

  int dim() const { return d_; }
  const Eigen::MatrixXd& mandel() const { return m_; }
  Eigen::MatrixXd& mandel() { return m_; }

  /// Tensor entry C_{ijkl} recovered from the Mandel matrix.
  double entry(int i, int j, int k, int l) const;

  double norm() const { return m_.norm(); }

  friend Tensor4Sym operator+(const Tensor4Sym& a, const Tensor4Sym& b) {
    return Tensor4Sym(a.d_, a.m_ + b.m_);
  }
  friend Tensor4Sym operator-(const Tensor4Sym& a, const Tensor4Sym& b) {
    return Tensor4Sym(a.d_, a.m_ - b.m_);
  }
  friend Tensor4Sym operator*(double s, const Tensor4Sym& a) { return Tensor4Sym(a.d_, s * a.m_); }

 private:
  int d_ = 0;
  Eigen::MatrixXd m_;
};

/// Isotropic material with Lame parameters; kappa uses the 3-D convention
/// kappa = lambda + 2/3 mu throughout.
struct IsotropicMaterial {
  double lambda = 0;
  double mu = 0;

  double kappa() const { return lambda + 2.0 / 3.0 * mu; }
};

/// Mandel matrix of the isotropic stiffness lambda I x I + 2 mu I_sym.
Tensor4Sym isotropic_stiffness(const IsotropicMaterial& mat, int d);

/// Double contraction C : e as a Mandel matrix-vector product.
SymTensor2 contract(const Tensor4Sym& c, const SymTensor2& e);

/// Inverse on the space of symmetric tensors.
Tensor4Sym invert(const Tensor4Sym& c);

double max_eigenvalue(const Tensor4Sym& c);
double min_eigenvalue(const Tensor4Sym& c);

/// Push-forward of a symmetric tensor, e -> A e A^T, as a Mandel matrix.
Eigen::MatrixXd mandel_congruence(const Eigen::MatrixXd& a);

/// Coordinate transformation of a stiffness: C~_{ijkl} = A_im A_jn A_ko A_lp C_mnop.
Tensor4Sym transform_stiffness(const Eigen::MatrixXd& a, const Tensor4Sym& c);

/// Coordinate transformation of a strain: e~ = A^{-T} e A^{-1}.
SymTensor2 transform_strain(const Eigen::MatrixXd& a, const SymTensor2& e);

// --- implementation of the small templates ---

template <typename F>
Tensor4Sym Tensor4Sym::from_ijkl(int d, F&& c) {
  const int n = mandel_size(d);
  // Mandel index -> tensor index pair and scale factor
  auto pair_of = [d](int a) -> std::array<int, 2> {
    if (a < d) return {a, a};
    if (d == 2) return {0, 1};
    switch (a) {
      case 3: return {1, 2};
      case 4: return {0, 2};
      default: return {0, 1};
    }
  };
  Eigen::MatrixXd m(n, n);
  const double s2 = std::sqrt(2.0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const auto [i, j] = pair_of(a);
      const auto [k, l] = pair_of(b);
      const double scale = (a < d ? 1.0 : s2) * (b < d ? 1.0 : s2);
      m(a, b) = scale * c(i, j, k, l);
    }
  m = 0.5 * (m + m.transpose()).eval();
  return Tensor4Sym(d, std::move(m));
}

}  // namespace lathom
