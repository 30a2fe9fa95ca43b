#include "lathom/tensors.hpp"

#include <cmath>
#include <sstream>

namespace lathom {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

// Mandel slot of the (i,j) entry of a symmetric matrix, plus its scale.
struct Slot {
  int index;
  double scale;  // 1 for diagonal entries, sqrt(2) for off-diagonal slots
};

Slot slot_of(int d, int i, int j) {
  if (i == j) return {i, 1.0};
  if (d == 2) return {2, kSqrt2};
  const int s = i + j;  // (1,2)->3, (0,2)->4, (0,1)->5
  return {s == 3 ? 3 : (s == 2 ? 4 : 5), kSqrt2};
}

}  // namespace

SymTensor2 SymTensor2::from_matrix(const Eigen::MatrixXd& m) {
  const int d = static_cast<int>(m.rows());
  SymTensor2 t(d);
  for (int i = 0; i < d; ++i) t[i] = m(i, i);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      const Slot s = slot_of(d, i, j);
      t[s.index] = 0.5 * (m(i, j) + m(j, i)) * kSqrt2;
    }
  return t;
}

Eigen::VectorXd SymTensor2::vector() const {
  Eigen::VectorXd v(size());
  for (int i = 0; i < size(); ++i) v(i) = c_[static_cast<size_t>(i)];
  return v;
}

Eigen::MatrixXd SymTensor2::matrix() const {
  Eigen::MatrixXd m(d_, d_);
  for (int i = 0; i < d_; ++i)
    for (int j = 0; j < d_; ++j) m(i, j) = entry(i, j);
  return m;
}

double SymTensor2::entry(int i, int j) const {
  const Slot s = slot_of(d_, i, j);
  return c_[static_cast<size_t>(s.index)] / s.scale;
}

double SymTensor2::norm() const {
  double n = 0;
  for (int i = 0; i < size(); ++i) n += c_[static_cast<size_t>(i)] * c_[static_cast<size_t>(i)];
  return std::sqrt(n);
}

double SymTensor2::dot(const SymTensor2& o) const {
  double s = 0;
  for (int i = 0; i < size(); ++i) s += c_[static_cast<size_t>(i)] * o.c_[static_cast<size_t>(i)];
  return s;
}

SymTensor2 operator+(const SymTensor2& a, const SymTensor2& b) {
  SymTensor2 r(a.d_);
  for (int i = 0; i < r.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

SymTensor2 operator-(const SymTensor2& a, const SymTensor2& b) {
  SymTensor2 r(a.d_);
  for (int i = 0; i < r.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

SymTensor2 operator*(double s, const SymTensor2& a) {
  SymTensor2 r(a.d_);
  for (int i = 0; i < r.size(); ++i) r[i] = s * a[i];
  return r;
}

double Tensor4Sym::entry(int i, int j, int k, int l) const {
  const Slot a = slot_of(d_, i, j);
  const Slot b = slot_of(d_, k, l);
  return m_(a.index, b.index) / (a.scale * b.scale);
}

Tensor4Sym isotropic_stiffness(const IsotropicMaterial& mat, int d) {
  const int n = mandel_size(d);
  Eigen::VectorXd vol = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < d; ++i) vol(i) = 1.0;
  Eigen::MatrixXd m = mat.lambda * (vol * vol.transpose()) +
                      2.0 * mat.mu * Eigen::MatrixXd::Identity(n, n);
  return Tensor4Sym(d, std::move(m));
}

SymTensor2 contract(const Tensor4Sym& c, const SymTensor2& e) {
  if (c.dim() != e.dim()) throw std::invalid_argument("dimension mismatch in contraction");
  const Eigen::VectorXd r = c.mandel() * e.vector();
  SymTensor2 out(e.dim());
  for (int i = 0; i < out.size(); ++i) out[i] = r(i);
  return out;
}

Tensor4Sym invert(const Tensor4Sym& c) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c.mandel(), Eigen::EigenvaluesOnly);
  const double emax = es.eigenvalues().cwiseAbs().maxCoeff();
  const double emin = es.eigenvalues().cwiseAbs().minCoeff();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(c.mandel());
  if (!lu.isInvertible()) {
    std::ostringstream os;
    os << "singular fourth-order tensor (condition estimate ";
    if (emin > 0)
      os << emax / emin;
    else
      os << "inf";
    os << ")";
    throw std::invalid_argument(os.str());
  }
  Eigen::MatrixXd inv = lu.inverse();
  inv = 0.5 * (inv + inv.transpose()).eval();
  return Tensor4Sym(c.dim(), std::move(inv));
}

double max_eigenvalue(const Tensor4Sym& c) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c.mandel(), Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

double min_eigenvalue(const Tensor4Sym& c) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c.mandel(), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

Eigen::MatrixXd mandel_congruence(const Eigen::MatrixXd& a) {
  const int d = static_cast<int>(a.rows());
  const int n = mandel_size(d);
  Eigen::MatrixXd p(n, n);
  // columns are the Mandel images of the Mandel basis tensors
  for (int b = 0; b < n; ++b) {
    SymTensor2 e(d);
    e[b] = 1.0;
    const Eigen::MatrixXd img = a * e.matrix() * a.transpose();
    const SymTensor2 out = SymTensor2::from_matrix(img);
    for (int r = 0; r < n; ++r) p(r, b) = out[r];
  }
  return p;
}

Tensor4Sym transform_stiffness(const Eigen::MatrixXd& a, const Tensor4Sym& c) {
  if (a.rows() != c.dim() || a.cols() != c.dim())
    throw std::invalid_argument("dimension mismatch in transform_stiffness");
  const Eigen::MatrixXd p = mandel_congruence(a);
  Eigen::MatrixXd m = p * c.mandel() * p.transpose();
  m = 0.5 * (m + m.transpose()).eval();
  return Tensor4Sym(c.dim(), std::move(m));
}

SymTensor2 transform_strain(const Eigen::MatrixXd& a, const SymTensor2& e) {
  if (a.rows() != e.dim() || a.cols() != e.dim())
    throw std::invalid_argument("dimension mismatch in transform_strain");
  const Eigen::MatrixXd ainv = a.inverse();
  return SymTensor2::from_matrix(ainv.transpose() * e.matrix() * ainv);
}

}  // namespace lathom
