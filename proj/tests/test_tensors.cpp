#include <random>

#include "doctest.h"
#include "lathom/tensors.hpp"

using namespace lathom;

namespace {

SymTensor2 random_sym(std::mt19937& rng, int d) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  SymTensor2 t(d);
  for (int i = 0; i < t.size(); ++i) t[i] = dist(rng);
  return t;
}

Tensor4Sym random_tensor4(std::mt19937& rng, int d) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const int n = mandel_size(d);
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = dist(rng);
  m = (0.5 * (m + m.transpose())).eval();
  return Tensor4Sym(d, std::move(m));
}

Eigen::MatrixXd random_rotation(std::mt19937& rng, int d) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::MatrixXd a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = dist(rng);
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ();
  if (q.determinant() < 0) q.col(0) *= -1.0;
  return q;
}

// index-notation oracle for the contraction, summing over all d^2 pairs
SymTensor2 contract_oracle(const Tensor4Sym& c, const SymTensor2& e) {
  const int d = c.dim();
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) r(i, j) += c.entry(i, j, k, l) * e.entry(k, l);
  return SymTensor2::from_matrix(r);
}

}  // namespace

TEST_CASE("isotropic stiffness in Mandel form") {
  SUBCASE("pure shear modulus gives 2 mu on the diagonal") {
    const Tensor4Sym c = isotropic_stiffness({0.0, 1.0}, 2);
    CHECK(c.mandel().isApprox(2.0 * Eigen::MatrixXd::Identity(3, 3), 1e-14));
  }
  SUBCASE("pure lambda is the rank-one volumetric tensor") {
    const Tensor4Sym c = isotropic_stiffness({1.0, 0.0}, 3);
    Eigen::VectorXd vol(6);
    vol << 1, 1, 1, 0, 0, 0;
    CHECK(c.mandel().isApprox(vol * vol.transpose(), 1e-14));
  }
  SUBCASE("identity strain maps to (d lambda + 2 mu) identity stress") {
    for (int d : {2, 3}) {
      const IsotropicMaterial mat{1.7, 0.6};
      const SymTensor2 s = contract(isotropic_stiffness(mat, d), SymTensor2::identity(d));
      for (int i = 0; i < d; ++i)
        CHECK(s[i] == doctest::Approx(d * mat.lambda + 2 * mat.mu).epsilon(1e-14));
      for (int i = d; i < s.size(); ++i) CHECK(s[i] == doctest::Approx(0.0));
    }
  }
  SUBCASE("eigenvalues are d lambda + 2 mu and 2 mu") {
    const Tensor4Sym c = isotropic_stiffness({1.0, 1.0}, 3);
    CHECK(max_eigenvalue(c) == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(min_eigenvalue(c) == doctest::Approx(2.0).epsilon(1e-12));
  }
}

TEST_CASE("contraction") {
  SUBCASE("identity tensor acts as the identity") {
    std::mt19937 rng(3);
    const SymTensor2 e = random_sym(rng, 3);
    const SymTensor2 r = contract(Tensor4Sym::identity(3), e);
    for (int i = 0; i < e.size(); ++i) CHECK(r[i] == doctest::Approx(e[i]));
  }
  SUBCASE("isotropic stiffness on a traceless strain is 2 mu e") {
    const IsotropicMaterial mat{2.3, 0.7};
    SymTensor2 e(2);
    e[0] = 0.4;
    e[1] = -0.4;
    e[2] = 0.9;
    const SymTensor2 r = contract(isotropic_stiffness(mat, 2), e);
    for (int i = 0; i < e.size(); ++i)
      CHECK(r[i] == doctest::Approx(2 * mat.mu * e[i]).epsilon(1e-13));
  }
  SUBCASE("Mandel product equals the explicit index sum") {
    std::mt19937 rng(5);
    for (int d : {2, 3})
      for (int t = 0; t < 20; ++t) {
        const Tensor4Sym c = random_tensor4(rng, d);
        const SymTensor2 e = random_sym(rng, d);
        const SymTensor2 fast = contract(c, e);
        const SymTensor2 slow = contract_oracle(c, e);
        for (int i = 0; i < fast.size(); ++i)
          CHECK(fast[i] == doctest::Approx(slow[i]).epsilon(1e-13));
      }
  }
  SUBCASE("Mandel inner product equals the double contraction") {
    std::mt19937 rng(7);
    const Tensor4Sym c = random_tensor4(rng, 3);
    const SymTensor2 e = random_sym(rng, 3);
    const SymTensor2 f = random_sym(rng, 3);
    // <C:e, f> via matrices
    const double direct = (contract_oracle(c, e).matrix().array() * f.matrix().array()).sum();
    CHECK(contract(c, e).dot(f) == doctest::Approx(direct).epsilon(1e-13));
  }
}

TEST_CASE("inversion") {
  SUBCASE("isotropic mu = 1 inverts to one half") {
    const Tensor4Sym inv = invert(isotropic_stiffness({0.0, 1.0}, 2));
    CHECK(inv.mandel().isApprox(0.5 * Eigen::MatrixXd::Identity(3, 3), 1e-13));
  }
  SUBCASE("invert twice is the identity on SPD inputs") {
    std::mt19937 rng(11);
    for (int t = 0; t < 10; ++t) {
      Tensor4Sym c = random_tensor4(rng, 3);
      // make SPD
      c.mandel() = (c.mandel() * c.mandel().transpose()).eval();
      c.mandel() += 7.0 * Eigen::MatrixXd::Identity(6, 6);
      const Tensor4Sym back = invert(invert(c));
      CHECK((back.mandel() - c.mandel()).norm() <= 1e-12 * c.mandel().norm());
      CHECK((invert(c).mandel() * c.mandel()).isApprox(Eigen::MatrixXd::Identity(6, 6), 1e-12));
    }
  }
  SUBCASE("singular rank-one tensor is rejected") {
    CHECK_THROWS(invert(isotropic_stiffness({1.0, 0.0}, 3)));
  }
}

TEST_CASE("max eigenvalue") {
  SUBCASE("diagonal Mandel matrix") {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3, 3);
    m.diagonal() << 3.0, -1.0, 2.0;
    CHECK(max_eigenvalue(Tensor4Sym(2, m)) == doctest::Approx(3.0));
  }
  SUBCASE("scaling") {
    std::mt19937 rng(13);
    const Tensor4Sym c = random_tensor4(rng, 2);
    CHECK(max_eigenvalue(2.5 * c) == doctest::Approx(2.5 * max_eigenvalue(c)).epsilon(1e-12));
  }
}

TEST_CASE("stiffness transformation") {
  std::mt19937 rng(17);
  SUBCASE("identity transform") {
    const Tensor4Sym c = random_tensor4(rng, 3);
    const Tensor4Sym r = transform_stiffness(Eigen::MatrixXd::Identity(3, 3), c);
    CHECK(r.mandel().isApprox(c.mandel(), 1e-14));
  }
  SUBCASE("orthogonal transforms leave isotropic tensors unchanged") {
    const Tensor4Sym c = isotropic_stiffness({1.3, 0.8}, 3);
    for (int t = 0; t < 5; ++t) {
      const Tensor4Sym r = transform_stiffness(random_rotation(rng, 3), c);
      CHECK(r.mandel().isApprox(c.mandel(), 1e-12));
    }
  }
  SUBCASE("matches the quadruple index sum") {
    const Tensor4Sym c = random_tensor4(rng, 2);
    Eigen::MatrixXd a(2, 2);
    a << 1.2, -0.3, 0.4, 0.9;
    const Tensor4Sym fast = transform_stiffness(a, c);
    const Tensor4Sym slow = Tensor4Sym::from_ijkl(2, [&](int i, int j, int k, int l) {
      double s = 0;
      for (int m = 0; m < 2; ++m)
        for (int n = 0; n < 2; ++n)
          for (int o = 0; o < 2; ++o)
            for (int p = 0; p < 2; ++p) s += a(i, m) * a(j, n) * a(k, o) * a(l, p) * c.entry(m, n, o, p);
      return s;
    });
    CHECK(fast.mandel().isApprox(slow.mandel(), 1e-12));
  }
  SUBCASE("composition") {
    const Tensor4Sym c = random_tensor4(rng, 3);
    const Eigen::MatrixXd a1 = random_rotation(rng, 3) * 1.3;
    const Eigen::MatrixXd a2 = random_rotation(rng, 3) * 0.7;
    const Tensor4Sym lhs = transform_stiffness(a1, transform_stiffness(a2, c));
    const Tensor4Sym rhs = transform_stiffness(a1 * a2, c);
    CHECK(lhs.mandel().isApprox(rhs.mandel(), 1e-12));
  }
  SUBCASE("major symmetry is preserved") {
    const Tensor4Sym c = random_tensor4(rng, 3);
    const Eigen::MatrixXd a = random_rotation(rng, 3) * 2.0;
    const Tensor4Sym r = transform_stiffness(a, c);
    CHECK((r.mandel() - r.mandel().transpose()).norm() < 1e-13);
  }
}

TEST_CASE("strain transformation") {
  std::mt19937 rng(19);
  const SymTensor2 e = random_sym(rng, 3);
  SUBCASE("identity") {
    const SymTensor2 r = transform_strain(Eigen::MatrixXd::Identity(3, 3), e);
    for (int i = 0; i < e.size(); ++i) CHECK(r[i] == doctest::Approx(e[i]));
  }
  SUBCASE("uniform scaling divides by the square") {
    const SymTensor2 r = transform_strain(2.0 * Eigen::MatrixXd::Identity(3, 3), e);
    for (int i = 0; i < e.size(); ++i) CHECK(r[i] == doctest::Approx(e[i] / 4.0).epsilon(1e-13));
  }
  SUBCASE("round trip with the inverse transform") {
    Eigen::MatrixXd a(3, 3);
    a << 2, 0.5, 0, -0.3, 1.1, 0.2, 0, 0.4, 0.9;
    const SymTensor2 r = transform_strain(a.inverse().eval(), transform_strain(a, e));
    for (int i = 0; i < e.size(); ++i) CHECK(r[i] == doctest::Approx(e[i]).epsilon(1e-12));
  }
}
