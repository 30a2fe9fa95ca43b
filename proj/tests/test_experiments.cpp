#include <random>

#include "doctest.h"
#include "lathom/experiments.hpp"

using namespace lathom;

TEST_CASE("strain error metric") {
  std::vector<double> a{1.0, -2.0, 0.5, 3.0};
  SUBCASE("identical fields") { CHECK(error_l2(a, a) == 0.0); }
  SUBCASE("doubling gives relative error one") {
    std::vector<double> b = a;
    for (auto& x : b) x *= 2.0;
    CHECK(error_l2(b, a) == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("consistent permutation leaves the value unchanged") {
    std::vector<double> num{0.3, 0.7, -1.0, 2.0};
    std::vector<double> pa = {a[2], a[0], a[3], a[1]};
    std::vector<double> pn = {num[2], num[0], num[3], num[1]};
    CHECK(error_l2(num, a) == doctest::Approx(error_l2(pn, pa)).epsilon(1e-14));
  }
  SUBCASE("zero analytic field is rejected") {
    std::vector<double> z(4, 0.0);
    CHECK_THROWS(error_l2(a, z));
  }
  SUBCASE("scale covariance in the deviation") {
    std::vector<double> dev{0.1, -0.2, 0.05, 0.3};
    for (double t : {1.0, 2.0, 5.0}) {
      std::vector<double> num = a;
      for (size_t i = 0; i < num.size(); ++i) num[i] += t * dev[i];
      CHECK(error_l2(num, a) == doctest::Approx(t * error_l2([&] {
              std::vector<double> one = a;
              for (size_t i = 0; i < one.size(); ++i) one[i] += dev[i];
              return one;
            }(), a)).epsilon(1e-12));
    }
  }
}

TEST_CASE("effective action error metric") {
  SymTensor2 t(2);
  t[0] = 1.0;
  t[1] = -0.5;
  t[2] = 0.25;
  SUBCASE("equal actions") { CHECK(error_eff(t, t) == 0.0); }
  SUBCASE("scaling by 1.1 gives 0.1") {
    CHECK(error_eff(1.1 * t, t) == doctest::Approx(0.1).epsilon(1e-12));
  }
  SUBCASE("invariant under a common rotation") {
    const double c = std::cos(0.7), s = std::sin(0.7);
    Eigen::MatrixXd r(2, 2);
    r << c, -s, s, c;
    SymTensor2 u(2);
    u[0] = 0.4;
    u[1] = 0.9;
    u[2] = -0.2;
    const SymTensor2 tr = SymTensor2::from_matrix(r * t.matrix() * r.transpose());
    const SymTensor2 ur = SymTensor2::from_matrix(r * u.matrix() * r.transpose());
    CHECK(error_eff(u, t) == doctest::Approx(error_eff(ur, tr)).epsilon(1e-12));
  }
}

TEST_CASE("shear matrix family") {
  SUBCASE("unsheared member is the square grid") {
    const PatternMatrix m = shear_matrix(7, 0, 0);
    CHECK(m.m == IMat({{128, 0, 0}, {0, 128, 0}, {0, 0, 1}}));
  }
  SUBCASE("determinant is 2^14 across the family") {
    for (int j : {7, 8, 9})
      for (std::int64_t k : {-512, -16, 0, 16, 512})
        for (int alpha : {0, 1}) CHECK(shear_matrix(j, k, alpha).point_count() == 16384);
  }
  SUBCASE("the aligned sheared matrix of the figure") {
    const PatternMatrix m = shear_matrix(9, 16, 0, 14, true);
    CHECK(m.m == IMat({{512, 0}, {16, 32}}));
  }
  SUBCASE("reduced budget rescales k with its row") {
    const PatternMatrix m = shear_matrix(9, 16, 0, 9, true);
    CHECK(m.m == IMat({{64, 0}, {4, 8}}));
    CHECK(m.point_count() == 512);
  }
}

TEST_CASE("rotated matrix family") {
  SUBCASE("the quincunx-style member") {
    const PatternMatrix m = rotated_matrix(7, 14, true);
    CHECK(m.m == IMat({{64, 64}, {-64, 64}}));
    CHECK(m.point_count() == 8192);  // 2^13
  }
  SUBCASE("subsamples the square grid") {
    CHECK(is_subpattern(rotated_matrix(7, 14, true), PatternMatrix{{128, 0}, {0, 128}}));
  }
}

TEST_CASE("run_case on a homogeneous laminate") {
  LaminateSpec s = subsampling_laminate();
  s.mat2 = s.mat1;
  const ErrorReport r = run_case(PatternMatrix{{8, 0}, {0, 8}}, s, {});
  CHECK(r.converged);
  CHECK(r.iterations == 1);
  CHECK(r.e_l2 <= 1e-12);
  CHECK(r.e_eff <= 1e-12);
  CHECK(r.m == 64);
  CHECK(r.d_m == 2);
}

TEST_CASE("subsampling suite on a small grid") {
  // sanity at a = 16; the production-size study is an acceptance criterion
  const auto reports = subsampling_suite({1e-9, 4000}, 16);
  REQUIRE(reports.size() == 3);
  CHECK(reports[0].m == 256);
  CHECK(reports[1].m == 16);
  CHECK(reports[2].m == 16);
  CHECK(reports[1].d_m == 1);  // the adapted lattice is rank-1
  for (const auto& r : reports) CHECK(r.converged);
  CHECK(reports[1].iterations < reports[0].iterations);
  CHECK(reports[1].e_l2 < reports[2].e_l2);
}

TEST_CASE("csv rows") {
  ErrorReport r;
  r.matrix = PatternMatrix{{8, -1}, {0, 8}};
  r.j = 7;
  r.k = -16;
  r.alpha = 1;
  r.m = 64;
  r.d_m = 1;
  r.iterations = 12;
  r.e_l2 = 0.25;
  r.e_eff = 0.125;
  r.wall_time_s = 1.5;
  r.pattern_class = "[[8,7],[0,8]]";
  CHECK(report_csv_header() == "matrix,j,k,alpha,m,d_M,iterations,e_l2,e_eff,wall_time_s,pattern_class");
  CHECK(report_csv_row(r) == "\"[[8,-1],[0,8]]\",7,-16,1,64,1,12,0.25,0.125,1.5,\"[[8,7],[0,8]]\"");
}
