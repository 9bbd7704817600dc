#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "statlie/chart.hpp"
#include "statlie/tensor.hpp"

using namespace statlie;

namespace {
const double kS2 = std::numbers::sqrt2;
}

TEST_CASE("chart points require finite coordinates with positive y") {
  CHECK_NOTHROW(ChartPoint(0.0, 1.0));
  CHECK_THROWS_AS(ChartPoint(0.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(ChartPoint(0.0, -2.0), std::domain_error);
  CHECK_THROWS_AS(ChartPoint(std::numeric_limits<double>::quiet_NaN(), 1.0),
                  std::domain_error);
  CHECK_THROWS_AS(ChartPoint(0.0, std::numeric_limits<double>::infinity()),
                  std::domain_error);
}

TEST_CASE("metric components on the half-plane") {
  const MetricTensor g = metric_at(kS2, ChartPoint(0.0, 1.0));
  CHECK(g(0, 0) == 1.0);
  CHECK(g(1, 1) == doctest::Approx(2.0).epsilon(1e-15));  // (sqrt 2)^2 is an ulp off 2
  CHECK(g(0, 1) == 0.0);

  const MetricTensor h = metric_at(3.0, ChartPoint(5.0, 0.5));
  CHECK(h(0, 0) == 4.0);
  CHECK(h(1, 1) == 36.0);

  CHECK_THROWS_AS(metric_at(0.0, ChartPoint(0.0, 1.0)), std::domain_error);
  CHECK_THROWS_AS(metric_at(-1.0, ChartPoint(0.0, 1.0)), std::domain_error);
}

TEST_CASE("metric tensors validate symmetry and positivity") {
  CHECK_THROWS_AS(MetricTensor(Mat2{{1.0, 0.5, 0.25, 1.0}}), std::domain_error);
  CHECK_THROWS_AS(MetricTensor(Mat2::diag(-1.0, 1.0)), std::domain_error);
  CHECK_THROWS_AS(MetricTensor(Mat2::diag(1.0, -1.0)), std::domain_error);
  const MetricTensor g(Mat2::diag(4.0, 9.0));
  const Mat2 inv = g.inverse();
  CHECK(inv(0, 0) == 0.25);
  CHECK(inv(1, 1) == doctest::Approx(1.0 / 9.0).epsilon(1e-15));
}

TEST_CASE("family symbols match the hand table") {
  // alpha = 1 at y = 2
  const Christoffels g1 = alpha_christoffels(1.0, kS2, ChartPoint(0.0, 2.0));
  CHECK(g1(1, 0, 0) == 0.0);
  CHECK(g1(0, 0, 1) == -1.0);
  CHECK(g1(0, 1, 0) == -1.0);
  CHECK(g1(1, 1, 1) == -1.5);
  CHECK(g1(0, 0, 0) == 0.0);
  CHECK(g1(1, 0, 1) == 0.0);

  // alpha = 0 keeps the metric-compatible symbols
  const Christoffels g0 = alpha_christoffels(0.0, 2.0, ChartPoint(1.0, 1.0));
  CHECK(g0(1, 0, 0) == 0.25);
  CHECK(g0(0, 0, 1) == -1.0);
  CHECK(g0(1, 1, 1) == -1.0);
  CHECK(g0.torsion_defect() == 0.0);
}

TEST_CASE("finite-difference metric symbols recover the alpha = 0 table") {
  for (double lambda : {1.0, kS2, 3.0})
    for (const ChartPoint p : {ChartPoint(0.0, 1.0), ChartPoint(2.0, 0.5),
                               ChartPoint(-1.0, 3.0)}) {
      CAPTURE(lambda);
      CAPTURE(p.y);
      const Christoffels fd = levi_civita_fd(metric_field(lambda), p, 1e-5);
      const Christoffels closed = alpha_christoffels(0.0, lambda, p);
      double dev = 0.0;
      for (int k = 0; k < 2; ++k)
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j)
            dev = std::max(dev, std::abs(fd(k, i, j) - closed(k, i, j)));
      CHECK(dev <= 1e-8 / p.y);
      CHECK(fd.torsion_defect() <= 1e-15);
    }
}

TEST_CASE("plane curvature of the metric connection is -1/lambda^2") {
  for (double lambda : {0.5, 1.0, kS2, 3.0})
    for (const ChartPoint p :
         {ChartPoint(0.0, 1.0), ChartPoint(3.0, 0.25), ChartPoint(-2.0, 8.0)}) {
      CAPTURE(lambda);
      CAPTURE(p.y);
      const CurvatureTensor R = curvature_fd(alpha_connection(0.0, lambda), p, 1e-5);
      const double sec = sectional_curvature(metric_at(lambda, p), R);
      CHECK(std::abs(sec + 1.0 / (lambda * lambda)) <= 1e-8);
      CHECK(R.antisymmetry_defect() <= 1e-10 / (p.y * p.y));
    }
}

TEST_CASE("the extreme family members are flat") {
  for (double alpha : {1.0, -1.0})
    for (const ChartPoint p : {ChartPoint(0.0, 1.0), ChartPoint(1.0, 0.5)}) {
      CAPTURE(alpha);
      const CurvatureTensor R = curvature_fd(alpha_connection(alpha, kS2), p, 1e-5);
      CHECK(R.r.max_abs() <= 5e-9 / (p.y * p.y));
    }
}

TEST_CASE("opposite family members share the same curvature tensor") {
  const ChartPoint p(0.5, 1.0);
  for (double alpha : {0.3, 0.7, 1.5}) {
    CAPTURE(alpha);
    const CurvatureTensor Rp = curvature_fd(alpha_connection(alpha, kS2), p, 1e-5);
    const CurvatureTensor Rm = curvature_fd(alpha_connection(-alpha, kS2), p, 1e-5);
    CHECK(max_abs_diff(Rp.r, Rm.r) <= 5e-9);
  }
}

TEST_CASE("cubic form closed components") {
  const Tensor3Sym C = cubic_form_closed(kS2, ChartPoint(0.0, 2.0));
  CHECK(C.c(0, 0, 1) == 0.25);
  CHECK(C.c(0, 1, 0) == 0.25);
  CHECK(C.c(1, 0, 0) == 0.25);
  CHECK(C.c(1, 1, 1) == doctest::Approx(1.0).epsilon(1e-15));  // carries (sqrt 2)^2
  CHECK(C.c(0, 0, 0) == 0.0);
  CHECK(C.c(1, 1, 0) == 0.0);
  CHECK(C.symmetry_defect() == 0.0);
  REQUIRE(C.basepoint.has_value());
  CHECK(C.basepoint->y == 2.0);
}

TEST_CASE("metric derivative along the family equals alpha times the cubic form") {
  for (double lambda : {1.0, kS2, 2.5})
    for (double alpha : {-1.0, 0.0, 0.4, 1.0}) {
      CAPTURE(lambda);
      CAPTURE(alpha);
      const ChartPoint p(1.0, 1.5);
      const Tensor3 dg = covariant_derivative_metric(alpha_connection(alpha, lambda),
                                                     metric_field(lambda), p, 1e-5);
      const Tensor3 C = cubic_form_closed(lambda, p).c;
      double dev = 0.0;
      for (std::size_t n = 0; n < 8; ++n)
        dev = std::max(dev, std::abs(dg.v[n] - alpha * C.v[n]));
      CHECK(dev <= 1e-8);
    }
}

TEST_CASE("metric connection kills the metric") {
  const Tensor3 dg = covariant_derivative_metric(alpha_connection(0.0, 3.0),
                                                 metric_field(3.0), ChartPoint(0.0, 0.7),
                                                 1e-5);
  CHECK(dg.max_abs() <= 5e-8);
}

TEST_CASE("derivative of the cubic form along the metric connection is symmetric") {
  for (double lambda : {1.0, kS2}) {
    CAPTURE(lambda);
    const Tensor4 dC = covariant_derivative_t3(alpha_connection(0.0, lambda),
                                               cubic_field(lambda), ChartPoint(0.2, 1.3),
                                               1e-5);
    CHECK(dC.symmetry_defect_all4() <= 1e-8);
  }
}

TEST_CASE("tensor symmetry defects see asymmetry") {
  Tensor3 t;
  t(0, 0, 1) = 1.0;
  CHECK(t.symmetry_defect() == 1.0);
  t(0, 1, 0) = 1.0;
  t(1, 0, 0) = 1.0;
  CHECK(t.symmetry_defect() == 0.0);

  Tensor4 q;
  q(0, 0, 0, 1) = 2.0;
  CHECK(q.symmetry_defect_all4() == 2.0);
  CHECK(q.symmetry_defect_first3() == 0.0);  // first three indices all zero
}

TEST_CASE("matrix helpers behave") {
  const Mat2 a{{1.0, 2.0, 3.0, 4.0}};
  CHECK(a.det() == -2.0);
  const Mat2 id = Mat2::identity();
  const Vec2 kept = id.mul({5.0, 6.0});
  CHECK(kept[0] == 5.0);
  CHECK(kept[1] == 6.0);
  const Vec2 image = a.mul({5.0, 6.0});
  CHECK(image[0] == 17.0);
  CHECK(image[1] == 39.0);
  const Vec2 sol = a.solve({5.0, 6.0});
  CHECK(std::abs(sol[0] + 4.0) <= 1e-14);
  CHECK(std::abs(sol[1] - 4.5) <= 1e-14);
}
