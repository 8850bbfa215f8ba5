#include <doctest.h>

#include <cmath>

#include "hc/boundary_laws.hpp"
#include "oracles.hpp"

using namespace hc;

namespace {

// Independent route to the middle slots: damped fixed-point iteration on
// the coupled pairs of the full system. Contractive only while
// (i-1) lambda z / (1 + lambda z) < 1, so the tests use it in that regime.
Eigen::Vector4d middle_by_iteration(double z1, double z2, double z7, double z8,
                                    int k, int i, double lambda) {
  auto pair = [&](double pa, double pb, double& u, double& v) {
    const double ca = std::pow(1 + lambda * pa, -(k - i + 1));
    const double cb = std::pow(1 + lambda * pb, -(k - i + 1));
    u = v = 0.5;
    for (int it = 0; it < 200000; ++it) {
      const double nu = 0.5 * u + 0.5 * ca * std::pow(1 + lambda * v, -(i - 1));
      const double nv = 0.5 * v + 0.5 * cb * std::pow(1 + lambda * nu, -(i - 1));
      const double change = std::max(std::abs(nu - u), std::abs(nv - v));
      u = nu;
      v = nv;
      if (change < 1e-15) break;
    }
  };
  Eigen::Vector4d out;
  pair(z2, z7, out(0), out(1));  // z3, z4
  pair(z1, z8, out(2), out(3));  // z5, z6
  return out;
}

double ti_fixed_point(int k, double lambda) {
  return testutil::bisect(
      [&](double z) { return z * std::pow(1 + lambda * z, k) - 1.0; }, 0.0, 1.0);
}

}  // namespace

TEST_CASE("hc_recursion") {
  const double children_two[] = {1.0, 1.0};
  CHECK(laws::hc_recursion(children_two, 1.0) == doctest::Approx(0.25));

  const double vanishing[] = {1e-15, 1e-15};
  CHECK(laws::hc_recursion(vanishing, 1.0) == doctest::Approx(1.0).epsilon(1e-12));

  // fixed point for k=2, lambda=1
  const double z = ti_fixed_point(2, 1.0);
  CHECK(z == doctest::Approx(0.465571).epsilon(1e-5));
  const double pair[] = {z, z};
  CHECK(laws::hc_recursion(pair, 1.0) == doctest::Approx(z).epsilon(1e-13));

  CHECK_THROWS_AS(laws::hc_recursion({}, 1.0), std::domain_error);
  const double bad[] = {-0.5};
  CHECK_THROWS_AS(laws::hc_recursion(bad, 1.0), std::domain_error);
  CHECK_THROWS_AS(laws::hc_recursion(pair, 0.0), std::domain_error);
}

TEST_CASE("translation-invariant points solve the eight-slot system") {
  // includes i = k+1, where the trailing exponent k-i goes negative
  for (const auto& [k, i] :
       {std::pair{2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}, {3, 4}, {4, 3}}) {
    const double lambda = testutil::uniform(0.5, 4.0);
    const double z = ti_fixed_point(k, lambda);
    laws::WeaklyPeriodicLaw law{laws::Vector8::Constant(z), k, i, lambda};
    CHECK(laws::wp8_residual(law).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(laws::wp4_residual(z, z, z, z, k, i, lambda).cwiseAbs().maxCoeff() <
          1e-14);
  }
}

TEST_CASE("random points do not solve the systems") {
  laws::WeaklyPeriodicLaw law{laws::Vector8::Constant(0.5), 2, 2, 1.0};
  CHECK(laws::wp8_residual(law).cwiseAbs().maxCoeff() > 1e-3);
  CHECK(laws::wp4_residual(0.5, 0.5, 0.5, 0.5, 2, 2, 1.0).cwiseAbs().maxCoeff() >
        1e-3);
}

TEST_CASE("I2 branch points solve the reduced and full systems at lambda=5") {
  // off-diagonal pair from the branch curve: phi3(t) = 5 gives t+- with
  // t+ + t- = 1 and s = 1-t
  const double lambda = 5.0;
  const double t = 0.5 * (1.0 + std::sqrt(1.0 - 4.0 / lambda));
  const double s = 1.0 - t;
  CHECK(laws::i2_system_residual(s, t, lambda).cwiseAbs().maxCoeff() < 1e-14);

  const Eigen::Vector4d z = laws::reduced_from_i2(s, t);
  CHECK(laws::wp4_residual(z(0), z(1), z(2), z(3), 2, 2, lambda)
            .cwiseAbs()
            .maxCoeff() < 1e-10);

  const auto law = laws::lift_reduced(z(0), z(1), z(2), z(3), 2, 2, lambda);
  CHECK(laws::wp8_residual(law).cwiseAbs().maxCoeff() < 1e-9);
  CHECK((law.z.array() > 0.0).all());
  CHECK((law.z.array() < 1.0).all());

  // the pair iteration is contractive here and lands on the same slots
  const Eigen::Vector4d mid = middle_by_iteration(z(0), z(1), z(2), z(3), 2, 2, lambda);
  for (int j = 0; j < 4; ++j)
    CHECK(law.z(2 + j) == doctest::Approx(mid(j)).epsilon(1e-11));
}

TEST_CASE("lift stays on the consistent branch under strong coupling") {
  // Where (i-1) lambda z / (1 + lambda z) > 1, the pair subsystem grows
  // extra fixed points and naive iteration strays onto them. The lift has
  // to keep satisfying the full system regardless.
  for (const auto& [k, lambda] : {std::pair{3, 20.0}, {4, 4.0}, {4, 20.0}}) {
    const double z = ti_fixed_point(k, lambda);
    const auto law = laws::lift_reduced(z, z, z, z, k, k, lambda);
    CHECK(laws::wp8_residual(law).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(law.z.maxCoeff() - law.z.minCoeff() < 1e-12);
  }
}

TEST_CASE("lift of a constant tuple is constant") {
  const double lambda = 1.7;
  const double z = ti_fixed_point(2, lambda);
  const auto law = laws::lift_reduced(z, z, z, z, 2, 2, lambda);
  // the middle-pair iteration stops at 1e-13 steps, so allow a few of them
  CHECK(law.z.maxCoeff() - law.z.minCoeff() < 1e-11);
}

TEST_CASE("I3 solution lifts to a constant law") {
  const double lambda = 2.0;
  const double t = testutil::bisect(
      [&](double v) { return v + lambda * v * v * v - 1.0; }, 0.0, 1.0);
  CHECK(laws::i3_system_residual(t, t, lambda).cwiseAbs().maxCoeff() < 1e-14);
  const Eigen::Vector4d z = laws::reduced_from_i3(t, t);
  const auto law = laws::lift_reduced(z(0), z(1), z(2), z(3), 2, 2, lambda);
  CHECK(law.z.maxCoeff() - law.z.minCoeff() < 1e-9);
}

TEST_CASE("I2 system spot values") {
  // s = t on the diagonal branch lambda = (1-t)/t^3
  const double t = 0.37;
  const double lambda = (1 - t) / (t * t * t);
  CHECK(laws::i2_system_residual(t, t, lambda).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(laws::i2_system_residual(0.5, 0.5, 4.0).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(laws::i2_system_residual(0.9, 0.1, 1.0).cwiseAbs().maxCoeff() > 1e-3);
}

TEST_CASE("I3 system spot values") {
  const double t = 0.52;
  const double lambda = (1 - t) / (t * t * t);
  CHECK(laws::i3_system_residual(t, t, lambda).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(laws::i3_system_residual(0.3, 0.8, 1.5).cwiseAbs().maxCoeff() > 1e-3);
}

TEST_CASE("I4 system spot values") {
  CHECK(laws::i4_system_residual(0.5, 0.5, 2, 4.0).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(laws::i4_system_residual(0.5, 0.5, 3, 8.0).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(laws::i4_system_residual(0.3, 0.7, 2, 1.0).cwiseAbs().maxCoeff() > 1e-3);
}

TEST_CASE("swap symmetry of the invariant-set systems") {
  for (int trial = 0; trial < 20; ++trial) {
    const double s = testutil::uniform(0.05, 0.95);
    const double t = testutil::uniform(0.05, 0.95);
    const double lambda = testutil::uniform(0.2, 8.0);
    {
      const Eigen::Vector2d a = laws::i2_system_residual(s, t, lambda);
      const Eigen::Vector2d b = laws::i2_system_residual(t, s, lambda);
      CHECK(a(0) == doctest::Approx(b(1)).epsilon(1e-14));
      CHECK(a(1) == doctest::Approx(b(0)).epsilon(1e-14));
    }
    {
      const Eigen::Vector2d a = laws::i3_system_residual(s, t, lambda);
      const Eigen::Vector2d b = laws::i3_system_residual(t, s, lambda);
      CHECK(a(0) == doctest::Approx(b(1)).epsilon(1e-14));
      CHECK(a(1) == doctest::Approx(b(0)).epsilon(1e-14));
    }
    {
      const Eigen::Vector2d a = laws::i4_system_residual(s, t, 3, lambda);
      const Eigen::Vector2d b = laws::i4_system_residual(t, s, 3, lambda);
      CHECK(a(0) == doctest::Approx(b(1)).epsilon(1e-14));
      CHECK(a(1) == doctest::Approx(b(0)).epsilon(1e-14));
    }
  }
}

TEST_CASE("three-state constant-field residuals") {
  const FertileGraph hinge = FertileGraph::hinge();
  const FertileGraph wand = FertileGraph::wand();

  // symmetric roots at lambda = 1 from one-dimensional bisection
  const double zh = testutil::bisect(
      [](double z) {
        const double r = (1 + z) / (1 + 2 * z);
        return z - r * r;
      },
      0.0, 1.0);
  CHECK(laws::ti3_residual(zh, zh, hinge, 2, 1.0).cwiseAbs().maxCoeff() < 1e-14);

  const double zw = testutil::bisect(
      [](double z) {
        const double r = (1 + z) / (2 * z);
        return z - r * r;
      },
      0.1, 10.0);
  CHECK(laws::ti3_residual(zw, zw, wand, 2, 1.0).cwiseAbs().maxCoeff() < 1e-14);

  // asymmetric hinge pair at lambda = 3: z1 z2 = 1 and (1+u)^2 = 3(2+u)
  const double u = testutil::bisect(
      [](double v) { return (1 + v) * (1 + v) - 3.0 * (2 + v); }, 2.0, 10.0);
  const double z1 = 0.5 * (u + std::sqrt(u * u - 4.0));
  const double z2 = 0.5 * (u - std::sqrt(u * u - 4.0));
  CHECK(laws::ti3_residual(z1, z2, hinge, 2, 3.0).cwiseAbs().maxCoeff() < 1e-12);

  CHECK(laws::ti3_residual(1.0, 1.0, hinge, 2, 1.0).cwiseAbs().maxCoeff() > 1e-3);
  CHECK_THROWS_AS(laws::ti3_residual(1.0, 1.0, FertileGraph::pipe(), 2, 1.0),
                  std::domain_error);
  CHECK_THROWS_AS(laws::ti3_residual(-1.0, 1.0, hinge, 2, 1.0),
                  std::domain_error);
}

TEST_CASE("domain guards") {
  laws::WeaklyPeriodicLaw law{laws::Vector8::Constant(0.5), 2, 5, 1.0};
  CHECK_THROWS_AS(laws::wp8_residual(law), std::domain_error);  // i > k+1
  CHECK_THROWS_AS(laws::wp4_residual(0.5, 0.5, 0.5, 0.5, 2, 0, 1.0),
                  std::domain_error);
  CHECK_THROWS_AS(laws::wp4_residual(-0.5, 0.5, 0.5, 0.5, 2, 2, 1.0),
                  std::domain_error);
  CHECK_THROWS_AS(laws::i2_system_residual(0.5, 0.5, -1.0), std::domain_error);
}
