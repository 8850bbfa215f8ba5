#include "hc/boundary_laws.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>

namespace hc::laws {

namespace {

std::atomic<std::uint64_t> g_clamp_events{0};

double ipow(double base, int e) {
  if (e < 0) return 1.0 / ipow(base, -e);  // i = k+1 puts -1 in the exponents
  double r = 1.0;
  for (int j = 0; j < e; ++j) r *= base;
  return r;
}

double clamp_positive(double v) {
  if (v < 1e-300) {
    g_clamp_events.fetch_add(1, std::memory_order_relaxed);
    return 1e-300;
  }
  return v;
}

void require_wp_params(int k, int i, double lambda) {
  if (k < 1) throw std::domain_error("need k >= 1");
  if (i < 1 || i > k + 1) throw std::domain_error("need 1 <= i <= k+1");
  if (lambda <= 0) throw std::domain_error("lambda must be positive");
}

}  // namespace

std::uint64_t clamp_events() { return g_clamp_events.load(); }
void reset_clamp_events() { g_clamp_events.store(0); }

double hc_recursion(std::span<const double> children, double lambda) {
  if (children.empty())
    throw std::domain_error("hc_recursion: no children given");
  if (lambda <= 0) throw std::domain_error("lambda must be positive");
  double out = 1.0;
  for (double z : children) {
    if (z <= 0) throw std::domain_error("hc_recursion: field values must be positive");
    out /= 1.0 + lambda * z;
  }
  return out;
}

Vector8 wp8_residual(const WeaklyPeriodicLaw& law) {
  require_wp_params(law.k, law.i, law.lambda);
  if (!(law.z.array() > 0.0).all())
    throw std::domain_error("wp8_residual: field values must be positive");
  const double l = law.lambda;
  const int i = law.i;
  const int k = law.k;
  const auto& z = law.z;
  auto f = [&](double za, int ea, double zb, int eb) {
    return 1.0 / (ipow(1.0 + l * za, ea) * ipow(1.0 + l * zb, eb));
  };
  Vector8 r;
  r(0) = z(0) - f(z(3), i, z(1), k - i);
  r(1) = z(1) - f(z(5), i, z(0), k - i);
  r(2) = z(2) - f(z(3), i - 1, z(1), k - i + 1);
  r(3) = z(3) - f(z(2), i - 1, z(6), k - i + 1);
  r(4) = z(4) - f(z(5), i - 1, z(0), k - i + 1);
  r(5) = z(5) - f(z(4), i - 1, z(7), k - i + 1);
  r(6) = z(6) - f(z(4), i, z(7), k - i);
  r(7) = z(7) - f(z(2), i, z(6), k - i);
  return r;
}

Eigen::Vector4d wp4_residual(double z1, double z2, double z7, double z8,
                             int k, int i, double lambda) {
  require_wp_params(k, i, lambda);
  if (z1 <= 0 || z2 <= 0 || z7 <= 0 || z8 <= 0)
    throw std::domain_error("wp4_residual: field values must be positive");
  const double ki = static_cast<double>(k) / i;
  const double e = 1.0 - 1.0 / i;
  auto row = [&](double za, double zb, double zc) {
    // (1+l za)^k / ((1+l za)^(k/i) + l zb^(1-1/i))^i / (1+l zc)^(k-i)
    const double base = 1.0 + lambda * za;
    const double den = std::pow(base, ki) + lambda * std::pow(clamp_positive(zb), e);
    return ipow(base, k) / std::pow(den, i) / ipow(1.0 + lambda * zc, k - i);
  };
  Eigen::Vector4d r;
  r(0) = z1 - row(z7, z8, z2);
  r(1) = z2 - row(z8, z7, z1);
  r(2) = z7 - row(z1, z2, z8);
  r(3) = z8 - row(z2, z1, z7);
  return r;
}

WeaklyPeriodicLaw lift_reduced(double z1, double z2, double z7, double z8,
                               int k, int i, double lambda) {
  require_wp_params(k, i, lambda);
  if (z1 <= 0 || z2 <= 0 || z7 <= 0 || z8 <= 0)
    throw std::domain_error("lift_reduced: field values must be positive");

  // The middle slots are eliminated exactly: combining the full system's
  // row for a retained slot with the row for its middle partner gives
  //   z3 = z1^(1-1/i) (1+l z2)^(-k/i)      z4 = z8^(1-1/i) (1+l z7)^(-k/i)
  //   z5 = z2^(1-1/i) (1+l z1)^(-k/i)      z6 = z7^(1-1/i) (1+l z8)^(-k/i)
  // Damped fixed-point iteration on the coupled pairs (z3,z4), (z5,z6)
  // reaches the same values while (i-1)*l*z/(1+l*z) stays below 1, but the
  // pair map turns unstable beyond that and picks up spurious branches,
  // so the elimination is used directly.
  const double e = 1.0 - 1.0 / i;
  const double ki = static_cast<double>(k) / i;
  auto middle = [&](double za, double zb) {
    return std::pow(clamp_positive(za), e) * std::pow(1.0 + lambda * zb, -ki);
  };

  WeaklyPeriodicLaw law;
  law.k = k;
  law.i = i;
  law.lambda = lambda;
  law.z(0) = z1;
  law.z(1) = z2;
  law.z(2) = middle(z1, z2);
  law.z(3) = middle(z8, z7);
  law.z(4) = middle(z2, z1);
  law.z(5) = middle(z7, z8);
  law.z(6) = z7;
  law.z(7) = z8;
  return law;
}

Eigen::Vector2d i2_system_residual(double s, double t, double lambda) {
  if (lambda <= 0) throw std::domain_error("lambda must be positive");
  const double a = 1.0 + lambda * s * s;
  const double b = 1.0 + lambda * t * t;
  return {s - a / (a + lambda * t), t - b / (b + lambda * s)};
}

Eigen::Vector2d i3_system_residual(double s, double t, double lambda) {
  if (lambda <= 0) throw std::domain_error("lambda must be positive");
  const double a = 1.0 + lambda * t * t;
  const double b = 1.0 + lambda * s * s;
  return {s - a / (a + lambda * t), t - b / (b + lambda * s)};
}

Eigen::Vector2d i4_system_residual(double x, double y, int k, double lambda) {
  if (k < 1) throw std::domain_error("need k >= 1");
  if (lambda <= 0) throw std::domain_error("lambda must be positive");
  const double xk = ipow(x, k);
  const double yk = ipow(y, k);
  return {lambda * xk + lambda * x * yk + x - lambda * yk - 1.0,
          lambda * yk + lambda * y * xk + y - lambda * xk - 1.0};
}

Eigen::Vector2d ti3_residual(double z1, double z2, const FertileGraph& graph,
                             int k, double lambda) {
  if (graph.num_states() != 3)
    throw std::domain_error("ti3_residual: needs a three-state graph");
  if (k < 1) throw std::domain_error("need k >= 1");
  if (lambda <= 0) throw std::domain_error("lambda must be positive");
  if (z1 <= 0 || z2 <= 0)
    throw std::domain_error("ti3_residual: field values must be positive");
  const Eigen::MatrixXi& a = graph.incidence();
  const double den = a(0, 0) + a(0, 1) * z1 + a(0, 2) * z2;
  if (den <= 0) throw std::domain_error("ti3_residual: zero denominator");
  Eigen::Vector2d r;
  for (int j = 1; j <= 2; ++j) {
    const double num = a(j, 0) + a(j, 1) * z1 + a(j, 2) * z2;
    r(j - 1) = (j == 1 ? z1 : z2) - lambda * ipow(num / den, k);
  }
  return r;
}

Eigen::Vector4d reduced_from_i2(double s, double t) {
  return {s * s, t * t, s * s, t * t};
}

Eigen::Vector4d reduced_from_i3(double s, double t) {
  return {s * s, s * s, t * t, t * t};
}

Eigen::Vector4d reduced_from_i4(double x, double y, int k) {
  const double zx = std::pow(x, k);
  const double zy = std::pow(y, k);
  return {zx, zy, zy, zx};
}

}  // namespace hc::laws
