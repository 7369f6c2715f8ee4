#include "trefftz/operators.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

namespace trefftz {

VecPoly3 lame_apply(const Material& m, const VecPoly3& v) {
  VecPoly3 r = laplacian(v) * m.mu();
  r += gradient(divergence(v)) * (m.lambda() + m.mu());
  return r;
}

Vec3 traction_from_jacobian(const Material& m, const Mat3& jacobian, const Vec3& normal) {
  const double div = jacobian.trace();
  const Vec3 curl{jacobian(2, 1) - jacobian(1, 2), jacobian(0, 2) - jacobian(2, 0),
                  jacobian(1, 0) - jacobian(0, 1)};
  return 2.0 * m.mu() * (jacobian * normal) + m.lambda() * div * normal + m.mu() * normal.cross(curl);
}

Mat3 stress_from_jacobian(const Material& m, const Mat3& jacobian) {
  return m.lambda() * jacobian.trace() * Mat3::Identity() + m.mu() * (jacobian + jacobian.transpose());
}

void require_unit_normal(const Vec3& normal) {
  if (std::abs(normal.norm() - 1.0) > 1e-12) {
    throw std::invalid_argument(fmt::format("traction: normal must have unit length (|n| = {:.17g})", normal.norm()));
  }
}

Vec3 traction(const Material& m, const VecPoly3& v, const Vec3& point, const Vec3& normal) {
  return traction(m, JacobianPoly(v), point, normal);
}

Vec3 traction(const Material& m, const JacobianPoly& jac, const Vec3& point, const Vec3& normal) {
  require_unit_normal(normal);
  return traction_from_jacobian(m, jac.eval(point), normal);
}

KelvinParams::KelvinParams(const Material& m)
    : material(m),
      mu_prime((m.lambda() + m.mu()) / (8.0 * std::numbers::pi * m.mu() * (m.lambda() + 2.0 * m.mu()))) {}

namespace {

void require_off_pole(const Vec3& x) {
  if (!(x.norm() > 0.0)) throw std::invalid_argument("Kelvin matrix is singular at the origin");
}

}  // namespace

Mat3 kelvin_matrix(const KelvinParams& params, const Vec3& x) {
  require_off_pole(x);
  const double r = x.norm();
  const double mu = params.material.mu();
  // Hessian of |x| is (I - x x^T / r^2) / r
  const Mat3 hess = (Mat3::Identity() - x * x.transpose() / (r * r)) / r;
  return -Mat3::Identity() / (4.0 * std::numbers::pi * mu * r) + params.mu_prime * hess;
}

std::array<Mat3, 3> kelvin_gradient(const KelvinParams& params, const Vec3& x) {
  require_off_pole(x);
  const double r = x.norm();
  const double r3 = r * r * r;
  const double r5 = r3 * r * r;
  const double c0 = 1.0 / (4.0 * std::numbers::pi * params.material.mu());
  const double mp = params.mu_prime;
  std::array<Mat3, 3> d;
  for (int k = 0; k < 3; ++k) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const double dij = i == j ? 1.0 : 0.0;
        const double dik = i == k ? 1.0 : 0.0;
        const double djk = j == k ? 1.0 : 0.0;
        // d_k [-dij c0 / r] + mp d_k [dij / r - x_i x_j / r^3]
        d[static_cast<std::size_t>(k)](i, j) =
            dij * c0 * x[k] / r3 +
            mp * (-dij * x[k] / r3 - (dik * x[j] + djk * x[i]) / r3 + 3.0 * x[i] * x[j] * x[k] / r5);
      }
    }
  }
  return d;
}

Mat3 kelvin_traction(const KelvinParams& params, const Vec3& x, const Vec3& y, const Vec3& normal_y) {
  if (x == y) throw std::invalid_argument("kelvin_traction: x and y coincide");
  const auto grad = kelvin_gradient(params, x - y);
  Mat3 out;
  for (int i = 0; i < 3; ++i) {
    // U_j(y) = Gamma_ij(x - y), so dU_j/dy_k = -(d_k Gamma_ij)(x - y)
    Mat3 jac;
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) jac(j, k) = -grad[static_cast<std::size_t>(k)](i, j);
    }
    out.row(i) = traction_from_jacobian(params.material, jac, normal_y).transpose();
  }
  return out;
}

KelvinField::KelvinField(const KelvinParams& params, const Vec3& pole, int row)
    : params_(params), pole_(pole), row_(row) {
  if (row < 0 || row > 2) throw std::invalid_argument("KelvinField: row must be 0, 1 or 2");
}

Vec3 KelvinField::value(const Vec3& x) const { return kelvin_matrix(params_, x - pole_).row(row_).transpose(); }

Mat3 KelvinField::jacobian(const Vec3& x) const {
  const auto grad = kelvin_gradient(params_, x - pole_);
  Mat3 jac;
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) jac(j, k) = grad[static_cast<std::size_t>(k)](row_, j);
  }
  return jac;
}

}  // namespace trefftz
