#pragma once

#include <array>

#include "trefftz/material.hpp"
#include "trefftz/polynomial.hpp"

namespace trefftz {

/// E v = mu Lap v + (lambda + mu) grad div v, as an exact polynomial identity.
VecPoly3 lame_apply(const Material& m, const VecPoly3& v);

/// Tu = 2 mu du/dnu + lambda (div u) nu + mu (nu ^ curl u), from the Jacobian
/// J(i, j) = d u_i / d x_j at a point. No normal check.
Vec3 traction_from_jacobian(const Material& m, const Mat3& jacobian, const Vec3& normal);

/// Cauchy stress lambda (div u) I + mu (J + J^T).
Mat3 stress_from_jacobian(const Material& m, const Mat3& jacobian);

/// Traction of a polynomial field at a point. Throws std::invalid_argument
/// unless | |normal| - 1 | <= 1e-12.
Vec3 traction(const Material& m, const VecPoly3& v, const Vec3& point, const Vec3& normal);

/// Same, reusing a precomputed Jacobian.
Vec3 traction(const Material& m, const JacobianPoly& jac, const Vec3& point, const Vec3& normal);

void require_unit_normal(const Vec3& normal);

/// a + b ^ (x - x0). Zero strain, hence zero traction for every normal.
struct RigidDisplacement {
  Vec3 a = Vec3::Zero();
  Vec3 b = Vec3::Zero();
  Vec3 x0 = Vec3::Zero();

  Vec3 eval(const Vec3& x) const { return a + b.cross(x - x0); }
  VecPoly3 as_poly() const { return VecPoly3::rigid(a, b, x0); }
};

/// Kelvin fundamental matrix
///   Gamma_ij(x) = -delta_ij / (4 pi mu |x|) + mu' d^2|x| / dx_i dx_j,
///   mu' = (lambda + mu) / (8 pi mu (lambda + 2 mu)).
/// With this sign E Gamma_i = delta e_i, so the boundary representation reads
///   int Eu . Gamma_i + int_S [u . T_y Gamma_i(x - y) - Gamma_i(x - y) . Tu] = u_i(x)
/// inside and 0 outside, with no extra constant factor.
struct KelvinParams {
  explicit KelvinParams(const Material& m);
  Material material;
  double mu_prime;
};

Mat3 kelvin_matrix(const KelvinParams& params, const Vec3& x);

/// d Gamma_ij / d x_k, returned as [k](i, j).
std::array<Mat3, 3> kelvin_gradient(const KelvinParams& params, const Vec3& x);

/// Row i is the traction at y, normal nu(y), of the field y -> Gamma_i(x - y).
Mat3 kelvin_traction(const KelvinParams& params, const Vec3& x, const Vec3& y, const Vec3& normal_y);

/// Pointwise displacement and Jacobian, enough to form traces and tractions.
class ElasticField {
public:
  virtual ~ElasticField() = default;
  virtual Vec3 value(const Vec3& x) const = 0;
  /// J(i, j) = d u_i / d x_j.
  virtual Mat3 jacobian(const Vec3& x) const = 0;

  Vec3 traction(const Material& m, const Vec3& x, const Vec3& normal) const {
    return traction_from_jacobian(m, jacobian(x), normal);
  }
};

class PolynomialField final : public ElasticField {
public:
  explicit PolynomialField(VecPoly3 v) : v_(std::move(v)), jac_(v_) {}
  Vec3 value(const Vec3& x) const override { return v_.eval(x); }
  Mat3 jacobian(const Vec3& x) const override { return jac_.eval(x); }
  const VecPoly3& poly() const { return v_; }

private:
  VecPoly3 v_;
  JacobianPoly jac_;
};

/// x -> Gamma_row(x - pole); solves E u = 0 away from the pole.
class KelvinField final : public ElasticField {
public:
  KelvinField(const KelvinParams& params, const Vec3& pole, int row);
  Vec3 value(const Vec3& x) const override;
  Mat3 jacobian(const Vec3& x) const override;
  const Vec3& pole() const { return pole_; }
  int row() const { return row_; }

private:
  KelvinParams params_;
  Vec3 pole_;
  int row_;
};

}  // namespace trefftz
