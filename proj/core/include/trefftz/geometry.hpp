#pragma once

#include <cmath>
#include <iosfwd>
#include <variant>
#include <vector>

#include "trefftz/polynomial.hpp"

namespace trefftz {

struct Sphere {
  Vec3 center = Vec3::Zero();
  double radius = 1.0;
};

struct Ellipsoid {
  Vec3 center = Vec3::Zero();
  Vec3 semi_axes = Vec3::Ones();
};

/// Coefficient of the real solid harmonic solid_harmonics(degree)[index]
/// in the radial function r(direction).
struct RadialTerm {
  int degree = 0;
  int index = 0;
  double value = 0.0;
};

/// Star-shaped surface x = center + r(d) d over unit directions d. Its
/// symmetry is declared, not detected.
struct StarShaped {
  enum class Symmetry { Generic, Axisymmetric, Sphere };

  Vec3 center = Vec3::Zero();
  std::vector<RadialTerm> radial;
  Symmetry symmetry = Symmetry::Generic;
  Vec3 axis = Vec3::UnitZ();  ///< used when symmetry == Axisymmetric
};

using SurfaceSpec = std::variant<Sphere, Ellipsoid, StarShaped>;

/// Throws std::invalid_argument for non-positive radius or semi-axes,
/// or malformed radial terms.
void validate(const SurfaceSpec& spec);

Vec3 surface_center(const SurfaceSpec& spec);
/// Distance from the center to the surface along the unit direction d.
double surface_radius(const SurfaceSpec& spec, const Vec3& direction);
/// Largest center-to-surface distance (sampled for star-shaped surfaces).
double circumscribed_radius(const SurfaceSpec& spec);
/// True when y lies strictly outside the closed domain, by radial comparison.
bool strictly_outside(const SurfaceSpec& spec, const Vec3& y);

struct SurfaceSample {
  Vec3 point;
  Vec3 normal;  ///< unit, outward
  double weight;
};

/// Product rule over (cos theta, phi): Gauss-Legendre in cos theta, uniform
/// trapezoid in phi. Samples are stored theta-major.
class SurfaceQuadrature {
public:
  SurfaceQuadrature(std::vector<SurfaceSample> samples, int n_theta, int n_phi)
      : samples_(std::move(samples)), n_theta_(n_theta), n_phi_(n_phi) {}

  const std::vector<SurfaceSample>& samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  const SurfaceSample& operator[](std::size_t n) const { return samples_[n]; }
  auto begin() const { return samples_.begin(); }
  auto end() const { return samples_.end(); }
  int n_theta() const { return n_theta_; }
  int n_phi() const { return n_phi_; }

  double area() const;
  /// Typical spacing sqrt(area / size).
  double spacing() const;

  double integrate(const std::vector<double>& f) const;
  double inner(const std::vector<double>& a, const std::vector<double>& b) const;
  double inner(const std::vector<Vec3>& a, const std::vector<Vec3>& b) const;
  double norm(const std::vector<Vec3>& a) const { return std::sqrt(inner(a, a)); }

private:
  std::vector<SurfaceSample> samples_;
  int n_theta_;
  int n_phi_;
};

/// Gauss-Legendre nodes and weights on [-1, 1], nodes ascending.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Requires n_theta >= 4 and n_phi >= 8; rejects non-positive radial values.
SurfaceQuadrature make_quadrature(const SurfaceSpec& spec, int n_theta, int n_phi);

/// CSV with header `x y z nx ny nz w`, 17 significant digits.
void write_quadrature_csv(std::ostream& os, const SurfaceQuadrature& quad);

struct SymmetryClass {
  enum class Kind { Sphere, Axisymmetric, Generic };
  Kind kind = Kind::Generic;
  Vec3 center = Vec3::Zero();  ///< sphere center or a point on the axis
  Vec3 axis = Vec3::UnitZ();   ///< unit rotation axis (Axisymmetric only)

  /// Dimension of the tangential rigid displacements: 3, 1 or 0.
  int rotation_dimension() const { return kind == Kind::Sphere ? 3 : kind == Kind::Axisymmetric ? 1 : 0; }
};

SymmetryClass classify_symmetry(const SurfaceSpec& spec);

using SampledField = std::vector<Vec3>;

/// Tangential rigid rotations b ^ (x - x0) sampled on quad and orthonormalized
/// in the weighted inner product: 3 fields on a sphere, 1 on an axisymmetric
/// surface, none otherwise.
std::vector<SampledField> tangential_rotation_fields(const SymmetryClass& cls, const SurfaceQuadrature& quad);

}  // namespace trefftz
