#include "trefftz/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

#include "trefftz/basis.hpp"

namespace trefftz {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

Poly3 radial_poly(const StarShaped& s) {
  Poly3 r;
  for (const auto& t : s.radial) {
    const auto harmonics = solid_harmonics(t.degree);
    r += harmonics.at(static_cast<std::size_t>(t.index)) * t.value;
  }
  return r;
}

struct Frame {
  Vec3 d;      // unit direction
  Vec3 d_th;   // d/dtheta
  Vec3 d_phi;  // d/dphi
};

Frame direction_frame(double cos_theta, double phi) {
  const double st = std::sqrt(std::max(0.0, 1.0 - cos_theta * cos_theta));
  const double cp = std::cos(phi);
  const double sp = std::sin(phi);
  return {{st * cp, st * sp, cos_theta}, {cos_theta * cp, cos_theta * sp, -st}, {-st * sp, st * cp, 0.0}};
}

}  // namespace

void validate(const SurfaceSpec& spec) {
  std::visit(overloaded{
                 [](const Sphere& s) {
                   if (!(s.radius > 0.0)) throw std::invalid_argument("sphere radius must be positive");
                 },
                 [](const Ellipsoid& e) {
                   if (!(e.semi_axes.minCoeff() > 0.0)) {
                     throw std::invalid_argument("ellipsoid semi-axes must be positive");
                   }
                 },
                 [](const StarShaped& s) {
                   if (s.radial.empty()) throw std::invalid_argument("star-shaped surface needs radial terms");
                   for (const auto& t : s.radial) {
                     if (t.degree < 0 || t.index < 0 || t.index > 2 * t.degree) {
                       throw std::invalid_argument(
                           fmt::format("radial term ({}, {}) out of range: index must be in [0, 2k]", t.degree, t.index));
                     }
                   }
                   if (s.symmetry == StarShaped::Symmetry::Axisymmetric && !(s.axis.norm() > 0.0)) {
                     throw std::invalid_argument("declared symmetry axis must be nonzero");
                   }
                 },
             },
             spec);
}

Vec3 surface_center(const SurfaceSpec& spec) {
  return std::visit([](const auto& s) -> Vec3 { return s.center; }, spec);
}

double surface_radius(const SurfaceSpec& spec, const Vec3& direction) {
  const Vec3 d = direction.normalized();
  return std::visit(overloaded{
                        [](const Sphere& s) { return s.radius; },
                        [&](const Ellipsoid& e) { return 1.0 / d.cwiseQuotient(e.semi_axes).norm(); },
                        [&](const StarShaped& s) { return radial_poly(s).eval(d); },
                    },
                    spec);
}

double circumscribed_radius(const SurfaceSpec& spec) {
  return std::visit(overloaded{
                        [](const Sphere& s) { return s.radius; },
                        [](const Ellipsoid& e) { return e.semi_axes.maxCoeff(); },
                        [](const StarShaped& s) {
                          const Poly3 r = radial_poly(s);
                          double best = 0.0;
                          constexpr int nt = 64;
                          constexpr int np = 128;
                          for (int a = 0; a <= nt; ++a) {
                            const double th = std::numbers::pi * a / nt;
                            for (int b = 0; b < np; ++b) {
                              const double ph = 2.0 * std::numbers::pi * b / np;
                              best = std::max(best, r.eval(direction_frame(std::cos(th), ph).d));
                            }
                          }
                          return best;
                        },
                    },
                    spec);
}

bool strictly_outside(const SurfaceSpec& spec, const Vec3& y) {
  const Vec3 rel = y - surface_center(spec);
  const double dist = rel.norm();
  if (dist == 0.0) return false;
  return dist > surface_radius(spec, rel / dist) * (1.0 + 1e-12);
}

double SurfaceQuadrature::area() const {
  double a = 0.0;
  for (const auto& s : samples_) a += s.weight;
  return a;
}

double SurfaceQuadrature::spacing() const { return std::sqrt(area() / static_cast<double>(size())); }

double SurfaceQuadrature::integrate(const std::vector<double>& f) const {
  if (f.size() != size()) throw std::invalid_argument("integrate: sample count mismatch");
  double acc = 0.0;
  for (std::size_t n = 0; n < size(); ++n) acc += samples_[n].weight * f[n];
  return acc;
}

double SurfaceQuadrature::inner(const std::vector<double>& a, const std::vector<double>& b) const {
  if (a.size() != size() || b.size() != size()) throw std::invalid_argument("inner: sample count mismatch");
  double acc = 0.0;
  for (std::size_t n = 0; n < size(); ++n) acc += samples_[n].weight * a[n] * b[n];
  return acc;
}

double SurfaceQuadrature::inner(const std::vector<Vec3>& a, const std::vector<Vec3>& b) const {
  if (a.size() != size() || b.size() != size()) throw std::invalid_argument("inner: sample count mismatch");
  double acc = 0.0;
  for (std::size_t n = 0; n < size(); ++n) acc += samples_[n].weight * a[n].dot(b[n]);
  return acc;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  nodes.assign(static_cast<std::size_t>(n), 0.0);
  weights.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Tricomi initial guess, then Newton on P_n
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    nodes[lo] = -x;
    nodes[hi] = x;
    weights[lo] = w;
    weights[hi] = w;
  }
  if (n % 2 == 1) nodes[static_cast<std::size_t>(n / 2)] = 0.0;
}

SurfaceQuadrature make_quadrature(const SurfaceSpec& spec, int n_theta, int n_phi) {
  if (n_theta < 4 || n_phi < 8) throw std::invalid_argument("make_quadrature: need n_theta >= 4 and n_phi >= 8");
  validate(spec);

  std::vector<double> nodes;
  std::vector<double> wts;
  gauss_legendre(n_theta, nodes, wts);
  const double dphi = 2.0 * std::numbers::pi / n_phi;
  const Vec3 center = surface_center(spec);

  const StarShaped* star = std::get_if<StarShaped>(&spec);
  Poly3 rpoly;
  VecPoly3 rgrad;
  if (star) {
    rpoly = radial_poly(*star);
    rgrad = gradient(rpoly);
  }
  Vec3 axes = Vec3::Ones();
  if (const auto* s = std::get_if<Sphere>(&spec)) axes = Vec3::Constant(s->radius);
  if (const auto* e = std::get_if<Ellipsoid>(&spec)) axes = e->semi_axes;

  std::vector<SurfaceSample> samples;
  samples.reserve(static_cast<std::size_t>(n_theta * n_phi));
  for (int it = 0; it < n_theta; ++it) {
    const double t = nodes[static_cast<std::size_t>(it)];
    const double st = std::sqrt(1.0 - t * t);
    for (int ip = 0; ip < n_phi; ++ip) {
      const Frame f = direction_frame(t, dphi * ip);
      Vec3 pos;
      Vec3 x_th;
      Vec3 x_phi;
      if (star) {
        const double r = rpoly.eval(f.d);
        if (!(r > 0.0)) {
          throw std::invalid_argument(fmt::format("make_quadrature: radial function is non-positive ({:.6g}) at "
                                                  "direction ({:.6g}, {:.6g}, {:.6g})",
                                                  r, f.d[0], f.d[1], f.d[2]));
        }
        const Vec3 g = rgrad.eval(f.d);
        pos = center + r * f.d;
        x_th = g.dot(f.d_th) * f.d + r * f.d_th;
        x_phi = g.dot(f.d_phi) * f.d + r * f.d_phi;
      } else {
        pos = center + axes.cwiseProduct(f.d);
        x_th = axes.cwiseProduct(f.d_th);
        x_phi = axes.cwiseProduct(f.d_phi);
      }
      Vec3 n = x_th.cross(x_phi);
      const double jac = n.norm();
      n /= jac;
      if (n.dot(pos - center) < 0.0) n = -n;
      // d(cos theta) = sin theta d theta
      samples.push_back({pos, n, wts[static_cast<std::size_t>(it)] * dphi * jac / st});
    }
  }
  return SurfaceQuadrature(std::move(samples), n_theta, n_phi);
}

void write_quadrature_csv(std::ostream& os, const SurfaceQuadrature& quad) {
  os << "x y z nx ny nz w\n";
  for (const auto& s : quad) {
    os << fmt::format("{:.17g} {:.17g} {:.17g} {:.17g} {:.17g} {:.17g} {:.17g}\n", s.point[0], s.point[1], s.point[2],
                      s.normal[0], s.normal[1], s.normal[2], s.weight);
  }
}

SymmetryClass classify_symmetry(const SurfaceSpec& spec) {
  using Kind = SymmetryClass::Kind;
  return std::visit(overloaded{
                        [](const Sphere& s) { return SymmetryClass{Kind::Sphere, s.center, Vec3::UnitZ()}; },
                        [](const Ellipsoid& e) {
                          const Vec3& a = e.semi_axes;
                          const bool e01 = a[0] == a[1];
                          const bool e02 = a[0] == a[2];
                          const bool e12 = a[1] == a[2];
                          if (e01 && e02) return SymmetryClass{Kind::Sphere, e.center, Vec3::UnitZ()};
                          if (e01) return SymmetryClass{Kind::Axisymmetric, e.center, Vec3::UnitZ()};
                          if (e02) return SymmetryClass{Kind::Axisymmetric, e.center, Vec3::UnitY()};
                          if (e12) return SymmetryClass{Kind::Axisymmetric, e.center, Vec3::UnitX()};
                          return SymmetryClass{Kind::Generic, e.center, Vec3::UnitZ()};
                        },
                        [](const StarShaped& s) {
                          switch (s.symmetry) {
                            case StarShaped::Symmetry::Sphere:
                              return SymmetryClass{Kind::Sphere, s.center, Vec3::UnitZ()};
                            case StarShaped::Symmetry::Axisymmetric:
                              return SymmetryClass{Kind::Axisymmetric, s.center, s.axis.normalized()};
                            case StarShaped::Symmetry::Generic:
                              break;
                          }
                          return SymmetryClass{Kind::Generic, s.center, Vec3::UnitZ()};
                        },
                    },
                    spec);
}

std::vector<SampledField> tangential_rotation_fields(const SymmetryClass& cls, const SurfaceQuadrature& quad) {
  std::vector<Vec3> generators;
  if (cls.kind == SymmetryClass::Kind::Sphere) {
    generators = {Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ()};
  } else if (cls.kind == SymmetryClass::Kind::Axisymmetric) {
    generators = {cls.axis.normalized()};
  }

  std::vector<SampledField> out;
  for (const Vec3& b : generators) {
    SampledField g(quad.size());
    for (std::size_t n = 0; n < quad.size(); ++n) g[n] = b.cross(quad[n].point - cls.center);
    const double original = quad.norm(g);
    // modified Gram-Schmidt against the fields already accepted
    for (const auto& q : out) {
      const double c = quad.inner(q, g);
      for (std::size_t n = 0; n < g.size(); ++n) g[n] -= c * q[n];
    }
    const double len = quad.norm(g);
    if (!(len > 1e-13 * original)) continue;
    for (auto& v : g) v /= len;
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace trefftz
