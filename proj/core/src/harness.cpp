#include "trefftz/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>

#include <fmt/format.h>
#include <json.hpp>

namespace trefftz {

ManufacturedData kelvin_data(const Material& m, const SurfaceSpec& surface, const SurfaceQuadrature& quad,
                             const Vec3& y0, int row, Problem problem) {
  if (!strictly_outside(surface, y0)) {
    throw std::invalid_argument(fmt::format("kelvin_data: source point ({}, {}, {}) must lie strictly outside {}",
                                            y0[0], y0[1], y0[2], describe(surface)));
  }
  auto field = std::make_shared<KelvinField>(KelvinParams(m), y0, row);
  return {trace(problem, m, *field, quad), field};
}

double betti_check(const Material& m, const ElasticField& u, const ElasticField& v, const SurfaceQuadrature& quad) {
  double acc = 0.0;
  for (const auto& s : quad) {
    const Vec3 uval = u.value(s.point);
    const Vec3 vval = v.value(s.point);
    acc += s.weight * (uval.dot(v.traction(m, s.point, s.normal)) - vval.dot(u.traction(m, s.point, s.normal)));
  }
  return std::abs(acc);
}

Vec3 somigliana_check(const Material& m, const ElasticField& w, const SurfaceQuadrature& quad, const Vec3& x,
                      PointLocation expect) {
  double nearest = std::numeric_limits<double>::infinity();
  for (const auto& s : quad) nearest = std::min(nearest, (s.point - x).norm());
  const double limit = 3.0 * quad.spacing();
  if (nearest < limit) {
    throw std::invalid_argument(fmt::format(
        "somigliana_check: point is {:.3g} from the boundary samples, closer than three spacings ({:.3g})", nearest,
        limit));
  }
  const KelvinParams params(m);
  Vec3 acc = Vec3::Zero();
  for (const auto& s : quad) {
    const Vec3 wy = w.value(s.point);
    const Vec3 tw = w.traction(m, s.point, s.normal);
    const Mat3 kernel = kelvin_traction(params, x, s.point, s.normal);
    const Mat3 gamma = kelvin_matrix(params, x - s.point);
    acc += s.weight * (kernel * wy - gamma * tw);
  }
  return expect == PointLocation::Interior ? Vec3(acc - w.value(x)) : acc;
}

std::vector<Vec3> probe_points(const SurfaceSpec& surface, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  // inverse-CDF sampling keeps the sequence independent of the standard library's distributions
  auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  const Vec3 c = surface_center(surface);
  std::vector<Vec3> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int n = 0; n < count; ++n) {
    const double cz = 2.0 * uniform() - 1.0;
    const double phi = 2.0 * std::numbers::pi * uniform();
    const double sz = std::sqrt(std::max(0.0, 1.0 - cz * cz));
    const Vec3 d(sz * std::cos(phi), sz * std::sin(phi), cz);
    out.push_back(c + 0.5 * surface_radius(surface, d) * d);
  }
  return out;
}

bool StudyReport::residual_monotone(double rel_slack) const {
  for (std::size_t n = 1; n < rows.size(); ++n) {
    const double prev = rows[n - 1].residual_l2;
    if (rows[n].residual_l2 > prev * (1.0 + rel_slack)) return false;
  }
  return true;
}

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

ManufacturedData study_data(const StudyConfig& cfg, const SurfaceQuadrature& quad,
                            const std::vector<SampledField>& gammas) {
  const int kmax = *std::max_element(cfg.degrees.begin(), cfg.degrees.end());
  return std::visit(
      overloaded{
          [&](const KelvinSource& k) { return kelvin_data(cfg.material, cfg.surface, quad, k.y0, k.row, cfg.problem); },
          [&](const BasisElementSource& b) {
            const ElasticBasis basis(cfg.material, kmax);
            if (b.index >= basis.size()) {
              throw std::invalid_argument(fmt::format("basis element index {} out of range (basis through K={} has {})",
                                                      b.index, kmax, basis.size()));
            }
            auto field = std::make_shared<PolynomialField>(basis[b.index].field);
            return ManufacturedData{trace(cfg.problem, cfg.material, *field, quad), field};
          },
          [&](const RotationFieldSource& r) {
            if (r.index < 0 || static_cast<std::size_t>(r.index) >= gammas.size()) {
              throw std::invalid_argument(fmt::format("rotation field {} unavailable: surface admits {} tangential "
                                                      "rotation fields",
                                                      r.index, gammas.size()));
            }
            BoundaryTrace t;
            t.scalar.assign(quad.size(), 0.0);
            t.vector = gammas[static_cast<std::size_t>(r.index)];
            return ManufacturedData{std::move(t), nullptr};
          },
          [&](const UserCsvSource& u) {
            std::ifstream in(u.path);
            if (!in) throw std::invalid_argument("cannot open data file '" + u.path + "'");
            return ManufacturedData{read_trace_csv(in), nullptr};
          },
      },
      cfg.source);
}

StudyReport run_study(const StudyConfig& config) {
  if (config.degrees.empty()) throw std::invalid_argument("run_study: no degrees requested");
  for (std::size_t n = 0; n < config.degrees.size(); ++n) {
    if (config.degrees[n] < 0) throw std::invalid_argument("run_study: degrees must be >= 0");
    if (n > 0 && config.degrees[n] <= config.degrees[n - 1]) {
      throw std::invalid_argument("run_study: degrees must be strictly increasing");
    }
  }

  StudyReport report;
  report.config = config;
  const SurfaceQuadrature quad = make_quadrature(config.surface, config.n_theta, config.n_phi);
  report.area = quad.area();
  report.symmetry = classify_symmetry(config.surface);
  const auto gammas = tangential_rotation_fields(report.symmetry, quad);

  const ManufacturedData md = study_data(config, quad, gammas);
  std::vector<double> defects;
  if (config.problem == Problem::III) {
    defects = compatibility_defect(BoundaryDataIII{md.data.scalar, md.data.vector}, gammas, quad);
  }

  const auto probes = probe_points(config.surface, config.probe_count, config.probe_seed);
  std::vector<Vec3> exact;
  double exact_scale = 0.0;
  if (md.exact) {
    for (const auto& p : probes) {
      exact.push_back(md.exact->value(p));
      exact_scale = std::max(exact_scale, exact.back().norm());
    }
  }

  for (int k : config.degrees) {
    const ElasticBasis basis(config.material, k);
    const FitResult fr = fit(config.problem, md.data, basis, quad, config.fit);
    StudyRow row;
    row.degree = k;
    row.residual_l2 = fr.residual_norm;
    row.residual_max = fr.residual_max;
    row.data_norm = fr.data_norm;
    row.kept_rank = fr.kept_rank;
    row.defects = defects;
    row.probe_err_max = std::numeric_limits<double>::quiet_NaN();
    if (md.exact && exact_scale > 0.0) {
      const auto sol = evaluate_solution(fr, basis, probes);
      double err = 0.0;
      for (std::size_t n = 0; n < probes.size(); ++n) err = std::max(err, (sol[n].displacement - exact[n]).norm());
      row.probe_err_max = err / exact_scale;
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

void write_study_csv(std::ostream& os, const StudyReport& report) {
  os << "K residual_l2 residual_max data_norm kept_rank defect_1 defect_2 defect_3 probe_err_max\n";
  for (const auto& r : report.rows) {
    os << fmt::format("{} {:.17g} {:.17g} {:.17g} {}", r.degree, r.residual_l2, r.residual_max, r.data_norm,
                      r.kept_rank);
    for (std::size_t j = 0; j < 3; ++j) {
      if (j < r.defects.size()) {
        os << fmt::format(" {:.17g}", r.defects[j]);
      } else {
        os << " nan";
      }
    }
    if (std::isnan(r.probe_err_max)) {
      os << " nan\n";
    } else {
      os << fmt::format(" {:.17g}\n", r.probe_err_max);
    }
  }
}

std::string describe(const SurfaceSpec& surface) {
  return std::visit(overloaded{
                        [](const Sphere& s) {
                          return fmt::format("sphere(center=({}, {}, {}), radius={})", s.center[0], s.center[1],
                                             s.center[2], s.radius);
                        },
                        [](const Ellipsoid& e) {
                          return fmt::format("ellipsoid(center=({}, {}, {}), semi_axes=({}, {}, {}))", e.center[0],
                                             e.center[1], e.center[2], e.semi_axes[0], e.semi_axes[1], e.semi_axes[2]);
                        },
                        [](const StarShaped& s) {
                          return fmt::format("star(center=({}, {}, {}), terms={})", s.center[0], s.center[1],
                                             s.center[2], s.radial.size());
                        },
                    },
                    surface);
}

void write_study_json(std::ostream& os, const StudyReport& report) {
  using nlohmann::ordered_json;
  const StudyConfig& c = report.config;
  auto vec = [](const Vec3& v) { return std::vector<double>{v[0], v[1], v[2]}; };

  ordered_json j;
  j["material"] = {{"lambda", c.material.lambda()}, {"mu", c.material.mu()}};
  ordered_json surf;
  std::visit(overloaded{
                 [&](const Sphere& s) {
                   surf = {{"kind", "sphere"}, {"center", vec(s.center)}, {"radius", s.radius}};
                 },
                 [&](const Ellipsoid& e) {
                   surf = {{"kind", "ellipsoid"}, {"center", vec(e.center)}, {"semi_axes", vec(e.semi_axes)}};
                 },
                 [&](const StarShaped& s) {
                   ordered_json terms = ordered_json::array();
                   for (const auto& t : s.radial) terms.push_back({t.degree, t.index, t.value});
                   const char* sym = s.symmetry == StarShaped::Symmetry::Generic        ? "generic"
                                     : s.symmetry == StarShaped::Symmetry::Axisymmetric ? "axisymmetric"
                                                                                       : "sphere";
                   surf = {{"kind", "star"}, {"center", vec(s.center)}, {"radial", terms}, {"symmetry", sym},
                           {"axis", vec(s.axis)}};
                 },
             },
             c.surface);
  j["surface"] = surf;
  j["problem"] = to_string(c.problem);
  j["degrees"] = c.degrees;
  j["quadrature"] = {{"n_theta", c.n_theta}, {"n_phi", c.n_phi}, {"area", report.area}};
  ordered_json src;
  std::visit(overloaded{
                 [&](const KelvinSource& k) { src = {{"kind", "kelvin"}, {"y0", vec(k.y0)}, {"row", k.row}}; },
                 [&](const BasisElementSource& b) { src = {{"kind", "basis"}, {"index", b.index}}; },
                 [&](const RotationFieldSource& r) { src = {{"kind", "rotation"}, {"index", r.index}}; },
                 [&](const UserCsvSource& u) { src = {{"kind", "csv"}, {"path", u.path}}; },
             },
             c.source);
  j["source"] = src;
  j["fit"] = {{"svd_tol", c.fit.svd_tol},
              {"vector_weight", c.fit.vector_weight},
              {"reproject_tangential", c.fit.reproject_tangential}};
  const char* kind = report.symmetry.kind == SymmetryClass::Kind::Sphere         ? "sphere"
                     : report.symmetry.kind == SymmetryClass::Kind::Axisymmetric ? "axisymmetric"
                                                                                 : "generic";
  j["symmetry"] = {{"kind", kind}, {"rotation_fields", report.symmetry.rotation_dimension()}};
  j["probes"] = {{"count", c.probe_count}, {"seed", c.probe_seed}};
  j["rows"] = report.rows.size();
  j["residual_monotone"] = report.residual_monotone();
  os << j.dump(2) << '\n';
}

}  // namespace trefftz
