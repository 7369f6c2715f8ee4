#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "trefftz/basis.hpp"
#include "trefftz/geometry.hpp"
#include "trefftz/operators.hpp"
#include "trefftz/solver.hpp"

namespace trefftz {

/// Boundary traces of a known solution together with the solution itself.
struct ManufacturedData {
  BoundaryTrace data;
  std::shared_ptr<const ElasticField> exact;  ///< null when no closed form exists
};

/// Traces of u(x) = Gamma_row(x - y0). Throws std::invalid_argument unless y0
/// lies strictly outside the surface.
ManufacturedData kelvin_data(const Material& m, const SurfaceSpec& surface, const SurfaceQuadrature& quad,
                             const Vec3& y0, int row, Problem problem);

/// | int_S (u.Tv - v.Tu) dsigma |.
double betti_check(const Material& m, const ElasticField& u, const ElasticField& v, const SurfaceQuadrature& quad);

enum class PointLocation { Interior, Exterior };

/// Deviation of int_S [w . T_y Gamma_i(x - y) - Gamma_i(x - y) . Tw] dsigma_y
/// from w_i(x) (interior) or from 0 (exterior). Rejects x closer to the
/// samples than three quadrature spacings.
Vec3 somigliana_check(const Material& m, const ElasticField& w, const SurfaceQuadrature& quad, const Vec3& x,
                      PointLocation expect);

/// Deterministic probe points at half the radial depth of the surface.
std::vector<Vec3> probe_points(const SurfaceSpec& surface, int count = 20, std::uint64_t seed = 20240101);

struct KelvinSource {
  Vec3 y0 = Vec3(0.0, 0.0, 3.0);
  int row = 0;
};
struct BasisElementSource {
  std::size_t index = 0;
};
/// phi = 0 (or psi = 0) with the vector datum set to the index-th
/// orthonormal tangential rotation field.
struct RotationFieldSource {
  int index = 0;
};
struct UserCsvSource {
  std::string path;
};
using DataSource = std::variant<KelvinSource, BasisElementSource, RotationFieldSource, UserCsvSource>;

struct StudyConfig {
  Material material{1.0, 1.0};
  SurfaceSpec surface = Sphere{};
  Problem problem = Problem::III;
  std::vector<int> degrees{2, 3, 4, 5, 6, 7, 8};
  int n_theta = 32;
  int n_phi = 64;
  DataSource source = KelvinSource{};
  FitOptions fit;
  int probe_count = 20;
  std::uint64_t probe_seed = 20240101;
};

struct StudyRow {
  int degree = 0;
  double residual_l2 = 0.0;
  double residual_max = 0.0;
  double data_norm = 0.0;
  int kept_rank = 0;
  std::vector<double> defects;  ///< Problem III only, one per rotation field
  double probe_err_max = 0.0;   ///< NaN without a closed-form solution
};

struct StudyReport {
  StudyConfig config;
  SymmetryClass symmetry;
  double area = 0.0;
  std::vector<StudyRow> rows;

  /// residual_l2 non-increasing in K, up to rel_slack * residual for roundoff.
  bool residual_monotone(double rel_slack = 1e-10) const;
};

/// Boundary data for the configured source on quad; gammas are the surface's
/// tangential rotation fields (needed by RotationFieldSource).
ManufacturedData study_data(const StudyConfig& config, const SurfaceQuadrature& quad,
                            const std::vector<SampledField>& gammas);

StudyReport run_study(const StudyConfig& config);

/// Space-separated CSV:
/// `K residual_l2 residual_max data_norm kept_rank defect_1 defect_2 defect_3 probe_err_max`.
void write_study_csv(std::ostream& os, const StudyReport& report);
/// Metadata sidecar echoing the configuration.
void write_study_json(std::ostream& os, const StudyReport& report);

std::string describe(const SurfaceSpec& surface);

}  // namespace trefftz
