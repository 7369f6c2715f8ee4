#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "trefftz/basis.hpp"
#include "trefftz/geometry.hpp"
#include "trefftz/material.hpp"
#include "trefftz/operators.hpp"

namespace trefftz {

enum class Problem { III, IV };

const char* to_string(Problem p);

/// Problem III data: normal displacement phi = u.nu and tangential traction
/// Phi = Tu - (Tu.nu) nu, one entry per quadrature sample.
struct BoundaryDataIII {
  std::vector<double> phi;
  std::vector<Vec3> Phi;
};

/// Problem IV data: tangential displacement Psi = u - (u.nu) nu and normal
/// traction psi = Tu.nu.
struct BoundaryDataIV {
  std::vector<Vec3> Psi;
  std::vector<double> psi;
};

/// Problem-agnostic view: `scalar` is phi (III) or psi (IV), `vector` is
/// Phi (III) or Psi (IV).
struct BoundaryTrace {
  std::vector<double> scalar;
  std::vector<Vec3> vector;
};

BoundaryTrace as_trace(const BoundaryDataIII& d);
BoundaryTrace as_trace(const BoundaryDataIV& d);

/// (p.nu, Tp - (Tp.nu) nu) at every sample.
BoundaryDataIII trace_III(const Material& m, const VecPoly3& p, const SurfaceQuadrature& quad);
/// (p - (p.nu) nu, Tp.nu) at every sample.
BoundaryDataIV trace_IV(const Material& m, const VecPoly3& p, const SurfaceQuadrature& quad);

BoundaryDataIII trace_III(const Material& m, const ElasticField& u, const SurfaceQuadrature& quad);
BoundaryDataIV trace_IV(const Material& m, const ElasticField& u, const SurfaceQuadrature& quad);

BoundaryTrace trace(Problem problem, const Material& m, const ElasticField& u, const SurfaceQuadrature& quad);

struct FitOptions {
  /// Singular values below svd_tol * sigma_max are discarded.
  double svd_tol = 1e-12;
  /// Weight of the vector misfit relative to the scalar misfit.
  double vector_weight = 1.0;
  /// Project the vector datum onto the tangent plane instead of rejecting it.
  bool reproject_tangential = false;
  /// Max |F.nu| accepted for the tangential datum.
  double tangency_tol = 1e-8;
};

struct FitResult {
  Problem problem = Problem::III;
  Eigen::VectorXd coefficients;
  double residual_norm = 0.0;
  double data_norm = 0.0;
  /// max over samples of sqrt(scalar misfit^2 + vector_weight |vector misfit|^2)
  double residual_max = 0.0;
  int kept_rank = 0;
  std::vector<double> singular_values;  ///< descending, of the column-scaled matrix
  double svd_tol = 0.0;
  double vector_weight = 1.0;
  /// <u_fitted, gamma_j>, filled by callers that know the rotation fields.
  std::vector<double> rotation_content;
  /// Per-sample misfit: data minus fitted trace.
  BoundaryTrace misfit;
};

/// Thrown for caller errors detected while validating fit inputs.
class ValidationError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Weighted least-squares fit of the boundary data by the traces of basis
/// elements. Columns are scaled to unit weighted norm, then solved by
/// truncated SVD; the result is the minimum-norm minimizer in the scaled
/// coordinates.
FitResult fit(Problem problem, const BoundaryTrace& data, const ElasticBasis& basis, const SurfaceQuadrature& quad,
              const FitOptions& options = {});
FitResult fit(const BoundaryDataIII& data, const ElasticBasis& basis, const SurfaceQuadrature& quad,
              const FitOptions& options = {});
FitResult fit(const BoundaryDataIV& data, const ElasticBasis& basis, const SurfaceQuadrature& quad,
              const FitOptions& options = {});

/// <Phi, gamma_j> in the weighted inner product, one per rotation field.
std::vector<double> compatibility_defect(const BoundaryDataIII& data, const std::vector<SampledField>& gammas,
                                         const SurfaceQuadrature& quad);

/// Sum of c_n p_n as a single polynomial field.
VecPoly3 fitted_field(const FitResult& result, const ElasticBasis& basis);

/// <u_fitted, gamma_j> on the boundary: the arbitrary rigid-rotation part of a
/// Problem III solution on a symmetric surface.
std::vector<double> rotation_content(const FitResult& result, const ElasticBasis& basis,
                                     const std::vector<SampledField>& gammas, const SurfaceQuadrature& quad);

struct SolutionSample {
  Vec3 displacement;
  Mat3 stress;
};

std::vector<SolutionSample> evaluate_solution(const FitResult& result, const ElasticBasis& basis,
                                              const std::vector<Vec3>& points);

/// JSON with problem, coefficients, residuals, rank and singular values.
void write_fit_json(std::ostream& os, const FitResult& result);
/// CSV `x y z scalar vx vy vz` of the per-sample misfit.
void write_misfit_csv(std::ostream& os, const FitResult& result, const SurfaceQuadrature& quad);

/// Reads `scalar vx vy vz` rows (an optional header line is skipped) in
/// quadrature order.
BoundaryTrace read_trace_csv(std::istream& is);

}  // namespace trefftz
