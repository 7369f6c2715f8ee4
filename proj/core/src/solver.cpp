#include "trefftz/solver.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include <Eigen/SVD>
#include <fmt/format.h>
#include <json.hpp>

namespace trefftz {

const char* to_string(Problem p) { return p == Problem::III ? "III" : "IV"; }

BoundaryTrace as_trace(const BoundaryDataIII& d) { return {d.phi, d.Phi}; }
BoundaryTrace as_trace(const BoundaryDataIV& d) { return {d.psi, d.Psi}; }

BoundaryDataIII trace_III(const Material& m, const ElasticField& u, const SurfaceQuadrature& quad) {
  BoundaryDataIII out;
  out.phi.reserve(quad.size());
  out.Phi.reserve(quad.size());
  for (const auto& s : quad) {
    const Vec3& n = s.normal;
    const Vec3 t = u.traction(m, s.point, n);
    out.phi.push_back(u.value(s.point).dot(n));
    out.Phi.push_back(t - t.dot(n) * n);
  }
  return out;
}

BoundaryDataIV trace_IV(const Material& m, const ElasticField& u, const SurfaceQuadrature& quad) {
  BoundaryDataIV out;
  out.Psi.reserve(quad.size());
  out.psi.reserve(quad.size());
  for (const auto& s : quad) {
    const Vec3& n = s.normal;
    const Vec3 v = u.value(s.point);
    out.Psi.push_back(v - v.dot(n) * n);
    out.psi.push_back(u.traction(m, s.point, n).dot(n));
  }
  return out;
}

BoundaryDataIII trace_III(const Material& m, const VecPoly3& p, const SurfaceQuadrature& quad) {
  return trace_III(m, PolynomialField(p), quad);
}

BoundaryDataIV trace_IV(const Material& m, const VecPoly3& p, const SurfaceQuadrature& quad) {
  return trace_IV(m, PolynomialField(p), quad);
}

BoundaryTrace trace(Problem problem, const Material& m, const ElasticField& u, const SurfaceQuadrature& quad) {
  return problem == Problem::III ? as_trace(trace_III(m, u, quad)) : as_trace(trace_IV(m, u, quad));
}

namespace {

constexpr int kRowsPerSample = 4;

// Weighted rows: [sqrt(w) s, sqrt(w vw) v0, sqrt(w vw) v1, sqrt(w vw) v2] per sample.
void pack(const BoundaryTrace& t, const SurfaceQuadrature& quad, double vector_weight, Eigen::Ref<Eigen::VectorXd> out) {
  for (std::size_t n = 0; n < quad.size(); ++n) {
    const double sw = std::sqrt(quad[n].weight);
    const double vw = std::sqrt(quad[n].weight * vector_weight);
    const auto r = static_cast<Eigen::Index>(kRowsPerSample * n);
    out[r] = sw * t.scalar[n];
    for (int a = 0; a < 3; ++a) out[r + 1 + a] = vw * t.vector[n][a];
  }
}

}  // namespace

FitResult fit(Problem problem, const BoundaryTrace& data_in, const ElasticBasis& basis, const SurfaceQuadrature& quad,
              const FitOptions& options) {
  if (data_in.scalar.size() != quad.size() || data_in.vector.size() != quad.size()) {
    throw ValidationError(fmt::format("fit: data has {} scalar and {} vector samples but the quadrature has {}",
                                      data_in.scalar.size(), data_in.vector.size(), quad.size()));
  }
  if (!(options.svd_tol > 0.0 && options.svd_tol < 1.0)) {
    throw ValidationError(fmt::format("fit: svd_tol must lie in (0, 1), got {}", options.svd_tol));
  }
  if (!(options.vector_weight > 0.0)) throw ValidationError("fit: vector_weight must be positive");

  BoundaryTrace data = data_in;
  double worst = 0.0;
  std::size_t worst_at = 0;
  for (std::size_t n = 0; n < quad.size(); ++n) {
    const double dn = std::abs(data.vector[n].dot(quad[n].normal));
    if (dn > worst) {
      worst = dn;
      worst_at = n;
    }
  }
  if (worst > options.tangency_tol) {
    if (!options.reproject_tangential) {
      const char* name = problem == Problem::III ? "Phi" : "Psi";
      throw ValidationError(fmt::format(
          "fit: the prescribed {0} must be tangential ({0}.nu = 0 on the boundary is necessary for a solution); "
          "max |{0}.nu| = {1:.3e} at sample {2} exceeds {3:.1e}",
          name, worst, worst_at, options.tangency_tol));
    }
    for (std::size_t n = 0; n < quad.size(); ++n) {
      const Vec3& nu = quad[n].normal;
      data.vector[n] -= data.vector[n].dot(nu) * nu;
    }
  }

  const auto rows = static_cast<Eigen::Index>(kRowsPerSample * quad.size());
  const auto cols = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd a(rows, cols);
  const Material& mat = basis.material();
  for (Eigen::Index c = 0; c < cols; ++c) {
    const PolynomialField field(basis[static_cast<std::size_t>(c)].field);
    pack(trace(problem, mat, field, quad), quad, options.vector_weight, a.col(c));
  }
  Eigen::VectorXd b(rows);
  pack(data, quad, options.vector_weight, b);

  Eigen::VectorXd scale = a.colwise().norm().transpose();
  for (Eigen::Index c = 0; c < cols; ++c) {
    if (!(scale[c] > 0.0)) scale[c] = 1.0;
    a.col(c) /= scale[c];
  }

  FitResult result;
  result.problem = problem;
  result.svd_tol = options.svd_tol;
  result.vector_weight = options.vector_weight;
  result.data_norm = b.norm();

  Eigen::BDCSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  result.singular_values.assign(sv.data(), sv.data() + sv.size());
  const double cut = sv.size() > 0 ? options.svd_tol * sv[0] : 0.0;
  Eigen::Index kept = 0;
  while (kept < sv.size() && sv[kept] >= cut && sv[kept] > 0.0) ++kept;
  result.kept_rank = static_cast<int>(kept);

  const Eigen::VectorXd proj = svd.matrixU().leftCols(kept).transpose() * b;
  const Eigen::VectorXd y = svd.matrixV().leftCols(kept) * proj.cwiseQuotient(sv.head(kept));
  result.coefficients = y.cwiseQuotient(scale);

  const Eigen::VectorXd r = b - a * y;
  result.residual_norm = r.norm();

  result.misfit.scalar.resize(quad.size());
  result.misfit.vector.resize(quad.size());
  for (std::size_t n = 0; n < quad.size(); ++n) {
    const auto at = static_cast<Eigen::Index>(kRowsPerSample * n);
    const double sw = std::sqrt(quad[n].weight);
    const double vw = std::sqrt(quad[n].weight * options.vector_weight);
    result.misfit.scalar[n] = r[at] / sw;
    result.misfit.vector[n] = Vec3(r[at + 1], r[at + 2], r[at + 3]) / vw;
    const double local = std::sqrt(result.misfit.scalar[n] * result.misfit.scalar[n] +
                                   options.vector_weight * result.misfit.vector[n].squaredNorm());
    result.residual_max = std::max(result.residual_max, local);
  }
  return result;
}

FitResult fit(const BoundaryDataIII& data, const ElasticBasis& basis, const SurfaceQuadrature& quad,
              const FitOptions& options) {
  return fit(Problem::III, as_trace(data), basis, quad, options);
}

FitResult fit(const BoundaryDataIV& data, const ElasticBasis& basis, const SurfaceQuadrature& quad,
              const FitOptions& options) {
  return fit(Problem::IV, as_trace(data), basis, quad, options);
}

std::vector<double> compatibility_defect(const BoundaryDataIII& data, const std::vector<SampledField>& gammas,
                                         const SurfaceQuadrature& quad) {
  std::vector<double> out;
  out.reserve(gammas.size());
  for (const auto& g : gammas) out.push_back(quad.inner(data.Phi, g));
  return out;
}

VecPoly3 fitted_field(const FitResult& result, const ElasticBasis& basis) {
  if (static_cast<std::size_t>(result.coefficients.size()) != basis.size()) {
    throw std::invalid_argument("fitted_field: coefficient count does not match the basis");
  }
  VecPoly3 u;
  for (std::size_t n = 0; n < basis.size(); ++n) {
    u += basis[n].field * result.coefficients[static_cast<Eigen::Index>(n)];
  }
  return u;
}

std::vector<double> rotation_content(const FitResult& result, const ElasticBasis& basis,
                                     const std::vector<SampledField>& gammas, const SurfaceQuadrature& quad) {
  const VecPoly3 u = fitted_field(result, basis);
  SampledField sampled(quad.size());
  for (std::size_t n = 0; n < quad.size(); ++n) sampled[n] = u.eval(quad[n].point);
  std::vector<double> out;
  out.reserve(gammas.size());
  for (const auto& g : gammas) out.push_back(quad.inner(sampled, g));
  return out;
}

std::vector<SolutionSample> evaluate_solution(const FitResult& result, const ElasticBasis& basis,
                                              const std::vector<Vec3>& points) {
  const PolynomialField u(fitted_field(result, basis));
  const Material& m = basis.material();
  std::vector<SolutionSample> out;
  out.reserve(points.size());
  for (const auto& x : points) out.push_back({u.value(x), stress_from_jacobian(m, u.jacobian(x))});
  return out;
}

void write_fit_json(std::ostream& os, const FitResult& result) {
  nlohmann::ordered_json j;
  j["problem"] = to_string(result.problem);
  j["residual_norm"] = result.residual_norm;
  j["data_norm"] = result.data_norm;
  j["residual_max"] = result.residual_max;
  j["kept_rank"] = result.kept_rank;
  j["svd_tol"] = result.svd_tol;
  j["vector_weight"] = result.vector_weight;
  j["coefficients"] = std::vector<double>(result.coefficients.data(),
                                          result.coefficients.data() + result.coefficients.size());
  j["singular_values"] = result.singular_values;
  if (!result.rotation_content.empty()) j["rotation_content"] = result.rotation_content;
  os << j.dump(2) << '\n';
}

void write_misfit_csv(std::ostream& os, const FitResult& result, const SurfaceQuadrature& quad) {
  os << "x y z scalar vx vy vz\n";
  for (std::size_t n = 0; n < quad.size(); ++n) {
    const Vec3& p = quad[n].point;
    const Vec3& v = result.misfit.vector[n];
    os << fmt::format("{:.17g} {:.17g} {:.17g} {:.17g} {:.17g} {:.17g} {:.17g}\n", p[0], p[1], p[2],
                      result.misfit.scalar[n], v[0], v[1], v[2]);
  }
}

BoundaryTrace read_trace_csv(std::istream& is) {
  BoundaryTrace t;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::replace(line.begin(), line.end(), ',', ' ');
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[line.find_first_not_of(" \t")] == '#') continue;
    std::istringstream ls(line);
    double s = 0.0;
    Vec3 v;
    if (!(ls >> s >> v[0] >> v[1] >> v[2])) {
      if (lineno == 1 && t.scalar.empty()) continue;  // header
      throw ValidationError(fmt::format("data csv line {}: expected 4 numbers `scalar vx vy vz`", lineno));
    }
    t.scalar.push_back(s);
    t.vector.push_back(v);
  }
  return t;
}

}  // namespace trefftz
