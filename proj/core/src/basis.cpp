#include "trefftz/basis.hpp"

#include <stdexcept>
#include <string>

namespace trefftz {

Material::Material(double lambda, double mu) : lambda_(lambda), mu_(mu) {
  if (!admissible(lambda, mu)) {
    throw std::invalid_argument("Material: Lame constants must satisfy mu > 0 and 3 lambda + 2 mu > 0 (got lambda=" +
                                std::to_string(lambda) + ", mu=" + std::to_string(mu) + ")");
  }
  // implied by the two conditions above
  if (!(lambda + 2.0 * mu > 0.0)) throw std::logic_error("Material: lambda + 2 mu <= 0");
}

std::vector<Poly3> solid_harmonics(int k) {
  if (k < 0) throw std::invalid_argument("solid_harmonics: degree must be >= 0");
  const Poly3 x = Poly3::x();
  const Poly3 y = Poly3::y();
  const Poly3 z = Poly3::z();
  const Poly3 r2 = Poly3::radius_squared();

  std::vector<Poly3> out;
  out.reserve(static_cast<std::size_t>(2 * k + 1));

  // sectoral pair (C_mm, S_mm), advanced in m
  Poly3 cmm(1.0);
  Poly3 smm;
  for (int m = 0; m <= k; ++m) {
    if (m > 0) {
      const double f = 2.0 * (m - 1) + 1.0;
      Poly3 c_next = (x * cmm - y * smm) * f;
      Poly3 s_next = (y * cmm + x * smm) * f;
      cmm = std::move(c_next);
      smm = std::move(s_next);
    }
    // ascend in degree at fixed order m
    auto ascend = [&](const Poly3& start) {
      Poly3 prev;  // degree l - 1
      Poly3 cur = start;
      for (int l = m; l < k; ++l) {
        Poly3 next = z * cur * (2.0 * l + 1.0);
        if (l > m) next -= r2 * prev * static_cast<double>(l + m);
        next *= 1.0 / static_cast<double>(l - m + 1);
        prev = std::move(cur);
        cur = std::move(next);
      }
      return cur;
    };
    out.push_back(ascend(cmm));
    if (m > 0) out.push_back(ascend(smm));
  }
  for (auto& p : out) p = chop(p * (1.0 / p.max_abs_coefficient()), 1e-15);
  return out;
}

double lambda_coeff(const Material& m, int k) {
  if (k < 0) throw std::invalid_argument("lambda_coeff: degree must be >= 0");
  const double denom = m.lambda() * (k - 1) + m.mu() * (3.0 * k - 2.0);
  return -(m.lambda() + m.mu()) / (2.0 * denom);
}

std::array<VecPoly3, 3> elastic_polynomials(const Material& m, int k, const Poly3& harmonic) {
  const double lam = lambda_coeff(m, k);
  const Poly3 r2 = Poly3::radius_squared();
  const VecPoly3 grad = gradient(harmonic);
  std::array<VecPoly3, 3> rows;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      rows[static_cast<std::size_t>(i)][j] = r2 * diff(grad[i], j) * lam;
      if (i == j) rows[static_cast<std::size_t>(i)][j] += harmonic;
    }
  }
  return rows;
}

std::size_t ElasticBasis::count(int max_degree) {
  const auto n = static_cast<std::size_t>(max_degree + 1);
  return 3 * n * n;
}

ElasticBasis::ElasticBasis(const Material& material, int max_degree)
    : material_(material), max_degree_(max_degree) {
  if (max_degree < 0) throw std::invalid_argument("ElasticBasis: max degree must be >= 0");
  elements_.reserve(count(max_degree));
  for (int k = 0; k <= max_degree; ++k) {
    const auto harmonics = solid_harmonics(k);
    for (std::size_t s = 0; s < harmonics.size(); ++s) {
      auto rows = elastic_polynomials(material, k, harmonics[s]);
      for (int i = 0; i < 3; ++i) {
        elements_.push_back({k, static_cast<int>(s), i, std::move(rows[static_cast<std::size_t>(i)])});
      }
    }
  }
}

}  // namespace trefftz
