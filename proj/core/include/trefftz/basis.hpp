#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "trefftz/material.hpp"
#include "trefftz/polynomial.hpp"

namespace trefftz {

/// Real solid harmonics of degree k: 2k+1 homogeneous harmonic polynomials
/// spanning the harmonic polynomials homogeneous of degree k.
///
/// Built from the associated-Legendre recurrence in (degree, order) on
/// unnormalized r^l P_l^m(cos theta) {cos, sin}(m phi), then scaled to unit
/// max coefficient. Order within a degree: C_k0, C_k1, S_k1, ..., C_kk, S_kk.
std::vector<Poly3> solid_harmonics(int k);

/// Lambda_k = -(lambda + mu) / (2 (lambda (k - 1) + mu (3k - 2))).
double lambda_coeff(const Material& m, int k);

/// The three elastic polynomials generated by one harmonic w of degree k.
std::array<VecPoly3, 3> elastic_polynomials(const Material& m, int k, const Poly3& harmonic);

struct BasisElement {
  int degree;    ///< k
  int harmonic;  ///< s in [0, 2k]
  int row;       ///< i in [0, 2]
  VecPoly3 field;
};

/// Elastic polynomials of degrees 0..K, ordered by degree, then harmonic index,
/// then row. Row i of harmonic w has components
///   delta_ij w + Lambda_k |x|^2 d_j d_i w,   j = 0, 1, 2.
class ElasticBasis {
public:
  ElasticBasis(const Material& material, int max_degree);

  const Material& material() const { return material_; }
  int max_degree() const { return max_degree_; }
  std::size_t size() const { return elements_.size(); }
  const BasisElement& operator[](std::size_t n) const { return elements_[n]; }
  const std::vector<BasisElement>& elements() const { return elements_; }

  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }

  /// 3 (K + 1)^2.
  static std::size_t count(int max_degree);

private:
  Material material_;
  int max_degree_;
  std::vector<BasisElement> elements_;
};

inline ElasticBasis elastic_basis(const Material& material, int max_degree) {
  return ElasticBasis(material, max_degree);
}

}  // namespace trefftz
