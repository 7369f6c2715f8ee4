#pragma once

namespace trefftz {

/// Isotropic Lame constants. Admissible when mu > 0 and 3 lambda + 2 mu > 0.
class Material {
public:
  /// Throws std::invalid_argument unless the pair is admissible.
  Material(double lambda, double mu);

  double lambda() const { return lambda_; }
  double mu() const { return mu_; }

  static bool admissible(double lambda, double mu) { return mu > 0.0 && 3.0 * lambda + 2.0 * mu > 0.0; }

  friend bool operator==(const Material&, const Material&) = default;

private:
  double lambda_;
  double mu_;
};

}  // namespace trefftz
