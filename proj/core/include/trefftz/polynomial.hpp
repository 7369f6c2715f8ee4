#pragma once

#include <array>
#include <compare>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace trefftz {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Exponent triple (i, j, k) standing for x^i y^j z^k.
///
/// Ordered graded-lexicographically: first by total degree, then by the
/// exponent tuple. This is the order used by the text serialization.
struct Monomial {
  int i = 0;
  int j = 0;
  int k = 0;

  constexpr int degree() const { return i + j + k; }
  constexpr int exponent(int axis) const { return axis == 0 ? i : axis == 1 ? j : k; }

  friend constexpr std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    if (auto c = a.degree() <=> b.degree(); c != 0) return c;
    if (auto c = a.i <=> b.i; c != 0) return c;
    if (auto c = a.j <=> b.j; c != 0) return c;
    return a.k <=> b.k;
  }
  friend constexpr bool operator==(const Monomial&, const Monomial&) = default;
};

/// Sparse trivariate polynomial with real coefficients.
///
/// Canonical form: no stored coefficient is exactly zero, so the zero
/// polynomial is the empty term map and equality is term-map equality.
class Poly3 {
public:
  using TermMap = std::map<Monomial, double>;

  Poly3() = default;
  explicit Poly3(double constant);
  Poly3(Monomial m, double coefficient);

  static Poly3 x() { return {{1, 0, 0}, 1.0}; }
  static Poly3 y() { return {{0, 1, 0}, 1.0}; }
  static Poly3 z() { return {{0, 0, 1}, 1.0}; }
  /// The coordinate polynomial x_axis for axis in {0, 1, 2}.
  static Poly3 coordinate(int axis);
  /// |x|^2 = x^2 + y^2 + z^2.
  static Poly3 radius_squared();

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Coefficient of m (0 when absent).
  double coefficient(Monomial m) const;
  /// Adds c to the coefficient of m, dropping the term if it becomes zero.
  void add_term(Monomial m, double c);

  /// Highest total degree present; -1 for the zero polynomial.
  int degree() const;
  /// Common total degree of all terms, if every term shares it.
  /// The zero polynomial is homogeneous of every degree and reports nullopt.
  std::optional<int> homogeneous_degree() const;
  double max_abs_coefficient() const;

  double eval(const Vec3& p) const;

  Poly3& operator+=(const Poly3& other);
  Poly3& operator-=(const Poly3& other);
  Poly3& operator*=(double s);

  friend Poly3 operator+(Poly3 a, const Poly3& b) { return a += b; }
  friend Poly3 operator-(Poly3 a, const Poly3& b) { return a -= b; }
  friend Poly3 operator-(Poly3 a) { return a *= -1.0; }
  friend Poly3 operator*(Poly3 a, double s) { return a *= s; }
  friend Poly3 operator*(double s, Poly3 a) { return a *= s; }
  friend bool operator==(const Poly3&, const Poly3&) = default;

private:
  TermMap terms_;
};

Poly3 mul(const Poly3& p, const Poly3& q);
inline Poly3 operator*(const Poly3& p, const Poly3& q) { return mul(p, q); }

/// Formal partial derivative along axis 0, 1 or 2.
Poly3 diff(const Poly3& p, int axis);

Poly3 laplacian(const Poly3& p);

/// Drops every coefficient with |c| <= tol * max|c|.
Poly3 chop(const Poly3& p, double tol);

/// Text form: one `i j k coefficient` line per term in graded-lex order,
/// coefficients printed with 17 significant digits.
void write_text(std::ostream& os, const Poly3& p);
std::string to_text(const Poly3& p);
/// Inverse of write_text; reads until end of stream or a line starting with '#'.
Poly3 read_text(std::istream& is);

/// Three polynomial components (u1, u2, u3).
class VecPoly3 {
public:
  VecPoly3() = default;
  VecPoly3(Poly3 u1, Poly3 u2, Poly3 u3) : c_{std::move(u1), std::move(u2), std::move(u3)} {}

  /// Constant field a.
  static VecPoly3 constant(const Vec3& a);
  /// Linear field x -> M x.
  static VecPoly3 linear(const Mat3& m);
  /// Rigid displacement a + b ^ (x - x0).
  static VecPoly3 rigid(const Vec3& a, const Vec3& b, const Vec3& x0 = Vec3::Zero());

  const Poly3& operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  Poly3& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }

  bool is_zero() const { return c_[0].is_zero() && c_[1].is_zero() && c_[2].is_zero(); }
  double max_abs_coefficient() const;
  /// Common degree of all nonzero components, if there is one.
  std::optional<int> homogeneous_degree() const;
  bool is_homogeneous(int degree) const;

  Vec3 eval(const Vec3& p) const;

  VecPoly3& operator+=(const VecPoly3& o);
  VecPoly3& operator-=(const VecPoly3& o);
  VecPoly3& operator*=(double s);
  friend VecPoly3 operator+(VecPoly3 a, const VecPoly3& b) { return a += b; }
  friend VecPoly3 operator-(VecPoly3 a, const VecPoly3& b) { return a -= b; }
  friend VecPoly3 operator*(VecPoly3 a, double s) { return a *= s; }
  friend VecPoly3 operator*(double s, VecPoly3 a) { return a *= s; }
  friend bool operator==(const VecPoly3&, const VecPoly3&) = default;

private:
  std::array<Poly3, 3> c_;
};

Poly3 divergence(const VecPoly3& v);
VecPoly3 curl(const VecPoly3& v);
VecPoly3 laplacian(const VecPoly3& v);
VecPoly3 gradient(const Poly3& s);
VecPoly3 chop(const VecPoly3& v, double tol);

/// Jacobian polynomials J(i, j) = d v_i / d x_j, evaluated in a single pass.
class JacobianPoly {
public:
  JacobianPoly() = default;
  explicit JacobianPoly(const VecPoly3& v);
  const Poly3& operator()(int i, int j) const { return d_[static_cast<std::size_t>(3 * i + j)]; }
  Mat3 eval(const Vec3& p) const;

private:
  std::array<Poly3, 9> d_;
};

}  // namespace trefftz
