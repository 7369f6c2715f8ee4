#include "trefftz/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <fmt/format.h>

namespace trefftz {

namespace {

// Powers p^0..p^n of each coordinate, reused by every term of one evaluation.
class PowerTable {
public:
  PowerTable(const Vec3& p, int n) : n_(n + 1), pw_(3 * static_cast<std::size_t>(n_)) {
    for (int a = 0; a < 3; ++a) {
      double v = 1.0;
      for (int e = 0; e < n_; ++e) {
        pw_[static_cast<std::size_t>(a * n_ + e)] = v;
        v *= p[a];
      }
    }
  }
  double operator()(const Monomial& m) const {
    return pw_[static_cast<std::size_t>(m.i)] * pw_[static_cast<std::size_t>(n_ + m.j)] *
           pw_[static_cast<std::size_t>(2 * n_ + m.k)];
  }

private:
  int n_;
  std::vector<double> pw_;
};

}  // namespace

Poly3::Poly3(double constant) {
  if (constant != 0.0) terms_.emplace(Monomial{}, constant);
}

Poly3::Poly3(Monomial m, double coefficient) {
  if (m.i < 0 || m.j < 0 || m.k < 0) throw std::invalid_argument("Poly3: negative exponent");
  if (coefficient != 0.0) terms_.emplace(m, coefficient);
}

Poly3 Poly3::coordinate(int axis) {
  switch (axis) {
    case 0: return x();
    case 1: return y();
    case 2: return z();
    default: throw std::invalid_argument("Poly3::coordinate: axis must be 0, 1 or 2");
  }
}

Poly3 Poly3::radius_squared() {
  Poly3 r;
  r.add_term({2, 0, 0}, 1.0);
  r.add_term({0, 2, 0}, 1.0);
  r.add_term({0, 0, 2}, 1.0);
  return r;
}

double Poly3::coefficient(Monomial m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? 0.0 : it->second;
}

void Poly3::add_term(Monomial m, double c) {
  if (c == 0.0) return;
  if (m.i < 0 || m.j < 0 || m.k < 0) throw std::invalid_argument("Poly3: negative exponent");
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
  }
}

int Poly3::degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.degree(); }

std::optional<int> Poly3::homogeneous_degree() const {
  if (terms_.empty()) return std::nullopt;
  const int lo = terms_.begin()->first.degree();
  const int hi = terms_.rbegin()->first.degree();
  if (lo != hi) return std::nullopt;
  return lo;
}

double Poly3::max_abs_coefficient() const {
  double m = 0.0;
  for (const auto& [mono, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

double Poly3::eval(const Vec3& p) const {
  if (terms_.empty()) return 0.0;
  const PowerTable pw(p, degree());
  double acc = 0.0;
  for (const auto& [m, c] : terms_) acc += c * pw(m);
  return acc;
}

Poly3& Poly3::operator+=(const Poly3& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Poly3& Poly3::operator-=(const Poly3& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Poly3& Poly3::operator*=(double s) {
  if (s == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= s;
    // underflow can produce an exact zero
    if (it->second == 0.0) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
  return *this;
}

Poly3 mul(const Poly3& p, const Poly3& q) {
  Poly3 r;
  for (const auto& [mp, cp] : p.terms()) {
    for (const auto& [mq, cq] : q.terms()) {
      r.add_term({mp.i + mq.i, mp.j + mq.j, mp.k + mq.k}, cp * cq);
    }
  }
  return r;
}

Poly3 diff(const Poly3& p, int axis) {
  if (axis < 0 || axis > 2) throw std::invalid_argument("diff: axis must be 0, 1 or 2");
  Poly3 r;
  for (const auto& [m, c] : p.terms()) {
    const int e = m.exponent(axis);
    if (e == 0) continue;
    Monomial d = m;
    (axis == 0 ? d.i : axis == 1 ? d.j : d.k) -= 1;
    r.add_term(d, c * e);
  }
  return r;
}

Poly3 laplacian(const Poly3& p) {
  Poly3 r;
  for (int a = 0; a < 3; ++a) r += diff(diff(p, a), a);
  return r;
}

Poly3 chop(const Poly3& p, double tol) {
  const double cut = tol * p.max_abs_coefficient();
  Poly3 r;
  for (const auto& [m, c] : p.terms()) {
    if (std::abs(c) > cut) r.add_term(m, c);
  }
  return r;
}

void write_text(std::ostream& os, const Poly3& p) {
  for (const auto& [m, c] : p.terms()) os << fmt::format("{} {} {} {:.17g}\n", m.i, m.j, m.k, c);
}

std::string to_text(const Poly3& p) {
  std::ostringstream os;
  write_text(os, p);
  return os.str();
}

Poly3 read_text(std::istream& is) {
  Poly3 p;
  std::string line;
  while (is.peek() != std::char_traits<char>::eof() && is.peek() != '#') {
    if (!std::getline(is, line)) break;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    Monomial m;
    double c = 0.0;
    if (!(ls >> m.i >> m.j >> m.k >> c)) {
      throw std::runtime_error("read_text: malformed term line '" + line + "'");
    }
    p.add_term(m, c);
  }
  return p;
}

VecPoly3 VecPoly3::constant(const Vec3& a) { return {Poly3(a[0]), Poly3(a[1]), Poly3(a[2])}; }

VecPoly3 VecPoly3::linear(const Mat3& m) {
  VecPoly3 v;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) v[i] += Poly3::coordinate(j) * m(i, j);
  }
  return v;
}

VecPoly3 VecPoly3::rigid(const Vec3& a, const Vec3& b, const Vec3& x0) {
  // b ^ (x - x0) = B x - b ^ x0 with B the cross-product matrix of b
  Mat3 cross;
  cross << 0.0, -b[2], b[1], b[2], 0.0, -b[0], -b[1], b[0], 0.0;
  return constant(a - b.cross(x0)) + linear(cross);
}

double VecPoly3::max_abs_coefficient() const {
  return std::max({c_[0].max_abs_coefficient(), c_[1].max_abs_coefficient(),
                   c_[2].max_abs_coefficient()});
}

std::optional<int> VecPoly3::homogeneous_degree() const {
  std::optional<int> deg;
  for (const auto& p : c_) {
    if (p.is_zero()) continue;
    auto d = p.homogeneous_degree();
    if (!d || (deg && *deg != *d)) return std::nullopt;
    deg = d;
  }
  return deg;
}

bool VecPoly3::is_homogeneous(int degree) const {
  for (const auto& p : c_) {
    for (const auto& [m, c] : p.terms()) {
      if (m.degree() != degree) return false;
    }
  }
  return true;
}

Vec3 VecPoly3::eval(const Vec3& p) const { return {c_[0].eval(p), c_[1].eval(p), c_[2].eval(p)}; }

VecPoly3& VecPoly3::operator+=(const VecPoly3& o) {
  for (int i = 0; i < 3; ++i) (*this)[i] += o[i];
  return *this;
}

VecPoly3& VecPoly3::operator-=(const VecPoly3& o) {
  for (int i = 0; i < 3; ++i) (*this)[i] -= o[i];
  return *this;
}

VecPoly3& VecPoly3::operator*=(double s) {
  for (auto& p : c_) p *= s;
  return *this;
}

Poly3 divergence(const VecPoly3& v) { return diff(v[0], 0) + diff(v[1], 1) + diff(v[2], 2); }

VecPoly3 curl(const VecPoly3& v) {
  return {diff(v[2], 1) - diff(v[1], 2), diff(v[0], 2) - diff(v[2], 0),
          diff(v[1], 0) - diff(v[0], 1)};
}

VecPoly3 laplacian(const VecPoly3& v) { return {laplacian(v[0]), laplacian(v[1]), laplacian(v[2])}; }

VecPoly3 gradient(const Poly3& s) { return {diff(s, 0), diff(s, 1), diff(s, 2)}; }

VecPoly3 chop(const VecPoly3& v, double tol) {
  const double cut = tol * v.max_abs_coefficient();
  VecPoly3 r;
  for (int i = 0; i < 3; ++i) {
    for (const auto& [m, c] : v[i].terms()) {
      if (std::abs(c) > cut) r[i].add_term(m, c);
    }
  }
  return r;
}

JacobianPoly::JacobianPoly(const VecPoly3& v) {
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) d_[static_cast<std::size_t>(3 * i + j)] = diff(v[i], j);
  }
}

Mat3 JacobianPoly::eval(const Vec3& p) const {
  int deg = 0;
  for (const auto& d : d_) deg = std::max(deg, d.degree());
  const PowerTable pw(p, deg);
  Mat3 g;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double acc = 0.0;
      for (const auto& [m, c] : (*this)(i, j).terms()) acc += c * pw(m);
      g(i, j) = acc;
    }
  }
  return g;
}

}  // namespace trefftz
