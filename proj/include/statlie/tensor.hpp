#pragma once

#include <array>
#include <cmath>
#include <cstddef>

// Small fixed-size containers for tensor components over a 2-dimensional
// space. Index values are 0 (x / e1) and 1 (y / e2) throughout.

namespace statlie {

using Vec2 = std::array<double, 2>;

inline double dot(const Vec2& a, const Vec2& b) { return a[0] * b[0] + a[1] * b[1]; }

struct Mat2 {
  // row-major: m(i,j) = v[2*i+j]
  std::array<double, 4> v{};

  double& operator()(int i, int j) { return v[static_cast<std::size_t>(2 * i + j)]; }
  double operator()(int i, int j) const { return v[static_cast<std::size_t>(2 * i + j)]; }

  static Mat2 identity() { return Mat2{{1.0, 0.0, 0.0, 1.0}}; }
  static Mat2 diag(double a, double b) { return Mat2{{a, 0.0, 0.0, b}}; }

  double det() const { return v[0] * v[3] - v[1] * v[2]; }

  Vec2 mul(const Vec2& x) const {
    return {v[0] * x[0] + v[1] * x[1], v[2] * x[0] + v[3] * x[1]};
  }

  // solves A u = b (2x2 Cramer); caller checks det
  Vec2 solve(const Vec2& b) const {
    const double d = det();
    return {(b[0] * v[3] - b[1] * v[1]) / d, (v[0] * b[1] - v[2] * b[0]) / d};
  }

  double max_abs() const {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  }
};

// Rank-3 array c(i,j,k), 8 components.
struct Tensor3 {
  std::array<double, 8> v{};

  double& operator()(int i, int j, int k) {
    return v[static_cast<std::size_t>(4 * i + 2 * j + k)];
  }
  double operator()(int i, int j, int k) const {
    return v[static_cast<std::size_t>(4 * i + 2 * j + k)];
  }

  double max_abs() const {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  }

  // max over index permutations of |c_ijk - c_pi(ijk)|
  double symmetry_defect() const {
    double d = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) {
          const double c = (*this)(i, j, k);
          d = std::max(d, std::abs(c - (*this)(i, k, j)));
          d = std::max(d, std::abs(c - (*this)(j, i, k)));
          d = std::max(d, std::abs(c - (*this)(j, k, i)));
          d = std::max(d, std::abs(c - (*this)(k, i, j)));
          d = std::max(d, std::abs(c - (*this)(k, j, i)));
        }
    return d;
  }

  Tensor3 operator+(const Tensor3& o) const {
    Tensor3 r;
    for (std::size_t n = 0; n < 8; ++n) r.v[n] = v[n] + o.v[n];
    return r;
  }
  Tensor3 operator-(const Tensor3& o) const {
    Tensor3 r;
    for (std::size_t n = 0; n < 8; ++n) r.v[n] = v[n] - o.v[n];
    return r;
  }
  Tensor3 operator*(double s) const {
    Tensor3 r;
    for (std::size_t n = 0; n < 8; ++n) r.v[n] = v[n] * s;
    return r;
  }
};

inline double max_abs_diff(const Tensor3& a, const Tensor3& b) {
  double m = 0.0;
  for (std::size_t n = 0; n < 8; ++n) m = std::max(m, std::abs(a.v[n] - b.v[n]));
  return m;
}

// Rank-4 array t(i,j,k,l), 16 components.
struct Tensor4 {
  std::array<double, 16> v{};

  double& operator()(int i, int j, int k, int l) {
    return v[static_cast<std::size_t>(8 * i + 4 * j + 2 * k + l)];
  }
  double operator()(int i, int j, int k, int l) const {
    return v[static_cast<std::size_t>(8 * i + 4 * j + 2 * k + l)];
  }

  double max_abs() const {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  }

  // max over permutations of the first three indices (the vector arguments
  // of an algebra-valued trilinear map)
  double symmetry_defect_first3() const {
    double d = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
          for (int l = 0; l < 2; ++l) {
            const double c = (*this)(i, j, k, l);
            d = std::max(d, std::abs(c - (*this)(i, k, j, l)));
            d = std::max(d, std::abs(c - (*this)(j, i, k, l)));
            d = std::max(d, std::abs(c - (*this)(j, k, i, l)));
            d = std::max(d, std::abs(c - (*this)(k, i, j, l)));
            d = std::max(d, std::abs(c - (*this)(k, j, i, l)));
          }
    return d;
  }

  // max over all 24 permutations of the four indices (scalar rank-4 tensors)
  double symmetry_defect_all4() const {
    static constexpr int perms[24][4] = {
        {0, 1, 2, 3}, {0, 1, 3, 2}, {0, 2, 1, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}, {0, 3, 2, 1},
        {1, 0, 2, 3}, {1, 0, 3, 2}, {1, 2, 0, 3}, {1, 2, 3, 0}, {1, 3, 0, 2}, {1, 3, 2, 0},
        {2, 0, 1, 3}, {2, 0, 3, 1}, {2, 1, 0, 3}, {2, 1, 3, 0}, {2, 3, 0, 1}, {2, 3, 1, 0},
        {3, 0, 1, 2}, {3, 0, 2, 1}, {3, 1, 0, 2}, {3, 1, 2, 0}, {3, 2, 0, 1}, {3, 2, 1, 0}};
    double d = 0.0;
    int idx[4];
    for (idx[0] = 0; idx[0] < 2; ++idx[0])
      for (idx[1] = 0; idx[1] < 2; ++idx[1])
        for (idx[2] = 0; idx[2] < 2; ++idx[2])
          for (idx[3] = 0; idx[3] < 2; ++idx[3]) {
            const double c = (*this)(idx[0], idx[1], idx[2], idx[3]);
            for (const auto& p : perms) {
              const double cp = (*this)(idx[p[0]], idx[p[1]], idx[p[2]], idx[p[3]]);
              d = std::max(d, std::abs(c - cp));
            }
          }
    return d;
  }
};

inline double max_abs_diff(const Tensor4& a, const Tensor4& b) {
  double m = 0.0;
  for (std::size_t n = 0; n < 16; ++n) m = std::max(m, std::abs(a.v[n] - b.v[n]));
  return m;
}

}  // namespace statlie
