#pragma once

#include <array>
#include <cassert>
#include <complex>
#include <initializer_list>

namespace stirap {

using Complex = std::complex<double>;
inline constexpr Complex kI{0.0, 1.0};

/// Fixed-capacity complex vector (up to 4 components): state vectors and
/// reduced blocks. Value type with the arithmetic the integrator needs.
class CVec {
 public:
  static constexpr int kCap = 4;

  CVec() = default;
  explicit CVec(int n) : n_(n) { assert(n >= 0 && n <= kCap); }
  CVec(std::initializer_list<Complex> xs) {
    assert(static_cast<int>(xs.size()) <= kCap);
    for (Complex x : xs) v_[n_++] = x;
  }

  int size() const { return n_; }
  Complex& operator[](int i) { return v_[i]; }
  const Complex& operator[](int i) const { return v_[i]; }

  CVec& operator+=(const CVec& o) {
    assert(n_ == o.n_);
    for (int i = 0; i < n_; ++i) v_[i] += o.v_[i];
    return *this;
  }
  CVec& operator*=(double s) {
    for (int i = 0; i < n_; ++i) v_[i] *= s;
    return *this;
  }
  friend CVec operator+(CVec a, const CVec& b) { return a += b; }
  friend CVec operator*(double s, CVec a) { return a *= s; }

  /// Plain Euclidean squared norm (no variant weighting).
  double norm2() const {
    double s = 0.0;
    for (int i = 0; i < n_; ++i) s += std::norm(v_[i]);
    return s;
  }

 private:
  std::array<Complex, kCap> v_{};
  int n_ = 0;
};

/// Small dense complex matrix (n x n, n <= 4), row-major.
class CMat {
 public:
  CMat() = default;
  explicit CMat(int n) : n_(n) { assert(n >= 0 && n <= CVec::kCap); }

  int size() const { return n_; }
  Complex& operator()(int r, int c) { return m_[r * CVec::kCap + c]; }
  const Complex& operator()(int r, int c) const { return m_[r * CVec::kCap + c]; }

  CVec operator*(const CVec& x) const {
    assert(x.size() == n_);
    CVec y(n_);
    for (int r = 0; r < n_; ++r) {
      Complex acc = 0.0;
      for (int c = 0; c < n_; ++c) acc += (*this)(r, c) * x[c];
      y[r] = acc;
    }
    return y;
  }

  CMat transpose() const {
    CMat t(n_);
    for (int r = 0; r < n_; ++r)
      for (int c = 0; c < n_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  CMat operator*(const CMat& o) const {
    assert(o.n_ == n_);
    CMat p(n_);
    for (int r = 0; r < n_; ++r)
      for (int c = 0; c < n_; ++c) {
        Complex acc = 0.0;
        for (int k = 0; k < n_; ++k) acc += (*this)(r, k) * o(k, c);
        p(r, c) = acc;
      }
    return p;
  }

  friend CMat operator*(Complex s, CMat a) {
    for (int r = 0; r < a.n_; ++r)
      for (int c = 0; c < a.n_; ++c) a(r, c) *= s;
    return a;
  }
  CMat& operator+=(const CMat& o) {
    assert(o.n_ == n_);
    for (int r = 0; r < n_; ++r)
      for (int c = 0; c < n_; ++c) (*this)(r, c) += o(r, c);
    return *this;
  }
  friend CMat operator+(CMat a, const CMat& b) { return a += b; }

 private:
  std::array<Complex, CVec::kCap * CVec::kCap> m_{};
  int n_ = 0;
};

}  // namespace stirap
