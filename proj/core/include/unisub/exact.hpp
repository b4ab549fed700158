#pragma once

// Exact rational and Gaussian-rational scalars usable as Eigen matrix entries.

#include <boost/multiprecision/cpp_int.hpp>
#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace unisub {

class Rational {
 public:
  using Impl = boost::multiprecision::cpp_rational;

  Rational() = default;
  Rational(long long value) : v_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long long num, long long den);
  explicit Rational(Impl value) : v_(std::move(value)) {}

  /// Parses "p", "-p" or "p/q".
  static Rational parse(const std::string& text);

  [[nodiscard]] const Impl& impl() const { return v_; }
  [[nodiscard]] bool is_zero() const { return v_ == 0; }
  [[nodiscard]] bool is_integer() const;
  [[nodiscard]] int sign() const { return v_.sign(); }
  /// Throws unless the value is an integer fitting in 64 bits.
  [[nodiscard]] long long to_integer() const;
  [[nodiscard]] double to_double() const;
  [[nodiscard]] std::string str() const;

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(Impl(a.v_ + b.v_)); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(Impl(a.v_ - b.v_)); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(Impl(a.v_ * b.v_)); }
  friend Rational operator/(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a) { return Rational(Impl(-a.v_)); }
  Rational& operator+=(const Rational& b) { v_ += b.v_; return *this; }
  Rational& operator-=(const Rational& b) { v_ -= b.v_; return *this; }
  Rational& operator*=(const Rational& b) { v_ *= b.v_; return *this; }
  Rational& operator/=(const Rational& b) { *this = *this / b; return *this; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }
  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  Impl v_;
};

/// Element of Q(i).
struct GaussRational {
  Rational re;
  Rational im;

  GaussRational() = default;
  GaussRational(long long r) : re(r) {}  // NOLINT(google-explicit-constructor)
  GaussRational(Rational r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  GaussRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  [[nodiscard]] bool is_zero() const { return re.is_zero() && im.is_zero(); }
  [[nodiscard]] Rational norm2() const { return re * re + im * im; }
  [[nodiscard]] std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }

  friend GaussRational operator+(const GaussRational& a, const GaussRational& b) { return {a.re + b.re, a.im + b.im}; }
  friend GaussRational operator-(const GaussRational& a, const GaussRational& b) { return {a.re - b.re, a.im - b.im}; }
  friend GaussRational operator-(const GaussRational& a) { return {-a.re, -a.im}; }
  friend GaussRational operator*(const GaussRational& a, const GaussRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussRational operator/(const GaussRational& a, const GaussRational& b);
  GaussRational& operator+=(const GaussRational& b) { re += b.re; im += b.im; return *this; }
  GaussRational& operator-=(const GaussRational& b) { re -= b.re; im -= b.im; return *this; }
  GaussRational& operator*=(const GaussRational& b) { *this = *this * b; return *this; }
  GaussRational& operator/=(const GaussRational& b) { *this = *this / b; return *this; }
  friend bool operator==(const GaussRational& a, const GaussRational& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const GaussRational& a, const GaussRational& b) { return !(a == b); }
  friend std::ostream& operator<<(std::ostream& os, const GaussRational& z);
};

inline GaussRational conj(const GaussRational& z) { return {z.re, -z.im}; }
inline Rational conj(const Rational& q) { return q; }

/// Nearest fraction with denominator at most `max_den` (continued fractions).
Rational rationalize(double x, long long max_den);
GaussRational rationalize(std::complex<double> z, long long max_den);

}  // namespace unisub

namespace Eigen {

template <>
struct NumTraits<unisub::Rational> : GenericNumTraits<unisub::Rational> {
  using Real = unisub::Rational;
  using NonInteger = unisub::Rational;
  using Nested = unisub::Rational;
  static constexpr int digits10() { return 0; }
  enum { IsComplex = 0, IsInteger = 0, IsSigned = 1, RequireInitialization = 1, ReadCost = 4, AddCost = 16, MulCost = 32 };
};

// IsComplex stays 0 so Eigen never reaches for std::complex helpers; conjugation is done explicitly.
template <>
struct NumTraits<unisub::GaussRational> : GenericNumTraits<unisub::GaussRational> {
  using Real = unisub::Rational;
  using NonInteger = unisub::GaussRational;
  using Nested = unisub::GaussRational;
  static constexpr int digits10() { return 0; }
  enum { IsComplex = 0, IsInteger = 0, IsSigned = 1, RequireInitialization = 1, ReadCost = 8, AddCost = 32, MulCost = 128 };
};

}  // namespace Eigen

namespace unisub {

using MatrixXq = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using VectorXq = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using MatrixXg = Eigen::Matrix<GaussRational, Eigen::Dynamic, Eigen::Dynamic>;
using VectorXg = Eigen::Matrix<GaussRational, Eigen::Dynamic, 1>;

Eigen::MatrixXcd to_complex(const MatrixXg& m);
Eigen::MatrixXd to_double(const MatrixXq& m);
MatrixXg conjugate_transpose(const MatrixXg& m);
MatrixXg identity_g(Eigen::Index n);

}  // namespace unisub
