#include "unisub/exact.hpp"

#include "unisub/error.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

namespace unisub {

Rational::Rational(long long num, long long den) : v_(num) {
  require(den != 0, ErrorCode::InvalidArgument, "zero denominator");
  v_ /= Impl(den);
}

Rational Rational::parse(const std::string& text) {
  try {
    auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(Impl(boost::multiprecision::cpp_int(text)));
    boost::multiprecision::cpp_int num(text.substr(0, slash));
    boost::multiprecision::cpp_int den(text.substr(slash + 1));
    require(den != 0, ErrorCode::InvalidArgument, "zero denominator in '" + text + "'");
    return Rational(Impl(num, den));
  } catch (const std::runtime_error& e) {
    if (dynamic_cast<const Error*>(&e) != nullptr) throw;
    fail(ErrorCode::InvalidArgument, "cannot parse rational '" + text + "'");
  }
}

Rational operator/(const Rational& a, const Rational& b) {
  require(!b.is_zero(), ErrorCode::InvalidArgument, "division by zero");
  return Rational(Rational::Impl(a.v_ / b.v_));
}

bool Rational::is_integer() const { return boost::multiprecision::denominator(v_) == 1; }

long long Rational::to_integer() const {
  require(is_integer(), ErrorCode::Internal, "rational " + str() + " is not an integer");
  auto num = boost::multiprecision::numerator(v_);
  require(num <= std::numeric_limits<long long>::max() && num >= std::numeric_limits<long long>::min(),
          ErrorCode::Internal, "integer overflow");
  return num.convert_to<long long>();
}

double Rational::to_double() const { return v_.convert_to<double>(); }

std::string Rational::str() const {
  std::ostringstream os;
  os << v_;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.v_; }

GaussRational operator/(const GaussRational& a, const GaussRational& b) {
  Rational d = b.norm2();
  require(!d.is_zero(), ErrorCode::InvalidArgument, "division by zero");
  GaussRational num = a * conj(b);
  return {num.re / d, num.im / d};
}

std::ostream& operator<<(std::ostream& os, const GaussRational& z) {
  return os << '(' << z.re << ',' << z.im << ')';
}

Rational rationalize(double x, long long max_den) {
  require(std::isfinite(x), ErrorCode::InvalidArgument, "cannot rationalize non-finite value");
  // Convergents p_k/q_k of the continued fraction of x.
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double r = x;
  for (int iter = 0; iter < 64; ++iter) {
    double a = std::floor(r);
    if (std::abs(a) > 1e15) break;
    auto ai = static_cast<long long>(a);
    long long p2 = ai * p1 + p0;
    long long q2 = ai * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    double frac = r - a;
    if (std::abs(frac) < 1e-15) break;
    r = 1.0 / frac;
  }
  if (q1 == 0) return Rational(static_cast<long long>(std::llround(x)));
  return Rational(p1, q1);
}

GaussRational rationalize(std::complex<double> z, long long max_den) {
  return {rationalize(z.real(), max_den), rationalize(z.imag(), max_den)};
}

Eigen::MatrixXcd to_complex(const MatrixXg& m) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).to_complex();
  return out;
}

Eigen::MatrixXd to_double(const MatrixXq& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).to_double();
  return out;
}

MatrixXg conjugate_transpose(const MatrixXg& m) {
  MatrixXg out(m.cols(), m.rows());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(j, i) = conj(m(i, j));
  return out;
}

MatrixXg identity_g(Eigen::Index n) {
  MatrixXg out = MatrixXg::Constant(n, n, GaussRational(0));
  for (Eigen::Index i = 0; i < n; ++i) out(i, i) = GaussRational(1);
  return out;
}

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::UnsupportedGroup: return "UnsupportedGroup";
    case ErrorCode::ParentMismatch: return "ParentMismatch";
    case ErrorCode::GroupMismatch: return "GroupMismatch";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::GenericityFailure: return "GenericityFailure";
    case ErrorCode::UnsupportedFactor: return "UnsupportedFactor";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::NotSolvable: return "NotSolvable";
    case ErrorCode::EigenvectorFailure: return "EigenvectorFailure";
    case ErrorCode::NotProper: return "NotProper";
    case ErrorCode::NotCentral: return "NotCentral";
    case ErrorCode::NotBlockwise: return "NotBlockwise";
    case ErrorCode::DegenerateDraws: return "DegenerateDraws";
    case ErrorCode::InvalidRoots: return "InvalidRoots";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace unisub
