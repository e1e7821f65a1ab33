#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gha/error.hpp"

namespace gha {

/// Exact rational number. GMP keeps it canonical (gcd 1, positive
/// denominator) as long as every construction goes through make_rational.
using Rational = mpq_class;

Rational make_rational(long num, long den = 1);
Rational make_rational(const mpz_class& num, const mpz_class& den);

/// Tunables shared by every approximate computation.
struct NumericConfig {
  double tol = 1e-9;               // ApproxComplex equality radius
  unsigned max_order = 1024;       // approximate root-of-unity search bound
  std::size_t max_degree = 4096;   // guard for iterate()
  unsigned max_root_iterations = 500;
};

const NumericConfig& numeric_config();
/// Not synchronized: call before spawning worker threads.
void set_numeric_config(const NumericConfig& config);

enum class Backend { exact, approx };

std::string to_string(Backend b);

/// Element of the cyclotomic field Q(zeta_N), stored in the power basis
/// 1, zeta, ..., zeta^(phi(N)-1) modulo the N-th cyclotomic polynomial.
/// Binary operations on different conductors embed both operands into
/// Q(zeta_lcm).
class Cyclotomic {
 public:
  Cyclotomic();
  explicit Cyclotomic(Rational q);
  Cyclotomic(unsigned conductor, std::vector<Rational> coords);

  /// zeta_N^k.
  static Cyclotomic zeta(unsigned conductor, long k = 1);

  unsigned conductor() const { return conductor_; }
  const std::vector<Rational>& coords() const { return coords_; }

  bool is_zero() const;
  bool is_rational() const;
  /// Only meaningful when is_rational().
  const Rational& rational_part() const { return coords_.front(); }

  /// Same value expressed over Q(zeta_target); conductor() must divide target.
  Cyclotomic embed(unsigned target) const;

  Cyclotomic operator-() const;
  Cyclotomic operator+(const Cyclotomic& o) const;
  Cyclotomic operator-(const Cyclotomic& o) const;
  Cyclotomic operator*(const Cyclotomic& o) const;
  Cyclotomic operator/(const Cyclotomic& o) const;
  Cyclotomic inverse() const;
  Cyclotomic pow(long e) const;
  bool operator==(const Cyclotomic& o) const;

  std::complex<double> to_complex() const;
  std::string to_string() const;

 private:
  unsigned conductor_;
  std::vector<Rational> coords_;
};

/// Approximate complex number; equality is |a - b| <= numeric_config().tol.
struct ApproxComplex {
  std::complex<double> value;
};

/// Coefficient-field element, either exact (cyclotomic) or approximate.
/// Mixing backends in one operation throws MismatchError; use to_approx()
/// for the explicit one-way promotion.
class Scalar {
 public:
  Scalar();  // exact zero
  Scalar(Cyclotomic c);
  Scalar(ApproxComplex a);

  static Scalar from_int(long v, Backend b = Backend::exact);
  static Scalar rational(Rational q, Backend b = Backend::exact);
  static Scalar zeta(unsigned conductor, long k, Backend b = Backend::exact);
  static Scalar approx(double re, double im = 0.0);
  static Scalar zero(Backend b) { return from_int(0, b); }
  static Scalar one(Backend b) { return from_int(1, b); }

  Backend backend() const;
  bool is_exact() const { return backend() == Backend::exact; }
  const Cyclotomic& exact() const;
  std::complex<double> to_complex() const;
  Scalar to_approx() const;
  /// Conductor of an exact value; 1 for approximate values.
  unsigned conductor() const;

  bool is_zero() const;
  bool is_one() const;

  Scalar operator-() const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar inverse() const;
  Scalar pow(long e) const;

  /// Exact: coordinate equality. Approx: within tolerance.
  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  /// |value| as a double (for residual reports).
  double abs() const;

  /// Canonical literal syntax accepted back by the parser.
  std::string to_string() const;

 private:
  std::variant<Cyclotomic, ApproxComplex> v_;
};

/// Least l with s^l = 1, or nullopt if s is not a root of unity.
std::optional<unsigned> root_of_unity_order(const Scalar& s);

/// Positive divisors of n in increasing order.
std::vector<unsigned> divisors(unsigned n);

/// Integer coefficients (constant term first) of the n-th cyclotomic
/// polynomial.
const std::vector<long>& cyclotomic_polynomial(unsigned n);

unsigned euler_phi(unsigned n);

/// Best rational approximation of x with denominator <= max_den when it is
/// within rel_tol (relative to max(1,|x|)).
std::optional<Rational> recognize_rational(double x, long max_den = 1000000,
                                           double rel_tol = 1e-9);

}  // namespace gha
