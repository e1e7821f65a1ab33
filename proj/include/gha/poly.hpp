#pragma once

#include <complex>
#include <initializer_list>
#include <string>
#include <vector>

#include "gha/scalar.hpp"

namespace gha {

/// Dense univariate polynomial in h over Scalar; coeffs()[k] multiplies h^k.
/// The zero polynomial has no coefficients but still remembers its backend.
class Poly {
 public:
  explicit Poly(Backend b = Backend::exact) : backend_(b) {}
  explicit Poly(std::vector<Scalar> coeffs);
  Poly(std::vector<Scalar> coeffs, Backend b);

  static Poly constant(const Scalar& c);
  static Poly monomial(const Scalar& c, std::size_t degree);
  /// The polynomial h.
  static Poly identity(Backend b = Backend::exact);
  /// Integer coefficients, constant term first.
  static Poly from_ints(std::initializer_list<long> coeffs, Backend b = Backend::exact);

  Backend backend() const { return backend_; }
  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_identity() const;
  const std::vector<Scalar>& coeffs() const { return c_; }
  Scalar coeff(std::size_t k) const;
  const Scalar& leading() const;
  /// lcm of the coefficient conductors (1 for approximate polynomials).
  unsigned conductor() const;

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly scale(const Scalar& s) const;
  Poly pow(unsigned e) const;
  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  /// Horner evaluation.
  Scalar evaluate(const Scalar& x) const;
  Poly derivative() const;
  Poly monic() const;
  Poly to_approx() const;

  /// Canonical text, e.g. `h^2 + 2*h + (-3/4)`.
  std::string to_string() const;

 private:
  void trim();

  std::vector<Scalar> c_;
  Backend backend_;
};

/// outer(inner(h)).
Poly compose(const Poly& outer, const Poly& inner);

/// f^{(i)}: f composed with itself i times; iterate(f, 0) = h. Throws
/// NumericError when the result degree would exceed
/// numeric_config().max_degree.
Poly iterate(const Poly& f, unsigned i);

struct DivMod {
  Poly quotient;
  Poly remainder;
};
DivMod divmod(const Poly& a, const Poly& b);
/// Monic gcd (zero when both inputs are zero). Exact backend only.
Poly gcd(const Poly& a, const Poly& b);
/// Product of the distinct monic irreducible factors (same roots, all simple).
Poly squarefree_part(const Poly& p);

/// Raised by roots() when Aberth iteration does not converge; carries the
/// last iterates.
class RootFindingError : public NumericError {
 public:
  RootFindingError(const std::string& what, std::vector<std::complex<double>> partial)
      : NumericError(what), partial_(std::move(partial)) {}
  const std::vector<std::complex<double>>& partial() const { return partial_; }

 private:
  std::vector<std::complex<double>> partial_;
};

/// All complex roots of p with multiplicity (approximate backend),
/// via Aberth-Ehrlich iteration followed by Newton polishing.
std::vector<Scalar> roots(const Poly& p);

/// Exact candidates in Q(zeta_N) for an approximate complex value.
std::vector<Cyclotomic> recognize_in_field(std::complex<double> z, unsigned conductor);

struct RootSplit {
  std::vector<Scalar> exact;  // distinct roots found in Q(zeta_N)
  Poly rest;                  // squarefree cofactor holding the other roots
};

/// Distinct roots of an exact polynomial that lie in Q(zeta_N), where N is
/// lcm(conductor, p.conductor()). Each root is certified by exact division.
RootSplit exact_roots(const Poly& p, unsigned conductor = 1);

}  // namespace gha
