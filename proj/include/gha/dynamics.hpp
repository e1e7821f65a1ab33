#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gha/poly.hpp"

namespace gha {

/// One period lambda(0..m-1) of a periodic sequence under h -> f(h), with
/// m the exact period.
class Orbit {
 public:
  /// Validates f(values[i]) = values[i+1 mod m] and that no proper divisor
  /// of m is a period. Approximate values are compared within 10*tol.
  static Orbit make(std::vector<Scalar> values, const Poly& f);
  static Orbit unchecked(std::vector<Scalar> values);

  const std::vector<Scalar>& values() const { return values_; }
  std::size_t period() const { return values_.size(); }
  /// lambda(i) for any integer i.
  const Scalar& at(long i) const;
  Backend backend() const { return values_.front().backend(); }

  /// lambda shifted by k: result.at(i) == at(i + k).
  Orbit rotated(long k) const;
  /// Rotation whose first entry is lexicographically smallest by (re, im),
  /// ties broken by the following entries.
  Orbit canonical() const;
  bool equal_up_to_shift(const Orbit& o) const;
  bool operator==(const Orbit& o) const;

  Orbit to_approx() const;

 private:
  explicit Orbit(std::vector<Scalar> v) : values_(std::move(v)) {}
  std::vector<Scalar> values_;
};

/// The continuum of orbits {center + b*w^i} (b != 0) of a linear f with
/// f^{(n)} = h identically.
struct OrbitFamily {
  Scalar center;
  Scalar multiplier;  // w, of multiplicative order `period`
  unsigned period;

  Orbit instance(const Scalar& b) const;
};

struct OrbitSet {
  std::vector<Orbit> orbits;
  std::vector<Scalar> residual_roots;  // approximate roots that could not be grouped
  std::optional<OrbitFamily> family;
  Backend backend = Backend::exact;
};

struct PeriodicConfig {
  unsigned conductor = 1;        // exact roots are searched in Q(zeta_lcm(conductor, cond(f)))
  unsigned family_samples = 3;   // instances emitted for a continuum
  std::uint64_t seed = 1;
};

/// Orbits of exact period n for h -> f(h). Throws DomainError when f = h.
OrbitSet periodic_points(const Poly& f, unsigned n, const PeriodicConfig& config = {});

/// Deterministic nonzero sample values: small rationals (exact) or complex
/// numbers of modulus in [0.5, 2] (approx).
std::vector<Scalar> sample_nonzero(Backend b, std::size_t count, std::uint64_t seed);

}  // namespace gha
