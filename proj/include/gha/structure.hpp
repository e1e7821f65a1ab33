#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gha/algebra.hpp"

namespace gha {

struct CenterDescription {
  /// f = w h + (1 - w) c with w of multiplicative order l; otherwise the
  /// center is generated by z alone.
  bool cyclotomic = false;
  unsigned l = 0;
  std::optional<Scalar> c;
  std::vector<Element> generators;
};

CenterDescription center(const PresentationPtr& p);

/// a f((h - c)/a) + c. Throws DomainError for a = 0.
Poly affine_conjugate(const Poly& f, const Scalar& a, const Scalar& c);

/// Compositional inverse of a linear polynomial.
Poly linear_inverse(const Poly& f);

struct IsoWitness {
  Scalar a;
  Scalar c;
  /// f2 = affine_conjugate(swapped ? linear_inverse(f1) : f1, a, c).
  bool swapped = false;
};

struct IsoVerdict {
  bool isomorphic = false;
  int case_label = 0;  // 1..5 when isomorphic
  std::optional<IsoWitness> witness;
  /// The witness was only verified numerically: no exact one lies in the
  /// working field.
  bool numeric_witness = false;
  std::string reason;
};

/// Decides whether the algebras for f1 and f2 are isomorphic. Exact
/// witnesses are searched in Q(zeta_N), N = lcm(conductor, conductors of f1, f2).
IsoVerdict iso_check(const Poly& f1, const Poly& f2, unsigned conductor = 1);

}  // namespace gha
