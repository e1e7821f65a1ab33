#pragma once

// Random generators shared by the property tests.

#include <random>
#include <tuple>

#include "gha/algebra.hpp"
#include "gha/modtheory.hpp"
#include "gha/poly.hpp"

namespace gha::testing {

inline Rational random_rational(std::mt19937_64& rng, long max_num = 5, long max_den = 4) {
  std::uniform_int_distribution<long> num(-max_num, max_num), den(1, max_den);
  return make_rational(num(rng), den(rng));
}

inline Scalar random_cyclotomic(std::mt19937_64& rng, unsigned conductor) {
  std::vector<Rational> c;
  for (unsigned k = 0; k < euler_phi(conductor); ++k) c.push_back(random_rational(rng));
  return Scalar(Cyclotomic(conductor, std::move(c)));
}

inline Scalar random_nonzero_rational(std::mt19937_64& rng, long max_num = 5, long max_den = 3) {
  for (;;) {
    Rational q = random_rational(rng, max_num, max_den);
    if (sgn(q) != 0) return Scalar::rational(q);
  }
}

inline Scalar random_integer(std::mt19937_64& rng, long lo, long hi) {
  return Scalar::from_int(std::uniform_int_distribution<long>(lo, hi)(rng));
}

/// Random exact polynomial of exactly the given degree with small integer
/// coefficients (nonzero leading coefficient).
inline Poly random_poly(std::mt19937_64& rng, int degree, long max_coeff = 2) {
  if (degree < 0) return Poly(Backend::exact);
  std::vector<Scalar> c;
  for (int k = 0; k <= degree; ++k) c.push_back(random_integer(rng, -max_coeff, max_coeff));
  while (c.back().is_zero()) c.back() = random_integer(rng, -max_coeff, max_coeff);
  return Poly(std::move(c), Backend::exact);
}

/// Random normal-form element: up to `max_terms` terms x^i g(h) y^k with
/// i, k and deg g at most `max_exp`.
inline Element random_element(std::mt19937_64& rng, const PresentationPtr& p, int max_terms = 4, int max_exp = 4) {
  std::uniform_int_distribution<int> count(1, max_terms), e(0, max_exp);
  Element out(p);
  for (int t = count(rng); t > 0; --t) {
    const unsigned i = static_cast<unsigned>(e(rng)), k = static_cast<unsigned>(e(rng));
    out = out + Element::monomial(p, i, random_poly(rng, e(rng)), k);
  }
  return out;
}

inline Element random_nonzero_element(std::mt19937_64& rng, const PresentationPtr& p, int max_terms = 4,
                                      int max_exp = 4) {
  for (;;) {
    Element e = random_element(rng, p, max_terms, max_exp);
    if (!e.is_zero()) return e;
  }
}

inline Scalar rat(long p, long d = 1) { return Scalar::rational(make_rational(p, d)); }

/// The orbit b, f(b), ..., f^{(n-1)}(b); throws unless it has exact period n.
inline Orbit orbit_of(const Poly& f, const Scalar& b, unsigned n) {
  std::vector<Scalar> v{b};
  for (unsigned i = 1; i < n; ++i) v.push_back(f.evaluate(v.back()));
  return Orbit::make(std::move(v), f);
}

struct Case {
  Poly f;
  ModuleDescriptor d;
};

/// Random valid descriptors over f in {zeta(3) h, h^2, h^3, h^2 - 3}.
inline std::vector<Case> random_cases(std::mt19937_64& rng, std::size_t count) {
  const Poly w3 = Poly::monomial(Scalar::zeta(3, 1), 1), sq = Poly::from_ints({0, 0, 1}), cube = Poly::from_ints({0, 0, 0, 1}),
             shifted = Poly::from_ints({-3, 0, 1});
  // Orbits with exact coordinates.
  const std::vector<std::pair<Poly, Orbit>> orbits = {
      {w3, orbit_of(w3, rat(2), 3)},
      {w3, orbit_of(w3, rat(-1, 2), 3)},
      {sq, orbit_of(sq, Scalar::zeta(3, 1), 2)},
      {sq, orbit_of(sq, Scalar::zeta(7, 1), 3)},
      {sq, orbit_of(sq, rat(1), 1)},
      {cube, orbit_of(cube, Scalar::zeta(8, 1), 2)},
      {cube, orbit_of(cube, Scalar::zeta(4, 1), 2)},
      {shifted, orbit_of(shifted, rat(1), 2)},
  };
  // (f, z, n) with z + f^{(n)}(-z) = 0 and the exclusion holding.
  const std::vector<std::tuple<Poly, Scalar, unsigned>> nilpotent = {
      {w3, rat(5), 3}, {w3, rat(-2, 3), 3}, {sq, rat(-1), 1}, {sq, rat(0), 1}, {shifted, rat(-1), 2}, {shifted, rat(2), 2},
  };
  std::vector<Case> out;
  std::uniform_int_distribution<int> kind(0, 2);
  while (out.size() < count) {
    const int k = kind(rng);
    if (k == 2) {
      const auto& [f, z, n] = nilpotent[rng() % nilpotent.size()];
      out.push_back({f, NilpotentModule{z, n}});
      continue;
    }
    const auto& [f, o] = orbits[rng() % orbits.size()];
    const Orbit shifted_o = o.rotated(static_cast<long>(rng() % o.period()));
    const Scalar a = random_nonzero_rational(rng);
    if (k == 0) {
      out.push_back({f, XCyclicModule{shifted_o, Scalar::rational(random_rational(rng)), a}});
    } else {
      const Scalar z = -o.at(static_cast<long>(rng() % o.period()));
      out.push_back({f, YCyclicModule{shifted_o, z, a}});
    }
  }
  return out;
}

}  // namespace gha::testing
