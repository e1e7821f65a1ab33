#include "gha/structure.hpp"

#include <numeric>

namespace gha {

CenterDescription center(const PresentationPtr& p) {
  const Poly& f = p->f();
  const Backend be = p->backend();
  CenterDescription out;
  const Element z = Element::generator(p, Generator::z);
  if (f.degree() == 1) {
    const Scalar w = f.coeff(1), b = f.coeff(0);
    std::optional<unsigned> l;
    Scalar c = Scalar::zero(be);
    if (w.is_one()) {
      if (b.is_zero()) l = 1;
    } else if ((l = root_of_unity_order(w))) {
      c = b / (Scalar::one(be) - w);
    }
    if (l) {
      out.cyclotomic = true;
      out.l = *l;
      out.c = c;
      const Poly shifted = Poly({-c, Scalar::one(be)}, be).pow(*l);
      out.generators = {Element::generator(p, Generator::x).pow(*l), Element::generator(p, Generator::y).pow(*l),
                        Element::monomial(p, 0, shifted, 0), z};
      return out;
    }
  }
  out.generators = {z};
  return out;
}

Poly affine_conjugate(const Poly& f, const Scalar& a, const Scalar& c) {
  if (a.is_zero()) throw DomainError("affine conjugation requires a != 0");
  const Scalar inv = a.inverse();
  const Poly inner({-c * inv, inv}, f.backend());
  return compose(f, inner).scale(a) + Poly::constant(c);
}

Poly linear_inverse(const Poly& f) {
  if (f.degree() != 1) throw DomainError("linear_inverse needs a degree-1 polynomial");
  const Scalar inv = f.coeff(1).inverse();
  return Poly({-f.coeff(0) * inv, inv}, f.backend());
}

namespace {

IsoVerdict yes(int label, std::optional<IsoWitness> w, std::string reason) {
  IsoVerdict v;
  v.isomorphic = true;
  v.case_label = label;
  v.witness = std::move(w);
  v.reason = std::move(reason);
  return v;
}

IsoVerdict no(std::string reason) {
  IsoVerdict v;
  v.reason = std::move(reason);
  return v;
}

IsoVerdict linear_case(const Poly& f1, const Poly& f2) {
  const Backend be = f1.backend();
  const Scalar one = Scalar::one(be), zero = Scalar::zero(be);
  const Scalar a1 = f1.coeff(1), a2 = f2.coeff(1);
  const Scalar b1 = f1.coeff(0), b2 = f2.coeff(0);
  if (a1.is_one() != a2.is_one()) return no("one map is a translation and the other is not");
  if (a1.is_one()) {
    if (b1.is_zero() && b2.is_zero()) return yes(2, IsoWitness{one, zero, false}, "both f are h");
    if (b1.is_zero() != b2.is_zero()) return no("h is not isomorphic to a nonzero translation");
    return yes(3, IsoWitness{b2 / b1, zero, false}, "both f are nonzero translations");
  }
  for (bool swapped : {false, true}) {
    const Poly g = swapped ? linear_inverse(f1) : f1;
    if (g.coeff(1) != a2) continue;
    const Scalar c = (b2 - g.coeff(0)) / (one - a2);
    return yes(4, IsoWitness{one, c, swapped},
               swapped ? "slopes are mutually inverse" : "slopes are equal");
  }
  return no("slopes " + a1.to_string() + " and " + a2.to_string() + " are neither equal nor inverse");
}

std::optional<IsoWitness> witness_for(const Poly& f1, const Poly& f2, const Scalar& a) {
  const int d = f1.degree();
  const Scalar p_d = f1.coeff(d), p_d1 = f1.coeff(d - 1), q_d1 = f2.coeff(d - 1);
  const Scalar dd = Scalar::from_int(d, a.backend());
  const Scalar c = (p_d1 * a.pow(2 - d) - q_d1) / (dd * p_d * a.pow(1 - d));
  if (affine_conjugate(f1, a, c) == f2) return IsoWitness{a, c, false};
  return std::nullopt;
}

IsoVerdict nonlinear_case(const Poly& f1, const Poly& f2, unsigned conductor) {
  const int d = f1.degree();
  if (d != f2.degree()) return no("degrees differ");
  const Backend be = f1.backend();
  const Scalar ratio = f1.leading() / f2.leading();
  // a^{d-1} = lead(f1) / lead(f2).
  auto root_poly = [&](Backend b) {
    std::vector<Scalar> c(static_cast<std::size_t>(d - 1), Scalar::zero(b));
    c[0] = b == be ? -ratio : -ratio.to_approx();
    c.push_back(Scalar::one(b));
    return Poly(std::move(c), b);
  };
  if (be == Backend::exact) {
    const unsigned n = std::lcm(conductor, std::lcm(f1.conductor(), f2.conductor()));
    for (const Scalar& a : exact_roots(root_poly(Backend::exact), n).exact) {
      if (auto w = witness_for(f1, f2, a)) return yes(5, w, "affine conjugate");
    }
  }
  const Poly g1 = f1.to_approx(), g2 = f2.to_approx();
  for (const Scalar& a : roots(root_poly(Backend::approx))) {
    if (auto w = witness_for(g1, g2, a)) {
      IsoVerdict v = yes(5, w, be == Backend::exact ? "affine conjugate (numeric witness only)" : "affine conjugate");
      v.numeric_witness = true;
      return v;
    }
  }
  return no("no affine conjugacy a f1((h - c)/a) + c = f2");
}

}  // namespace

IsoVerdict iso_check(const Poly& f1_in, const Poly& f2_in, unsigned conductor) {
  Poly f1 = f1_in, f2 = f2_in;
  if (f1.backend() != f2.backend()) {
    f1 = f1.to_approx();
    f2 = f2.to_approx();
  }
  const int d1 = std::max(f1.degree(), 0), d2 = std::max(f2.degree(), 0);
  if (d1 == 0 && d2 == 0) return yes(1, std::nullopt, "both f are constant");
  if (d1 == 0 || d2 == 0) return no("exactly one f is constant");
  if (d1 == 1 && d2 == 1) return linear_case(f1, f2);
  if (d1 == 1 || d2 == 1) return no("exactly one f is linear");
  return nonlinear_case(f1, f2, conductor);
}

}  // namespace gha
