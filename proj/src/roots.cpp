// Approximate root finding (Aberth-Ehrlich) and exact recognition of roots
// lying in a cyclotomic field.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "gha/poly.hpp"

namespace gha {

namespace {

using cd = std::complex<double>;

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Eval {
  cd value;
  cd deriv;
  double bound;  // sum |a_k| |z|^k, the rounding-error scale of Horner
};

Eval horner(const std::vector<cd>& a, cd z) {
  cd p = 0, dp = 0;
  double b = 0;
  const double az = std::abs(z);
  for (std::size_t k = a.size(); k-- > 0;) {
    dp = dp * z + p;
    p = p * z + a[k];
    b = b * az + std::abs(a[k]);
  }
  return {p, dp, b};
}

std::vector<cd> aberth(const std::vector<cd>& a, unsigned max_iter) {
  const std::size_t n = a.size() - 1;
  std::vector<cd> z(n);
  // Start on a circle around the centroid of the roots.
  const cd centroid = -a[n - 1] / (static_cast<double>(n) * a[n]);
  double radius = 0;
  for (std::size_t k = 0; k < n; ++k) {
    radius = std::max(radius, std::pow(std::abs(a[k] / a[n]), 1.0 / static_cast<double>(n - k)));
  }
  radius = std::max(radius, 1e-3) + std::abs(centroid) * 0.1;
  for (std::size_t k = 0; k < n; ++k) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + 0.4;
    z[k] = centroid + std::polar(radius, angle);
  }
  std::vector<bool> done(n, false);
  for (unsigned iter = 0; iter < max_iter; ++iter) {
    bool all_done = true;
    for (std::size_t k = 0; k < n; ++k) {
      if (done[k]) continue;
      const Eval e = horner(a, z[k]);
      if (std::abs(e.value) <= 4.0 * kEps * e.bound) {
        done[k] = true;
        continue;
      }
      all_done = false;
      const cd ratio = e.value / e.deriv;
      cd s = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != k) s += 1.0 / (z[k] - z[j]);
      }
      const cd w = ratio / (1.0 - ratio * s);
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) continue;
      z[k] -= w;
      if (std::abs(w) <= kEps * std::abs(z[k])) done[k] = true;
    }
    if (all_done) return z;
  }
  if (std::all_of(done.begin(), done.end(), [](bool b) { return b; })) return z;
  throw RootFindingError("Aberth iteration did not converge in " + std::to_string(max_iter) + " iterations", z);
}

cd newton_polish(const std::vector<cd>& a, cd z) {
  Eval best = horner(a, z);
  for (int step = 0; step < 5; ++step) {
    const Eval e = horner(a, z);
    if (e.deriv == cd(0)) break;
    const cd next = z - e.value / e.deriv;
    const Eval en = horner(a, next);
    if (std::abs(en.value) >= std::abs(best.value)) break;
    best = en;
    z = next;
  }
  return z;
}

}  // namespace

std::vector<Scalar> roots(const Poly& p) {
  if (p.degree() < 1) throw DomainError("roots: polynomial must have degree >= 1");
  std::vector<cd> a;
  a.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) a.push_back(c.to_complex());

  std::vector<cd> found;
  // Exact zero roots are peeled off first.
  std::size_t lead_zeros = 0;
  while (lead_zeros < a.size() && a[lead_zeros] == cd(0)) ++lead_zeros;
  found.assign(lead_zeros, cd(0));
  std::vector<cd> reduced(a.begin() + static_cast<std::ptrdiff_t>(lead_zeros), a.end());

  if (reduced.size() == 2) {
    found.push_back(-reduced[0] / reduced[1]);
  } else if (reduced.size() > 2) {
    for (cd z : aberth(reduced, numeric_config().max_root_iterations)) found.push_back(newton_polish(reduced, z));
  }

  const double tol = numeric_config().tol;
  std::vector<Scalar> out;
  out.reserve(found.size());
  for (cd z : found) {
    const Eval e = horner(a, z);
    const double scale = horner(a, cd(std::max(1.0, std::abs(z)), 0)).bound;
    if (std::abs(e.value) > tol * (1.0 + scale)) {
      throw RootFindingError("root residual " + std::to_string(std::abs(e.value)) + " above tolerance", found);
    }
    out.push_back(Scalar::approx(z.real(), z.imag()));
  }
  return out;
}

std::vector<Cyclotomic> recognize_in_field(std::complex<double> z, unsigned conductor) {
  constexpr double kRecognizeTol = 1e-8;
  std::vector<Cyclotomic> out;
  const double scale = std::max(1.0, std::abs(z));
  if (std::abs(z) <= kRecognizeTol) {
    out.emplace_back();
    return out;
  }
  if (std::fabs(z.imag()) <= kRecognizeTol * scale) {
    if (auto q = recognize_rational(z.real(), 1000000, kRecognizeTol)) out.emplace_back(*q);
  }
  // Quadratic fields: 1 and zeta span C over R, so both real coordinates
  // are determined.
  if (euler_phi(conductor) == 2) {
    const double angle = 2.0 * std::numbers::pi / conductor;
    const double b = z.imag() / std::sin(angle);
    const double a = z.real() - b * std::cos(angle);
    auto qa = recognize_rational(a, 1000000, kRecognizeTol);
    auto qb = recognize_rational(b, 1000000, kRecognizeTol);
    if (qa && qb) out.emplace_back(conductor, std::vector<Rational>{*qa, *qb});
  }
  // Rational multiples of the roots of unity in the field.
  const unsigned order = conductor % 2 == 0 ? conductor : 2 * conductor;
  for (unsigned k = 1; k < order; ++k) {
    const std::complex<double> root = std::polar(1.0, 2.0 * std::numbers::pi * k / order);
    const std::complex<double> t = z / root;
    if (std::fabs(t.imag()) > kRecognizeTol * scale) continue;
    auto q = recognize_rational(t.real(), 1000000, kRecognizeTol);
    if (!q) continue;
    // zeta_order^k expressed over conductor N.
    const Cyclotomic root_exact = order == conductor ? Cyclotomic::zeta(conductor, k)
                                                     : (k % 2 == 0 ? Cyclotomic::zeta(conductor, k / 2)
                                                                   : -Cyclotomic::zeta(conductor, (k + conductor) / 2));
    out.push_back(Cyclotomic(*q).embed(conductor) * root_exact);
  }
  return out;
}

RootSplit exact_roots(const Poly& p, unsigned conductor) {
  if (p.backend() != Backend::exact) throw MismatchError("exact_roots requires an exact polynomial");
  const unsigned field = std::lcm(conductor, p.conductor());
  RootSplit split{{}, p.degree() <= 0 ? p : squarefree_part(p)};
  if (split.rest.degree() <= 0) return split;
  const std::vector<Scalar> approx = roots(split.rest);
  for (const auto& r : approx) {
    if (split.rest.degree() <= 0) break;
    for (const auto& cand : recognize_in_field(r.to_complex(), field)) {
      const Scalar c(cand);
      if (!split.rest.evaluate(c).is_zero()) continue;
      const Poly linear({-c, Scalar::one(Backend::exact)}, Backend::exact);
      split.rest = divmod(split.rest, linear).quotient;
      split.exact.push_back(c);
      break;
    }
  }
  return split;
}

}  // namespace gha
