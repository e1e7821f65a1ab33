#include "gha/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace gha {

namespace {

double orbit_tol() { return 10.0 * numeric_config().tol; }

bool close(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return a == b;
  return std::abs(a.to_complex() - b.to_complex()) <= orbit_tol();
}

bool lex_less(const Scalar& a, const Scalar& b) {
  const auto za = a.to_complex(), zb = b.to_complex();
  if (za.real() != zb.real()) return za.real() < zb.real();
  return za.imag() < zb.imag();
}

Poly for_backend(const Poly& f, Backend b) {
  return (b == Backend::approx && f.backend() == Backend::exact) ? f.to_approx() : f;
}

}  // namespace

Orbit Orbit::make(std::vector<Scalar> values, const Poly& f) {
  if (values.empty()) throw DomainError("orbit must be nonempty");
  const Backend b = values.front().backend();
  for (const auto& v : values) {
    if (v.backend() != b) throw MismatchError("orbit with mixed scalar backends");
  }
  const Poly g = for_backend(f, b);
  if (g.backend() != b) throw MismatchError("orbit backend differs from f");
  const std::size_t m = values.size();
  for (std::size_t i = 0; i < m; ++i) {
    if (!close(g.evaluate(values[i]), values[(i + 1) % m])) {
      throw DomainError("orbit invariant violated: f(lambda(" + std::to_string(i) + ")) != lambda(" +
                        std::to_string((i + 1) % m) + ")");
    }
  }
  for (unsigned d : divisors(static_cast<unsigned>(m))) {
    if (d == m) break;
    bool periodic = true;
    for (std::size_t i = 0; i < m && periodic; ++i) periodic = close(values[i], values[(i + d) % m]);
    if (periodic) throw DomainError("orbit has proper period " + std::to_string(d) + " < " + std::to_string(m));
  }
  return Orbit(std::move(values));
}

Orbit Orbit::unchecked(std::vector<Scalar> values) {
  if (values.empty()) throw DomainError("orbit must be nonempty");
  return Orbit(std::move(values));
}

const Scalar& Orbit::at(long i) const {
  const long m = static_cast<long>(values_.size());
  return values_[static_cast<std::size_t>(((i % m) + m) % m)];
}

Orbit Orbit::rotated(long k) const {
  std::vector<Scalar> v;
  v.reserve(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) v.push_back(at(static_cast<long>(i) + k));
  return Orbit(std::move(v));
}

Orbit Orbit::canonical() const {
  const std::size_t m = values_.size();
  std::size_t best = 0;
  for (std::size_t k = 1; k < m; ++k) {
    for (std::size_t i = 0; i < m; ++i) {
      const Scalar& a = values_[(k + i) % m];
      const Scalar& b = values_[(best + i) % m];
      if (lex_less(a, b)) {
        best = k;
        break;
      }
      if (lex_less(b, a)) break;
    }
  }
  return rotated(static_cast<long>(best));
}

bool Orbit::equal_up_to_shift(const Orbit& o) const {
  if (period() != o.period()) return false;
  for (std::size_t k = 0; k < period(); ++k) {
    bool same = true;
    for (std::size_t i = 0; i < period() && same; ++i) same = close(at(static_cast<long>(i + k)), o.values_[i]);
    if (same) return true;
  }
  return false;
}

bool Orbit::operator==(const Orbit& o) const {
  if (period() != o.period()) return false;
  for (std::size_t i = 0; i < period(); ++i) {
    if (!close(values_[i], o.values_[i])) return false;
  }
  return true;
}

Orbit Orbit::to_approx() const {
  std::vector<Scalar> v;
  for (const auto& s : values_) v.push_back(s.to_approx());
  return Orbit(std::move(v));
}

Orbit OrbitFamily::instance(const Scalar& b) const {
  if (b.is_zero()) throw DomainError("orbit family parameter b must be nonzero");
  std::vector<Scalar> v;
  Scalar w = Scalar::one(b.backend());
  for (unsigned i = 0; i < period; ++i) {
    v.push_back(center + b * w);
    w *= multiplier;
  }
  return Orbit::unchecked(std::move(v));
}

std::vector<Scalar> sample_nonzero(Backend b, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Scalar> out;
  while (out.size() < count) {
    if (b == Backend::exact) {
      std::uniform_int_distribution<long> num(-5, 5), den(1, 3);
      const long p = num(rng);
      if (p == 0) continue;
      out.push_back(Scalar::rational(make_rational(p, den(rng))));
    } else {
      std::uniform_real_distribution<double> mod(0.5, 2.0), arg(-3.0, 3.0);
      out.push_back(Scalar(ApproxComplex{std::polar(mod(rng), arg(rng))}));
    }
  }
  return out;
}

namespace {

OrbitSet identity_iterate_case(const Poly& f, unsigned n, const PeriodicConfig& config) {
  if (f.is_identity()) {
    throw DomainError("continuum of orbits: every point is fixed by f = h; handle the commutative case separately");
  }
  // f^{(n)} = h forces f = w*h + b with w^n = 1, w != 1.
  const Backend be = f.backend();
  const Scalar w = f.coeff(1);
  const Scalar b = f.coeff(0);
  OrbitSet out;
  out.backend = be;
  const auto order = root_of_unity_order(w);
  if (!order || *order != n) return out;
  OrbitFamily family{b / (Scalar::one(be) - w), w, n};
  for (const auto& s : sample_nonzero(be, config.family_samples, config.seed)) {
    out.orbits.push_back(family.instance(s).canonical());
  }
  out.family = std::move(family);
  return out;
}

// Newton on z -> f^{(n)}(z) - z, evaluating the iterate by repeated
// application of f. Much better conditioned than the expanded polynomial.
Scalar polish_cycle_point(const Poly& f, const Poly& df, unsigned n, Scalar z) {
  const Scalar one = Scalar::one(Backend::approx);
  double last = std::numeric_limits<double>::infinity();
  for (int step = 0; step < 8; ++step) {
    Scalar w = z, dw = one;
    for (unsigned i = 0; i < n; ++i) {
      dw = dw * df.evaluate(w);
      w = f.evaluate(w);
    }
    const Scalar residual = w - z;
    const double r = residual.abs();
    if (r >= last || r == 0.0) break;
    last = r;
    const Scalar denom = dw - one;
    if (denom.abs() == 0.0) break;
    z = z - residual / denom;
  }
  return z;
}

// Follows r -> f(r) through `pool`, consuming matched entries.
OrbitSet group_orbits(const Poly& f, unsigned n, std::vector<Scalar> pool) {
  OrbitSet out;
  out.backend = pool.empty() ? f.backend() : pool.front().backend();
  const Poly g = for_backend(f, out.backend);
  const bool exact = out.backend == Backend::exact;
  if (!exact) {
    const Poly dg = g.derivative();
    for (auto& r : pool) r = polish_cycle_point(g, dg, n, r);
  }
  while (!pool.empty()) {
    std::vector<Scalar> cycle{pool.front()};
    pool.erase(pool.begin());
    bool ok = true;
    for (unsigned i = 1; i < n && ok; ++i) {
      const Scalar next = g.evaluate(cycle.back());
      auto best = pool.end();
      double best_dist = 0;
      for (auto it = pool.begin(); it != pool.end(); ++it) {
        const double d = exact ? (*it == next ? 0.0 : 1.0) : std::abs(it->to_complex() - next.to_complex());
        if (best == pool.end() || d < best_dist) {
          best = it;
          best_dist = d;
        }
      }
      if (best == pool.end() || (exact ? best_dist != 0.0 : best_dist > orbit_tol())) {
        ok = false;
        break;
      }
      cycle.push_back(*best);
      pool.erase(best);
    }
    if (ok && !close(g.evaluate(cycle.back()), cycle.front())) ok = false;
    if (ok) {
      out.orbits.push_back(Orbit::unchecked(std::move(cycle)).canonical());
    } else {
      out.residual_roots.insert(out.residual_roots.end(), cycle.begin(), cycle.end());
    }
  }
  std::sort(out.orbits.begin(), out.orbits.end(),
            [](const Orbit& a, const Orbit& b) { return lex_less(a.values().front(), b.values().front()); });
  return out;
}

}  // namespace

OrbitSet periodic_points(const Poly& f, unsigned n, const PeriodicConfig& config) {
  if (n == 0) throw DomainError("period must be positive");
  const Backend be = f.backend();
  const Poly h = Poly::identity(be);
  Poly p = iterate(f, n) - h;
  if (p.is_zero()) return identity_iterate_case(f, n, config);
  if (p.degree() <= 0) {
    OrbitSet empty;
    empty.backend = be;
    return empty;
  }

  std::vector<unsigned> proper;
  for (unsigned d : divisors(n)) {
    if (d != n) proper.push_back(d);
  }

  if (be == Backend::exact) {
    // Remove every root of lower period, with all its multiplicity.
    for (unsigned d : proper) {
      const Poly q = iterate(f, d) - h;
      for (;;) {
        const Poly g = gcd(p, q);
        if (g.degree() <= 0) break;
        p = divmod(p, g).quotient;
      }
    }
    p = squarefree_part(p);
    if (p.degree() <= 0) {
      OrbitSet empty;
      empty.backend = be;
      return empty;
    }
    RootSplit split = exact_roots(p, config.conductor);
    if (split.rest.degree() <= 0) return group_orbits(f, n, std::move(split.exact));
    return group_orbits(f, n, roots(p.to_approx()));
  }

  // Approximate input: filter lower periods numerically. Multiple roots are
  // only accurate to about sqrt(eps), so the filter radius is sqrt(tol).
  const double filter = std::sqrt(numeric_config().tol);
  std::vector<Scalar> pool;
  for (const auto& r : roots(p)) {
    const double scale = 1.0 + r.abs();
    bool lower = false;
    for (unsigned d : proper) {
      if ((iterate(f, d).evaluate(r) - r).abs() <= filter * scale) {
        lower = true;
        break;
      }
    }
    if (lower) continue;
    const bool dup = std::any_of(pool.begin(), pool.end(), [&](const Scalar& s) { return (s - r).abs() <= filter * scale; });
    if (!dup) pool.push_back(r);
  }
  return group_orbits(f, n, std::move(pool));
}

}  // namespace gha
