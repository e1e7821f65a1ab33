#include "gha/modtheory.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>

namespace gha {

namespace {

double equality_tol() { return 10.0 * numeric_config().tol; }

bool near_zero(const Scalar& s) {
  return s.is_exact() ? s.is_zero() : s.abs() <= equality_tol();
}

// Zero as an exact value; approximate values are never exactly zero here.
bool exactly_zero(const Scalar& s) { return s.is_exact() && s.is_zero(); }

Poly poly_for(const Poly& f, Backend b) {
  return (b == Backend::approx && f.backend() == Backend::exact) ? f.to_approx() : f;
}

/// f^{(i)}(w) by repeated evaluation.
Scalar iterate_at(const Poly& f, unsigned i, Scalar w) {
  for (unsigned s = 0; s < i; ++s) w = f.evaluate(w);
  return w;
}

/// z + f^{(i)}(-z).
Scalar nilpotent_weight_sum(const Poly& f, unsigned i, const Scalar& z) { return z + iterate_at(f, i, -z); }

bool lex_less(const Scalar& a, const Scalar& b) {
  const auto za = a.to_complex(), zb = b.to_complex();
  return za.real() != zb.real() ? za.real() < zb.real() : za.imag() < zb.imag();
}

bool same_scalar(const Scalar& a, const Scalar& b) {
  if (a.backend() == b.backend()) return a == b;
  return std::abs(a.to_complex() - b.to_complex()) <= equality_tol();
}

template <typename T, typename F>
auto parallel_map(const std::vector<T>& items, unsigned threads, F fn) -> std::vector<decltype(fn(items[0], 0))> {
  using R = decltype(fn(items[0], 0));
  std::vector<std::optional<R>> slots(items.size());
  const auto collect = [&] {
    std::vector<R> out;
    out.reserve(slots.size());
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
  };
  if (threads <= 1 || items.size() <= 1) {
    for (std::size_t k = 0; k < items.size(); ++k) slots[k].emplace(fn(items[k], k));
    return collect();
  }
  const std::size_t workers = std::min<std::size_t>(threads, items.size());
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t k = w; k < items.size(); k += workers) slots[k].emplace(fn(items[k], k));
    }));
  }
  for (auto& j : jobs) j.get();
  return collect();
}

std::vector<Violation> validate_cyclic(const Orbit& weights, const Scalar& z, const Scalar& a, const Poly& f,
                                       bool need_zero_sum, const ValidateOptions& opts) {
  std::vector<Violation> out;
  const Backend be = weights.backend();
  if (z.backend() != be || a.backend() != be) {
    out.push_back({"weights, z_value and a must share one scalar backend"});
    return out;
  }
  try {
    Orbit::make(weights.values(), poly_for(f, be));
  } catch (const Error& e) {
    out.push_back({std::string("weights: ") + e.what()});
  }
  if (exactly_zero(a)) {
    out.push_back({"a must be nonzero"});
  } else if (near_zero(a)) {
    out.push_back({"a must be nonzero (|a| within tolerance of 0)", true});
  }
  if (need_zero_sum && opts.simplicity) {
    bool found = false;
    for (const auto& w : weights.values()) found = found || near_zero(w + z);
    if (!found) out.push_back({"y-cyclic module needs w(i) + z_value = 0 for some i"});
  }
  return out;
}

std::vector<Violation> validate_nilpotent(const NilpotentModule& d, const Poly& f_in, const ValidateOptions& opts) {
  std::vector<Violation> out;
  if (d.dim == 0) {
    out.push_back({"dimension must be positive"});
    return out;
  }
  const Poly f = poly_for(f_in, d.z_value.backend());
  if (!near_zero(nilpotent_weight_sum(f, d.dim, d.z_value))) {
    out.push_back({"z_value + f^(" + std::to_string(d.dim) + ")(-z_value) must vanish"});
  }
  if (opts.simplicity) {
    for (unsigned i = 1; i < d.dim; ++i) {
      const Scalar v = nilpotent_weight_sum(f, i, d.z_value);
      if (exactly_zero(v)) {
        out.push_back({"z_value + f^(" + std::to_string(i) + ")(-z_value) = 0: not simple"});
      } else if (near_zero(v)) {
        out.push_back({"z_value + f^(" + std::to_string(i) + ")(-z_value) is within tolerance of 0: not simple", true});
      }
    }
  }
  return out;
}

}  // namespace

unsigned dimension(const ModuleDescriptor& d) {
  return std::visit(
      [](const auto& m) -> unsigned {
        if constexpr (std::is_same_v<std::decay_t<decltype(m)>, NilpotentModule>) {
          return m.dim;
        } else {
          return static_cast<unsigned>(m.weights.period());
        }
      },
      d);
}

Backend backend(const ModuleDescriptor& d) {
  return std::visit([](const auto& m) { return m.z_value.backend(); }, d);
}

std::string kind_name(const ModuleDescriptor& d) {
  static const char* names[] = {"x_cyclic", "y_cyclic", "nilpotent"};
  return names[d.index()];
}

std::vector<Violation> validate(const ModuleDescriptor& d, const Poly& f, const ValidateOptions& opts) {
  if (const auto* x = std::get_if<XCyclicModule>(&d)) return validate_cyclic(x->weights, x->z_value, x->a, f, false, opts);
  if (const auto* y = std::get_if<YCyclicModule>(&d)) return validate_cyclic(y->weights, y->z_value, y->a, f, true, opts);
  return validate_nilpotent(std::get<NilpotentModule>(d), f, opts);
}

MatrixModule build(const ModuleDescriptor& d, const Poly& f_in, const ValidateOptions& opts) {
  const auto violations = validate(d, f_in, opts);
  if (!violations.empty()) throw DomainError("invalid " + kind_name(d) + " descriptor: " + violations.front().message);
  const Backend be = backend(d);
  const Poly f = poly_for(f_in, be);
  const std::size_t n = dimension(d);
  MatrixModule m{n, Matrix(n, be), Matrix(n, be), Matrix(n, be)};
  const Scalar one = Scalar::one(be);

  if (const auto* x = std::get_if<XCyclicModule>(&d)) {
    for (std::size_t i = 0; i < n; ++i) {
      m.H(i, i) = x->weights.at(static_cast<long>(i));
      const Scalar y_coeff = x->weights.at(static_cast<long>(i)) + x->z_value;
      if (i + 1 < n) m.X(i + 1, i) = one;
      if (i > 0) m.Y(i - 1, i) = y_coeff;
    }
    m.X(0, n - 1) = x->a;
    m.Y(n - 1, 0) = (x->weights.at(0) + x->z_value) / x->a;
  } else if (const auto* y = std::get_if<YCyclicModule>(&d)) {
    for (std::size_t i = 0; i < n; ++i) {
      m.H(i, i) = y->weights.at(static_cast<long>(i));
      if (i + 1 < n) m.X(i + 1, i) = y->weights.at(static_cast<long>(i + 1)) + y->z_value;
      if (i > 0) m.Y(i - 1, i) = one;
    }
    m.X(0, n - 1) = y->a * (y->weights.at(0) + y->z_value);
    m.Y(n - 1, 0) = y->a.inverse();
  } else {
    const auto& c = std::get<NilpotentModule>(d);
    Scalar w = -c.z_value;  // f^{(i)}(-z)
    for (std::size_t i = 0; i < n; ++i) {
      m.H(i, i) = w;
      if (i + 1 < n) m.X(i + 1, i) = one;
      if (i > 0) m.Y(i - 1, i) = c.z_value + w;
      w = f.evaluate(w);
    }
  }
  return m;
}

RelationReport verify_relations(const MatrixModule& m_in, const Poly& f_in) {
  const bool approx = m_in.backend() == Backend::approx || f_in.backend() == Backend::approx;
  const Backend be = approx ? Backend::approx : Backend::exact;
  const Matrix X = approx ? m_in.X.to_approx() : m_in.X;
  const Matrix H = approx ? m_in.H.to_approx() : m_in.H;
  const Matrix Y = approx ? m_in.Y.to_approx() : m_in.Y;
  const Matrix fH = H.evaluate(poly_for(f_in, be));
  const std::array<Matrix, 3> r = {H * X - X * fH, Y * H - fH * Y, Y * X - X * Y - (fH - H)};
  RelationReport rep;
  rep.ok = true;
  for (std::size_t k = 0; k < 3; ++k) {
    rep.residuals[k] = r[k].max_abs();
    if (approx ? rep.residuals[k] > numeric_config().tol : !r[k].is_zero()) rep.ok = false;
  }
  return rep;
}

std::size_t burnside_dimension(const MatrixModule& m) { return generated_algebra_dimension({m.X, m.H, m.Y}); }

bool is_simple(const MatrixModule& m) { return m.n > 0 && burnside_dimension(m) == m.n * m.n; }

namespace {

MatrixModule promoted(const MatrixModule& m) {
  return {m.n, m.X.to_approx(), m.H.to_approx(), m.Y.to_approx()};
}

// Some eigenvalue of H generating a single orbit of exact period n.
std::optional<Orbit> weight_orbit(const MatrixModule& m, const Poly& f, unsigned conductor) {
  const Poly chi = m.H.characteristic_polynomial();
  std::vector<Scalar> candidates =
      m.backend() == Backend::exact ? exact_roots(chi, conductor).exact : roots(chi);
  for (const Scalar& b : candidates) {
    std::vector<Scalar> values;
    Scalar w = b;
    for (std::size_t i = 0; i < m.n; ++i) {
      values.push_back(w);
      w = f.evaluate(w);
    }
    try {
      return Orbit::make(std::move(values), f).canonical();
    } catch (const DomainError&) {
    }
  }
  return std::nullopt;
}

ModuleDescriptor classify_in(const MatrixModule& m, const Poly& f_in, unsigned conductor) {
  const Backend be = m.backend();
  const Poly f = poly_for(f_in, be);
  const auto z = (m.X * m.Y - m.H).as_scalar();
  if (!z) throw DomainError("not a simple module of this family: XY - H is not a scalar matrix");
  const std::size_t n = m.n;

  const Matrix xn = m.X.pow(static_cast<unsigned>(n));
  const bool x_cyclic = !xn.is_zero();
  const auto y_inv = x_cyclic ? std::nullopt : m.Y.inverse();
  if (!x_cyclic && !y_inv) return NilpotentModule{*z, static_cast<unsigned>(n)};

  const auto weights = weight_orbit(m, f, conductor);
  if (!weights) {
    if (be == Backend::exact) return classify_in(promoted(m), f_in, conductor);
    throw DomainError("eigenvalues of H do not form one orbit of exact period " + std::to_string(n));
  }
  if (x_cyclic) {
    const auto a = xn.as_scalar();
    if (!a) throw DomainError("not a simple module of this family: X^n is not a scalar matrix");
    return XCyclicModule{*weights, *z, *a};
  }
  const auto yn = m.Y.pow(static_cast<unsigned>(n)).as_scalar();
  if (!yn) throw DomainError("not a simple module of this family: Y^n is not a scalar matrix");
  return YCyclicModule{*weights, *z, yn->inverse()};
}

}  // namespace

ModuleDescriptor classify(const MatrixModule& m, const Poly& f, unsigned conductor) {
  if (m.n == 0) throw InputError("empty module");
  const Backend be = m.backend() == Backend::approx || f.backend() == Backend::approx ? Backend::approx
                                                                                    : Backend::exact;
  const MatrixModule mm = be == Backend::approx && m.backend() == Backend::exact ? promoted(m) : m;
  unsigned n = std::lcm(conductor, f.conductor());
  if (be == Backend::exact) n = std::lcm(n, std::lcm(mm.X.conductor(), std::lcm(mm.H.conductor(), mm.Y.conductor())));
  return classify_in(mm, f, n);
}

bool modules_isomorphic(const ModuleDescriptor& a, const ModuleDescriptor& b) {
  if (a.index() != b.index()) return false;
  if (const auto* x = std::get_if<XCyclicModule>(&a)) {
    const auto& y = std::get<XCyclicModule>(b);
    return same_scalar(x->z_value, y.z_value) && same_scalar(x->a, y.a) && x->weights.equal_up_to_shift(y.weights);
  }
  if (const auto* x = std::get_if<YCyclicModule>(&a)) {
    const auto& y = std::get<YCyclicModule>(b);
    return same_scalar(x->z_value, y.z_value) && same_scalar(x->a, y.a) && x->weights.equal_up_to_shift(y.weights);
  }
  const auto& x = std::get<NilpotentModule>(a);
  const auto& y = std::get<NilpotentModule>(b);
  return x.dim == y.dim && same_scalar(x.z_value, y.z_value);
}

bool SimpleModules::empty() const {
  return x_cyclic.empty() && y_cyclic.empty() && !continuum && nilpotent.empty() && !nilpotent_free;
}

namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t k) { return seed ^ (0x9E3779B97F4A7C15ULL * (k + 1)); }

std::vector<Scalar> distinct_negated(const Orbit& o) {
  std::vector<Scalar> out;
  for (const auto& w : o.values()) {
    const Scalar z = -w;
    if (std::none_of(out.begin(), out.end(), [&](const Scalar& s) { return same_scalar(s, z); })) out.push_back(z);
  }
  return out;
}

std::pair<XCyclicFamily, YCyclicFamily> cyclic_families(const Orbit& o, const EnumerateConfig& cfg, std::size_t index) {
  const Backend be = o.backend();
  XCyclicFamily xf{o, {}};
  YCyclicFamily yf{o, distinct_negated(o), {}};
  const auto draws = sample_nonzero(be, 2 * cfg.samples + yf.z_values.size(), mix_seed(cfg.seed, index));
  for (unsigned s = 0; s < cfg.samples; ++s) xf.samples.push_back({o, draws[2 * s], draws[2 * s + 1]});
  for (std::size_t j = 0; j < yf.z_values.size(); ++j) yf.samples.push_back({o, yf.z_values[j], draws[2 * cfg.samples + j]});
  return {std::move(xf), std::move(yf)};
}

// Newton on z -> z + f^{(n)}(-z), evaluated by repeated application of f.
Scalar polish_nilpotent_root(const Poly& f, unsigned n, Scalar z) {
  const Poly df = f.derivative();
  const Scalar one = Scalar::one(Backend::approx);
  double last = std::numeric_limits<double>::infinity();
  for (int step = 0; step < 8; ++step) {
    Scalar w = -z, dw = one;
    for (unsigned i = 0; i < n; ++i) {
      dw = dw * df.evaluate(w);
      w = f.evaluate(w);
    }
    const Scalar value = z + w;
    const double r = value.abs();
    if (r >= last || r == 0.0) break;
    last = r;
    const Scalar slope = one - dw;
    if (slope.abs() == 0.0) break;
    z = z - value / slope;
  }
  return z;
}

std::vector<Scalar> dedup(std::vector<Scalar> v) {
  std::vector<Scalar> out;
  const double radius = std::sqrt(numeric_config().tol);
  for (auto& s : v) {
    if (std::none_of(out.begin(), out.end(), [&](const Scalar& t) {
          return s.is_exact() && t.is_exact() ? s == t : (s - t).abs() <= radius * (1.0 + s.abs());
        })) {
      out.push_back(std::move(s));
    }
  }
  return out;
}

// Distinct roots: exact in Q(zeta_N) when all are found there, otherwise
// approximate and polished by `polish`.
template <typename Polish>
std::vector<Scalar> distinct_roots(const Poly& p, unsigned conductor, Polish polish) {
  if (p.degree() <= 0) return {};
  if (p.backend() == Backend::exact) {
    const Poly sq = squarefree_part(p);
    RootSplit split = exact_roots(sq, conductor);
    if (split.rest.degree() <= 0) return split.exact;
    std::vector<Scalar> r = roots(split.rest.to_approx());
    for (auto& s : r) s = polish(s);
    r = dedup(std::move(r));
    split.exact.insert(split.exact.end(), r.begin(), r.end());
    return split.exact;
  }
  std::vector<Scalar> r = roots(p);
  for (auto& s : r) s = polish(s);
  return dedup(std::move(r));
}

void enumerate_nilpotent(const Poly& f, unsigned n, const EnumerateConfig& cfg, SimpleModules& out) {
  const Backend be = f.backend();
  const Poly minus_h = -Poly::identity(be);
  const auto weight_sum_poly = [&](unsigned i) { return compose(iterate(f, i), minus_h) + Poly::identity(be); };
  const unsigned conductor = std::lcm(cfg.conductor, f.conductor());
  const Poly fa = poly_for(f, Backend::approx);

  const Poly top = weight_sum_poly(n);
  if (top.is_zero()) {
    std::vector<Scalar> excluded;
    for (unsigned i = 1; i < n; ++i) {
      const Poly e = weight_sum_poly(i);
      if (e.is_zero()) return;  // every z is excluded
      for (auto& r : distinct_roots(e, conductor, [&](const Scalar& z) { return polish_nilpotent_root(fa, i, z); })) {
        excluded.push_back(std::move(r));
      }
    }
    out.nilpotent_free = true;
    out.nilpotent_excluded = dedup(std::move(excluded));
    std::sort(out.nilpotent_excluded.begin(), out.nilpotent_excluded.end(), lex_less);
    for (const Scalar& z : sample_nonzero(be, cfg.samples + out.nilpotent_excluded.size(), mix_seed(cfg.seed, 1000))) {
      if (out.nilpotent_samples.size() == cfg.samples) break;
      const bool bad = std::any_of(out.nilpotent_excluded.begin(), out.nilpotent_excluded.end(),
                                   [&](const Scalar& e) { return same_scalar(e, z); });
      if (!bad) out.nilpotent_samples.push_back({z, n});
    }
    return;
  }

  const std::vector<Scalar> candidates =
      distinct_roots(top, conductor, [&](const Scalar& z) { return polish_nilpotent_root(fa, n, z); });
  struct Outcome {
    std::optional<NilpotentModule> module;
    std::optional<RejectedNilpotent> rejected;
  };
  const auto outcomes = parallel_map(candidates, cfg.threads, [&](const Scalar& z, std::size_t) {
    const Poly g = poly_for(f, z.backend());
    for (unsigned i = 1; i < n; ++i) {
      const Scalar v = nilpotent_weight_sum(g, i, z);
      if (near_zero(v)) return Outcome{std::nullopt, RejectedNilpotent{z, i, !exactly_zero(v)}};
    }
    return Outcome{NilpotentModule{z, n}, std::nullopt};
  });
  for (const auto& o : outcomes) {
    if (o.module) out.nilpotent.push_back(*o.module);
    if (o.rejected) out.rejected.push_back(*o.rejected);
  }
  std::sort(out.nilpotent.begin(), out.nilpotent.end(),
            [](const NilpotentModule& a, const NilpotentModule& b) { return lex_less(a.z_value, b.z_value); });
}

}  // namespace

SimpleModules enumerate_simples(const Poly& f, unsigned n, const EnumerateConfig& cfg) {
  if (n == 0) throw InputError("dimension must be positive");
  if (f.is_identity()) {
    throw DomainError("f = h: the algebra is commutative and its simple modules are one-dimensional characters");
  }
  SimpleModules out;
  out.dim = n;
  const OrbitSet orbits = periodic_points(f, n, {cfg.conductor, cfg.samples, cfg.seed});
  out.residual_roots = orbits.residual_roots;

  if (orbits.family) {
    ContinuumFamily c{*orbits.family, {}, {}};
    const Backend be = orbits.backend;
    const auto bs = sample_nonzero(be, cfg.samples, mix_seed(cfg.seed, 0));
    const auto draws = sample_nonzero(be, 3 * cfg.samples, mix_seed(cfg.seed, 1));
    for (unsigned s = 0; s < cfg.samples; ++s) {
      const Orbit o = c.orbits.instance(bs[s]).canonical();
      c.x_samples.push_back({o, draws[3 * s], draws[3 * s + 1]});
      c.y_samples.push_back({o, -o.at(static_cast<long>(s % n)), draws[3 * s + 2]});
    }
    out.continuum = std::move(c);
  } else {
    const auto fams = parallel_map(orbits.orbits, cfg.threads,
                                   [&](const Orbit& o, std::size_t k) { return cyclic_families(o, cfg, k + 2); });
    for (const auto& [xf, yf] : fams) {
      out.x_cyclic.push_back(xf);
      out.y_cyclic.push_back(yf);
    }
  }
  enumerate_nilpotent(f, n, cfg, out);
  return out;
}

}  // namespace gha
