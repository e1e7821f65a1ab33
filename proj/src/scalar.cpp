#include "gha/scalar.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>

namespace gha {

namespace {

NumericConfig g_config;

std::vector<long> poly_divide_exact(std::vector<long> num, const std::vector<long>& den) {
  // den is monic; num divisible by den.
  const std::size_t dd = den.size() - 1;
  std::vector<long> q(num.size() - dd, 0);
  for (std::size_t k = num.size(); k-- > dd;) {
    const long c = num[k];
    q[k - dd] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dd; ++j) num[k - dd + j] -= c * den[j];
  }
  return q;
}

void reduce_mod_cyclotomic(std::vector<Rational>& v, unsigned n) {
  const auto& phi_poly = cyclotomic_polynomial(n);
  const std::size_t deg = phi_poly.size() - 1;
  for (std::size_t k = v.size(); k-- > deg;) {
    if (sgn(v[k]) == 0) continue;
    const Rational c = v[k];
    for (std::size_t j = 0; j < deg; ++j) {
      if (phi_poly[j] != 0) v[k - deg + j] -= c * phi_poly[j];
    }
    v[k] = 0;
  }
  v.resize(deg);
}

unsigned lcm_u(unsigned a, unsigned b) { return std::lcm(a, b); }

}  // namespace

Rational make_rational(long num, long den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational make_rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

const NumericConfig& numeric_config() { return g_config; }
void set_numeric_config(const NumericConfig& config) { g_config = config; }

std::string to_string(Backend b) { return b == Backend::exact ? "exact" : "approx"; }

std::vector<unsigned> divisors(unsigned n) {
  std::vector<unsigned> small, large;
  for (unsigned d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d != n / d) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

const std::vector<long>& cyclotomic_polynomial(unsigned n) {
  static std::mutex mu;
  static std::map<unsigned, std::vector<long>> cache;
  if (n == 0) throw DomainError("cyclotomic polynomial of order 0");
  std::lock_guard lock(mu);
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  // x^d - 1 = prod_{e | d} Phi_e. Divisors come in increasing order, so
  // every proper divisor of d is already cached when d is reached.
  for (unsigned d : divisors(n)) {
    if (cache.count(d)) continue;
    std::vector<long> num(d + 1, 0);
    num[0] = -1;
    num[d] = 1;
    for (unsigned e : divisors(d)) {
      if (e == d) break;
      num = poly_divide_exact(num, cache.at(e));
    }
    cache.emplace(d, std::move(num));
  }
  return cache.at(n);
}

unsigned euler_phi(unsigned n) {
  unsigned result = n;
  unsigned m = n;
  for (unsigned p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

std::optional<Rational> recognize_rational(double x, long max_den, double rel_tol) {
  if (!std::isfinite(x)) return std::nullopt;
  const double scale = std::max(1.0, std::fabs(x));
  if (std::fabs(x) > 1e15) {
    if (std::nearbyint(x) != x) return std::nullopt;
    mpz_class z;
    mpz_set_d(z.get_mpz_t(), x);
    return Rational(z);
  }
  // Continued-fraction convergents p/q.
  long double r = x;
  mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int step = 0; step < 64; ++step) {
    const long double a = std::floor(r);
    mpz_class ai;
    mpz_set_d(ai.get_mpz_t(), static_cast<double>(a));
    mpz_class p2 = ai * p1 + p0;
    mpz_class q2 = ai * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const double approx = mpq_class(p1, q1).get_d();
    if (std::fabs(approx - x) <= rel_tol * scale) return make_rational(p1, q1);
    const long double frac = r - a;
    if (frac == 0) break;
    r = 1.0L / frac;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Cyclotomic

Cyclotomic::Cyclotomic() : conductor_(1), coords_{Rational(0)} {}

Cyclotomic::Cyclotomic(Rational q) : conductor_(1), coords_{std::move(q)} {}

Cyclotomic::Cyclotomic(unsigned conductor, std::vector<Rational> coords)
    : conductor_(conductor), coords_(std::move(coords)) {
  if (conductor_ == 0) throw DomainError("cyclotomic conductor must be positive");
  reduce_mod_cyclotomic(coords_, conductor_);
}

Cyclotomic Cyclotomic::zeta(unsigned conductor, long k) {
  if (conductor == 0) throw DomainError("zeta(0) is undefined");
  long e = k % static_cast<long>(conductor);
  if (e < 0) e += conductor;
  std::vector<Rational> v(static_cast<std::size_t>(e) + 1, Rational(0));
  v[static_cast<std::size_t>(e)] = 1;
  return Cyclotomic(conductor, std::move(v));
}

bool Cyclotomic::is_zero() const {
  for (const auto& c : coords_) {
    if (sgn(c) != 0) return false;
  }
  return true;
}

bool Cyclotomic::is_rational() const {
  for (std::size_t k = 1; k < coords_.size(); ++k) {
    if (sgn(coords_[k]) != 0) return false;
  }
  return true;
}

Cyclotomic Cyclotomic::embed(unsigned target) const {
  if (target == conductor_) return *this;
  if (target % conductor_ != 0) throw DomainError("cannot embed Q(zeta_" + std::to_string(conductor_) + ") into Q(zeta_" + std::to_string(target) + ")");
  const unsigned step = target / conductor_;
  std::vector<Rational> v((coords_.size() - 1) * step + 1, Rational(0));
  for (std::size_t j = 0; j < coords_.size(); ++j) v[j * step] = coords_[j];
  return Cyclotomic(target, std::move(v));
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic r = *this;
  for (auto& c : r.coords_) c = -c;
  return r;
}

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
  if (conductor_ != o.conductor_) {
    const unsigned l = lcm_u(conductor_, o.conductor_);
    return embed(l) + o.embed(l);
  }
  Cyclotomic r = *this;
  for (std::size_t k = 0; k < coords_.size(); ++k) r.coords_[k] += o.coords_[k];
  return r;
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const { return *this + (-o); }

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
  if (conductor_ != o.conductor_) {
    const unsigned l = lcm_u(conductor_, o.conductor_);
    return embed(l) * o.embed(l);
  }
  if (coords_.size() == 1) return Cyclotomic(conductor_, {coords_[0] * o.coords_[0]});
  std::vector<Rational> v(coords_.size() + o.coords_.size() - 1, Rational(0));
  for (std::size_t a = 0; a < coords_.size(); ++a) {
    if (sgn(coords_[a]) == 0) continue;
    for (std::size_t b = 0; b < o.coords_.size(); ++b) {
      if (sgn(o.coords_[b]) == 0) continue;
      v[a + b] += coords_[a] * o.coords_[b];
    }
  }
  return Cyclotomic(conductor_, std::move(v));
}

Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) throw DomainError("division by zero");
  const std::size_t d = coords_.size();
  if (d == 1) return Cyclotomic(conductor_, {1 / coords_[0]});
  // Solve M c = e_0 where column j of M holds the coordinates of this*zeta^j.
  std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d + 1, Rational(0)));
  Cyclotomic col = *this;
  const Cyclotomic z = zeta(conductor_, 1);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t r = 0; r < d; ++r) m[r][j] = col.coords_[r];
    col = col * z;
  }
  m[0][d] = 1;
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t piv = c;
    while (piv < d && sgn(m[piv][c]) == 0) ++piv;
    if (piv == d) throw DomainError("singular multiplication matrix in Q(zeta_N)");
    std::swap(m[c], m[piv]);
    const Rational inv = 1 / m[c][c];
    for (std::size_t k = c; k <= d; ++k) m[c][k] *= inv;
    for (std::size_t r = 0; r < d; ++r) {
      if (r == c || sgn(m[r][c]) == 0) continue;
      const Rational f = m[r][c];
      for (std::size_t k = c; k <= d; ++k) m[r][k] -= f * m[c][k];
    }
  }
  std::vector<Rational> v(d);
  for (std::size_t r = 0; r < d; ++r) v[r] = m[r][d];
  return Cyclotomic(conductor_, std::move(v));
}

Cyclotomic Cyclotomic::operator/(const Cyclotomic& o) const { return *this * o.inverse(); }

Cyclotomic Cyclotomic::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Cyclotomic result(conductor_, {Rational(1)});
  Cyclotomic base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

bool Cyclotomic::operator==(const Cyclotomic& o) const {
  if (conductor_ != o.conductor_) {
    const unsigned l = lcm_u(conductor_, o.conductor_);
    return embed(l) == o.embed(l);
  }
  for (std::size_t k = 0; k < coords_.size(); ++k) {
    if (coords_[k] != o.coords_[k]) return false;
  }
  return true;
}

std::complex<double> Cyclotomic::to_complex() const {
  std::complex<long double> acc = 0;
  for (std::size_t k = 0; k < coords_.size(); ++k) {
    if (sgn(coords_[k]) == 0) continue;
    const long double angle = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(k) / conductor_;
    acc += static_cast<long double>(coords_[k].get_d()) * std::polar(1.0L, angle);
  }
  return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

std::string Cyclotomic::to_string() const {
  std::string out;
  for (std::size_t k = 0; k < coords_.size(); ++k) {
    const Rational& c = coords_[k];
    if (sgn(c) == 0) continue;
    const bool neg = sgn(c) < 0;
    const Rational mag = abs(c);
    std::string body;
    if (k == 0) {
      body = mag.get_str();
    } else {
      std::string z = "zeta(" + std::to_string(conductor_) + ")";
      if (k > 1) z += "^" + std::to_string(k);
      body = (mag == 1) ? z : mag.get_str() + "*" + z;
    }
    if (out.empty()) {
      out = (neg ? "-" : "") + body;
    } else {
      out += (neg ? " - " : " + ") + body;
    }
  }
  return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------
// Scalar

namespace {

std::string format_double(double x) {
  if (x == 0.0) x = 0.0;  // drop negative zero
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  std::string s(buf, res.ptr);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

[[noreturn]] void throw_mismatch() {
  throw MismatchError("scalar backend mismatch (exact vs approx)");
}

}  // namespace

Scalar::Scalar() : v_(Cyclotomic()) {}
Scalar::Scalar(Cyclotomic c) : v_(std::move(c)) {}
Scalar::Scalar(ApproxComplex a) : v_(a) {
  if (!std::isfinite(a.value.real()) || !std::isfinite(a.value.imag())) {
    throw NumericError("non-finite approximate scalar");
  }
}

Scalar Scalar::from_int(long v, Backend b) {
  if (b == Backend::approx) return Scalar(ApproxComplex{{static_cast<double>(v), 0.0}});
  return Scalar(Cyclotomic(Rational(v)));
}

Scalar Scalar::rational(Rational q, Backend b) {
  if (b == Backend::approx) return Scalar(ApproxComplex{{q.get_d(), 0.0}});
  return Scalar(Cyclotomic(std::move(q)));
}

Scalar Scalar::zeta(unsigned conductor, long k, Backend b) {
  if (b == Backend::approx) {
    if (conductor == 0) throw DomainError("zeta(0) is undefined");
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k % static_cast<long>(conductor)) / conductor;
    return Scalar(ApproxComplex{std::polar(1.0, angle)});
  }
  return Scalar(Cyclotomic::zeta(conductor, k));
}

Scalar Scalar::approx(double re, double im) { return Scalar(ApproxComplex{{re, im}}); }

Backend Scalar::backend() const {
  return std::holds_alternative<Cyclotomic>(v_) ? Backend::exact : Backend::approx;
}

const Cyclotomic& Scalar::exact() const {
  if (const auto* c = std::get_if<Cyclotomic>(&v_)) return *c;
  throw MismatchError("exact value requested from an approximate scalar");
}

std::complex<double> Scalar::to_complex() const {
  if (const auto* c = std::get_if<Cyclotomic>(&v_)) return c->to_complex();
  return std::get<ApproxComplex>(v_).value;
}

Scalar Scalar::to_approx() const { return Scalar(ApproxComplex{to_complex()}); }

unsigned Scalar::conductor() const {
  if (const auto* c = std::get_if<Cyclotomic>(&v_)) return c->conductor();
  return 1;
}

bool Scalar::is_zero() const {
  if (const auto* c = std::get_if<Cyclotomic>(&v_)) return c->is_zero();
  return std::abs(std::get<ApproxComplex>(v_).value) <= numeric_config().tol;
}

bool Scalar::is_one() const { return *this == one(backend()); }

Scalar Scalar::operator-() const {
  if (const auto* c = std::get_if<Cyclotomic>(&v_)) return Scalar(-*c);
  return Scalar(ApproxComplex{-std::get<ApproxComplex>(v_).value});
}

Scalar Scalar::operator+(const Scalar& o) const {
  if (v_.index() != o.v_.index()) throw_mismatch();
  if (const auto* c = std::get_if<Cyclotomic>(&v_)) return Scalar(*c + std::get<Cyclotomic>(o.v_));
  return Scalar(ApproxComplex{std::get<ApproxComplex>(v_).value + std::get<ApproxComplex>(o.v_).value});
}

Scalar Scalar::operator-(const Scalar& o) const {
  if (v_.index() != o.v_.index()) throw_mismatch();
  if (const auto* c = std::get_if<Cyclotomic>(&v_)) return Scalar(*c - std::get<Cyclotomic>(o.v_));
  return Scalar(ApproxComplex{std::get<ApproxComplex>(v_).value - std::get<ApproxComplex>(o.v_).value});
}

Scalar Scalar::operator*(const Scalar& o) const {
  if (v_.index() != o.v_.index()) throw_mismatch();
  if (const auto* c = std::get_if<Cyclotomic>(&v_)) return Scalar(*c * std::get<Cyclotomic>(o.v_));
  return Scalar(ApproxComplex{std::get<ApproxComplex>(v_).value * std::get<ApproxComplex>(o.v_).value});
}

Scalar Scalar::operator/(const Scalar& o) const {
  if (v_.index() != o.v_.index()) throw_mismatch();
  return *this * o.inverse();
}

Scalar Scalar::inverse() const {
  if (const auto* c = std::get_if<Cyclotomic>(&v_)) return Scalar(c->inverse());
  if (is_zero()) throw DomainError("division by zero");
  return Scalar(ApproxComplex{1.0 / std::get<ApproxComplex>(v_).value});
}

Scalar Scalar::pow(long e) const {
  if (const auto* c = std::get_if<Cyclotomic>(&v_)) return Scalar(c->pow(e));
  if (e < 0) return inverse().pow(-e);
  std::complex<double> result = 1.0;
  std::complex<double> base = std::get<ApproxComplex>(v_).value;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return Scalar(ApproxComplex{result});
}

bool Scalar::operator==(const Scalar& o) const {
  if (v_.index() != o.v_.index()) throw_mismatch();
  if (const auto* c = std::get_if<Cyclotomic>(&v_)) return *c == std::get<Cyclotomic>(o.v_);
  return std::abs(std::get<ApproxComplex>(v_).value - std::get<ApproxComplex>(o.v_).value) <= numeric_config().tol;
}

double Scalar::abs() const { return std::abs(to_complex()); }

std::string Scalar::to_string() const {
  if (const auto* c = std::get_if<Cyclotomic>(&v_)) return c->to_string();
  const auto z = std::get<ApproxComplex>(v_).value;
  const double re = z.real(), im = z.imag();
  if (im == 0.0) return format_double(re);
  const std::string im_part = format_double(std::fabs(im)) + "*i";
  if (re == 0.0) return (im < 0 ? "-" : "") + im_part;
  return format_double(re) + (im < 0 ? " - " : " + ") + im_part;
}

std::optional<unsigned> root_of_unity_order(const Scalar& s) {
  if (s.is_exact()) {
    const Cyclotomic& c = s.exact();
    if (c.is_zero()) return std::nullopt;
    const Cyclotomic one(Rational(1));
    // Roots of unity in Q(zeta_N) have order dividing 2N.
    for (unsigned d : divisors(2 * c.conductor())) {
      if (c.pow(d) == one) return d;
    }
    return std::nullopt;
  }
  const auto& cfg = numeric_config();
  const std::complex<double> z = s.to_complex();
  if (std::fabs(std::abs(z) - 1.0) > cfg.tol) return std::nullopt;
  double theta = std::arg(z) / (2.0 * std::numbers::pi);
  if (theta < 0) theta += 1.0;
  for (unsigned q = 1; q <= cfg.max_order; ++q) {
    const double p = std::nearbyint(theta * q);
    if (std::fabs(theta - p / q) > cfg.tol) continue;
    if (std::abs(s.pow(q).to_complex() - 1.0) <= cfg.tol) return q;
  }
  return std::nullopt;
}

}  // namespace gha
