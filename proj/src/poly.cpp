#include "gha/poly.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

namespace gha {

namespace {

bool is_atomic_literal(const std::string& s) {
  return !s.empty() && s.front() != '-' && s.find(' ') == std::string::npos &&
         s.find('/') == std::string::npos;
}

std::string coefficient_factor(const Scalar& c) {
  const std::string s = c.to_string();
  return is_atomic_literal(s) ? s : "(" + s + ")";
}

// Polynomial over Q as integer numerators over one common denominator; the
// fast path for products and compositions of rational polynomials.
struct IntPoly {
  std::vector<mpz_class> num;
  mpz_class den = 1;
};

std::optional<IntPoly> as_int_poly(const Poly& p) {
  if (p.backend() != Backend::exact) return std::nullopt;
  IntPoly out;
  for (const auto& c : p.coeffs()) {
    const Cyclotomic& e = c.exact();
    if (e.conductor() != 1) return std::nullopt;
    mpz_lcm(out.den.get_mpz_t(), out.den.get_mpz_t(), e.rational_part().get_den_mpz_t());
  }
  out.num.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) {
    const Rational& q = c.exact().rational_part();
    out.num.push_back(q.get_num() * (out.den / q.get_den()));
  }
  return out;
}

Poly from_int_poly(const IntPoly& p) {
  std::vector<Scalar> v;
  v.reserve(p.num.size());
  const bool integral = p.den == 1;
  for (const auto& n : p.num) {
    Rational q(n, p.den);
    if (!integral) q.canonicalize();
    v.push_back(Scalar(Cyclotomic(std::move(q))));
  }
  return Poly(std::move(v), Backend::exact);
}

// Signed coefficients packed into limb-aligned slots of `slot` limbs each:
// value = sum c_i 2^(64 slot i).
mpz_class kronecker_pack(const std::vector<mpz_class>& a, std::size_t slot) {
  const std::size_t limbs = a.size() * slot;
  mpz_class pos, neg;
  mp_limb_t* pp = mpz_limbs_write(pos.get_mpz_t(), static_cast<mp_size_t>(limbs));
  mp_limb_t* np = mpz_limbs_write(neg.get_mpz_t(), static_cast<mp_size_t>(limbs));
  std::fill(pp, pp + limbs, 0);
  std::fill(np, np + limbs, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const mpz_srcptr c = a[i].get_mpz_t();
    const std::size_t n = mpz_size(c);
    std::copy(mpz_limbs_read(c), mpz_limbs_read(c) + n, (sgn(a[i]) > 0 ? pp : np) + i * slot);
  }
  mpz_limbs_finish(pos.get_mpz_t(), static_cast<mp_size_t>(limbs));
  mpz_limbs_finish(neg.get_mpz_t(), static_cast<mp_size_t>(limbs));
  return pos - neg;
}

std::vector<mpz_class> kronecker_unpack(mpz_class v, std::size_t count, std::size_t slot) {
  const bool negative = sgn(v) < 0;
  if (negative) v = -v;
  const std::size_t size = mpz_size(v.get_mpz_t());
  const mp_limb_t* vp = mpz_limbs_read(v.get_mpz_t());
  const mp_bitcnt_t bits = 64 * slot;
  const mpz_class half = mpz_class(1) << (bits - 1), full = mpz_class(1) << bits;
  std::vector<mpz_class> out(count);
  int carry = 0;
  for (std::size_t i = 0; i < count; ++i) {
    mpz_class r;
    const std::size_t lo = i * slot;
    if (lo < size) {
      const std::size_t n = std::min(slot, size - lo);
      mpz_import(r.get_mpz_t(), n, -1, sizeof(mp_limb_t), 0, 0, vp + lo);
    }
    r += carry;
    if (r >= half) {
      r -= full;
      carry = 1;
    } else {
      carry = 0;
    }
    out[i] = negative ? mpz_class(-r) : r;
  }
  return out;
}

std::size_t max_bits(const std::vector<mpz_class>& a) {
  std::size_t m = 0;
  for (const auto& c : a) m = std::max(m, mpz_sizeinbase(c.get_mpz_t(), 2));
  return m;
}

std::vector<mpz_class> int_mul(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
  if (a.empty() || b.empty()) return {};
  if (std::min(a.size(), b.size()) > 8) {
    const std::size_t bound = max_bits(a) + max_bits(b) + 64 - __builtin_clzll(std::min(a.size(), b.size())) + 2;
    const std::size_t slot = (bound + 63) / 64;
    return kronecker_unpack(kronecker_pack(a, slot) * kronecker_pack(b, slot), a.size() + b.size() - 1, slot);
  }
  std::vector<mpz_class> out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
  }
  return out;
}

std::vector<mpz_class> int_add(std::vector<mpz_class> a, const std::vector<mpz_class>& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  return a;
}

void int_scale(std::vector<mpz_class>& a, const mpz_class& s) {
  if (s == 1) return;
  for (auto& c : a) c *= s;
}

// Block [lo, lo + len) of the homogenized composition
//   sum_k N_k n^(k-lo) d^(len-1-(k-lo)),
// split as lower * d^(len/2) + n^(len/2) * upper. npow[j] = n^(2^j),
// dpow[j] = d^(2^j).
std::vector<mpz_class> compose_block(const std::vector<mpz_class>& num, std::size_t lo, unsigned log_len,
                                     const std::vector<std::vector<mpz_class>>& npow,
                                     const std::vector<mpz_class>& dpow) {
  if (log_len == 0) return {lo < num.size() ? num[lo] : mpz_class(0)};
  const std::size_t half = std::size_t{1} << (log_len - 1);
  if (lo >= num.size()) return {};
  std::vector<mpz_class> lower = compose_block(num, lo, log_len - 1, npow, dpow);
  int_scale(lower, dpow[log_len - 1]);
  if (lo + half >= num.size()) return lower;
  const std::vector<mpz_class> upper = compose_block(num, lo + half, log_len - 1, npow, dpow);
  return int_add(std::move(lower), int_mul(npow[log_len - 1], upper));
}

// outer = N(h)/D, inner = n(h)/d: outer(inner) = [sum N_k n^k d^(L-1-k)] / (D d^(L-1))
// with L the padded power-of-two length.
IntPoly int_compose(const IntPoly& outer, const IntPoly& inner) {
  unsigned log_len = 0;
  while ((std::size_t{1} << log_len) < outer.num.size()) ++log_len;
  std::vector<std::vector<mpz_class>> npow{inner.num};
  std::vector<mpz_class> dpow{inner.den};
  for (unsigned j = 1; j < log_len; ++j) {
    npow.push_back(int_mul(npow.back(), npow.back()));
    dpow.push_back(dpow.back() * dpow.back());
  }
  mpz_class den = outer.den;
  if (inner.den != 1) {
    for (std::size_t k = 1; k < (std::size_t{1} << log_len); ++k) den *= inner.den;
  }
  std::vector<mpz_class> num = compose_block(outer.num, 0, log_len, npow, dpow);
  return {std::move(num), std::move(den)};
}

}  // namespace

Poly::Poly(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) {
  backend_ = c_.empty() ? Backend::exact : c_.front().backend();
  for (const auto& s : c_) {
    if (s.backend() != backend_) throw MismatchError("polynomial with mixed scalar backends");
  }
  trim();
}

Poly::Poly(std::vector<Scalar> coeffs, Backend b) : c_(std::move(coeffs)), backend_(b) {
  for (const auto& s : c_) {
    if (s.backend() != backend_) throw MismatchError("polynomial with mixed scalar backends");
  }
  trim();
}

Poly Poly::constant(const Scalar& c) { return Poly({c}, c.backend()); }

Poly Poly::monomial(const Scalar& c, std::size_t degree) {
  std::vector<Scalar> v(degree + 1, Scalar::zero(c.backend()));
  v[degree] = c;
  return Poly(std::move(v), c.backend());
}

Poly Poly::identity(Backend b) { return monomial(Scalar::one(b), 1); }

Poly Poly::from_ints(std::initializer_list<long> coeffs, Backend b) {
  std::vector<Scalar> v;
  for (long c : coeffs) v.push_back(Scalar::from_int(c, b));
  return Poly(std::move(v), b);
}

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

bool Poly::is_identity() const { return c_.size() == 2 && c_[0].is_zero() && c_[1].is_one(); }

Scalar Poly::coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Scalar::zero(backend_); }

const Scalar& Poly::leading() const {
  if (c_.empty()) throw DomainError("leading coefficient of the zero polynomial");
  return c_.back();
}

unsigned Poly::conductor() const {
  unsigned n = 1;
  for (const auto& c : c_) n = std::lcm(n, c.conductor());
  return n;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

Poly Poly::operator+(const Poly& o) const {
  if (backend_ != o.backend_) throw MismatchError("polynomial backend mismatch");
  std::vector<Scalar> v = c_.size() >= o.c_.size() ? c_ : o.c_;
  const auto& small = c_.size() >= o.c_.size() ? o.c_ : c_;
  for (std::size_t k = 0; k < small.size(); ++k) v[k] += small[k];
  return Poly(std::move(v), backend_);
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  if (backend_ != o.backend_) throw MismatchError("polynomial backend mismatch");
  if (c_.empty() || o.c_.empty()) return Poly(backend_);
  if (auto a = as_int_poly(*this)) {
    if (auto b = as_int_poly(o)) return from_int_poly({int_mul(a->num, b->num), a->den * b->den});
  }
  std::vector<Scalar> v(c_.size() + o.c_.size() - 1, Scalar::zero(backend_));
  for (std::size_t a = 0; a < c_.size(); ++a) {
    if (c_[a].is_zero()) continue;
    for (std::size_t b = 0; b < o.c_.size(); ++b) {
      if (o.c_[b].is_zero()) continue;
      v[a + b] += c_[a] * o.c_[b];
    }
  }
  return Poly(std::move(v), backend_);
}

Poly Poly::scale(const Scalar& s) const {
  if (s.backend() != backend_) throw MismatchError("polynomial backend mismatch");
  std::vector<Scalar> v = c_;
  for (auto& c : v) c *= s;
  return Poly(std::move(v), backend_);
}

Poly Poly::pow(unsigned e) const {
  Poly result = constant(Scalar::one(backend_));
  Poly base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

bool Poly::operator==(const Poly& o) const {
  if (backend_ != o.backend_) throw MismatchError("polynomial backend mismatch");
  if (c_.size() != o.c_.size()) return false;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k] != o.c_[k]) return false;
  }
  return true;
}

Scalar Poly::evaluate(const Scalar& x) const {
  if (x.backend() != backend_) throw MismatchError("evaluation point backend mismatch");
  Scalar acc = Scalar::zero(backend_);
  for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
  return acc;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly(backend_);
  std::vector<Scalar> v;
  v.reserve(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) v.push_back(c_[k] * Scalar::from_int(static_cast<long>(k), backend_));
  return Poly(std::move(v), backend_);
}

Poly Poly::monic() const {
  if (c_.empty()) return *this;
  return scale(leading().inverse());
}

Poly Poly::to_approx() const {
  std::vector<Scalar> v;
  v.reserve(c_.size());
  for (const auto& c : c_) v.push_back(c.to_approx());
  return Poly(std::move(v), Backend::approx);
}

std::string Poly::to_string() const {
  if (c_.empty()) return "0";
  std::string out;
  for (std::size_t k = c_.size(); k-- > 0;) {
    const Scalar& c = c_[k];
    if (c.is_zero()) continue;
    std::string term;
    if (k == 0) {
      term = coefficient_factor(c);
    } else {
      const std::string hp = k == 1 ? "h" : "h^" + std::to_string(k);
      term = c.is_one() ? hp : coefficient_factor(c) + "*" + hp;
    }
    out += (out.empty() ? "" : " + ") + term;
  }
  return out;
}

Poly compose(const Poly& outer, const Poly& inner) {
  if (outer.backend() != inner.backend()) throw MismatchError("polynomial backend mismatch");
  if (outer.is_constant() || inner.is_identity()) return outer;
  if (auto o = as_int_poly(outer)) {
    if (auto in = as_int_poly(inner)) {
      return from_int_poly(int_compose(*o, *in));
    }
  }
  const auto& c = outer.coeffs();
  Poly acc(outer.backend());
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * inner + Poly::constant(c[k]);
  return acc;
}

Poly iterate(const Poly& f, unsigned i) {
  const std::size_t limit = numeric_config().max_degree;
  if (f.degree() >= 2) {
    std::size_t deg = 1;
    for (unsigned s = 0; s < i; ++s) {
      deg *= static_cast<std::size_t>(f.degree());
      if (deg > limit) {
        throw NumericError("iterate: degree " + std::to_string(f.degree()) + "^" + std::to_string(i) +
                           " exceeds the configured maximum " + std::to_string(limit));
      }
    }
  }
  Poly result = Poly::identity(f.backend());
  for (unsigned s = 0; s < i; ++s) result = compose(f, result);
  return result;
}

DivMod divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  if (a.backend() != b.backend()) throw MismatchError("polynomial backend mismatch");
  const Backend be = a.backend();
  if (a.degree() < b.degree()) return {Poly(be), a};
  std::vector<Scalar> rem = a.coeffs();
  const auto& bc = b.coeffs();
  const std::size_t db = bc.size() - 1;
  const Scalar inv_lead = b.leading().inverse();
  std::vector<Scalar> q(rem.size() - db, Scalar::zero(be));
  for (std::size_t k = rem.size(); k-- > db;) {
    if (rem[k].is_zero()) continue;
    const Scalar t = rem[k] * inv_lead;
    q[k - db] = t;
    for (std::size_t j = 0; j <= db; ++j) rem[k - db + j] -= t * bc[j];
  }
  rem.resize(db);
  return {Poly(std::move(q), be), Poly(std::move(rem), be)};
}

Poly gcd(const Poly& a, const Poly& b) {
  if (a.backend() != Backend::exact || b.backend() != Backend::exact) {
    throw MismatchError("polynomial gcd requires the exact backend");
  }
  Poly x = a, y = b;
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    Poly r = divmod(x, y).remainder;
    x = std::move(y);
    y = r.monic();
  }
  return x.monic();
}

Poly squarefree_part(const Poly& p) {
  if (p.degree() <= 0) return p;
  const Poly g = gcd(p, p.derivative());
  return divmod(p, g).quotient.monic();
}

}  // namespace gha
