#include "gha/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <deque>
#include <numeric>

namespace gha {

Matrix::Matrix(std::size_t n, Backend b) : n_(n), b_(b), a_(n * n, Scalar::zero(b)) {}

Matrix Matrix::identity(std::size_t n, Backend b) {
  Matrix m(n, b);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(b);
  return m;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (n_ != o.n_) throw InputError("matrix size mismatch");
  Matrix m = *this;
  for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] += o.a_[k];
  return m;
}

Matrix Matrix::operator-(const Matrix& o) const { return *this + o.scale(-Scalar::one(o.b_)); }

Matrix Matrix::operator*(const Matrix& o) const {
  if (n_ != o.n_) throw InputError("matrix size mismatch");
  Matrix m(n_, b_);
  for (std::size_t r = 0; r < n_; ++r) {
    for (std::size_t k = 0; k < n_; ++k) {
      const Scalar& x = (*this)(r, k);
      if (x.is_zero()) continue;
      for (std::size_t c = 0; c < n_; ++c) m(r, c) += x * o(k, c);
    }
  }
  return m;
}

Matrix Matrix::scale(const Scalar& s) const {
  Matrix m = *this;
  for (auto& x : m.a_) x *= s;
  return m;
}

Matrix Matrix::pow(unsigned e) const {
  Matrix result = identity(n_, b_), base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

bool Matrix::operator==(const Matrix& o) const {
  if (n_ != o.n_) return false;
  for (std::size_t k = 0; k < a_.size(); ++k) {
    if (a_[k] != o.a_[k]) return false;
  }
  return true;
}

bool Matrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const Scalar& s) { return s.is_zero(); });
}

std::optional<Scalar> Matrix::as_scalar() const {
  if (n_ == 0) return std::nullopt;
  const Scalar s = (*this)(0, 0);
  for (std::size_t r = 0; r < n_; ++r) {
    for (std::size_t c = 0; c < n_; ++c) {
      if (!(r == c ? (*this)(r, c) == s : (*this)(r, c).is_zero())) return std::nullopt;
    }
  }
  return s;
}

std::optional<Matrix> Matrix::inverse() const {
  Matrix a = *this, inv = identity(n_, b_);
  for (std::size_t col = 0; col < n_; ++col) {
    // Exact: first nonzero pivot. Approx: largest modulus.
    std::size_t piv = n_;
    double best = 0;
    for (std::size_t r = col; r < n_; ++r) {
      if (a(r, col).is_zero()) continue;
      const double m = a(r, col).abs();
      if (piv == n_ || (b_ == Backend::approx && m > best)) {
        piv = r;
        best = m;
        if (b_ == Backend::exact) break;
      }
    }
    if (piv == n_) return std::nullopt;
    for (std::size_t c = 0; c < n_; ++c) {
      std::swap(a(col, c), a(piv, c));
      std::swap(inv(col, c), inv(piv, c));
    }
    const Scalar p = a(col, col).inverse();
    for (std::size_t c = 0; c < n_; ++c) {
      a(col, c) *= p;
      inv(col, c) *= p;
    }
    for (std::size_t r = 0; r < n_; ++r) {
      if (r == col || a(r, col).is_zero()) continue;
      const Scalar factor = a(r, col);
      for (std::size_t c = 0; c < n_; ++c) {
        a(r, c) -= factor * a(col, c);
        inv(r, c) -= factor * inv(col, c);
      }
    }
  }
  return inv;
}

Matrix Matrix::to_approx() const {
  Matrix m(n_, Backend::approx);
  for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] = a_[k].to_approx();
  return m;
}

double Matrix::max_abs() const {
  double m = 0;
  for (const auto& x : a_) m = std::max(m, x.abs());
  return m;
}

Matrix Matrix::evaluate(const Poly& p) const {
  Matrix acc(n_, b_);
  const Matrix id = identity(n_, b_);
  for (std::size_t k = p.coeffs().size(); k-- > 0;) acc = acc * *this + id.scale(p.coeffs()[k]);
  return acc;
}

Poly Matrix::characteristic_polynomial() const {
  // M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k.
  std::vector<Scalar> c(n_ + 1, Scalar::zero(b_));
  c[n_] = Scalar::one(b_);
  Matrix m(n_, b_);
  const Matrix id = identity(n_, b_);
  for (std::size_t k = 1; k <= n_; ++k) {
    m = *this * m + id.scale(c[n_ - k + 1]);
    const Matrix am = *this * m;
    Scalar tr = Scalar::zero(b_);
    for (std::size_t i = 0; i < n_; ++i) tr += am(i, i);
    c[n_ - k] = -tr / Scalar::from_int(static_cast<long>(k), b_);
  }
  return Poly(std::move(c), b_);
}

unsigned Matrix::conductor() const {
  unsigned n = 1;
  for (const auto& x : a_) n = std::lcm(n, x.conductor());
  return n;
}

namespace {

// Row-reduced basis of a subspace of K^d with exact pivots.
class ExactSpan {
 public:
  bool insert(std::vector<Scalar> v) {
    for (std::size_t j = 0; j < basis_.size(); ++j) {
      const Scalar coef = v[pivots_[j]];
      if (coef.is_zero()) continue;
      for (std::size_t k = 0; k < v.size(); ++k) v[k] -= coef * basis_[j][k];
    }
    std::size_t p = 0;
    while (p < v.size() && v[p].is_zero()) ++p;
    if (p == v.size()) return false;
    const Scalar inv = v[p].inverse();
    for (auto& x : v) x *= inv;
    basis_.push_back(std::move(v));
    pivots_.push_back(p);
    return true;
  }
  std::size_t dimension() const { return basis_.size(); }

 private:
  std::vector<std::vector<Scalar>> basis_;
  std::vector<std::size_t> pivots_;
};

// Orthonormal basis by twice-iterated modified Gram-Schmidt; a vector whose
// residual falls below rel_tol of its norm is dependent.
class ApproxSpan {
 public:
  using Vec = std::vector<std::complex<double>>;

  std::optional<Vec> insert(Vec v) {
    const double norm0 = norm(v);
    if (norm0 == 0) return std::nullopt;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis_) {
        std::complex<double> dot = 0;
        for (std::size_t k = 0; k < v.size(); ++k) dot += std::conj(b[k]) * v[k];
        for (std::size_t k = 0; k < v.size(); ++k) v[k] -= dot * b[k];
      }
    }
    const double r = norm(v);
    if (r <= rel_tol * norm0) return std::nullopt;
    for (auto& x : v) x /= r;
    basis_.push_back(v);
    return v;
  }
  std::size_t dimension() const { return basis_.size(); }

 private:
  static double norm(const Vec& v) {
    double s = 0;
    for (const auto& x : v) s += std::norm(x);
    return std::sqrt(s);
  }
  static constexpr double rel_tol = 1e-8;
  std::vector<Vec> basis_;
};

}  // namespace

std::size_t generated_algebra_dimension(const std::vector<Matrix>& gens) {
  if (gens.empty()) throw InputError("no generators");
  const std::size_t n = gens.front().size();
  const Backend be = gens.front().backend();
  const std::size_t full = n * n;
  std::deque<Matrix> queue{Matrix::identity(n, be)};
  queue.insert(queue.end(), gens.begin(), gens.end());

  if (be == Backend::exact) {
    ExactSpan span;
    while (!queue.empty() && span.dimension() < full) {
      Matrix m = std::move(queue.front());
      queue.pop_front();
      if (!span.insert(m.entries())) continue;
      for (const auto& g : gens) queue.push_back(g * m);
    }
    return span.dimension();
  }

  ApproxSpan span;
  while (!queue.empty() && span.dimension() < full) {
    const Matrix m = std::move(queue.front());
    queue.pop_front();
    ApproxSpan::Vec v;
    for (const auto& x : m.entries()) v.push_back(x.to_complex());
    const auto unit = span.insert(std::move(v));
    if (!unit) continue;
    Matrix u(n, be);
    for (std::size_t k = 0; k < full; ++k) u(k / n, k % n) = Scalar(ApproxComplex{(*unit)[k]});
    for (const auto& g : gens) queue.push_back(g * u);
  }
  return span.dimension();
}

bool tail_subspace_invariant(const std::vector<Matrix>& mats, std::size_t from) {
  for (const auto& m : mats) {
    for (std::size_t c = from; c < m.size(); ++c) {
      for (std::size_t r = 0; r < from; ++r) {
        if (!m(r, c).is_zero()) return false;
      }
    }
  }
  return true;
}

}  // namespace gha
