// The faithful representation on C[X, H, Y]:
//   x . X^i H^j Y^k = X^{i+1} H^j Y^k
//   h . X^i H^j Y^k = X^i f^{(i)}(H) H^j Y^k
//   y . H^j Y^k     = f(H)^j Y^{k+1}
//   y . X^i H^j Y^k = (x y + f(h) - h) . X^{i-1} H^j Y^k      (i >= 1)
// The last rule is applied in closed form, see act_y_slice.
// Only these generator actions are used here, never multiply().

#include <algorithm>

#include "gha/algebra.hpp"

namespace gha {

namespace {

// Internal layout: (X-exponent, Y-exponent) -> polynomial in H.
using Slices = std::map<std::pair<unsigned, unsigned>, Poly>;

void add_slice(Slices& v, std::pair<unsigned, unsigned> key, const Poly& p) {
  if (p.is_zero()) return;
  auto [it, inserted] = v.try_emplace(key, p);
  if (!inserted) {
    it->second += p;
    if (it->second.is_zero()) v.erase(it);
  }
}

Slices act_x(const Slices& v) {
  Slices out;
  for (const auto& [key, p] : v) out.emplace(std::make_pair(key.first + 1, key.second), p);
  return out;
}

// g(h) acts on the X^i slice as multiplication by g(f^{(i)}(H)).
Slices act_poly(const Presentation& pr, const Poly& g, const Slices& v) {
  Slices out;
  for (const auto& [key, p] : v) add_slice(out, key, compose(g, pr.iterate(key.first)) * p);
  return out;
}

// Unrolling the recursion for y on X^i, the f(h) - h terms telescope:
//   y . X^i p(H) Y^k = X^i p(f(H)) Y^{k+1} + X^{i-1} (f^{(i)}(H) - H) p(H) Y^k.
Slices act_y_slice(const Presentation& pr, unsigned i, const Poly& p, unsigned k) {
  Slices out;
  add_slice(out, {i, k + 1}, compose(p, pr.f()));
  if (i > 0) add_slice(out, {i - 1, k}, (pr.iterate(i) - Poly::identity(pr.backend())) * p);
  return out;
}

Slices act_y(const Presentation& pr, const Slices& v) {
  Slices out;
  for (const auto& [key, p] : v) {
    for (const auto& [k2, q] : act_y_slice(pr, key.first, p, key.second)) add_slice(out, k2, q);
  }
  return out;
}

Slices to_slices(const FreePolyElement& v) {
  std::map<std::pair<unsigned, unsigned>, std::vector<Scalar>> dense;
  for (const auto& [key, c] : v.terms()) {
    auto& coeffs = dense[{std::get<0>(key), std::get<2>(key)}];
    const unsigned j = std::get<1>(key);
    if (coeffs.size() <= j) coeffs.resize(j + 1, Scalar::zero(v.backend()));
    coeffs[j] = c;
  }
  Slices out;
  for (auto& [key, coeffs] : dense) add_slice(out, key, Poly(std::move(coeffs), v.backend()));
  return out;
}

FreePolyElement from_slices(const Slices& s, Backend b) {
  FreePolyElement out(b);
  for (const auto& [key, p] : s) {
    for (std::size_t j = 0; j < p.coeffs().size(); ++j) {
      out.add({key.first, static_cast<unsigned>(j), key.second}, p.coeffs()[j]);
    }
  }
  return out;
}

}  // namespace

FreePolyElement FreePolyElement::one(Backend b) {
  FreePolyElement v(b);
  v.add({0, 0, 0}, Scalar::one(b));
  return v;
}

void FreePolyElement::add(const Key& key, const Scalar& c) {
  if (c.backend() != backend_) throw MismatchError("free module coefficient backend mismatch");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

FreePolyElement FreePolyElement::operator+(const FreePolyElement& o) const {
  FreePolyElement out = *this;
  for (const auto& [key, c] : o.terms_) out.add(key, c);
  return out;
}

bool FreePolyElement::operator==(const FreePolyElement& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  return std::equal(terms_.begin(), terms_.end(), o.terms_.begin());
}

std::string FreePolyElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [key, c] = *it;
    std::string term = "(" + c.to_string() + ")";
    const auto [i, j, k] = key;
    if (i) term += "*X^" + std::to_string(i);
    if (j) term += "*H^" + std::to_string(j);
    if (k) term += "*Y^" + std::to_string(k);
    out += (out.empty() ? "" : " + ") + term;
  }
  return out;
}

FreePolyElement free_module_action(const Element& a, const FreePolyElement& v) {
  const Presentation& pr = *a.presentation();
  if (v.backend() != pr.backend()) throw MismatchError("free module backend differs from f");
  const Slices base = to_slices(v);
  Slices total;
  // Sum over terms x^i g(h) y^k: apply y k times, then g(h), then x i times.
  std::map<unsigned, Slices> after_y{{0, base}};
  for (const auto& [key, g] : a.terms()) {
    const auto [i, k] = key;
    for (unsigned s = static_cast<unsigned>(after_y.rbegin()->first); s < k; ++s) {
      after_y.emplace(s + 1, act_y(pr, after_y.at(s)));
    }
    Slices w = act_poly(pr, g, after_y.at(k));
    for (unsigned s = 0; s < i; ++s) w = act_x(w);
    for (const auto& [k2, p] : w) add_slice(total, k2, p);
  }
  return from_slices(total, pr.backend());
}

}  // namespace gha
