#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <utility>

#include "gha/poly.hpp"

namespace gha {

/// The algebra generated by x, h, y subject to hx = x f(h), yh = f(h) y and
/// yx - xy = f(h) - h. Shared read-only between elements and threads.
class Presentation {
 public:
  static std::shared_ptr<const Presentation> make(Poly f);

  const Poly& f() const { return f_; }
  Backend backend() const { return f_.backend(); }
  /// f^{(i)}, cached.
  const Poly& iterate(unsigned i) const;

 private:
  explicit Presentation(Poly f) : f_(std::move(f)) {}

  Poly f_;
  mutable std::mutex mutex_;
  mutable std::deque<Poly> iterates_;  // deque keeps references stable
};

using PresentationPtr = std::shared_ptr<const Presentation>;

enum class Generator { x, h, y, z };

/// (x-exponent, y-exponent) in lexicographic order.
using Degree = std::pair<unsigned, unsigned>;

struct LeadingTerm {
  unsigned x_exp;
  unsigned y_exp;
  Poly coeff;
};

/// Counts applications of the yx rewrite inside multiply().
struct MultiplyStats {
  std::uint64_t swaps = 0;
};

/// Normal form sum of x^i g(h) y^k. Terms with zero polynomial are never
/// stored, so structural equality is element equality.
class Element {
 public:
  using Key = std::pair<unsigned, unsigned>;  // (i, k)
  using Terms = std::map<Key, Poly>;

  explicit Element(PresentationPtr p);
  Element(PresentationPtr p, Terms terms);

  static Element generator(PresentationPtr p, Generator g);
  static Element scalar(PresentationPtr p, const Scalar& s);
  /// x^i g(h) y^k.
  static Element monomial(PresentationPtr p, unsigned i, Poly g, unsigned k);

  const PresentationPtr& presentation() const { return p_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Element operator-() const;
  Element operator+(const Element& o) const;
  Element operator-(const Element& o) const;
  Element operator*(const Element& o) const;
  Element scale(const Scalar& s) const;
  Element pow(unsigned e) const;
  bool operator==(const Element& o) const;
  bool operator!=(const Element& o) const { return !(*this == o); }

  /// Maximal (i, k); throws DomainError on zero.
  Degree degree() const;
  LeadingTerm leading_term() const;

  /// Canonical text, e.g. `x^2*(h^2 + 1)*y + (-1)*h`.
  std::string to_string() const;

 private:
  void check_same(const Element& o) const;

  PresentationPtr p_;
  Terms terms_;
};

Element multiply(const Element& a, const Element& b, MultiplyStats* stats = nullptr);
Element commutator(const Element& a, const Element& b);
/// Commutes with x, h and y.
bool is_central(const Element& a);

/// Element of the commutative space C[X, H, Y], keyed by exponents (i, j, k).
class FreePolyElement {
 public:
  using Key = std::tuple<unsigned, unsigned, unsigned>;

  explicit FreePolyElement(Backend b = Backend::exact) : backend_(b) {}
  static FreePolyElement one(Backend b);

  Backend backend() const { return backend_; }
  const std::map<Key, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(const Key& key, const Scalar& c);
  FreePolyElement operator+(const FreePolyElement& o) const;
  bool operator==(const FreePolyElement& o) const;

  std::string to_string() const;

 private:
  Backend backend_;
  std::map<Key, Scalar> terms_;
};

/// Action of `a` on the faithful representation C[X, H, Y] built from the
/// generator actions only; independent of multiply().
FreePolyElement free_module_action(const Element& a, const FreePolyElement& v);

}  // namespace gha
