#include "gha/algebra.hpp"

#include <algorithm>
#include <vector>

namespace gha {

std::shared_ptr<const Presentation> Presentation::make(Poly f) {
  return std::shared_ptr<const Presentation>(new Presentation(std::move(f)));
}

const Poly& Presentation::iterate(unsigned i) const {
  std::lock_guard<std::mutex> lock(mutex_);
  if (iterates_.empty()) iterates_.push_back(Poly::identity(backend()));
  const std::size_t limit = numeric_config().max_degree;
  while (iterates_.size() <= i) {
    const Poly& last = iterates_.back();
    if (f_.degree() >= 2 && static_cast<std::size_t>(last.degree()) * f_.degree() > limit) {
      throw NumericError("iterate of f exceeds the configured maximum degree " + std::to_string(limit));
    }
    iterates_.push_back(compose(f_, last));
  }
  return iterates_[i];
}

namespace {

void accumulate(Element::Terms& terms, const Element::Key& key, const Poly& p) {
  if (p.is_zero()) return;
  auto [it, inserted] = terms.try_emplace(key, p);
  if (!inserted) it->second += p;
}

Element::Terms pruned(Element::Terms terms) {
  for (auto it = terms.begin(); it != terms.end();) {
    it = it->second.is_zero() ? terms.erase(it) : std::next(it);
  }
  return terms;
}

// Normal forms of y^k x^i, keyed (a, b) for x^a p(h) y^b, built from
//   y^k x^i = (y^{k-1} x^i) y + (y^{k-1} x^{i-1}) (f^{(i)}(h) - h)
// which follows from y x^i = x^i y + x^{i-1} (f^{(i)}(h) - h).
class SwapTable {
 public:
  SwapTable(const Presentation& p, MultiplyStats* stats) : p_(p), stats_(stats) {}

  const Element::Terms& get(unsigned k, unsigned i) {
    const auto key = std::make_pair(k, i);
    if (auto it = table_.find(key); it != table_.end()) return it->second;
    Element::Terms t;
    if (k == 0) {
      t.emplace(Element::Key{i, 0}, Poly::constant(Scalar::one(p_.backend())));
    } else if (i == 0) {
      t.emplace(Element::Key{0, k}, Poly::constant(Scalar::one(p_.backend())));
    } else {
      if (stats_) ++stats_->swaps;
      for (const auto& [ab, poly] : get(k - 1, i)) accumulate(t, {ab.first, ab.second + 1}, poly);
      for (const auto& [ab, poly] : get(k - 1, i - 1)) {
        const unsigned b = ab.second;
        accumulate(t, ab, poly * (p_.iterate(i + b) - p_.iterate(b)));
      }
      t = pruned(std::move(t));
    }
    return table_.emplace(key, std::move(t)).first->second;
  }

 private:
  const Presentation& p_;
  MultiplyStats* stats_;
  std::map<std::pair<unsigned, unsigned>, Element::Terms> table_;
};

std::string x_power(unsigned i) { return i == 1 ? "x" : "x^" + std::to_string(i); }
std::string y_power(unsigned k) { return k == 1 ? "y" : "y^" + std::to_string(k); }

}  // namespace

Element::Element(PresentationPtr p) : p_(std::move(p)) {
  if (!p_) throw InputError("element without presentation");
}

Element::Element(PresentationPtr p, Terms terms) : p_(std::move(p)), terms_(std::move(terms)) {
  if (!p_) throw InputError("element without presentation");
  for (const auto& [key, poly] : terms_) {
    if (poly.backend() != p_->backend()) throw MismatchError("element coefficient backend differs from f");
  }
  terms_ = pruned(std::move(terms_));
}

Element Element::generator(PresentationPtr p, Generator g) {
  const Backend b = p->backend();
  const Poly one = Poly::constant(Scalar::one(b));
  switch (g) {
    case Generator::x:
      return monomial(p, 1, one, 0);
    case Generator::h:
      return monomial(p, 0, Poly::identity(b), 0);
    case Generator::y:
      return monomial(p, 0, one, 1);
    case Generator::z:
      return Element(p, {{{1, 1}, one}, {{0, 0}, -Poly::identity(b)}});
  }
  throw InputError("unknown generator");
}

Element Element::scalar(PresentationPtr p, const Scalar& s) {
  return monomial(std::move(p), 0, Poly::constant(s), 0);
}

Element Element::monomial(PresentationPtr p, unsigned i, Poly g, unsigned k) {
  Terms t;
  t.emplace(Key{i, k}, std::move(g));
  return Element(std::move(p), std::move(t));
}

void Element::check_same(const Element& o) const {
  if (p_ != o.p_ && p_->f() != o.p_->f()) throw MismatchError("elements belong to different presentations");
}

Element Element::operator-() const {
  Terms t;
  for (const auto& [key, poly] : terms_) t.emplace(key, -poly);
  return Element(p_, std::move(t));
}

Element Element::operator+(const Element& o) const {
  check_same(o);
  Terms t = terms_;
  for (const auto& [key, poly] : o.terms_) accumulate(t, key, poly);
  return Element(p_, std::move(t));
}

Element Element::operator-(const Element& o) const { return *this + (-o); }

Element Element::operator*(const Element& o) const { return multiply(*this, o); }

Element Element::scale(const Scalar& s) const {
  Terms t;
  for (const auto& [key, poly] : terms_) t.emplace(key, poly.scale(s));
  return Element(p_, std::move(t));
}

Element Element::pow(unsigned e) const {
  Element result = scalar(p_, Scalar::one(p_->backend()));
  for (unsigned s = 0; s < e; ++s) result = result * *this;
  return result;
}

bool Element::operator==(const Element& o) const {
  check_same(o);
  return terms_ == o.terms_;
}

Degree Element::degree() const {
  if (terms_.empty()) throw DomainError("degree of the zero element");
  return terms_.rbegin()->first;
}

LeadingTerm Element::leading_term() const {
  if (terms_.empty()) throw DomainError("leading term of the zero element");
  const auto& [key, poly] = *terms_.rbegin();
  return {key.first, key.second, poly};
}

std::string Element::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [key, poly] = *it;
    std::vector<std::string> factors;
    if (key.first > 0) factors.push_back(x_power(key.first));
    const bool unit = poly.degree() == 0 && poly.leading().is_one();
    if (!unit || (key.first == 0 && key.second == 0)) {
      const bool single = std::count_if(poly.coeffs().begin(), poly.coeffs().end(),
                                        [](const Scalar& c) { return !c.is_zero(); }) == 1;
      factors.push_back(single ? poly.to_string() : "(" + poly.to_string() + ")");
    }
    if (key.second > 0) factors.push_back(y_power(key.second));
    std::string term;
    for (const auto& f : factors) term += (term.empty() ? "" : "*") + f;
    out += (out.empty() ? "" : " + ") + term;
  }
  return out;
}

Element multiply(const Element& a, const Element& b, MultiplyStats* stats) {
  if (a.presentation() != b.presentation() && a.presentation()->f() != b.presentation()->f()) {
    throw MismatchError("elements belong to different presentations");
  }
  const Presentation& p = *a.presentation();
  SwapTable table(p, stats);
  Element::Terms out;
  // x^{i1} g1 y^{k1} . x^{i2} g2 y^{k2}: every term x^s q y^t of y^{k1} x^{i2}
  // contributes x^{i1+s} g1(f^{(s)}) q g2(f^{(t)}) y^{t+k2}.
  for (const auto& [k_a, g1] : a.terms()) {
    std::map<unsigned, Poly> left;  // g1 o f^{(s)}
    for (const auto& [k_b, g2] : b.terms()) {
      std::map<unsigned, Poly> right;  // g2 o f^{(t)}
      for (const auto& [st, q] : table.get(k_a.second, k_b.first)) {
        const auto [s, t] = st;
        auto l = left.find(s);
        if (l == left.end()) l = left.emplace(s, compose(g1, p.iterate(s))).first;
        auto r = right.find(t);
        if (r == right.end()) r = right.emplace(t, compose(g2, p.iterate(t))).first;
        accumulate(out, {k_a.first + s, t + k_b.second}, l->second * q * r->second);
      }
    }
  }
  return Element(a.presentation(), std::move(out));
}

Element commutator(const Element& a, const Element& b) { return a * b - b * a; }

bool is_central(const Element& a) {
  const auto& p = a.presentation();
  for (Generator g : {Generator::x, Generator::h, Generator::y}) {
    if (!commutator(a, Element::generator(p, g)).is_zero()) return false;
  }
  return true;
}

}  // namespace gha
