// Runs the ten acceptance criteria and prints one PASS/FAIL line for each.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "gha/modtheory.hpp"
#include "gha/structure.hpp"
#include "support.hpp"

using namespace gha;
using namespace gha::testing;

namespace {

// Collects the first failure of a criterion.
struct Check {
  std::ostringstream why;
  bool ok = true;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      why << what;
    }
  }
};

FreePolyElement act_on_one(const Element& a) {
  return free_module_action(a, FreePolyElement::one(a.presentation()->backend()));
}

Poly wh(unsigned n) { return Poly::monomial(Scalar::zeta(n, 1), 1); }

void oracle_equivalence(Check& c) {
  std::mt19937_64 rng(1);
  const auto start = std::chrono::steady_clock::now();
  for (int trial = 0; trial < 500 && c.ok; ++trial) {
    std::uniform_int_distribution<int> deg(0, 3);
    const auto p = Presentation::make(random_poly(rng, deg(rng)));
    const Element a = random_element(rng, p, 4, 4), b = random_element(rng, p, 4, 4);
    c.expect(act_on_one(a * b) == free_module_action(a, act_on_one(b)),
             "product " + std::to_string(trial) + " disagrees with the oracle over f = " + p->f().to_string());
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.expect(seconds < 10.0, "took " + std::to_string(seconds) + " s");
  if (c.ok) c.why << "500 products in " << seconds << " s";
}

void degree_law(Check& c) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 200 && c.ok; ++trial) {
    std::uniform_int_distribution<int> deg(1, 3);
    const auto p = Presentation::make(random_poly(rng, deg(rng)));
    const Element a = random_nonzero_element(rng, p, 3, 3), b = random_nonzero_element(rng, p, 3, 3);
    const Degree da = a.degree(), db = b.degree(), dp = (a * b).degree();
    c.expect(dp == Degree{da.first + db.first, da.second + db.second}, "degree not additive for " + a.to_string());
  }
  for (long k : {0L, 1L, -3L, 7L}) {
    const auto p = Presentation::make(Poly::from_ints({k}));
    const Element h = Element::generator(p, Generator::h), x = Element::generator(p, Generator::x);
    c.expect(((h - Element::scalar(p, Scalar::from_int(k))) * x).is_zero(), "(h - f) x != 0 for f = " + std::to_string(k));
  }
}

void center_checks(Check& c) {
  const auto expect_central = [&](const PresentationPtr& p, const std::string& name, const Element& e, bool want) {
    c.expect(is_central(e) == want, name + (want ? " should be central" : " should not be central") + " over f = " +
                                        p->f().to_string());
  };
  {
    const auto p = Presentation::make(wh(3));
    const Element x = Element::generator(p, Generator::x), y = Element::generator(p, Generator::y),
                  h = Element::generator(p, Generator::h), z = Element::generator(p, Generator::z);
    expect_central(p, "x^3", x.pow(3), true);
    expect_central(p, "y^3", y.pow(3), true);
    expect_central(p, "h^3", h.pow(3), true);
    expect_central(p, "z", z, true);
    expect_central(p, "x", x, false);
    expect_central(p, "y", y, false);
    expect_central(p, "h", h, false);
    expect_central(p, "xy", x * y, false);
  }
  {
    const auto p = Presentation::make(Poly::from_ints({0, 0, 1}));
    const Element x = Element::generator(p, Generator::x), y = Element::generator(p, Generator::y),
                  h = Element::generator(p, Generator::h), z = Element::generator(p, Generator::z);
    for (unsigned k = 1; k <= 3; ++k) expect_central(p, "z^" + std::to_string(k), z.pow(k), true);
    expect_central(p, "x", x, false);
    expect_central(p, "y", y, false);
    expect_central(p, "h", h, false);
    expect_central(p, "xy", x * y, false);
  }
}

void isomorphism_table(Check& c) {
  const auto verdict = [&](const std::string& a, const std::string& b, const Poly& f1, const Poly& f2, bool iso,
                           int label) {
    const IsoVerdict v = iso_check(f1, f2);
    c.expect(v.isomorphic == iso && (!iso || label == 0 || v.case_label == label),
             "(" + a + ", " + b + "): got " + (v.isomorphic ? "iso case " + std::to_string(v.case_label) : "not iso"));
  };
  verdict("3", "-5/2", Poly::from_ints({3}), Poly::constant(rat(-5, 2)), true, 1);
  verdict("h", "h", Poly::identity(), Poly::identity(), true, 2);
  verdict("h+1", "h+5", Poly::from_ints({1, 1}), Poly::from_ints({5, 1}), true, 3);
  verdict("2h+1", "h/2", Poly::from_ints({1, 2}), Poly({rat(0), rat(1, 2)}), true, 4);
  verdict("2h", "3h", Poly::from_ints({0, 2}), Poly::from_ints({0, 3}), false, 0);
  verdict("h^2", "h^2+1", Poly::from_ints({0, 0, 1}), Poly::from_ints({1, 0, 1}), false, 0);

  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50 && c.ok; ++trial) {
    const Poly f1 = trial % 5 == 0 ? Poly::from_ints({0, 0, 1}) : random_poly(rng, 2 + trial % 3);
    const Scalar a = random_nonzero_rational(rng), shift = Scalar::rational(random_rational(rng));
    const Poly f2 = affine_conjugate(f1, a, shift);
    const IsoVerdict v = iso_check(f1, f2);
    const bool verified = v.witness && affine_conjugate(f1, v.witness->a, v.witness->c) == f2;
    c.expect(v.isomorphic && v.case_label == 5 && verified && !v.numeric_witness,
             "no verified case-5 witness for " + f1.to_string() + " vs " + f2.to_string());
  }
}

bool module_ok(const ModuleDescriptor& d, const Poly& f) {
  const MatrixModule m = build(d, f);
  return verify_relations(m, f).ok && is_simple(m) && modules_isomorphic(classify(m, f), d);
}

void rotation_families(Check& c) {
  for (unsigned n : {2u, 3u, 4u, 6u}) {
    const Poly f = wh(n);
    const std::string tag = "n = " + std::to_string(n) + ": ";
    // (a): one-dimensional modules over the fixed point 0.
    const SimpleModules one = enumerate_simples(f, 1, {1, 3, 11, 1});
    c.expect(one.x_cyclic.size() == 1 && one.x_cyclic[0].weights.at(0).is_zero(), tag + "dimension-1 x-cyclic family");
    c.expect(one.y_cyclic.size() == 1 && one.y_cyclic[0].z_values == std::vector<Scalar>{rat(0)},
             tag + "dimension-1 y-cyclic family");
    c.expect(one.nilpotent.size() == 1 && one.nilpotent[0].z_value.is_zero() && !one.continuum && !one.nilpotent_free,
             tag + "dimension-1 nilpotent module");
    // (b), (c), (d) in dimension n.
    const SimpleModules s = enumerate_simples(f, n, {1, 3, 11, 1});
    c.expect(s.continuum && s.continuum->orbits.period == n && s.continuum->orbits.center.is_zero() &&
                 s.continuum->orbits.multiplier == Scalar::zeta(n, 1),
             tag + "continuum of orbits b w^i");
    c.expect(s.x_cyclic.empty() && s.y_cyclic.empty(), tag + "unexpected discrete orbit families");
    c.expect(s.nilpotent_free && s.nilpotent_excluded.size() == 1 && s.nilpotent_excluded[0].is_zero(),
             tag + "nilpotent family should be free with z != 0");
    c.expect(s.nilpotent.empty() && s.rejected.empty() && s.residual_roots.empty(), tag + "stray candidates");
    if (!c.ok) return;
    std::vector<ModuleDescriptor> samples;
    for (const auto& d : one.x_cyclic[0].samples) samples.push_back(d);
    for (const auto& d : one.y_cyclic[0].samples) samples.push_back(d);
    for (const auto& d : s.continuum->x_samples) samples.push_back(d);
    for (const auto& d : s.continuum->y_samples) samples.push_back(d);
    for (const auto& d : s.nilpotent_samples) samples.push_back(d);
    c.expect(s.continuum->y_samples.size() == 3 && s.nilpotent_samples.size() == 3, tag + "missing samples");
    for (const auto& d : samples) {
      c.expect(module_ok(d, f), tag + "sample " + kind_name(d) + " failed build/verify/simple/classify");
    }
    // No simple modules in any other dimension up to 2n.
    for (unsigned m = 2; m <= 2 * n; ++m) {
      if (m != n) c.expect(enumerate_simples(f, m).empty(), tag + "simple module in dimension " + std::to_string(m));
    }
  }
}

void squaring_period_two(Check& c) {
  const Poly f = Poly::from_ints({0, 0, 1});
  const SimpleModules s = enumerate_simples(f, 2, {3, 2, 5, 1});
  c.expect(s.x_cyclic.size() == 1 && s.y_cyclic.size() == 1, "expected exactly one period-2 orbit");
  if (!c.ok) return;
  const Orbit expected = orbit_of(f, Scalar::zeta(3, 1), 2);
  c.expect(s.x_cyclic[0].weights.equal_up_to_shift(expected), "orbit is not {zeta3, zeta3^2}");
  for (const auto& d : s.x_cyclic[0].samples) c.expect(module_ok(d, f), "x-cyclic sample failed");
  for (const auto& d : s.y_cyclic[0].samples) c.expect(module_ok(d, f), "y-cyclic sample failed");
}

void squaring_all_dimensions(Check& c) {
  const Poly f = Poly::from_ints({0, 0, 1}).to_approx();
  for (unsigned n = 1; n <= 5; ++n) {
    const SimpleModules s = enumerate_simples(f, n, {1, 1, 6, 1});
    bool found = false;
    for (const auto& fam : s.x_cyclic) {
      for (const auto& d : fam.samples) {
        const MatrixModule m = build(d, f);
        const RelationReport r = verify_relations(m, f);
        const double worst = std::max({r.residuals[0], r.residuals[1], r.residuals[2]});
        found = found || (worst <= 1e-9 && burnside_dimension(m) == m.n * m.n);
      }
    }
    c.expect(found, "no simple module of dimension " + std::to_string(n));
  }
}

void example_negative(Check& c) {
  const Poly f({rat(-3, 4), rat(2), rat(1)});
  const Poly h = Poly::identity();
  const Poly lo = h + Poly::constant(rat(3, 2)), hi = h - Poly::constant(rat(1, 2));
  c.expect(f - h == lo * hi, "f - h factorization");
  c.expect(iterate(f, 2) - h == lo.pow(3) * hi, "f^(2) - h factorization");
  const SimpleModules s = enumerate_simples(f, 2);
  c.expect(s.empty(), "found a 2-dimensional simple module");
  std::vector<Scalar> rejected;
  for (const auto& r : s.rejected) {
    c.expect(r.index == 1 && !r.borderline, "candidate rejected for the wrong reason");
    rejected.push_back(r.z_value);
  }
  const bool both = rejected.size() == 2 && std::count(rejected.begin(), rejected.end(), rat(3, 2)) == 1 &&
                    std::count(rejected.begin(), rejected.end(), rat(-1, 2)) == 1;
  c.expect(both, "expected rejected nilpotent candidates {3/2, -1/2}");
}

void trichotomy(Check& c) {
  std::mt19937_64 rng(9);
  for (const Case& k : random_cases(rng, 100)) {
    const MatrixModule m = build(k.d, k.f);
    const bool xn = !m.X.pow(static_cast<unsigned>(m.n)).is_zero();
    const bool y_inv = m.Y.inverse().has_value();
    const int branches = int(xn) + int(!xn && y_inv) + int(!xn && !y_inv);
    const std::size_t branch = xn ? 0 : (y_inv ? 1 : 2);
    c.expect(branches == 1 && branch == k.d.index(), kind_name(k.d) + " fired the wrong branch");
    c.expect(modules_isomorphic(classify(m, k.f), k.d), kind_name(k.d) + " round trip failed over " + k.f.to_string());
  }
}

void non_simple_control(Check& c) {
  // z + f(-z) = 0 at i = 1 while z + f^(2)(-z) = 0 still holds.
  const std::vector<std::pair<Poly, Scalar>> cases = {
      {Poly::from_ints({0, 0, 1}), rat(0)}, {Poly::from_ints({0, 0, 1}), rat(-1)},
      {Poly({rat(-3, 4), rat(2), rat(1)}), rat(3, 2)}, {Poly({rat(-3, 4), rat(2), rat(1)}), rat(-1, 2)}};
  for (const auto& [f, z] : cases) {
    const MatrixModule m = build(NilpotentModule{z, 2}, f, {false});
    const std::string tag = "z = " + z.to_string() + " over " + f.to_string() + ": ";
    c.expect(verify_relations(m, f).ok, tag + "relations");
    c.expect(burnside_dimension(m) < 4, tag + "span is all of M_2");
    c.expect(tail_subspace_invariant({m.X, m.H, m.Y}, 1), tag + "span{t^1} not invariant");
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
      {"multiplication agrees with the free-module oracle", oracle_equivalence},
      {"degree law and constant-f zero divisors", degree_law},
      {"center generators", center_checks},
      {"isomorphism verdict table", isomorphism_table},
      {"simple modules for f = w h", rotation_families},
      {"f = h^2 period-2 orbit", squaring_period_two},
      {"f = h^2 has simple modules in dimensions 1..5", squaring_all_dimensions},
      {"f = h^2 + 2h - 3/4 has no 2-dimensional simple module", example_negative},
      {"trichotomy round trip", trichotomy},
      {"non-simple nilpotent control", non_simple_control},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Check c;
    try {
      criteria[k].second(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("threw: ") + e.what());
    }
    std::cout << (c.ok ? "PASS" : "FAIL") << " criterion " << k + 1 << ": " << criteria[k].first;
    if (!c.why.str().empty()) std::cout << " (" << c.why.str() << ")";
    std::cout << '\n';
    failed += c.ok ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
