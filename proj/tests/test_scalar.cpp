#include <numbers>

#include "doctest.h"
#include "gha/scalar.hpp"
#include "support.hpp"

using namespace gha;

namespace {
const Scalar z3 = Scalar::zeta(3, 1);
const Scalar one = Scalar::from_int(1);
}  // namespace

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_polynomial(1) == std::vector<long>{-1, 1});
  CHECK(cyclotomic_polynomial(3) == std::vector<long>{1, 1, 1});
  CHECK(cyclotomic_polynomial(4) == std::vector<long>{1, 0, 1});
  CHECK(cyclotomic_polynomial(6) == std::vector<long>{1, -1, 1});
  CHECK(cyclotomic_polynomial(12) == std::vector<long>{1, 0, -1, 0, 1});
  // Phi_105 is the first with a coefficient of absolute value 2.
  const auto& p105 = cyclotomic_polynomial(105);
  CHECK(p105.size() == 49);
  CHECK(std::count(p105.begin(), p105.end(), -2) == 2);
  CHECK(euler_phi(105) == 48);
}

TEST_CASE("field arithmetic examples") {
  CHECK(z3 * z3 * z3 == one);
  CHECK(Scalar::rational(make_rational(1, 2)) + Scalar::rational(make_rational(1, 3)) ==
        Scalar::rational(make_rational(5, 6)));
  // Phi_3 = x^2 + x + 1, so zeta + zeta^2 = -1.
  CHECK(z3 + z3 * z3 == Scalar::from_int(-1));
  CHECK((z3 + z3 * z3).to_string() == "-1");
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(one / Scalar::from_int(0), DomainError);
  CHECK_THROWS_AS(Scalar::zeta(5, 2) / (Scalar::zeta(5, 1) - Scalar::zeta(5, 1)), DomainError);
  CHECK_THROWS_AS(one + Scalar::approx(1.0), MismatchError);
  CHECK_THROWS_AS(Scalar::approx(1.0) / Scalar::approx(0.0), DomainError);
  CHECK_THROWS_AS(make_rational(1, 0), DomainError);
}

TEST_CASE("mixed conductors embed into the lcm") {
  const Scalar z4 = Scalar::zeta(4, 1);
  const Scalar s = z3 + z4;
  CHECK(s.conductor() == 12);
  CHECK(s - z4 == z3);
  // Q(zeta_3) = Q(zeta_6): zeta_6 = -zeta_3^2.
  CHECK(Scalar::zeta(6, 1) == -(z3 * z3));
  CHECK(Scalar::zeta(2, 1) == Scalar::from_int(-1));
}

TEST_CASE("root_of_unity_order examples") {
  CHECK(root_of_unity_order(z3) == 3u);
  CHECK_FALSE(root_of_unity_order(Scalar::from_int(2)).has_value());
  // (-z)^1 = -z, (-z)^2 = z^2, (-z)^3 = -1, (-z)^6 = 1.
  CHECK(root_of_unity_order(-z3) == 6u);
  CHECK(root_of_unity_order(one) == 1u);
  CHECK(root_of_unity_order(Scalar::from_int(-1)) == 2u);
  CHECK_FALSE(root_of_unity_order(Scalar::from_int(0)).has_value());
  CHECK_FALSE(root_of_unity_order(Scalar::rational(make_rational(1, 2))).has_value());
  // Modulus 1 but not a root of unity: (3+4i)/5.
  const Scalar pyth = Scalar::rational(make_rational(3, 5)) + Scalar::rational(make_rational(4, 5)) * Scalar::zeta(4, 1);
  CHECK_FALSE(root_of_unity_order(pyth).has_value());
}

TEST_CASE("approximate root_of_unity_order") {
  CHECK(root_of_unity_order(Scalar::zeta(7, 3, Backend::approx)) == 7u);
  CHECK(root_of_unity_order(Scalar::zeta(12, 5, Backend::approx)) == 12u);
  CHECK(root_of_unity_order(Scalar::approx(-1.0)) == 2u);
  CHECK_FALSE(root_of_unity_order(Scalar::approx(1.1)).has_value());
  CHECK_FALSE(root_of_unity_order(Scalar(ApproxComplex{std::polar(1.0, 1.0)})).has_value());
}

TEST_CASE("property: field axioms on random triples") {
  std::mt19937_64 rng(7);
  for (unsigned conductor : {1u, 3u, 5u, 8u, 12u}) {
    for (int trial = 0; trial < 20; ++trial) {
      const Scalar a = testing::random_cyclotomic(rng, conductor);
      const Scalar b = testing::random_cyclotomic(rng, conductor);
      const Scalar c = testing::random_cyclotomic(rng, conductor);
      CHECK((a * b) * c == a * (b * c));
      CHECK((a + b) + c == a + (b + c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a * b == b * a);
      if (!a.is_zero()) CHECK(a * a.inverse() == Scalar::from_int(1));
      CHECK(a - a == Scalar::from_int(0));
    }
  }
}

TEST_CASE("property: root order is minimal") {
  for (unsigned n : {1u, 2u, 3u, 5u, 8u, 9u, 12u}) {
    for (long k = 0; k < static_cast<long>(n); ++k) {
      for (const Scalar s : {Scalar::zeta(n, k), -Scalar::zeta(n, k)}) {
        const auto order = root_of_unity_order(s);
        REQUIRE(order.has_value());
        CHECK(s.pow(*order) == one);
        for (unsigned j = 1; j < *order; ++j) CHECK(s.pow(j) != one);
      }
    }
  }
}

TEST_CASE("property: promotion commutes with arithmetic") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const Scalar a = testing::random_cyclotomic(rng, 7);
    const Scalar b = testing::random_cyclotomic(rng, 7);
    CHECK((a * b).to_approx() == a.to_approx() * b.to_approx());
    CHECK((a + b).to_approx() == a.to_approx() + b.to_approx());
    if (!b.is_zero()) CHECK((a / b).to_approx() == a.to_approx() / b.to_approx());
  }
}

TEST_CASE("canonical strings") {
  CHECK(Scalar::rational(make_rational(-3, 4)).to_string() == "-3/4");
  CHECK(z3.to_string() == "zeta(3)");
  CHECK((z3 * z3).to_string() == "-1 - zeta(3)");
  CHECK((Scalar::rational(make_rational(3, 2)) * Scalar::zeta(5, 2)).to_string() == "3/2*zeta(5)^2");
  CHECK(Scalar::approx(0.5, -2.0).to_string() == "0.5 - 2.0*i");
  CHECK(Scalar::approx(0.0, 1.0).to_string() == "1.0*i");
  CHECK(Scalar::approx(2.0).to_string() == "2.0");
}

TEST_CASE("rational recognition") {
  CHECK(recognize_rational(0.75) == make_rational(3, 4));
  CHECK(recognize_rational(-1.5) == make_rational(-3, 2));
  CHECK(recognize_rational(1.0 / 7.0) == make_rational(1, 7));
  CHECK_FALSE(recognize_rational(std::numbers::pi, 1000).has_value());
}
