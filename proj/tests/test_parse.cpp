#include "doctest.h"
#include "gha/parse.hpp"
#include "support.hpp"

using namespace gha;

namespace {

Scalar q(long p, long d = 1) { return Scalar::rational(make_rational(p, d)); }

const ParseOptions approx{Backend::approx, std::nullopt};

}  // namespace

TEST_CASE("polynomial syntax") {
  CHECK(parse_poly("h^2 + 2*h - 3/4") == Poly({q(-3, 4), q(2), q(1)}));
  CHECK(parse_poly("zeta(3)*h") == Poly::monomial(Scalar::zeta(3, 1), 1));
  CHECK(parse_poly("(1+i)*h^3") == Poly::monomial(q(1) + Scalar::zeta(4, 1), 3));
  CHECK(parse_poly("h/2") == Poly({q(0), q(1, 2)}));
  CHECK(parse_poly("-h^2") == Poly::from_ints({0, 0, -1}));
  CHECK(parse_poly("2^3*h") == Poly::from_ints({0, 8}));
  CHECK(parse_poly("zeta(6)^2") == Poly::constant(Scalar::zeta(3, 1)));
  CHECK(parse_poly("0") == Poly());
  CHECK(parse_poly("  h\n +\t1 ") == Poly::from_ints({1, 1}));
  CHECK(parse_poly("0.5*h", approx) == Poly({Scalar::approx(0), Scalar::approx(0.5)}));
}

TEST_CASE("syntax errors carry a position") {
  CHECK_THROWS_WITH_AS(parse_poly("2h"), doctest::Contains("column 2"), InputError);
  CHECK_THROWS_WITH_AS(parse_poly("h +\n  q"), doctest::Contains("line 2, column 3: unknown symbol 'q'"), InputError);
  CHECK_THROWS_WITH_AS(parse_poly("h^-1"), doctest::Contains("negative exponent"), InputError);
  CHECK_THROWS_WITH_AS(parse_poly("h^2^3"), doctest::Contains("parentheses"), InputError);
  CHECK_THROWS_WITH_AS(parse_poly("(h + 1"), doctest::Contains("expected ')'"), InputError);
  CHECK_THROWS_WITH_AS(parse_poly(""), doctest::Contains("empty"), InputError);
  CHECK_THROWS_WITH_AS(parse_poly("h $ 1"), doctest::Contains("unexpected character"), InputError);
  CHECK_THROWS_WITH_AS(parse_poly("x + 1"), doctest::Contains("not allowed in a polynomial"), InputError);
  CHECK_THROWS_WITH_AS(parse_poly("1/h"), doctest::Contains("only constants"), InputError);
  CHECK_THROWS_WITH_AS(parse_poly("h/0"), doctest::Contains("division by zero"), InputError);
  CHECK_THROWS_WITH_AS(parse_poly("0.5*h"), doctest::Contains("approx backend"), InputError);
  CHECK_THROWS_WITH_AS(parse_poly("zeta(0)"), doctest::Contains("undefined"), InputError);
}

TEST_CASE("literals must lie in a fixed field") {
  const ParseOptions n3{Backend::exact, 3u};
  CHECK_NOTHROW(parse_poly("zeta(3)*h", n3));
  CHECK_NOTHROW(parse_poly("zeta(6)*h", n3));
  CHECK_THROWS_WITH_AS(parse_poly("i*h", n3), doctest::Contains("not in Q(zeta_3)"), InputError);
  CHECK_NOTHROW(parse_poly("i*h", ParseOptions{Backend::exact, 8u}));
  CHECK_THROWS_AS(parse_poly("i*h", ParseOptions{Backend::exact, 2u}), InputError);
}

TEST_CASE("scalars") {
  CHECK(parse_scalar("-3/4") == q(-3, 4));
  CHECK(parse_scalar("zeta(4)") == Scalar::zeta(4, 1));
  CHECK(parse_scalar("1 - 2*i", approx) == Scalar::approx(1, -2));
  CHECK(parse_scalar("1e-3", approx) == Scalar::approx(0.001));
  CHECK_THROWS_AS(parse_scalar("h"), InputError);
  CHECK(has_decimal_literal("0.5 + i"));
  CHECK_FALSE(has_decimal_literal("1/2 + zeta(3)"));
}

TEST_CASE("algebra expressions") {
  const auto sq = Presentation::make(Poly::from_ints({0, 0, 1}));
  CHECK(parse_element("y*x - x*y", sq) == Element::monomial(sq, 0, Poly::from_ints({0, -1, 1}), 0));
  CHECK(parse_element("x^0", sq) == Element::scalar(sq, q(1)));
  CHECK(parse_element("z - (x*y - h)", sq).is_zero());
  // Products keep their order.
  CHECK(parse_element("h*x", sq) == Element::monomial(sq, 1, Poly::from_ints({0, 0, 1}), 0));
  CHECK(parse_element("x*h", sq) == Element::monomial(sq, 1, Poly::from_ints({0, 1}), 0));
  CHECK(parse_element("x*y/2", sq).to_string() == "x*(1/2)*y");
}

TEST_CASE("property: parse, print, parse is a fixpoint") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    const unsigned n = trial % 3 == 0 ? 12 : 1;
    Poly p(Backend::exact);
    for (int k = 0; k <= trial % 5; ++k) {
      p += Poly::monomial(n == 1 ? gha::testing::random_nonzero_rational(rng) : gha::testing::random_cyclotomic(rng, n),
                          static_cast<std::size_t>(k));
    }
    const std::string s = p.to_string();
    INFO(s);
    const Poly back = parse_poly(s);
    CHECK(back == p);
    CHECK(back.to_string() == s);

    const auto pres = Presentation::make(parse_poly(trial % 2 ? "h^2 - 1" : "zeta(3)*h + 1"));
    const Element e = gha::testing::random_element(rng, pres, 3, 3);
    const std::string es = e.to_string();
    INFO(es);
    const Element eb = parse_element(es, pres);
    CHECK(eb == e);
    CHECK(eb.to_string() == es);
  }
  SUBCASE("approximate coefficients") {
    const Poly p({Scalar::approx(1e-6, -2.5), Scalar::approx(-0.125), Scalar::approx(0, 3)});
    const std::string s = p.to_string();
    INFO(s);
    CHECK(parse_poly(s, approx).to_string() == s);
  }
}
