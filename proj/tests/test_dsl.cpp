#include "hyplevel/dsl.hpp"

#include <doctest.h>

#include <cmath>

using namespace hyplevel;

namespace {

void check_same_map(const HoloMap& a, const HoloMap& b) {
  for (Complex z : {Complex(0.0, 0.0), Complex(0.3, 0.2), Complex(-0.5, 0.4),
                    Complex(0.1, -0.7), Complex(-0.6, -0.2)}) {
    Jet ja = a.eval(z, 2);
    Jet jb = b.eval(z, 2);
    CHECK(std::abs(ja.f - jb.f) < 1e-15);
    CHECK(std::abs(ja.d1 - jb.d1) < 1e-15);
    CHECK(std::abs(ja.d2 - jb.d2) < 1e-15);
  }
}

}  // namespace

TEST_CASE("primitives parse to the matching factories") {
  check_same_map(parse_map("id"), HoloMap::identity());
  check_same_map(parse_map("const(0.3,-0.2)"), HoloMap::constant(Complex(0.3, -0.2)));
  check_same_map(parse_map("rot(1.25)"), HoloMap::rotation(1.25));
  check_same_map(parse_map("scale(0.8)"), HoloMap::scale(0.8));
  check_same_map(parse_map("phi(0.5,0)"), HoloMap::mobius(Complex(0.5, 0.0)));
  check_same_map(parse_map("falpha(0.7)"), HoloMap::f_alpha(0.7));
  check_same_map(parse_map("kalpha(0.7)"), HoloMap::k_alpha(0.7));
  check_same_map(parse_map("galpha(0.7)"), HoloMap::g_alpha(0.7));
}

TEST_CASE("blaschke lists, empty and multi-factor") {
  check_same_map(parse_map("blaschke([];1,0)"), HoloMap::blaschke({}, Complex(1.0, 0.0)));
  check_same_map(
      parse_map("blaschke([(0.5,0,1),(-0.2,0.3,2)];0,1)"),
      HoloMap::blaschke({{Complex(0.5, 0.0), 1}, {Complex(-0.2, 0.3), 2}}, Complex(0.0, 1.0)));
}

TEST_CASE("combinators nest") {
  check_same_map(parse_map("compose(kalpha(0.8),phi(0.3,0.1))"),
                 HoloMap::compose(HoloMap::k_alpha(0.8), HoloMap::mobius(Complex(0.3, 0.1))));
  check_same_map(parse_map("mul(phi(0.3,0.1),falpha(0.25))"),
                 HoloMap::product(HoloMap::mobius(Complex(0.3, 0.1)), HoloMap::f_alpha(0.25)));
  check_same_map(parse_map("smul(0,0.9,phi(0.3,0.1))"),
                 HoloMap::scalar_mul(Complex(0.0, 0.9), HoloMap::mobius(Complex(0.3, 0.1))));
  check_same_map(
      parse_map("smul(0.9,0,mul(blaschke([(0.4,0.2,1)];1,0),compose(falpha(0.5),id)))"),
      HoloMap::scalar_mul(
          Complex(0.9, 0.0),
          HoloMap::product(HoloMap::blaschke({{Complex(0.4, 0.2), 1}}, Complex(1.0, 0.0)),
                           HoloMap::compose(HoloMap::f_alpha(0.5), HoloMap::identity()))));
}

TEST_CASE("whitespace is insignificant") {
  check_same_map(parse_map("  compose( kalpha( 0.8 ) ,\n\t phi( 0.3 , 0.1 ) )  "),
                 parse_map("compose(kalpha(0.8),phi(0.3,0.1))"));
  check_same_map(parse_map(" blaschke( [ ( 0.5 , 0 , 1 ) ] ; 1 , 0 ) "),
                 parse_map("blaschke([(0.5,0,1)];1,0)"));
}

TEST_CASE("parse errors carry the byte offset") {
  auto offset_of = [](std::string_view text) -> std::size_t {
    try {
      parse_map(text);
    } catch (const ParseError& e) {
      return e.offset;
    }
    FAIL("expected a ParseError");
    return 0;
  };

  CHECK(offset_of("") == 0);
  CHECK(offset_of("frob(1)") == 0);        // unknown name, reported at its start
  CHECK(offset_of("rot(abc)") == 4);       // number expected at 'abc'
  CHECK(offset_of("phi(0.5 0)") == 8);     // missing comma
  CHECK(offset_of("rot(1.0") == 7);        // missing ')'
  CHECK(offset_of("id junk") == 3);        // trailing input
  CHECK(offset_of("blaschke([(0.5,0,1.5)];1,0)") == 17);  // non-integer multiplicity
}

TEST_CASE("invalid parameters surface as parse errors") {
  CHECK_THROWS_AS(parse_map("phi(1.5,0)"), ParseError);
  CHECK_THROWS_AS(parse_map("scale(0)"), ParseError);
  CHECK_THROWS_AS(parse_map("falpha(1.5)"), ParseError);
  CHECK_THROWS_AS(parse_map("blaschke([];0.5,0)"), ParseError);
  CHECK_THROWS_AS(parse_map("smul(2,0,id)"), ParseError);
}
