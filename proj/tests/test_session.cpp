#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <variant>

#include "wedge/commands.hpp"
#include "wedge/wedge.hpp"

using namespace wedge;

namespace {

std::string first_error(const std::string& text) {
  try {
    SessionAst ast = parse_session(text);
    bind_session(ast);
    return "";
  } catch (const std::exception& e) {
    return e.what();
  }
}

}  // namespace

TEST_CASE("parse, print, reparse is the identity on the AST") {
  const char* inputs[] = {
      "ring exterior QQ [e1,e2,f1,f2];\n"
      "ideal I = (e1*f1 + e2*f2);\n",
      "ring squarezero QQ [x,y,z,t];\nideal I = (x*(y+z+t));\n",
      "ring exterior F5 [a,b,c];\n"
      "element h = 2*a*b - 3*b*c;\n"
      "ideal J = (a*b, -b*c);\n",
      "ring exterior QQ [u,v];\nelement e = 1/2*u*v;\n",
      "ring exterior QQ [u,v];\nelement e = -(u + v)*u - -v*u;\n",
  };
  for (const char* text : inputs) {
    SessionAst ast = parse_session(text);
    std::string printed = print_session(ast);
    SessionAst again = parse_session(printed);
    CHECK(session_equal(ast, again));
    CHECK(print_session(again) == printed);
  }
}

TEST_CASE("comments and whitespace are ignored") {
  SessionAst a = parse_session(
      "# header comment\nring exterior QQ [a,b]; # trailing\n\n"
      "ideal I = (a*b); # done\n");
  SessionAst b = parse_session("ring exterior QQ [a,b];ideal I=(a*b);");
  CHECK(session_equal(a, b));
}

TEST_CASE("syntax errors carry line and column") {
  CHECK(first_error("ring exterior QQ [a,b]") ==
        "line 1, column 23: expected ';'");
  std::string err = first_error("ring exterior QQ [a,b];\nideal I = (a*;\n");
  CHECK(err.find("line 2") != std::string::npos);
  CHECK(first_error("ideal I = (x);").find("ring declaration") !=
        std::string::npos);
  CHECK(first_error("ring exterior QQ [a,b];\nring exterior QQ [c];")
            .find("duplicate ring") != std::string::npos);
}

TEST_CASE("semantic errors: unknown variable, zero and inhomogeneous "
          "generators, bad modulus") {
  CHECK(first_error("ring exterior QQ [a,b];\nideal I = (a*z);")
            .find("unknown variable 'z'") != std::string::npos);
  std::string zero = first_error("ring exterior F7 [e1];\nideal I = (e1*e1);");
  CHECK(zero.find("line 2") != std::string::npos);
  CHECK(zero.find("reduces to zero") != std::string::npos);
  CHECK(first_error("ring exterior QQ [a,b];\nideal I = (a + a*b);")
            .find("not homogeneous") != std::string::npos);
  CHECK(first_error("ring exterior F6 [a];").find("not prime") !=
        std::string::npos);
  CHECK(first_error("ring exterior R7 [a];").find("field") !=
        std::string::npos);
  CHECK(first_error("ring exterior QQ [a,a];").find("duplicate") !=
        std::string::npos);
  CHECK(first_error("ring exterior QQ [a,b];\nideal I = (a*b);\n"
                    "ideal I = (a*b);")
            .find("duplicate name 'I'") != std::string::npos);
  CHECK(first_error("ring exterior QQ [a,b];\nelement e = a/b;")
            .find("non-scalar") != std::string::npos);
  CHECK(first_error("ring exterior QQ [a,b];\nelement e = a/0;")
            .find("zero") != std::string::npos);
}

TEST_CASE("binding evaluates expressions exactly") {
  SessionAst ast = parse_session(
      "ring exterior QQ [e1,e2,f1,f2];\n"
      "element h = e1*f1 + e2*f2;\n"
      "element s = 3*e1*e2 - e1*f1;\n"
      "element q = (e1 + e2)*(f1 - f2);\n"
      "element half = 1/2*e1;\n");
  AnySession any = bind_session(ast);
  auto& ses = std::get<BoundSession<Rationals>>(any);
  const Ring<Rationals>& r = *ses.ring;
  auto e1 = ring_var(r, 0), e2 = ring_var(r, 1), f1 = ring_var(r, 2),
       f2 = ring_var(r, 3);
  CHECK(*ses.find_element("h") == e1 * f1 + e2 * f2);
  CHECK(*ses.find_element("s") ==
        scale(r.field().from_int(3), e1 * e2) - e1 * f1);
  CHECK(*ses.find_element("q") == (e1 + e2) * (f1 - f2));
  CHECK(*ses.find_element("half") ==
        scale(r.field().div(r.field().one(), r.field().from_int(2)), e1));
  CHECK(ses.find_element("nope") == nullptr);
}

TEST_CASE("prime field sessions bind to modular arithmetic") {
  SessionAst ast = parse_session(
      "ring exterior F5 [a,b];\nelement e = 7*a*b;\nideal I = (3*a*b);\n");
  AnySession any = bind_session(ast);
  auto& ses = std::get<BoundSession<PrimeField>>(any);
  const Ring<PrimeField>& r = *ses.ring;
  CHECK(r.field().modulus() == 5);
  // 7 = 2 mod 5
  CHECK(*ses.find_element("e") ==
        scale(r.field().from_int(2), ring_var(r, 0) * ring_var(r, 1)));
  REQUIRE(ses.find_ideal("I") != nullptr);
  CHECK(ses.find_ideal("I")->size() == 1);
}

TEST_CASE("element strings round-trip through the grammar") {
  Ring<Rationals> r(RingMode::Exterior, {"e1", "e2", "f1"}, Rationals{});
  auto e1 = ring_var(r, 0), e2 = ring_var(r, 1), f1 = ring_var(r, 2);
  const Rationals& q = r.field();
  Element<Rationals> cases[] = {
      e1 * e2 - e2 * f1,
      scale(q.div(q.one(), q.from_int(2)), e1 * f1) - e2,
      scale(q.from_int(-3), e1) + scale(q.div(q.from_int(2), q.from_int(7)),
                                        e2 * f1),
      ring_one(r),
      scale(q.from_int(5), ring_one(r)),
  };
  for (const auto& e : cases) {
    Element<Rationals> back = eval_expression(parse_expression(e.to_string()), r);
    CHECK(back == e);
  }
}

TEST_CASE("expression printing inserts only necessary parentheses") {
  Expr e = parse_expression("(a + b)*(c - d) - -2*a");
  std::string printed = print_expression(e);
  Expr again = parse_expression(printed);
  CHECK(expr_equal(e, again));
  CHECK(printed == "(a + b)*(c - d) - -2*a");
  CHECK(print_expression(parse_expression("a*(b*c)")) == "a*(b*c)");
  CHECK(print_expression(parse_expression("a + (b + c)")) == "a + (b + c)");
  CHECK(print_expression(parse_expression("1/2*a")) == "1/2*a");
}

TEST_CASE("division requires a nonzero scalar denominator") {
  Ring<Rationals> r(RingMode::Exterior, {"a", "b"}, Rationals{});
  Element<Rationals> e =
      eval_expression(parse_expression("a/( 2 )"), r);
  CHECK(e == scale(r.field().div(r.field().one(), r.field().from_int(2)),
                   ring_var(r, 0)));
  CHECK_THROWS_AS(eval_expression(parse_expression("a/b"), r),
                  SemanticError);
  CHECK_THROWS_AS(eval_expression(parse_expression("a/(b - b)"), r),
                  SemanticError);
}

TEST_CASE("big integer literals are rejected gracefully") {
  Ring<Rationals> r(RingMode::Exterior, {"a"}, Rationals{});
  CHECK_THROWS_AS(
      eval_expression(parse_expression("1000000000000000000000*a"), r),
      SemanticError);
}
