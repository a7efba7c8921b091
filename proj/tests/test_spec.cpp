#include <doctest.h>

#include "kato/error.hpp"
#include "kato/spec.hpp"

#include <random>
#include <string>

using namespace kato;
using spec::Expr;

namespace {

ErrorKind kind_of(const std::function<void()> &f) {
  try {
    f();
  } catch (const Error &e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvalidArgument;
}

std::size_t syntax_offset(std::string_view text) {
  try {
    spec::parse_tree(text);
  } catch (const spec::SyntaxError &e) {
    return e.offset();
  }
  FAIL("expected a syntax error");
  return 0;
}

// Random trees over the bare grammar.
Expr random_tree(std::mt19937_64 &gen, int depth) {
  static const char *names[] = {"a", "ball", "x_1", "pair", "Q9"};
  static const char *keys[] = {"n", "r", "k0", "v0", "outer", "inner", "alpha"};
  std::uniform_int_distribution<int> pick(0, 4), nargs(0, 4), kpick(0, 6), coin(0, 2);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  Expr e;
  e.name = names[pick(gen)];
  const int m = nargs(gen);
  for (int i = 0; i < m; ++i) {
    spec::Pair p;
    p.key = keys[kpick(gen)];
    if (depth > 0 && coin(gen) == 0) {
      p.value.nested.push_back(random_tree(gen, depth - 1));
    } else {
      const int style = coin(gen);
      const double v = u(gen);
      p.value.number = style == 0 ? std::round(v) : style == 1 ? v : v * 1e-7;
    }
    e.args.push_back(std::move(p));
  }
  return e;
}

} // namespace

TEST_CASE("grammar examples") {
  const Expr b = spec::parse("ball(n=2)");
  CHECK(b.name == "ball");
  REQUIRE(b.args.size() == 1);
  CHECK(b.args[0].key == "n");
  CHECK(b.args[0].value.number == 2.0);
  const Expr p = spec::parse("pair(outer=ball(n=2,r=2),inner=ball(n=2,r=1))");
  CHECK(p.name == "pair");
  REQUIRE(p.args.size() == 2);
  CHECK(p.args[0].value.expr().name == "ball");
  CHECK(p.args[1].value.expr().find("r")->number == 1.0);
  CHECK(syntax_offset("power(alpha=0.3,tau=)") == 20);
  CHECK(syntax_offset("ball(n=2") == 8);
  CHECK(syntax_offset("ball n=2)") == 5);
  CHECK(syntax_offset("ball(n=2))") == 9);
  CHECK(syntax_offset("ball(n=1e)") == 9);
  CHECK(syntax_offset("ball(=2)") == 5);
  CHECK(syntax_offset("") == 0);
  CHECK(spec::parse_tree("f()").args.empty());
  CHECK(spec::parse_tree(" bump ( c = -1.5e-3 , w = +.5 ) ").find("w")->number == 0.5);
}

TEST_CASE("family tables") {
  CHECK(kind_of([] { spec::parse("sphere(n=2)"); }) == ErrorKind::UnknownFamily);
  CHECK(kind_of([] { spec::parse("ball(r=2)"); }) == ErrorKind::BadArity);
  CHECK(kind_of([] { spec::parse("ball(n=2,q=1)"); }) == ErrorKind::BadArity);
  CHECK(kind_of([] { spec::parse("ball(n=2,n=3)"); }) == ErrorKind::BadArity);
  CHECK(kind_of([] { spec::parse("power(alpha=0.3)"); }) == ErrorKind::BadArity);
  CHECK(kind_of([] { spec::parse("radial(profile=2)"); }) == ErrorKind::BadArity);
  CHECK(kind_of([] { spec::parse("radial(profile=ball(n=2))"); }) == ErrorKind::BadArity);
  CHECK(kind_of([] { spec::parse("spline(k0=0,v0=1,v1=0,k1=1)"); }) == ErrorKind::BadArity);
  CHECK(kind_of([] { spec::parse("coordinate(i=1.5)"); }) == ErrorKind::BadArity);
  CHECK(kind_of([] { spec::parse("shifted_bump(c1=0,c3=0,w=1)"); }) == ErrorKind::BadArity);
  CHECK(kind_of([] { spec::parse("product(a=coordinate(i=1),b=nothing(x=1))"); }) ==
        ErrorKind::UnknownFamily);
}

TEST_CASE("conversions") {
  const fn::FieldFunction f = spec::parse_field("constant(c=1)");
  CHECK(f.describe() == "radial(profile=constant(c=1))");
  CHECK(spec::parse_field("product(a=coordinate(i=1),b=bump(c=0,w=0.8))").describe() ==
        "product(a=coordinate(i=1),b=radial(profile=bump(c=0,w=0.8)))");
  CHECK(spec::parse_domain("ellipsoid(a=1.5,b=1)").describe() == "ellipsoid(a=1.5,b=1)");
  CHECK(spec::parse_domain("ball(n=3,r=2,c1=0.1,c2=0,c3=0)").describe() ==
        "ball(n=3,r=2,c1=0.1,c2=0,c3=0)");
  CHECK(spec::parse_domain("radialmap(n=2,g0=1,a=0.2)").describe() == "radialmap(n=2,g0=1,a=0.2)");
  const geo::NestedPair pr = spec::to_pair(spec::parse("pair(outer=ball(n=2,r=2),inner=ball(n=2))"));
  CHECK(pr.gap == doctest::Approx(1.0));
  const ly::TestFunctionH h = spec::to_test_function(spec::parse("barrier(omega=0.1)"));
  CHECK(h.kappa() == ly::kKappa);
  CHECK(spec::to_test_function(spec::parse("tabulated(x0=0,v0=1,x1=1,v1=2)"))(0.5) ==
        doctest::Approx(1.5));
  CHECK(kind_of([] { spec::parse_field("power(alpha=0.7,tau=0.1)"); }) ==
        ErrorKind::InvalidArgument);
  CHECK(kind_of([] { spec::parse_field("ball(n=2)"); }) == ErrorKind::BadArity);
}

TEST_CASE("describe output reparses to the same object") {
  const std::vector<std::string> specs = {
      "radial(profile=spline(k0=0,v0=1,k1=0.4,v1=1,k2=0.8,v2=0))",
      "radial(profile=power(alpha=0.3,tau=0.1,scale=-2))",
      "shifted_bump(c1=-0.2,c2=0.3,c3=0.1,w=0.4)",
      "modulus(f=product(a=coordinate(i=2),b=radial(profile=bump(c=0.5,w=0.3))))",
  };
  for (const std::string &s : specs) {
    CHECK(spec::parse_field(s).describe() == s);
    CHECK(spec::print(spec::parse(s)) == s);
  }
}

TEST_CASE("print and parse are inverse on random trees") {
  std::mt19937_64 gen(99);
  for (int i = 0; i < 2000; ++i) {
    const Expr e = random_tree(gen, 3);
    const std::string text = spec::print(e);
    const Expr back = spec::parse_tree(text);
    CHECK(back == e);
    CHECK(spec::print(back) == text);
  }
}
