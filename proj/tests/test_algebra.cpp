#include <doctest.h>

#include "koszul/model.hpp"
#include "util.hpp"

using namespace koszul;
using koszul::testing::Rng;

namespace {

// theta1, theta2 odd; x, y even deg 0; p odd-total of ghost 1
ContextPtr grassmann_ctx() {
  SlotSignature sig = SlotSignature::make(1, 1, {"par", "gh"});
  auto d = [&](int p, long long g) {
    MultiDegree m = MultiDegree::zero(sig);
    m.z2[0] = uint8_t(p);
    m.z[0] = g;
    return m;
  };
  return GradedContext::make(sig, SignConvention::BernsteinLeites,
                             {{"x", d(0, 0)},
                              {"y", d(0, 0)},
                              {"t1", d(1, 0)},
                              {"t2", d(1, 0)},
                              {"p", d(0, 1)}});
}

}  // namespace

TEST_CASE("normal_form reorders with Koszul signs") {
  auto ctx = grassmann_ctx();
  const auto t1 = ctx->index_of("t1"), t2 = ctx->index_of("t2");
  const auto x = ctx->index_of("x"), p = ctx->index_of("p");

  Polynomial a = normal_form(ctx, {{t2, 1}, {t1, 1}});
  Polynomial b = normal_form(ctx, {{t1, 1}, {t2, 1}});
  CHECK(a == -b);
  CHECK(a.to_string() == "-t1*t2");

  CHECK(normal_form(ctx, {{t1, 1}, {t1, 1}}, Rational(5)).is_zero());

  Polynomial c = normal_form(ctx, {{x, 1}, {p, 1}});
  CHECK(c.to_string() == "x*p");
}

TEST_CASE("mul: odd squares and repeated odd factors vanish") {
  auto ctx = grassmann_ctx();
  Polynomial one = Polynomial::constant(ctx, Rational(1));
  Polynomial t1 = Polynomial::generator(ctx, "t1");
  Polynomial t2 = Polynomial::generator(ctx, "t2");
  CHECK((one + t1) * (one - t1) == one);
  CHECK(((t1 * t2) * t1).is_zero());

  Polynomial x = Polynomial::generator(ctx, "x");
  Polynomial p = Polynomial::generator(ctx, "p");
  CHECK(((x * p) * (x * p)).is_zero());  // p is odd-total
}

TEST_CASE("left_partial anchors") {
  auto ctx = grassmann_ctx();
  const auto t1 = ctx->index_of("t1"), t2 = ctx->index_of("t2");
  const auto x = ctx->index_of("x");

  // derived by one Leibniz step: d/dt2 moves past the odd t1
  Polynomial f = normal_form(ctx, {{t1, 1}, {t2, 1}});
  CHECK(left_partial(f, t2) == -Polynomial::generator(ctx, t1));
  CHECK(left_partial(f, t1) == Polynomial::generator(ctx, t2));

  Polynomial x3 = normal_form(ctx, {{x, 3}});
  CHECK(left_partial(x3, x) == normal_form(ctx, {{x, 2}}, Rational(3)));

  CHECK(left_partial(Polynomial::generator(ctx, x), t1).is_zero());
}

TEST_CASE("substitute anchors") {
  auto ctx = grassmann_ctx();
  const auto t1 = ctx->index_of("t1"), t2 = ctx->index_of("t2");
  const auto x = ctx->index_of("x"), p = ctx->index_of("p");

  Polynomial f = normal_form(ctx, {{x, 1}, {p, 1}});
  Substitution id = Substitution::identity(ctx);
  CHECK(substitute(f, id) == f);

  Substitution kill_p = Substitution::identity(ctx);
  kill_p.images[p] = Polynomial::zero(ctx);
  CHECK(substitute(f, kill_p).is_zero());

  Substitution swap = Substitution::identity(ctx);
  swap.images[t1] = Polynomial::generator(ctx, t2);
  swap.images[t2] = Polynomial::generator(ctx, t1);
  Polynomial tt = normal_form(ctx, {{t1, 1}, {t2, 1}});
  CHECK(substitute(tt, swap) == -tt);
}

TEST_CASE("substitute checks degrees unless disabled") {
  auto ctx = grassmann_ctx();
  Substitution bad = Substitution::identity(ctx);
  bad.images[ctx->index_of("x")] = Polynomial::generator(ctx, "p");
  Polynomial f = Polynomial::generator(ctx, "x");
  CHECK_THROWS_AS(substitute(f, bad), kernel_error);
  bad.check_degrees = false;
  CHECK(substitute(f, bad) == Polynomial::generator(ctx, "p"));
}

TEST_CASE("degree_of: homogeneous, unit and inhomogeneous inputs") {
  auto ctx = grassmann_ctx();
  const auto t1 = ctx->index_of("t1"), t2 = ctx->index_of("t2");
  Polynomial tt = normal_form(ctx, {{t1, 1}, {t2, 1}});
  auto d = tt.degree();
  REQUIRE(d.has_value());
  CHECK(d->z2 == std::vector<uint8_t>{0});  // two odd factors
  CHECK(d->z == std::vector<long long>{0});

  CHECK(*Polynomial::constant(ctx, Rational(1)).degree() == ctx->zero_degree());

  Polynomial mixed = Polynomial::constant(ctx, Rational(1)) + Polynomial::generator(ctx, t1);
  CHECK(!mixed.degree().has_value());
}

TEST_CASE("mul is associative, unital and graded-commutative") {
  Rng rng(4100);
  for (int it = 0; it < 120; ++it) {
    auto ctx = testing::random_context(rng);
    Polynomial f = testing::random_polynomial(rng, ctx);
    Polynomial g = testing::random_polynomial(rng, ctx);
    Polynomial h = testing::random_polynomial(rng, ctx);
    CHECK((f * g) * h == f * (g * h));
    Polynomial one = Polynomial::constant(ctx, Rational(1));
    CHECK(f * one == f);
    CHECK(one * f == f);
  }
  // graded commutativity on homogeneous pairs
  for (int it = 0; it < 200; ++it) {
    auto ctx = testing::random_context(rng);
    MultiDegree da = testing::random_degree(rng, ctx->signature(), 0, 2);
    MultiDegree db = testing::random_degree(rng, ctx->signature(), 0, 2);
    Polynomial f = testing::random_homogeneous(rng, ctx, da);
    Polynomial g = testing::random_homogeneous(rng, ctx, db);
    if (f.is_zero() || g.is_zero()) continue;
    const int s = koszul_sign(da, db, ctx->convention());
    CHECK(f * g == (g * f) * Rational(s));
  }
}

TEST_CASE("left_partial satisfies the graded Leibniz rule") {
  Rng rng(4101);
  int checked = 0;
  for (int it = 0; it < 300 && checked < 120; ++it) {
    auto ctx = testing::random_context(rng);
    const std::size_t gen = std::size_t(testing::rand_int(rng, 0, (long long)ctx->size() - 1));
    MultiDegree da = testing::random_degree(rng, ctx->signature(), 0, 2);
    Polynomial f = testing::random_homogeneous(rng, ctx, da);
    Polynomial g = testing::random_polynomial(rng, ctx);
    if (f.is_zero()) continue;
    ++checked;
    const int s = koszul_sign(-ctx->gen(gen).degree, da, ctx->convention());
    Polynomial lhs = left_partial(f * g, gen);
    Polynomial rhs = left_partial(f, gen) * g + (f * left_partial(g, gen)) * Rational(s);
    CHECK(lhs == rhs);
  }
  CHECK(checked >= 100);
}

TEST_CASE("substitute is an algebra homomorphism") {
  Rng rng(4102);
  int checked = 0;
  for (int it = 0; it < 200 && checked < 80; ++it) {
    auto ctx = testing::random_context(rng, 4);
    Substitution s;
    s.from = ctx;
    s.to = ctx;
    s.check_degrees = true;
    bool ok = true;
    for (std::size_t g = 0; g < ctx->size(); ++g) {
      Polynomial img = testing::random_homogeneous(rng, ctx, ctx->gen(g).degree, 10, 2);
      s.images.push_back(img);
    }
    if (!ok) continue;
    Polynomial f = testing::random_polynomial(rng, ctx, 2, 2);
    Polynomial g = testing::random_polynomial(rng, ctx, 2, 2);
    CHECK(substitute(f * g, s) == substitute(f, s) * substitute(g, s));
    ++checked;
  }
  CHECK(checked >= 80);
}

TEST_CASE("left_partial agrees with the generic Leibniz engine") {
  // two independent code paths: the standalone left derivative and the
  // derivation with value 1 on one generator
  Rng rng(4104);
  for (int it = 0; it < 150; ++it) {
    auto ctx = testing::random_context(rng);
    Polynomial f = testing::random_polynomial(rng, ctx);
    for (std::size_t g = 0; g < ctx->size(); ++g) {
      CHECK(left_partial(f, g) == koszul::partial_derivation(ctx, g).apply(f));
    }
  }
}

TEST_CASE("canonical text form round-trips through the parser") {
  Rng rng(4103);
  for (int it = 0; it < 150; ++it) {
    auto ctx = testing::random_context(rng);
    Polynomial f = testing::random_polynomial(rng, ctx);
    Polynomial g = parse_expression(f.to_string(), ctx);
    CHECK(f == g);
  }
}
