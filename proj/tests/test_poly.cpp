#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "confalg/poly.hpp"
#include "test_util.hpp"

#include <random>

using namespace confalg;

namespace {
Poly P(const std::string& s, std::size_t arity) { return parse_poly(s, arity); }
}  // namespace

TEST_CASE("parsing basic forms") {
    CHECK(P("0", 2).is_zero());
    CHECK(P("0", 2).arity() == 2);

    const Poly p = P("D^2*L1 - 3/2", 1);
    CHECK(p.coefficient(Monomial{{1}, 2}) == Scalar(1));
    CHECK(p.coefficient(Monomial{{0}, 0}) == Scalar(-3, 2));
    CHECK(p.terms().size() == 2);

    CHECK(P("(L1+L2)^2", 2) == P("L1^2 + 2*L1*L2 + L2^2", 2));
    CHECK(P("-D", 0) == -P("D", 0));
    CHECK(P("1/3 + 2/3", 0) == P("1", 0));
    CHECK(P("2 - 2", 1).is_zero());
    CHECK(P("-(D - L1)^2", 1) == P("-D^2 + 2*D*L1 - L1^2", 1));
}

TEST_CASE("parse errors carry position and kind") {
    CHECK_THROWS_AS(P("D +", 0), SyntaxError);
    CHECK_THROWS_AS(P("(D", 0), SyntaxError);
    CHECK_THROWS_AS(P("D ^ -1", 0), SyntaxError);
    CHECK_THROWS_AS(P("1/0", 0), SyntaxError);
    CHECK_THROWS_AS(P("L3", 2), SyntaxError);  // variable out of range
    CHECK_THROWS_AS(P("D D", 0), SyntaxError);
    try {
        P("D + @", 0);
        FAIL("expected a syntax error");
    } catch (const SyntaxError& e) {
        CHECK(e.position == 4);
    }
}

TEST_CASE("ring arithmetic") {
    const Poly p = P("D^2 + L1", 1);
    CHECK(p + Poly::zero(1) == p);
    CHECK(P("L1", 1) * P("L1", 1) == P("L1^2", 1));
    CHECK(P("D+L1", 1) * P("D-L1", 1) == P("D^2 - L1^2", 1));
    CHECK(P("D+1", 0).pow(3) == P("D^3 + 3*D^2 + 3*D + 1", 0));
    CHECK(P("D", 0).pow(0) == P("1", 0));
    CHECK(Scalar(-2) * P("D - 1/2", 0) == P("-2*D + 1", 0));
    CHECK_THROWS_AS(P("L1", 1) + P("L1", 2), ArityMismatch);
    CHECK_THROWS_AS(P("L1", 1) * P("L1", 2), ArityMismatch);
}

TEST_CASE("degrees and leading data") {
    const Poly p = P("D^2*L1 + L1^3", 1);
    CHECK(p.degree() == 3);
    CHECK(p.partial_degree() == 2);
    CHECK(p.lambda_degree() == 3);
    CHECK(Poly::zero(1).degree() == -1);
    CHECK(P("5", 0).is_constant());
    CHECK(P("5", 0).constant_value() == Scalar(5));
    CHECK_FALSE(P("D", 0).is_constant());
}

TEST_CASE("substitution") {
    CHECK(P("D^2", 1).subst_partial(P("-L1", 1)) == P("L1^2", 1));
    CHECK(P("L1*D", 1).subst_partial(P("L1+D", 1)) == P("L1^2 + L1*D", 1));
    // Empty assignment is the identity.
    CHECK(P("D^2*L1 - 3", 1).substitute(1, std::nullopt, {std::nullopt}) ==
          P("D^2*L1 - 3", 1));
    // L1 -> L1+L2 widening.
    CHECK(P("L1^2", 1).substitute(2, std::nullopt, {P("L1+L2", 2)}) ==
          P("(L1+L2)^2", 2));
    // at_lambda1: L1 -> value, D untouched.
    CHECK(P("L1*D + L1^2", 1).at_lambda1(P("L1+L2", 2)) ==
          P("(L1+L2)*D + (L1+L2)^2", 2));
}

TEST_CASE("substitution is a ring homomorphism") {
    std::mt19937 rng(20240811);
    for (int iter = 0; iter < 100; ++iter) {
        const Poly a = testutil::random_poly(rng, 2);
        const Poly b = testutil::random_poly(rng, 2);
        const Poly dimg = testutil::random_poly(rng, 2, 3, 1);
        const Poly l1img = testutil::random_poly(rng, 2, 3, 1);
        auto sub = [&](const Poly& p) {
            return p.substitute(2, dimg, {l1img, std::nullopt});
        };
        CHECK(sub(a * b) == sub(a) * sub(b));
        CHECK(sub(a + b) == sub(a) + sub(b));
    }
}

TEST_CASE("print and reparse round-trips") {
    std::mt19937 rng(77);
    for (int iter = 0; iter < 200; ++iter) {
        const Poly a = testutil::random_poly(rng, iter % 4);
        CHECK(parse_poly(to_string(a), a.arity()) == a);
    }
    CHECK(to_string(Poly::zero(3)) == "0");
    CHECK(to_string(P("-D^2 + 1/2", 0)) == "-D^2 + 1/2");
    CHECK(to_string(P("L1*L2", 2)) == "L1*L2");
}

TEST_CASE("ring laws on random samples") {
    std::mt19937 rng(99);
    for (int iter = 0; iter < 50; ++iter) {
        const Poly p = testutil::random_poly(rng, 2);
        const Poly q = testutil::random_poly(rng, 2);
        const Poly r = testutil::random_poly(rng, 2);
        CHECK((p + q) * r == p * r + q * r);
        CHECK(p * q == q * p);
        CHECK((p * q) * r == p * (q * r));
        CHECK(p - p == Poly::zero(2));
    }
}

TEST_CASE("lambda renaming and context changes") {
    CHECK(P("L1*D", 2).rename_lambdas({2, 0}, 2) == P("L2*D", 2));
    // Embed an arity-1 polynomial into slot 2 of an arity-3 context.
    CHECK(P("L1^2 + D", 1).rename_lambdas({2}, 3) == P("L2^2 + D", 3));
    CHECK_THROWS_AS(P("L1+L2", 2).rename_lambdas({1, 1}, 2), IndexCollision);
    // Dropping a variable that is present is an error.
    CHECK_THROWS_AS(P("L1", 1).rename_lambdas({0}, 1), Error);
    CHECK(P("D", 1).rename_lambdas({0}, 0) == P("D", 0));

    CHECK(P("L1+D", 1).promote(3) == P("L1+D", 3));
    CHECK(P("L1+D", 3).restrict_arity(1) == P("L1+D", 1));
    CHECK_THROWS_AS(P("L2", 3).restrict_arity(1), Error);
}

TEST_CASE("canonical ordering is graded lex with D least significant") {
    const Poly p = P("D^3 + L1^2*D + L1*D^2 + L1 + 1", 1);
    std::vector<Monomial> seen;
    for (const auto& [m, c] : p.terms()) seen.push_back(m);
    const std::vector<Monomial> expected = {
        {{2}, 1}, {{1}, 2}, {{0}, 3}, {{1}, 0}, {{0}, 0}};
    CHECK(seen == expected);
}
