#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "confalg/conformal.hpp"
#include "test_util.hpp"

#include <random>

using namespace confalg;

namespace {

Poly P(const std::string& s, std::size_t arity) { return parse_poly(s, arity); }

// Current algebra of the 2-dimensional algebra with basis (1, x), x^2 = 0.
ConformalAlgebra dual_number_current() {
    const Scalar O(0), I(1);
    return cur_of({"e", "x"}, {{{I, O}, {O, I}}, {{O, I}, {O, O}}});
}

}  // namespace

TEST_CASE("current algebra of dual numbers") {
    const ConformalAlgebra A = dual_number_current();
    const Poly lam = Poly::lambda(1, 1);
    const ModElement e = ModElement::basis(A.carrier, 0, 1);
    const ModElement x = ModElement::basis(A.carrier, 1, 1);
    CHECK(conformal_product(A, e, e, lam) == e);
    CHECK(conformal_product(A, e, x, lam) == x);
    CHECK(conformal_product(A, x, e, lam) == x);
    CHECK(conformal_product(A, x, x, lam).is_zero());
    CHECK(check_associativity(A).ok);

    // Sesquilinearity on derived products.
    const Poly dee = Poly::partial(1);
    CHECK(conformal_product(A, dee * e, x, lam) == P("-L1", 1) * x);
    CHECK(conformal_product(A, e, dee * x, lam) == P("D+L1", 1) * x);
    CHECK(conformal_product(A, ModElement(A.carrier, 1), x, lam).is_zero());
}

TEST_CASE("sesquilinearity holds for random elements") {
    const ConformalAlgebra A = dual_number_current();
    std::mt19937 rng(424242);
    const Poly lam = Poly::lambda(1, 1);
    const Poly dee = Poly::partial(1);
    for (int iter = 0; iter < 20; ++iter) {
        const ModElement x(A.carrier, {testutil::random_poly(rng, 1, 3, 3),
                                       testutil::random_poly(rng, 1, 3, 3)});
        const ModElement y(A.carrier, {testutil::random_poly(rng, 1, 3, 3),
                                       testutil::random_poly(rng, 1, 3, 3)});
        const ModElement xy = conformal_product(A, x, y, lam);
        CHECK(conformal_product(A, x.map_coeffs([&](const Poly& p) { return dee * p; }), y,
                                lam) == -(lam * xy));
        CHECK(conformal_product(A, x, y.map_coeffs([&](const Poly& p) { return dee * p; }),
                                lam) == (dee + lam) * xy);
        CHECK(conformal_product(A, x + y, y, lam) ==
              conformal_product(A, x, y, lam) + conformal_product(A, y, y, lam));
    }
}

TEST_CASE("current-algebra construction validates the base algebra") {
    const Scalar O(0), I(1);
    const ConformalAlgebra K = cur_of({"e"}, {{{I}}});
    CHECK(K.rank() == 1);
    CHECK(conformal_product(K, ModElement::basis(K.carrier, 0, 1),
                            ModElement::basis(K.carrier, 0, 1), Poly::lambda(1, 1)) ==
          ModElement::basis(K.carrier, 0, 1));
    // u*u = v, u*v = u is not associative: (uu)v = 0 but u(uv) = v.
    CHECK_THROWS_AS(cur_of({"u", "v"}, {{{O, I}, {I, O}}, {{O, O}, {O, O}}}),
                    NotAssociativeBase);
}

TEST_CASE("associativity checker reports witnesses") {
    CHECK(check_associativity(trivial_algebra({"b"})).ok);

    // b o_L1 b = L1 * b fails with difference L1^2 * b on the only triple.
    const ModulePtr r1 = make_module({"b"});
    StructureTable t = StructureTable::zero(r1, r1, r1);
    t.entry[0][0] = ModElement(r1, {P("L1", 1)});
    const ConformalAlgebra bad = make_algebra(r1, std::move(t));
    const CheckReport rep = check_associativity(bad);
    REQUIRE_FALSE(rep.ok);
    REQUIRE(rep.failures.size() == 1);
    CHECK(rep.failures[0].indices == std::vector<std::size_t>{0, 0, 0});
    CHECK(rep.failures[0].difference == ModElement(r1, {P("L1^2", 2)}));
    CHECK(rep.summary() != "ok");
}

TEST_CASE("bimodule axioms") {
    const ConformalAlgebra A = dual_number_current();
    const ConformalBimodule reg = regular_bimodule(A);
    CHECK(check_bimodule(reg).ok);
    CHECK(check_bimodule(zero_bimodule(A, make_module({"v", "w"}))).ok);

    // Negating the right action flips the sign of exactly one side of the
    // right-module axiom (the other side applies it twice), so that axiom is
    // what breaks; compatibility has one application per side and survives.
    StructureTable flipped = reg.right_action;
    for (auto& row : flipped.entry)
        for (auto& e : row) e = -e;
    const ConformalBimodule broken = make_bimodule(A, A.carrier, reg.left_action, flipped);
    const CheckReport rep = check_bimodule(broken);
    REQUIRE_FALSE(rep.ok);
    for (const auto& f : rep.failures) CHECK(f.identity == "right module associativity");

    // Two idempotent actions that do not commute: each side's axioms hold,
    // only the left-right compatibility fails.
    const ConformalAlgebra K = cur_of({"e"}, {{{Scalar(1)}}});
    const ModulePtr m2 = make_module({"v", "w"});
    StructureTable lt = StructureTable::zero(K.carrier, m2, m2);
    lt.entry[0][0] = ModElement(m2, {P("1", 1), P("0", 1)});  // e |> v = v
    lt.entry[0][1] = ModElement(m2, 1);                       // e |> w = 0
    StructureTable rt = StructureTable::zero(m2, K.carrier, m2);
    const Poly half = P("1/2", 1);
    rt.entry[0][0] = ModElement(m2, {half, half});  // v <| e = (v+w)/2
    rt.entry[1][0] = ModElement(m2, {half, half});  // w <| e = (v+w)/2
    const ConformalBimodule incompat = make_bimodule(K, m2, lt, rt);
    const CheckReport rep2 = check_bimodule(incompat);
    REQUIRE_FALSE(rep2.ok);
    for (const auto& f : rep2.failures) CHECK(f.identity == "left-right compatibility");
}

TEST_CASE("direct sums and semidirect products") {
    const ConformalAlgebra A = dual_number_current();
    const ConformalAlgebra T = trivial_algebra({"t"});
    const ConformalAlgebra S = direct_sum(A, T);
    CHECK(S.rank() == 3);
    CHECK(check_associativity(S).ok);
    // Cross products vanish.
    CHECK(conformal_product(S, ModElement::basis(S.carrier, 0, 1),
                            ModElement::basis(S.carrier, 2, 1), Poly::lambda(1, 1))
              .is_zero());

    const ConformalAlgebra SD = semidirect_product(A, regular_bimodule(A));
    CHECK(SD.rank() == 4);
    CHECK(check_associativity(SD).ok);
    // The module-block product vanishes.
    CHECK(conformal_product(SD, ModElement::basis(SD.carrier, 0, 1),
                            ModElement::basis(SD.carrier, 1, 1), Poly::lambda(1, 1))
              .is_zero());
    // (b-block e) o (m-block e) = left action = e-coefficient in the m block.
    CHECK(conformal_product(SD, ModElement::basis(SD.carrier, 2, 1),
                            ModElement::basis(SD.carrier, 0, 1), Poly::lambda(1, 1)) ==
          ModElement::basis(SD.carrier, 0, 1));

    // A corrupted action is rejected.
    StructureTable bad = regular_bimodule(A).left_action;
    bad.entry[0][0] = ModElement(A.carrier, {P("L1", 1), P("0", 1)});
    CHECK_THROWS_AS(semidirect_product(A, make_bimodule(A, A.carrier, bad,
                                                        regular_bimodule(A).right_action)),
                    InvalidBimodule);
}

TEST_CASE("homomorphism and automorphism checks") {
    const ConformalAlgebra A = dual_number_current();
    const CdLinearMap id = CdLinearMap::identity(A.carrier);
    CHECK(check_homomorphism(A, A, id).ok);
    CHECK(check_automorphism(A, id).ok);

    // Swapping e and x is not a homomorphism: x o x = 0 while e o e = e.
    const CdLinearMap swap(A.carrier, A.carrier,
                           {{P("0", 0), P("1", 0)}, {P("1", 0), P("0", 0)}});
    CHECK_FALSE(check_homomorphism(A, A, swap).ok);

    // e -> e, x -> c x is an automorphism for c != 0.
    const CdLinearMap scalex(A.carrier, A.carrier,
                             {{P("1", 0), P("0", 0)}, {P("0", 0), P("5", 0)}});
    CHECK(check_automorphism(A, scalex).ok);

    const CdLinearMap dmap(A.carrier, A.carrier,
                           {{P("D", 0), P("0", 0)}, {P("0", 0), P("D", 0)}});
    CHECK_THROWS_AS(check_automorphism(A, dmap), NotInvertible);
}

TEST_CASE("derivation checks and Lie closure") {
    const ConformalAlgebra A = dual_number_current();
    // Multiplication by D is a derivation of every algebra here.
    CHECK(check_algebra_derivation(A, CdLinearMap::partial_scaling(A.carrier)).ok);
    // e -> 0, x -> x is a derivation of the dual-number current algebra.
    const CdLinearMap grading(A.carrier, A.carrier,
                              {{P("0", 0), P("0", 0)}, {P("0", 0), P("1", 0)}});
    CHECK(check_algebra_derivation(A, grading).ok);
    // Identity is not a derivation (fails on e o e).
    CHECK_FALSE(check_algebra_derivation(A, CdLinearMap::identity(A.carrier)).ok);

    // Upper-triangular 2x2 matrices: commutators of derivations are derivations.
    const Scalar O(0), I(1);
    // Basis (E11, E12, E22): E11*E11=E11, E11*E12=E12, E12*E22=E12, E22*E22=E22.
    const ConformalAlgebra U = cur_of(
        {"E11", "E12", "E22"},
        {{{I, O, O}, {O, I, O}, {O, O, O}},
         {{O, O, O}, {O, O, O}, {O, I, O}},
         {{O, O, O}, {O, O, O}, {O, O, I}}});
    CHECK(check_associativity(U).ok);
    // ad(E11): E12 -> E12; ad(E12): E11 -> -E12, E22 -> E12.
    const CdLinearMap d1(U.carrier, U.carrier,
                         {{P("0", 0), P("0", 0), P("0", 0)},
                          {P("0", 0), P("1", 0), P("0", 0)},
                          {P("0", 0), P("0", 0), P("0", 0)}});
    const CdLinearMap d2(U.carrier, U.carrier,
                         {{P("0", 0), P("0", 0), P("0", 0)},
                          {P("-1", 0), P("0", 0), P("1", 0)},
                          {P("0", 0), P("0", 0), P("0", 0)}});
    CHECK(check_algebra_derivation(U, d1).ok);
    CHECK(check_algebra_derivation(U, d2).ok);
    const CdLinearMap commutator = d1.compose(d2) - d2.compose(d1);
    CHECK_FALSE(commutator.is_zero());
    CHECK(check_algebra_derivation(U, commutator).ok);

    // Bimodule-valued derivation into a zero-action module over the trivial
    // algebra: any linear map qualifies.
    const ConformalAlgebra T = trivial_algebra({"t"});
    const ConformalBimodule Z = zero_bimodule(T, make_module({"v"}));
    const CdLinearMap any(T.carrier, Z.carrier, {{P("D^2+3", 0)}});
    CHECK(check_derivation(T, Z, any).ok);
}
