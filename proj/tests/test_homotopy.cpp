#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "confalg/error.hpp"
#include "confalg/homotopy.hpp"
#include "fixtures.hpp"

#include <set>
#include <string>
#include <vector>

using namespace confalg;
using fixtures::failure_labels;

namespace {

Poly P(int n) { return Poly::constant(Scalar(n), 0); }
Poly C1(int n) { return Poly::constant(Scalar(n), 1); }

CdLinearMap map_of(ModulePtr src, ModulePtr dst, std::vector<std::vector<Poly>> m) {
    return CdLinearMap(std::move(src), std::move(dst), std::move(m));
}

ConformalAlgebra cur1() { return cur_of({"e"}, {{{Scalar(1)}}}); }

// Rank-1 copy of the regular bimodule of a rank-1 current algebra: the
// generator acts as the identity on both sides.
ConformalBimodule reg_copy(const ConformalAlgebra& a, const std::string& name) {
    ModulePtr m = make_module({name});
    StructureTable left = StructureTable::zero(a.carrier, m, m);
    left.entry[0][0] = ModElement::basis(m, 0, 1);
    StructureTable right = StructureTable::zero(m, a.carrier, m);
    right.entry[0][0] = ModElement::basis(m, 0, 1);
    return make_bimodule(a, m, left, right);
}

// Strict and skeletal: an algebra with a bimodule, no boundary, no homotopy.
TwoTermSHAC trivial_structure() {
    ConformalAlgebra a = cur1();
    ConformalBimodule m = reg_copy(a, "m");
    return make_strict_twoterm(m.carrier, a.carrier, CdLinearMap::zero(m.carrier, a.carrier),
                               a.mult, m.left_action, m.right_action);
}

// A module map f : M1 -> M0 over the dual-number current algebra, realized as
// a strict structure on M1 -> A + M0 with the semidirect product downstairs:
// M1 is the ideal generated by the square-zero element, M0 the regular
// bimodule, and f the inclusion into the M0 summand.
TwoTermSHAC module_complex_structure() {
    ModulePtr big = make_module({"e", "x", "me", "mx"});
    StructureTable m00 = StructureTable::zero(big, big, big);
    const auto bb = [&](std::size_t k) { return ModElement::basis(big, k, 1); };
    m00.entry[0][0] = bb(0);
    m00.entry[0][1] = bb(1);
    m00.entry[1][0] = bb(1);
    m00.entry[0][2] = bb(2);
    m00.entry[0][3] = bb(3);
    m00.entry[1][2] = bb(3);
    m00.entry[2][0] = bb(2);
    m00.entry[3][0] = bb(3);
    m00.entry[2][1] = bb(3);
    ModulePtr m1 = make_module({"i"});
    StructureTable m01 = StructureTable::zero(big, m1, m1);
    m01.entry[0][0] = ModElement::basis(m1, 0, 1);
    StructureTable m10 = StructureTable::zero(m1, big, m1);
    m10.entry[0][0] = ModElement::basis(m1, 0, 1);
    CdLinearMap fd = map_of(m1, big, {{P(0)}, {P(0)}, {P(0)}, {P(1)}});
    return make_strict_twoterm(m1, big, fd, m00, m01, m10);
}

// Skeletal structure whose ternary homotopy is deliberately not a cocycle.
TwoTermSHAC homotopy_not_cocycle() {
    ConformalAlgebra a = cur1();
    ConformalBimodule m = reg_copy(a, "m");
    Cochain z = Cochain::zero(3, m);
    z.set_value_flat(0, ModElement::basis(m.carrier, 0, 2));
    return make_twoterm(m.carrier, a.carrier, CdLinearMap::zero(m.carrier, a.carrier), a.mult,
                        m.left_action, m.right_action,
                        StructureTable::zero(m.carrier, m.carrier, m.carrier), z);
}

// Strict data over a non-associative base product a o_L a = L a.
TwoTermSHAC bad_associativity() {
    ModulePtr a0 = make_module({"a"});
    StructureTable m00 = StructureTable::zero(a0, a0, a0);
    ModElement v(a0, 1);
    v[0] = Poly::lambda(1, 1);
    m00.entry[0][0] = v;
    ModulePtr a1 = make_module({"b"});
    return make_strict_twoterm(a1, a0, CdLinearMap::zero(a1, a0), m00,
                               StructureTable::zero(a0, a1, a1),
                               StructureTable::zero(a1, a0, a1));
}

// The square-zero ideal of the dual-number current algebra with the
// multiplication action and its inclusion as the boundary.
CrossedModule ideal_crossed() {
    ConformalAlgebra X = fixtures::dual_number_current();
    ConformalAlgebra Y = trivial_algebra({"i"});
    CdLinearMap rho = map_of(Y.carrier, X.carrier, {{P(0)}, {P(1)}});
    StructureTable left = StructureTable::zero(X.carrier, Y.carrier, Y.carrier);
    left.entry[0][0] = ModElement::basis(Y.carrier, 0, 1);
    StructureTable right = StructureTable::zero(Y.carrier, X.carrier, Y.carrier);
    right.entry[0][0] = ModElement::basis(Y.carrier, 0, 1);
    return make_crossed(X, Y, rho, left, right);
}

CrossedModule self_crossed() {
    ConformalAlgebra A = fixtures::dual_number_current();
    return make_crossed(A, A, CdLinearMap::identity(A.carrier), A.mult, A.mult);
}

CrossedModule zero_crossed() {
    ConformalAlgebra X = fixtures::dual_number_current();
    ModulePtr y0 = make_module({});
    ConformalAlgebra Y = make_algebra(y0, StructureTable::zero(y0, y0, y0));
    return make_crossed(X, Y, CdLinearMap::zero(y0, X.carrier),
                        StructureTable::zero(X.carrier, y0, y0),
                        StructureTable::zero(y0, X.carrier, y0));
}

// (A, A, id) with both actions zeroed out: the Peiffer identities and the
// boundary compatibilities break, nothing else does.
CrossedModule mismatched_crossed() {
    ConformalAlgebra A = cur1();
    return make_crossed(A, A, CdLinearMap::identity(A.carrier),
                        StructureTable::zero(A.carrier, A.carrier, A.carrier),
                        StructureTable::zero(A.carrier, A.carrier, A.carrier));
}

// 0 -> M -> Y -> X -> A -> 0 over the rank-1 current algebra A = <e>:
// X = <u, a'> with a' o a' = a' + u and u absorbing on both sides, Y = <my, w>
// with the zero product, beta(w) = u, gamma(a') = e, and the X-action
// a' |>_L w = w + L my. The base section e -> a' is not a homomorphism, so
// the section defect is nonzero.
CrossedExtension current_extension() {
    ConformalAlgebra A = cur1();
    ConformalBimodule M = reg_copy(A, "m");
    ModulePtr xm = make_module({"u", "ap"});
    StructureTable xmult = StructureTable::zero(xm, xm, xm);
    xmult.entry[1][1] = ModElement::basis(xm, 0, 1) + ModElement::basis(xm, 1, 1);
    xmult.entry[1][0] = ModElement::basis(xm, 0, 1);
    xmult.entry[0][1] = ModElement::basis(xm, 0, 1);
    ConformalAlgebra X = make_algebra(xm, xmult);
    ModulePtr ym = make_module({"my", "w"});
    ConformalAlgebra Y = make_algebra(ym, StructureTable::zero(ym, ym, ym));
    CdLinearMap alpha = map_of(M.carrier, ym, {{P(1)}, {P(0)}});
    CdLinearMap beta = map_of(ym, xm, {{P(0), P(1)}, {P(0), P(0)}});
    CdLinearMap gamma = map_of(xm, A.carrier, {{P(0), P(1)}});
    StructureTable left = StructureTable::zero(xm, ym, ym);
    left.entry[1][0] = ModElement::basis(ym, 0, 1);
    ModElement w_act(ym, 1);
    w_act[0] = Poly::lambda(1, 1);
    w_act[1] = C1(1);
    left.entry[1][1] = w_act;
    StructureTable right = StructureTable::zero(ym, xm, ym);
    right.entry[0][1] = ModElement::basis(ym, 0, 1);
    right.entry[1][1] = ModElement::basis(ym, 1, 1);
    CdLinearMap vr = map_of(A.carrier, xm, {{P(0)}, {P(1)}});
    CrossedExtension s =
        make_crossed_extension(M, Y, X, alpha, beta, gamma, left, right, vr);
    // The stored image basis is the column u; pin the preimage to w so the
    // frozen homotopy values below do not depend on the normal-form choice.
    REQUIRE(s.image_basis == PolyMatrix{{P(1)}, {P(0)}});
    return with_kernel_section(s, {{P(0)}, {P(1)}});
}

// Same shape over a trivial quotient: A = <a> with zero product, zero actions
// on M, X = <u, a'> with a' o_L a' = L u as the only product, and the single
// nonzero action a' |> w = my. Products and actions on M all vanish, so
// coboundaries vanish identically and the homotopy class is honestly nonzero.
CrossedExtension trivial_base_extension() {
    ConformalAlgebra A = trivial_algebra({"a"});
    ConformalBimodule M = zero_bimodule(A, make_module({"m"}));
    ModulePtr xm = make_module({"u", "ap"});
    StructureTable xmult = StructureTable::zero(xm, xm, xm);
    ModElement sq(xm, 1);
    sq[0] = Poly::lambda(1, 1);
    xmult.entry[1][1] = sq;
    ConformalAlgebra X = make_algebra(xm, xmult);
    ModulePtr ym = make_module({"my", "w"});
    ConformalAlgebra Y = make_algebra(ym, StructureTable::zero(ym, ym, ym));
    CdLinearMap alpha = map_of(M.carrier, ym, {{P(1)}, {P(0)}});
    CdLinearMap beta = map_of(ym, xm, {{P(0), P(1)}, {P(0), P(0)}});
    CdLinearMap gamma = map_of(xm, A.carrier, {{P(0), P(1)}});
    StructureTable left = StructureTable::zero(xm, ym, ym);
    left.entry[1][1] = ModElement::basis(ym, 0, 1);
    StructureTable right = StructureTable::zero(ym, xm, ym);
    CdLinearMap vr = map_of(A.carrier, xm, {{P(0)}, {P(1)}});
    CrossedExtension s =
        make_crossed_extension(M, Y, X, alpha, beta, gamma, left, right, vr);
    REQUIRE(s.image_basis == PolyMatrix{{P(1)}, {P(0)}});
    return with_kernel_section(s, {{P(0)}, {P(1)}});
}

}  // namespace

TEST_CASE("strict and skeletal structures satisfy the coherence identities") {
    const TwoTermSHAC triv = trivial_structure();
    CHECK(triv.is_strict());
    CHECK(triv.is_skeletal());
    CHECK(check_twoterm(triv).ok);

    const TwoTermSHAC mod = module_complex_structure();
    CHECK(mod.is_strict());
    CHECK_FALSE(mod.is_skeletal());
    CHECK(check_twoterm(mod).ok);

    CHECK(check_twoterm(crossed_to_shac(ideal_crossed())).ok);

    // a non-cocycle homotopy breaks exactly the five-term identity
    const CheckReport r8 = check_twoterm(homotopy_not_cocycle());
    CHECK_FALSE(r8.ok);
    CHECK(failure_labels(r8) == std::set<std::string>{"2-t8"});

    // a non-associative base product breaks exactly the boundary identity
    const CheckReport r4 = check_twoterm(bad_associativity());
    CHECK_FALSE(r4.ok);
    CHECK(failure_labels(r4) == std::set<std::string>{"2-t4"});

    TwoTermSHAC withprod = trivial_structure();
    withprod.m11.entry[0][0] = ModElement::basis(withprod.A1, 0, 1);
    const CheckReport r11 = check_twoterm(withprod);
    CHECK(failure_labels(r11) == std::set<std::string>{"degree-one product vanishes"});

    TwoTermSHAC noact = module_complex_structure();
    noact.m01 = StructureTable::zero(noact.A0, noact.A1, noact.A1);
    const CheckReport r1 = check_twoterm(noact);
    CHECK(failure_labels(r1) == std::set<std::string>{"2-t1"});
}

TEST_CASE("crossed modules are recognized with named failure labels") {
    CHECK(check_crossed(ideal_crossed()).ok);
    CHECK(check_crossed(self_crossed()).ok);
    CHECK(check_crossed(zero_crossed()).ok);

    const CheckReport bad = check_crossed(mismatched_crossed());
    CHECK_FALSE(bad.ok);
    CHECK(failure_labels(bad) ==
          std::set<std::string>{"Peiffer identity (left)", "Peiffer identity (right)",
                                "boundary respects the left action",
                                "boundary respects the right action"});
    for (const auto& f : bad.failures) CHECK_FALSE(f.difference.is_zero());

    ConformalAlgebra A = cur1();
    CHECK_THROWS_AS(make_crossed(A, fixtures::dual_number_current(),
                                 CdLinearMap::identity(A.carrier), A.mult, A.mult),
                    ModuleMismatch);
}

TEST_CASE("strictness round trips are table-exact") {
    const CrossedModule ci = ideal_crossed();
    CHECK(shac_to_crossed(crossed_to_shac(ci)) == ci);

    const CrossedModule cs = self_crossed();
    CHECK(shac_to_crossed(crossed_to_shac(cs)) == cs);

    const CrossedModule cz = zero_crossed();
    CHECK(shac_to_crossed(crossed_to_shac(cz)) == cz);

    const TwoTermSHAC t = module_complex_structure();
    const CrossedModule ct = shac_to_crossed(t);
    CHECK(check_crossed(ct).ok);
    CHECK(crossed_to_shac(ct) == t);

    CHECK_THROWS_AS(shac_to_crossed(homotopy_not_cocycle()), NotStrict);
}

TEST_CASE("skeletal structures and degree-3 cocycles correspond") {
    const ConformalAlgebra a = cur1();
    const ConformalBimodule m = reg_copy(a, "m");

    const TwoTermSHAC t0 = cocycle_to_skeletal(a, m, Cochain::zero(3, m));
    CHECK(t0.is_strict());
    CHECK(t0.is_skeletal());
    CHECK(check_twoterm(t0).ok);

    // zeta = d(sigma) with sigma(e, e) = -L1 m evaluates to L1 m
    Cochain sigma = Cochain::zero(2, m);
    ModElement sv(m.carrier, 1);
    sv[0] = -Poly::lambda(1, 1);
    sigma.set_value_flat(0, sv);
    const Cochain zb = differential(sigma);
    CHECK(zb.value_flat(0)[0] == Poly::lambda(1, 2));

    const TwoTermSHAC t1 = cocycle_to_skeletal(a, m, zb);
    CHECK(check_twoterm(t1).ok);
    CHECK_FALSE(t1.is_strict());

    // the two structures differ by the coboundary witness sigma
    const Cochain diff = t1.m3 - t0.m3;
    CHECK(diff == differential(sigma));
    const auto witness = solve_coboundary(diff, Bounds{2, 2});
    REQUIRE(witness.has_value());
    CHECK(differential(*witness) == diff);

    const SkeletalData sk = skeletal_to_cocycle(t1);
    CHECK(sk.algebra == a);
    CHECK(sk.cocycle == zb);
    CHECK(cocycle_to_skeletal(sk.algebra, sk.bimodule, sk.cocycle) == t1);

    CHECK_THROWS_AS(skeletal_to_cocycle(module_complex_structure()), NotSkeletal);

    Cochain notc = Cochain::zero(3, m);
    notc.set_value_flat(0, ModElement::basis(m.carrier, 0, 2));
    CHECK_THROWS_AS(cocycle_to_skeletal(a, m, notc), NotACocycle);
    CHECK_THROWS_AS(cocycle_to_skeletal(a, zero_bimodule(a, m.carrier), zb), InvalidInput);

    // over a trivial algebra with zero actions every differential vanishes,
    // so a nonzero cocycle can never be a coboundary: the solver must refuse
    const ConformalAlgebra at = trivial_algebra({"a"});
    const ConformalBimodule mt = zero_bimodule(at, make_module({"m"}));
    Cochain zeta = Cochain::zero(3, mt);
    ModElement zv(mt.carrier, 2);
    zv[0] = Poly::lambda(2, 2);
    zeta.set_value_flat(0, zv);
    const TwoTermSHAC tz = cocycle_to_skeletal(at, mt, zeta);
    CHECK(check_twoterm(tz).ok);
    CHECK_FALSE(solve_coboundary(zeta, Bounds{3, 3}).has_value());
}

TEST_CASE("two-term morphisms compose as a category") {
    const TwoTermSHAC t = crossed_to_shac(ideal_crossed());
    const auto endo = [&](int c) {
        return TwoTermMorphism{map_of(t.A0, t.A0, {{P(1), P(0)}, {P(0), P(c)}}),
                               map_of(t.A1, t.A1, {{P(c)}}),
                               StructureTable::zero(t.A0, t.A0, t.A1)};
    };
    const TwoTermMorphism f2 = endo(2), f3 = endo(3), f5 = endo(5);
    CHECK(check_morphism(f2, t, t).ok);
    CHECK(check_morphism(f3, t, t).ok);
    CHECK(check_morphism(identity_morphism(t), t, t).ok);

    CHECK(compose_morphisms(f3, f2) == endo(6));
    const TwoTermMorphism idm = identity_morphism(t);
    CHECK(compose_morphisms(idm, f2) == f2);
    CHECK(compose_morphisms(f2, idm) == f2);
    CHECK(compose_morphisms(compose_morphisms(f5, f3), f2) ==
          compose_morphisms(f5, compose_morphisms(f3, f2)));

    // a scaling only respects a nonzero homotopy when the degree-one part
    // carries the cube of the degree-zero factor
    const ConformalAlgebra at = trivial_algebra({"a"});
    const ConformalBimodule mt = zero_bimodule(at, make_module({"m"}));
    Cochain zeta = Cochain::zero(3, mt);
    ModElement zv(mt.carrier, 2);
    zv[0] = Poly::lambda(2, 2);
    zeta.set_value_flat(0, zv);
    const TwoTermSHAC tz = cocycle_to_skeletal(at, mt, zeta);

    const auto scale = [&](int c0, int c1, const Poly& corr) {
        StructureTable f2t = StructureTable::zero(tz.A0, tz.A0, tz.A1);
        ModElement cv(tz.A1, 1);
        cv[0] = corr;
        f2t.entry[0][0] = cv;
        return TwoTermMorphism{CdLinearMap::scaling(tz.A0, Scalar(c0)),
                               CdLinearMap::scaling(tz.A1, Scalar(c1)), f2t};
    };
    const Poly sa = Poly::partial(1) + Poly::lambda(1, 1);
    const Poly sb = Poly::lambda(1, 1) * Poly::lambda(1, 1) + C1(5);
    const TwoTermMorphism e1 = scale(2, 8, sa), e2 = scale(3, 27, sb);
    CHECK(check_morphism(e1, tz, tz).ok);
    CHECK(check_morphism(e2, tz, tz).ok);

    const CheckReport wrongcube = check_morphism(scale(2, 2, Poly(1)), tz, tz);
    CHECK(failure_labels(wrongcube) ==
          std::set<std::string>{"morphism compatibility (homotopies)"});

    const TwoTermMorphism comp = compose_morphisms(e2, e1);
    CHECK(check_morphism(comp, tz, tz).ok);
    CHECK(comp.f2.entry[0][0][0] == C1(4) * sb + C1(27) * sa);

    // a broken chain map is reported as such
    const TwoTermMorphism offchain{map_of(t.A0, t.A0, {{P(1), P(0)}, {P(0), P(2)}}),
                                   CdLinearMap::identity(t.A1),
                                   StructureTable::zero(t.A0, t.A0, t.A1)};
    CHECK(failure_labels(check_morphism(offchain, t, t)) ==
          std::set<std::string>{"chain map"});

    CHECK_THROWS_AS(check_morphism(f2, t, tz), ModuleMismatch);
    CHECK_THROWS_AS(compose_morphisms(e1, f2), ModuleMismatch);
}

TEST_CASE("crossed extensions validate exactness, sections, and induced actions") {
    const CrossedExtension s = current_extension();
    CHECK(is_split(s));
    CHECK(check_crossed(crossed_module_of(s)).ok);
    CHECK(s.quotient_algebra().rank() == 1);

    // the overload without a section finds one on its own
    const CrossedExtension sauto = make_crossed_extension(
        s.M, s.Y, s.X, s.alpha, s.beta, s.gamma, s.left_act, s.right_act);
    REQUIRE(is_split(sauto));
    CHECK(s.gamma.compose(*sauto.varrho) ==
          CdLinearMap::identity(s.quotient_algebra().carrier));

    CrossedExtension broken = s;
    broken.varrho.reset();
    CHECK_FALSE(is_split(broken));
    CHECK_THROWS_AS(base_section_defect(broken), NotSplit);
    CHECK_THROWS_AS(crossed_extension_theta(broken), NotSplit);
    CHECK_THROWS_AS(base_section_correction(broken, s), NotSplit);

    // each validation stage rejects its own corruption
    CHECK_THROWS_AS(make_crossed_extension(s.M, s.Y, s.X,
                                           CdLinearMap::zero(s.X.carrier, s.Y.carrier),
                                           s.beta, s.gamma, s.left_act, s.right_act),
                    ModuleMismatch);
    CHECK_THROWS_AS(make_crossed_extension(
                        s.M, s.Y, s.X, s.alpha, s.beta,
                        map_of(s.X.carrier, s.quotient_algebra().carrier, {{P(1), P(1)}}),
                        s.left_act, s.right_act, *s.varrho),
                    InvalidInput);
    CHECK_THROWS_AS(make_crossed_extension(s.M, s.Y, s.X,
                                           CdLinearMap::zero(s.M.carrier, s.Y.carrier),
                                           s.beta, s.gamma, s.left_act, s.right_act,
                                           *s.varrho),
                    InvalidInput);
    CHECK_THROWS_AS(
        make_crossed_extension(s.M, s.Y, s.X, s.alpha, s.beta, s.gamma,
                               StructureTable::zero(s.X.carrier, s.Y.carrier, s.Y.carrier),
                               StructureTable::zero(s.Y.carrier, s.X.carrier, s.Y.carrier),
                               *s.varrho),
        InvalidInput);
    CHECK_THROWS_AS(
        make_crossed_extension(zero_bimodule(s.quotient_algebra(), s.M.carrier), s.Y, s.X,
                               s.alpha, s.beta, s.gamma, s.left_act, s.right_act, *s.varrho),
        InvalidBimodule);

    CHECK_THROWS_AS(with_base_section(s, CdLinearMap::zero(s.quotient_algebra().carrier,
                                                           s.X.carrier)),
                    InvalidInput);
    CHECK_THROWS_AS(with_kernel_section(s, {{P(0)}, {P(0)}}), InvalidInput);
    CHECK_THROWS_AS(with_kernel_section(s, {{Poly::lambda(1, 1)}, {C1(1)}}), ArityMismatch);
}

TEST_CASE("the canonical degree-3 cochain of a split extension is certified") {
    const CrossedExtension s = current_extension();
    const Cochain theta = crossed_extension_theta(s);
    CHECK(is_cocycle(theta).is_cocycle);
    // frozen by hand: the defect of e -> a' is u, its preimage is w, and the
    // action identity a' |>_L w = w + L my leaves exactly L1 m
    CHECK(theta.value_flat(0)[0] == Poly::lambda(1, 2));

    // this class is a coboundary: sigma(e,e) = -L1 m maps onto theta
    Cochain sigma = Cochain::zero(2, s.M);
    ModElement sv(s.M.carrier, 1);
    sv[0] = -Poly::lambda(1, 1);
    sigma.set_value_flat(0, sv);
    CHECK(differential(sigma) == theta);
    const auto w = solve_coboundary(theta, Bounds{2, 2});
    REQUIRE(w.has_value());
    CHECK(differential(*w) == theta);

    // a homomorphism section has no defect at all
    const CrossedExtension sh =
        with_base_section(s, map_of(s.quotient_algebra().carrier, s.X.carrier,
                                    {{P(-1)}, {P(1)}}));
    CHECK(base_section_defect(sh).is_zero());
    CHECK(crossed_extension_theta(sh).is_zero());

    // over the trivial base the class survives: coboundaries vanish there
    const CrossedExtension s0 = trivial_base_extension();
    const Cochain theta0 = crossed_extension_theta(s0);
    CHECK(is_cocycle(theta0).is_cocycle);
    CHECK(theta0.value_flat(0)[0] == Poly::lambda(2, 2));
    CHECK_FALSE(solve_coboundary(theta0, Bounds{3, 3}).has_value());
}

TEST_CASE("the extension class is independent of the chosen sections") {
    const CrossedExtension s = current_extension();
    const Cochain theta = crossed_extension_theta(s);
    const Poly l1 = Poly::lambda(1, 2), l2 = Poly::lambda(2, 2), d2 = Poly::partial(2);
    const Poly two = Poly::constant(Scalar(2), 2);

    // base section moved by e -> a' + D^2 u
    const CrossedExtension sp =
        with_base_section(s, map_of(s.quotient_algebra().carrier, s.X.carrier,
                                    {{Poly::partial(0).pow(2)}, {P(1)}}));
    const Cochain thetap = crossed_extension_theta(sp);
    CHECK(thetap.value_flat(0)[0] ==
          l1 + two * l1 * l2 * l2 + two * l1 * l1 * l2 + two * l1 * l2 * d2);

    const Cochain corr = base_section_correction(s, sp);
    CHECK(differential(corr) == thetap - theta);
    CHECK(differential(base_section_correction(sp, s)) == theta - thetap);

    // independently derived witness for the same difference
    Cochain byhand = Cochain::zero(2, s.M);
    ModElement hv(s.M.carrier, 1);
    const Poly l11 = Poly::lambda(1, 1), d1 = Poly::partial(1);
    hv[0] = -(l11 * (l11 + d1).pow(2));
    byhand.set_value_flat(0, hv);
    CHECK(differential(byhand) == thetap - theta);

    // kernel section moved by u -> w + D my
    const CrossedExtension sp2 = with_kernel_section(s, {{Poly::partial(0)}, {P(1)}});
    const Cochain thetap2 = crossed_extension_theta(sp2);
    CHECK(thetap2.value_flat(0)[0] == Poly::constant(Scalar(3), 2) * l1 + l2 + d2);
    const Cochain kcorr = kernel_section_correction(s, sp2);
    CHECK(kcorr.value_flat(0)[0] == d1);
    CHECK(differential(kcorr) == thetap2 - theta);

    // the solver-chosen base section also satisfies the contract
    const CrossedExtension sauto = with_kernel_section(
        make_crossed_extension(s.M, s.Y, s.X, s.alpha, s.beta, s.gamma, s.left_act,
                               s.right_act),
        s.sigma_values);
    const Cochain corra = base_section_correction(s, sauto);
    CHECK(differential(corra) == crossed_extension_theta(sauto) - theta);

    // over the trivial base every section yields the same cochain on the nose
    const CrossedExtension s0 = trivial_base_extension();
    const CrossedExtension s02 =
        with_base_section(s0, map_of(s0.quotient_algebra().carrier, s0.X.carrier,
                                     {{Poly::partial(0).pow(2)}, {P(1)}}));
    CHECK(crossed_extension_theta(s02) == crossed_extension_theta(s0));
    CHECK(differential(base_section_correction(s0, s02)).is_zero());

    // corrections refuse mixed comparisons
    CHECK_THROWS_AS(base_section_correction(s, sp2), InvalidInput);
    CHECK_THROWS_AS(kernel_section_correction(s, sp), InvalidInput);
}

TEST_CASE("a skeletal homotopy is realized by a crossed extension") {
    const CrossedExtension s0 = trivial_base_extension();
    const Cochain theta0 = crossed_extension_theta(s0);

    Cochain zeta = Cochain::zero(3, s0.M);
    ModElement zv(s0.M.carrier, 2);
    zv[0] = Poly::lambda(2, 2);
    zeta.set_value_flat(0, zv);
    CHECK(theta0 == zeta);

    const TwoTermSHAC tz = cocycle_to_skeletal(s0.quotient_algebra(), s0.M, zeta);
    CHECK(check_twoterm(tz).ok);
    CHECK(tz.m3 == theta0);
}
