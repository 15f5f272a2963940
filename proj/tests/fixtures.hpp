#pragma once

#include "confalg/nonabelian.hpp"

#include <set>
#include <string>
#include <vector>

// Bundled cocycle fixtures shared by the test suites: small, hand-checked
// triples whose extensions exercise every code path (split and twisted,
// abelian and unital values, nilpotent and regular actions).
namespace confalg::fixtures {

// Rank-1 split fixture: B the current algebra of the ground field acting on
// a rank-1 abelian ideal on both sides, chi = 0. Its extension is the
// current algebra of the dual numbers with basis order (x, e).
inline CocycleTriple ideal_fixture() {
    ConformalAlgebra A = trivial_algebra({"x"});
    ConformalAlgebra B = cur_of({"e"}, {{{Scalar(1)}}});
    StructureTable left = StructureTable::zero(B.carrier, A.carrier, A.carrier);
    left.entry[0][0] = ModElement::basis(A.carrier, 0, 1);
    StructureTable right = StructureTable::zero(A.carrier, B.carrier, A.carrier);
    right.entry[0][0] = ModElement::basis(A.carrier, 0, 1);
    StructureTable chi = StructureTable::zero(B.carrier, B.carrier, A.carrier);
    return make_cocycle(std::move(A), std::move(B), std::move(left), std::move(right),
                        std::move(chi));
}

// The ideal fixture with chi twisted to the constant basis pairing; still a
// cocycle, but the extension no longer restricts products to the blocks.
inline CocycleTriple twisted_ideal_fixture() {
    CocycleTriple c = ideal_fixture();
    c.chi.entry[0][0] = ModElement::basis(c.A.carrier, 0, 1);
    return c;
}

inline ConformalAlgebra dual_number_current() {
    const Scalar O(0), I(1);
    return cur_of({"e", "x"}, {{{I, O}, {O, I}}, {{O, I}, {O, O}}});
}

// Rank-2 fixture: the dual-number current algebra acting regularly on its
// own carrier viewed as an abelian algebra.
inline CocycleTriple abelianized_fixture() {
    const ConformalAlgebra B = dual_number_current();
    ConformalAlgebra A = trivial_algebra({"ae", "ax"});
    StructureTable left = B.mult;
    left.left = B.carrier;
    left.right = A.carrier;
    left.out = A.carrier;
    for (auto& row : left.entry)
        for (auto& e : row) {
            ModElement moved(A.carrier, 1);
            for (std::size_t m = 0; m < 2; ++m) moved[m] = e[m];
            e = std::move(moved);
        }
    StructureTable right = left;
    right.left = A.carrier;
    right.right = B.carrier;
    StructureTable chi = StructureTable::zero(B.carrier, B.carrier, A.carrier);
    return make_cocycle(std::move(A), B, std::move(left), std::move(right), std::move(chi));
}

// Rank-1 fixture with a non-abelian value algebra and zero actions.
inline CocycleTriple unital_values_fixture() {
    ConformalAlgebra A = cur_of({"u"}, {{{Scalar(1)}}});
    ConformalAlgebra B = trivial_algebra({"b"});
    return zero_cocycle(std::move(A), std::move(B));
}

// Abelian rank-2 values with nilpotent actions (b sends y to x and kills x
// on both sides) and the quadratic pairing chi(b,b) = L1^2 x. The second
// cohomology here is nontrivial, which makes it the home of the bundled
// non-inducible automorphism pair and the non-extensible derivation pair.
inline CocycleTriple nilpotent_fixture() {
    ConformalAlgebra A = trivial_algebra({"x", "y"});
    ConformalAlgebra B = trivial_algebra({"b"});
    StructureTable left = StructureTable::zero(B.carrier, A.carrier, A.carrier);
    left.entry[0][1] = ModElement::basis(A.carrier, 0, 1);
    StructureTable right = StructureTable::zero(A.carrier, B.carrier, A.carrier);
    right.entry[1][0] = ModElement::basis(A.carrier, 0, 1);
    StructureTable chi = StructureTable::zero(B.carrier, B.carrier, A.carrier);
    chi.entry[0][0] = ModElement(A.carrier, {parse_poly("L1^2", 1), Poly(1)});
    return make_cocycle(std::move(A), std::move(B), std::move(left), std::move(right),
                        std::move(chi));
}

// The same actions with chi = 0: a split abelian extension whose canonical
// section is an algebra homomorphism.
inline CocycleTriple nilpotent_split_fixture() {
    CocycleTriple c = nilpotent_fixture();
    c.chi = StructureTable::zero(c.B.carrier, c.B.carrier, c.A.carrier);
    return c;
}

// Both actions zero, chi the constant basis pairing. The first differential
// on maps B -> A vanishes identically here, so obstruction classes are
// decided globally rather than within a degree bound.
inline CocycleTriple zero_action_pairing_fixture() {
    CocycleTriple c = zero_cocycle(trivial_algebra({"x"}), trivial_algebra({"b"}));
    c.chi.entry[0][0] = ModElement::basis(c.A.carrier, 0, 1);
    return c;
}

// Every bundled valid triple, in a stable order.
inline std::vector<CocycleTriple> bundled_cocycles() {
    return {ideal_fixture(),
            twisted_ideal_fixture(),
            abelianized_fixture(),
            unital_values_fixture(),
            nilpotent_fixture(),
            nilpotent_split_fixture(),
            zero_action_pairing_fixture()};
}

inline std::set<std::string> failure_labels(const CheckReport& rep) {
    std::set<std::string> out;
    for (const auto& f : rep.failures) out.insert(f.identity);
    return out;
}

}  // namespace confalg::fixtures
