#pragma once

#include "confalg/conformal.hpp"

#include <optional>

namespace confalg {

// Candidate non-abelian 2-cocycle on B with values in A: a left action-like
// table (b |> a), a right one (a <| b), and a pairing chi : B x B -> A[L1].
// The triple is a cocycle when check_cocycle reports ok.
struct CocycleTriple {
    ConformalAlgebra A;    // values
    ConformalAlgebra B;    // base
    StructureTable left;   // B x A -> A
    StructureTable right;  // A x B -> A
    StructureTable chi;    // B x B -> A

    bool operator==(const CocycleTriple&) const;
};

// Shape-validating constructor.
CocycleTriple make_cocycle(ConformalAlgebra A, ConformalAlgebra B, StructureTable left,
                           StructureTable right, StructureTable chi);

// The all-zero triple (semidirect data with zero actions and zero chi).
CocycleTriple zero_cocycle(ConformalAlgebra A, ConformalAlgebra B);

// The seven displayed cocycle equations, labeled coh1, coh2, coh3, coh4,
// coh4', coh4'', coh5 by the shape of the mixed triple they govern, plus
// associativity of both ingredient algebras ("value algebra associativity",
// "base algebra associativity"). A triple passes iff the product it induces
// on A + B is associative.
CheckReport check_cocycle(const CocycleTriple& c);

// Split extension of B by A in normal form: E lives on the labeled sum
// carrier [A-block | B-block], alpha is the A-block injection, beta the
// B-block projection, and gamma a stored section with beta after gamma = id.
struct Extension {
    ConformalAlgebra E;
    ConformalAlgebra A;
    ConformalAlgebra B;
    CdLinearMap alpha;  // A -> E
    CdLinearMap beta;   // E -> B
    CdLinearMap gamma;  // B -> E
};

// Build the extension with multiplication
//   (a1,b1) o (a2,b2) = (a1 o a2 + b1 |> a2 + a1 <| b2 + chi(b1,b2), b1 o b2)
// and the canonical section gamma(b) = (0,b). Throws InvalidCocycle when
// check_cocycle fails; the result always passes check_associativity.
Extension build_extension(const CocycleTriple& c);

// Adopt a user-supplied multiplication table over the concatenated
// [A-block | B-block] basis as an extension. Validates: the A-block is a
// subalgebra matching A, the B-projection is a homomorphism onto B's
// product, and the total product is associative.
Extension make_extension(const ConformalAlgebra& A, const ConformalAlgebra& B,
                         const StructureTable& mult);

// Replace the stored section; gamma must be a k[D]-map B -> E with
// beta after gamma = id.
Extension with_section(Extension e, CdLinearMap gamma);

// The section gamma(b) = (0, b) of an extension in normal form.
CdLinearMap canonical_section(const Extension& e);

// Read the cocycle induced by the stored (or an explicit) section:
//   b |> a = gamma(b) o a,  a <| b = a o gamma(b),
//   chi(b1,b2) = gamma(b1) o gamma(b2) - gamma(b1 o b2).
CocycleTriple cocycle_of_extension(const Extension& e);
CocycleTriple cocycle_of_extension(const Extension& e, const CdLinearMap& gamma);

// Equivalence witness delta : B -> A between two triples over the same pair
// (A,B): coh6/coh7 compare the actions, coh8 compares chi; the target
// triple's actions are the barred ones.
CheckReport check_equivalence_witness(const CocycleTriple& from, const CocycleTriple& to,
                                      const CdLinearMap& delta);

enum class EquivalenceOutcome {
    Witness,               // delta found and re-verified
    NotEquivalent,         // refuted by an equation with no unknowns (exact)
    NoRationalWitness,     // solvable over the closure within the bound, no Q-point
    UndecidedWithinBounds  // no delta up to the degree bound; larger ones not excluded
};

struct EquivalenceResult {
    EquivalenceOutcome outcome = EquivalenceOutcome::UndecidedWithinBounds;
    std::optional<CdLinearMap> delta;
    int bound_used = 0;
};

// Search for a witness with entries of D-degree <= bound. The default bound
// is (max D-degree over all ingredient tables) + 2, escalated once by +2 on
// failure. The chi equation is quadratic in delta through the term
// delta(b1) o delta(b2); it linearizes when A's multiplication is zero,
// otherwise the probed system goes to the Groebner engine.
EquivalenceResult solve_equivalence(const CocycleTriple& from, const CocycleTriple& to);
EquivalenceResult solve_equivalence(const CocycleTriple& from, const CocycleTriple& to,
                                    int degree_bound);

// Largest D-exponent appearing in any entry (-1 for an all-zero table).
int table_partial_degree(const StructureTable& t);

}  // namespace confalg
