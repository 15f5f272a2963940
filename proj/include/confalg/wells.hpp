#pragma once

#include "confalg/hochschild.hpp"
#include "confalg/nonabelian.hpp"

#include <optional>
#include <span>
#include <string>

namespace confalg {

// Pair of automorphisms acting on the ingredients of an extension: g on the
// value algebra A, h on the base algebra B.
struct AutPair {
    CdLinearMap g;  // A -> A
    CdLinearMap h;  // B -> B
};

// Validates both components with check_automorphism.
AutPair make_aut_pair(const ConformalAlgebra& A, const ConformalAlgebra& B, CdLinearMap g,
                      CdLinearMap h);

// Componentwise composition (p after q).
AutPair compose(const AutPair& p, const AutPair& q);

// Pair of k[D]-linear maps acting as derivations: da on A's carrier, db on
// B's carrier. Compatibility with a bimodule structure is a separate check.
struct DerPair {
    CdLinearMap da;  // A -> A
    CdLinearMap db;  // B -> B
};

// Componentwise commutator [d, d'] = (da da' - da' da, db db' - db' db).
DerPair der_bracket(const DerPair& d, const DerPair& e);

// Verdict of an obstruction-class test. A truncated search cannot certify
// global nonvanishing, so a failed bounded solve is reported as
// NonZeroWithinBounds with the bound on record; NonZero is reserved for
// refutations that are independent of any degree bound.
enum class WellsStatus { Zero, NonZero, NonZeroWithinBounds, Undecided };

struct AutWellsResult {
    WellsStatus status = WellsStatus::Undecided;
    CocycleTriple transformed;          // the (g,h)-transform of the extension's triple
    std::optional<CdLinearMap> omega;   // verified witness when status == Zero
    int bound_used = 0;
    std::string note;
};

struct DerWellsResult {
    WellsStatus status = WellsStatus::Undecided;
    Cochain theta_chi;                  // the obstruction 2-cochain
    std::optional<CdLinearMap> f;       // verified witness when status == Zero
    int bound_used = 0;
    std::string note;
};

// The triple (b |> a, a <| b, chi) conjugated by (g, h):
//   |>' (b, a) = g(h^-1(b) |> g^-1(a)),   <|' (a, b) = g(g^-1(a) <| h^-1(b)),
//   chi'(b1, b2) = g(chi(h^-1(b1), h^-1(b2))).
// A cocycle maps to a cocycle, and the construction is functorial in p.
// Throws NotInvertible when a component has no k[D]-inverse.
CocycleTriple transform_cocycle(const AutPair& p, const CocycleTriple& c);

// The three identities a module map omega : B -> A must satisfy for
// (g, h) to be induced by an automorphism of e (labels "lift compatibility
// (left action)", "(right action)", "(pairing)"). Equivalent to an
// equivalence witness from the transformed triple back to the original.
CheckReport check_induction_witness(const AutPair& p, const Extension& e,
                                    const CdLinearMap& omega);

// Obstruction class of the pair against the extension: Zero iff (g, h) is
// induced by an automorphism of E restricting to the A-block. The witness
// search runs through the equivalence solver at the given D-degree bound
// (default: ingredient degree + 2, escalated once).
AutWellsResult wells_aut(const AutPair& p, const Extension& e);
AutWellsResult wells_aut(const AutPair& p, const Extension& e, int degree_bound);

// Builds the automorphism of E determined by (p, omega):
//   f = alpha g pr_A - alpha omega h beta + gamma h beta,
// where pr_A is the A-coordinate relative to the stored section. Requires a
// verified omega (InvalidWitness otherwise); the result passes the
// automorphism check and kappa(f) = p.
CdLinearMap induce_automorphism(const AutPair& p, const CdLinearMap& omega, const Extension& e);

// Boundary pair (f restricted to A, f conjugated to B) of an automorphism of
// E that preserves the A-block; throws DoesNotPreserveA otherwise. The B
// component does not depend on the choice of section.
AutPair kappa(const CdLinearMap& f, const Extension& e);

// Membership in the group of action-compatible pairs:
//   g(b |> v) = h(b) |> g(v)   and   g(v <| b) = g(v) <| h(b).
// For an abelian extension this is necessary for a zero obstruction class,
// and its failure refutes inducibility at every degree bound.
CheckReport check_action_compatible_pair(const AutPair& p, const ConformalBimodule& m);

// Left inverse of alpha that kills the stored section: pi_A (id - gamma beta).
CdLinearMap ideal_projection(const Extension& e);

// The action bimodule of an abelian triple: B acting on A's carrier through
// the two action tables. Throws NotAbelian when A has a product.
ConformalBimodule action_bimodule(const CocycleTriple& c);

// The pairing chi of an abelian triple as a degree-2 cochain over the action
// bimodule. Throws NotAbelian when A has a product.
Cochain pairing_cochain(const CocycleTriple& c);

// Compatibility of a derivation pair with a bimodule: db derives the base
// algebra, and both actions are derived jointly,
//   da(b |> v) = b |> da(v) + db(b) |> v,
//   da(v <| b) = v <| db(b) + da(v) <| b.
CheckReport check_pair_in_g(const DerPair& d, const ConformalBimodule& m);

// The action of a compatible pair on a cochain over the action bimodule:
//   (Theta f)(b_1..b_n) = da(f(b_1..b_n)) - sum_i f(b_1.., db(b_i), ..b_n).
// On compatible pairs this is a cochain-level Lie algebra representation and
// commutes with the differential's kernel (cocycles map to cocycles).
Cochain theta_action(const DerPair& d, const Cochain& phi);

// Obstruction class of a derivation pair against an abelian extension: Zero
// iff the pair extends to a derivation of E restricting to the A-block. The
// obstruction is Theta(d) applied to the pairing; the witness search solves
// d(f) = Theta(chi) for a map f : B -> A within the D-degree bound (default:
// ingredient degree + 2, escalated once). When the coboundary operator on
// maps B -> A vanishes identically, a nonzero obstruction is final and the
// status is NonZero at every bound.
DerWellsResult wells_der(const DerPair& d, const Extension& e);
DerWellsResult wells_der(const DerPair& d, const Extension& e, int degree_bound);

// Builds the derivation of E determined by (d, f):
//   d_E = alpha da pr_A + alpha f beta + gamma db beta.
// Requires d(f) = Theta(chi) (InvalidWitness otherwise); the result passes
// the derivation check, restricts to da on A and projects to db on B.
CdLinearMap extend_derivation(const DerPair& d, const CdLinearMap& f, const Extension& e);

// Boundary pair of a derivation of E preserving the A-block; throws
// DoesNotPreserveA otherwise.
DerPair kappa_der(const CdLinearMap& dE, const Extension& e);

// One sampled derivation of a split abelian extension, written as the
// canonical lift of its boundary pair plus a kernel part:
//   dE = eta(pair) + alpha z1 beta,  eta(pair) = extend_derivation(pair, 0),
// where z1 : B -> A is a derivation into the action bimodule.
struct DerDecomposition {
    DerPair pair;
    CdLinearMap z1;
    CdLinearMap eta;  // the lift of `pair`, for reconstruction checks
};
DerDecomposition decompose_derivation(const Extension& e, const CdLinearMap& dE);

// Decomposes every sample and verifies: each is a derivation preserving the
// A-block, its pair is action-compatible, the kernel part derives B into the
// action bimodule, the sample is recovered exactly, and the canonical lift
// is a Lie homomorphism on the sampled pairs. Throws NotSplit when the
// stored section is not a homomorphism, NotAbelian when A has a product.
CheckReport split_der_decomposition(const Extension& e, std::span<const CdLinearMap> samples);

}  // namespace confalg
