#pragma once

#include "confalg/hochschild.hpp"
#include "confalg/nonabelian.hpp"

#include <vector>

namespace confalg {

// Ambient data for the graded Lie algebra controlling extensions of B by A:
// everything in this module is a self-valued cochain over the block-diagonal
// sum algebra (basis layout [A-block | B-block]) whose product is the pair
// of background multiplications with vanishing cross terms.
struct MixedContext {
    ConformalAlgebra A;   // value block
    ConformalAlgebra B;   // base block
    ConformalAlgebra sum; // block-diagonal sum of the two

    std::size_t a_rank() const { return A.rank(); }
    std::size_t b_rank() const { return B.rank(); }
};

MixedContext make_mixed_context(ConformalAlgebra A, ConformalAlgebra B);

// Degree-(m+n) cochain over the sum algebra supported on basis tuples with
// exactly n B-block arguments, values inside the A-block. These span the
// (m,n)-slice of the controlling algebra; the Lie grading degree is m+n-1,
// so gauge parameters (0,1) sit in degree 0 and candidate extension data
// ((1,1) twice over plus (0,2)) in degree 1.
struct MixedCochain {
    int m = 0;
    int n = 0;
    Cochain value;
};

// Validating constructor: n > 0, degree m+n, support and value block.
MixedCochain make_mixed(const MixedContext& ctx, int m, int n, Cochain value);

// The (m,n)-part of a self-valued cochain over the sum algebra: keeps the
// A-block value components on tuples with exactly n B-arguments and m
// A-arguments, zero elsewhere. Returns the zero cochain when the degree is
// not m+n.
Cochain bidegree_part(const MixedContext& ctx, const Cochain& f, int m, int n);

// Candidate degree-1 element: the two actions and the pairing of a cocycle
// triple packed into one self-valued 2-cochain over the sum algebra
// (A-valued, zero on pure A-pairs).
struct MCElement {
    Cochain value;
};

// Validating constructor for hand-built elements; throws InvalidInput when
// the support or value block is wrong.
MCElement make_mc_element(const MixedContext& ctx, Cochain value);

struct GaugeParameter {
    CdLinearMap xi;  // B -> A
};

// (left, right, chi) -> chi + left + right as a degree-1 element; exact
// two-sided inverse of extract_cocycle.
MCElement embed_cocycle(const MixedContext& ctx, const CocycleTriple& c);
CocycleTriple extract_cocycle(const MixedContext& ctx, const MCElement& c);

// Exact flatness test: half the self-bracket of (background + element),
// which expands to the background associator defects plus the element's
// structure equation. A failure on a basis triple is labeled by the cocycle
// equation governing its block pattern (coh1..coh5), or by the associativity
// of the pure A- or B-block it exposes; agreement with check_cocycle is
// label-for-label.
CheckReport mc_check(const MixedContext& ctx, const MCElement& c);

// Truncated gauge action  c + [xi,c] - d(xi) - 1/2 [xi, d(xi)]  with d the
// bracket against the background multiplication. The series is exact: the
// adjoint action of a parameter squares to zero, which is re-verified at
// runtime (Error on violation). Flat elements stay flat, and the result is
// the equivalence-transform of the packed triple with witness xi.
MCElement gauge_transform(const MixedContext& ctx, const MCElement& c, const GaugeParameter& xi);

// Grading bookkeeping on samples: the bracket of (m,n) and (m',n') pieces
// lands exactly in (m+m'-1, n+n') (and vanishes when m+m' = 0), and the
// differential of an (m,n) piece splits into (m+1,n) + (m,n+1).
CheckReport check_subdgla_closure(const MixedContext& ctx,
                                  const std::vector<MixedCochain>& samples);

}  // namespace confalg
