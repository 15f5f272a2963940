#pragma once

#include "confalg/module.hpp"

#include <string>
#include <vector>

namespace confalg {

// Bilinear structure table for a product left x right -> out. Entry (i,j) is
// the value on the basis pair, an element of `out` with arity 1: its
// coefficients are polynomials in the product variable L1 and in D.
struct StructureTable {
    ModulePtr left, right, out;
    std::vector<std::vector<ModElement>> entry;

    static StructureTable zero(ModulePtr left, ModulePtr right, ModulePtr out);
    bool is_zero() const;
    bool operator==(const StructureTable&) const;
};

// Evaluate the sesquilinear extension of a structure table on two elements
// whose coefficients live in the arity of `nu` (the formal value of the
// product variable). Coefficients follow the substitution rules
//   left slot:  f(D) -> f(-nu),   right slot:  g(D) -> g(nu + D),
// and the table entry gets L1 -> nu with D left intact.
ModElement eval_table(const StructureTable& t, const ModElement& x, const ModElement& y,
                      const Poly& nu);

// One failed instance of a checked identity.
struct IdentityFailure {
    std::string identity;
    std::vector<std::size_t> indices;  // basis indices of the witness tuple
    ModElement difference;             // nonzero LHS - RHS
};

struct CheckReport {
    bool ok = true;
    std::vector<IdentityFailure> failures;
    std::string summary() const;
};

// Associative conformal algebra: free k[D]-module with a lambda-product
// stored on basis pairs.
struct ConformalAlgebra {
    ModulePtr carrier;
    StructureTable mult;  // left = right = out = carrier

    std::size_t rank() const { return carrier->rank(); }
    bool operator==(const ConformalAlgebra&) const;
};

ConformalAlgebra make_algebra(ModulePtr carrier, StructureTable mult);

// x and y are carrier elements with coefficients of nu's arity.
ModElement conformal_product(const ConformalAlgebra& alg, const ModElement& x,
                             const ModElement& y, const Poly& nu);

// (e_i o_L1 e_j) o_{L1+L2} e_k == e_i o_L1 (e_j o_L2 e_k) on all basis triples.
CheckReport check_associativity(const ConformalAlgebra& alg);

// Current algebra of a finite-dimensional associative algebra given by its
// structure constants: table[i][j][k] is the coefficient of basis k in the
// product (basis i)(basis j). Verifies associativity of the scalar table.
ConformalAlgebra cur_of(const std::vector<std::string>& basis,
                        const std::vector<std::vector<std::vector<Scalar>>>& table);

// Rank-n algebra with all products zero.
ConformalAlgebra trivial_algebra(const std::vector<std::string>& basis);

// Block-diagonal sum; cross products vanish.
ConformalAlgebra direct_sum(const ConformalAlgebra& a, const ConformalAlgebra& b);

// Bimodule over an algebra: left action A x M -> M, right action M x A -> M.
struct ConformalBimodule {
    ConformalAlgebra algebra;
    ModulePtr carrier;
    StructureTable left_action;   // left = algebra carrier, right = out = carrier
    StructureTable right_action;  // left = out = carrier, right = algebra carrier
};

ConformalBimodule make_bimodule(ConformalAlgebra algebra, ModulePtr carrier,
                                StructureTable left_action, StructureTable right_action);

// Sesquilinearity (4 identities, true by construction of eval_table), module
// associativity for each side, and left/right compatibility: 7 in total.
CheckReport check_bimodule(const ConformalBimodule& m);

// A acting on itself by its own product on both sides.
ConformalBimodule regular_bimodule(const ConformalAlgebra& alg);

// Carrier with both actions zero.
ConformalBimodule zero_bimodule(const ConformalAlgebra& alg, ModulePtr carrier);

ModElement left_act(const ConformalBimodule& m, const ModElement& a, const ModElement& v,
                    const Poly& nu);
ModElement right_act(const ConformalBimodule& m, const ModElement& v, const ModElement& a,
                     const Poly& nu);

// Semidirect product on M + B: (v1,b1) o (v2,b2) = (b1|>v2 + v1<|b2, b1 o b2),
// with the M-block product zero. The bimodule axioms are re-checked first.
ConformalAlgebra semidirect_product(const ConformalAlgebra& b, const ConformalBimodule& m);

// f(x o_L1 y) == f(x) o_L1 f(y) on basis pairs; f maps src carrier to dst.
CheckReport check_homomorphism(const ConformalAlgebra& src, const ConformalAlgebra& dst,
                               const CdLinearMap& f);

// Homomorphism A -> A whose matrix is invertible over k[D]; throws
// NotInvertible when the determinant is not a nonzero scalar.
CheckReport check_automorphism(const ConformalAlgebra& alg, const CdLinearMap& f);

// d(x o_L1 y) == x |>_L1 d(y) + d(x) <|_L1 y for d : A -> M.
CheckReport check_derivation(const ConformalAlgebra& alg, const ConformalBimodule& m,
                             const CdLinearMap& d);

// Regular-bimodule specialization: d(x o y) = d(x) o y + x o d(y).
CheckReport check_algebra_derivation(const ConformalAlgebra& alg, const CdLinearMap& d);

}  // namespace confalg
