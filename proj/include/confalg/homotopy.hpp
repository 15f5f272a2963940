#pragma once

#include "confalg/conformal.hpp"
#include "confalg/hochschild.hpp"
#include "confalg/smith.hpp"

#include <optional>
#include <vector>

namespace confalg {

// Two-term homotopy-associative structure on a complex fd : A1 -> A0.
// The binary product is given per slot type (the A1 x A1 part must vanish),
// and a ternary homotopy m3 corrects associativity on A0 up to the boundary.
struct TwoTermSHAC {
    ModulePtr A1, A0;
    CdLinearMap fd;      // boundary A1 -> A0
    StructureTable m00;  // A0 x A0 -> A0
    StructureTable m01;  // A0 x A1 -> A1
    StructureTable m10;  // A1 x A0 -> A1
    StructureTable m11;  // A1 x A1 -> A1; required to vanish
    Cochain m3;          // degree 3, values in A1

    bool is_skeletal() const { return fd.is_zero(); }
    bool is_strict() const { return m3.is_zero(); }

    // (A0, m00) as an algebra candidate, and A1 with (m01, m10) as a
    // bimodule candidate over it. Neither is re-validated here.
    ConformalAlgebra base_algebra() const;
    ConformalBimodule homotopy_bimodule() const;

    bool operator==(const TwoTermSHAC&) const;
};

// Shape-validates the tables and re-homes `m3` (any degree-3 cochain whose
// algebra carrier is A0 and value carrier is A1) over the bimodule induced
// by the tables. Semantic validation is check_twoterm's job.
TwoTermSHAC make_twoterm(ModulePtr A1, ModulePtr A0, CdLinearMap fd, StructureTable m00,
                         StructureTable m01, StructureTable m10, StructureTable m11,
                         const Cochain& m3);

// Convenience: m11 = 0 and m3 = 0.
TwoTermSHAC make_strict_twoterm(ModulePtr A1, ModulePtr A0, CdLinearMap fd,
                                StructureTable m00, StructureTable m01, StructureTable m10);

// The eight coherence identities, labelled "2-t1".."2-t8", plus the vanishing
// of the degree-one product, expanded on basis tuples with formal lambdas.
CheckReport check_twoterm(const TwoTermSHAC& t);

// Crossed module: X acts on Y from both sides, the boundary rho : Y -> X
// intertwines actions and products, and the Peiffer identities recover the
// Y-product from the action through rho.
struct CrossedModule {
    ConformalAlgebra X, Y;
    CdLinearMap rho;           // Y -> X
    StructureTable left_act;   // X x Y -> Y
    StructureTable right_act;  // Y x X -> Y

    // Y as a bimodule candidate over X; not re-validated here.
    ConformalBimodule action_bimodule() const;

    bool operator==(const CrossedModule&) const;
};

CrossedModule make_crossed(ConformalAlgebra X, ConformalAlgebra Y, CdLinearMap rho,
                           StructureTable left_act, StructureTable right_act);

// Associativity of both algebras, the bimodule laws for the action, the three
// mixed associativity laws tying the action to the Y-product, compatibility
// of the boundary with both actions, both Peiffer identities, and the derived
// fact that the boundary is an algebra homomorphism.
CheckReport check_crossed(const CrossedModule& c);

// A strict structure and a crossed module carry the same data: the Y-product
// is m2(fd y1, y2), the boundary is fd, and the actions are the mixed
// products. Round trips reproduce the stored tables exactly.
TwoTermSHAC crossed_to_shac(const CrossedModule& c);
CrossedModule shac_to_crossed(const TwoTermSHAC& t);  // throws NotStrict

// A skeletal structure (fd = 0) repackaged as an algebra, a bimodule, and
// the ternary homotopy, which the coherence identities force to be a
// degree-3 cocycle.
struct SkeletalData {
    ConformalAlgebra algebra;
    ConformalBimodule bimodule;
    Cochain cocycle;  // degree 3
};

SkeletalData skeletal_to_cocycle(const TwoTermSHAC& t);  // throws NotSkeletal
TwoTermSHAC cocycle_to_skeletal(const ConformalAlgebra& a, const ConformalBimodule& m,
                                const Cochain& zeta);  // throws NotACocycle

// Morphism of two-term structures: a chain map (f0, f1) plus a binary
// correction f2 with values in the target's degree-one part.
struct TwoTermMorphism {
    CdLinearMap f0;     // source A0 -> target A0
    CdLinearMap f1;     // source A1 -> target A1
    StructureTable f2;  // source A0 x source A0 -> target A1

    bool operator==(const TwoTermMorphism&) const;
};

TwoTermMorphism identity_morphism(const TwoTermSHAC& t);

// Chain-map condition plus the four coherence identities tying f2 to the
// defect of (f0, f1) against the products and the homotopies.
CheckReport check_morphism(const TwoTermMorphism& f, const TwoTermSHAC& source,
                           const TwoTermSHAC& target);

// g after f. The correction of the composite is g2 on the f0-images plus
// g1 applied to the f-correction.
TwoTermMorphism compose_morphisms(const TwoTermMorphism& g, const TwoTermMorphism& f);

// Exact sequence 0 -> M -> Y -> X -> A -> 0 where (X, Y, beta) with the
// given actions is a crossed module, A = M.algebra is the quotient, the
// product on the image of M vanishes, and the A-bimodule induced on M
// through a base section equals the declared one. `image_basis` columns
// form a k[D]-basis of beta(Y) inside X; `sigma_values` columns are chosen
// beta-preimages of those columns, defining the kernel section.
struct CrossedExtension {
    ConformalBimodule M;  // A-bimodule; M.algebra is the quotient A
    ConformalAlgebra Y, X;
    CdLinearMap alpha;  // M -> Y
    CdLinearMap beta;   // Y -> X
    CdLinearMap gamma;  // X -> A
    StructureTable left_act;            // X x Y -> Y
    StructureTable right_act;           // Y x X -> Y
    std::optional<CdLinearMap> varrho;  // base section A -> X, gamma o varrho = id
    PolyMatrix image_basis;             // X-coordinates, one column per generator
    PolyMatrix sigma_values;            // Y-coordinates, one column per generator

    const ConformalAlgebra& quotient_algebra() const { return M.algebra; }
    bool operator==(const CrossedExtension&) const;
};

// Full validation: shapes, the crossed-module laws for (X, Y, beta) with the
// actions, alpha/beta/gamma algebra homomorphisms (M with the zero product),
// exactness at every node as an equality of k[D]-submodules, gamma o varrho
// = id, and the match between the declared bimodule on M and the one induced
// through the base section. The overload without a base section solves for
// one, which always succeeds here because the quotient is free. The kernel
// section is computed from the Smith form of beta.
CrossedExtension make_crossed_extension(ConformalBimodule M, ConformalAlgebra Y,
                                        ConformalAlgebra X, CdLinearMap alpha,
                                        CdLinearMap beta, CdLinearMap gamma,
                                        StructureTable left_act, StructureTable right_act);
CrossedExtension make_crossed_extension(ConformalBimodule M, ConformalAlgebra Y,
                                        ConformalAlgebra X, CdLinearMap alpha,
                                        CdLinearMap beta, CdLinearMap gamma,
                                        StructureTable left_act, StructureTable right_act,
                                        CdLinearMap varrho);

// Whether a base section is attached.
bool is_split(const CrossedExtension& s);

// The middle part (X, Y, beta) with its actions.
CrossedModule crossed_module_of(const CrossedExtension& s);

// Same extension with a different base section; gamma o varrho = id and the
// induced-bimodule match are re-checked.
CrossedExtension with_base_section(const CrossedExtension& s, CdLinearMap varrho);

// Same extension with different beta-preimages for the stored image basis;
// beta o sigma = image_basis is re-checked.
CrossedExtension with_kernel_section(const CrossedExtension& s, PolyMatrix sigma_values);

// g(a, b) = sigma(varrho(a) o varrho(b) - varrho(a o b)): the Y-valued
// defect of the base section, read through the kernel section.
// Throws NotSplit without a base section.
StructureTable base_section_defect(const CrossedExtension& s);

// The degree-3 cochain with values in M built from the defect g:
//   f(a,b,c) = varrho(a) |> g(b,c) - g(a o b, c) + g(a, b o c) - g(a,b) <| varrho(c)
// pulled back along alpha. Verifies that beta kills the values and that the
// cocycle equation holds; throws NotSplit without a base section.
Cochain crossed_extension_theta(const CrossedExtension& s);

// Degree-2 cochain c with
//   crossed_extension_theta(to) - crossed_extension_theta(from) == differential(c)
// for two copies of one extension differing only in the base section.
Cochain base_section_correction(const CrossedExtension& from, const CrossedExtension& to);

// Same contract for two copies differing only in the kernel section.
Cochain kernel_section_correction(const CrossedExtension& from, const CrossedExtension& to);

}  // namespace confalg
