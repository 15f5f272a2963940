#pragma once

#include "confalg/conformal.hpp"
#include "confalg/qsolve.hpp"

#include <optional>
#include <span>
#include <vector>

namespace confalg {

// Sesquilinear n-cochain of an algebra with values in a bimodule M.
//   n = 0 : one element of M (a representative of M modulo D*M);
//   n >= 1: a value in M for every basis n-tuple of A, of arity n-1
//           (polynomials in L1..L<n-1> and D).
// Evaluation on non-basis arguments follows the slot rules: a coefficient
// f(D) in slot i < n contributes f(-nu_i); in the last slot it contributes
// f(D + nu_1 + ... + nu_{n-1}).
class Cochain {
public:
    Cochain(std::size_t degree, ConformalBimodule coefficients);
    static Cochain zero(std::size_t degree, ConformalBimodule coefficients);
    // Degree-0 cochain holding the given representative.
    static Cochain degree0(ConformalBimodule coefficients, ModElement value);
    // Degree-1 cochain of a module map A -> M.
    static Cochain from_linear_map(ConformalBimodule coefficients, const CdLinearMap& f);
    // The multiplication of A as a self-valued 2-cochain.
    static Cochain multiplication(const ConformalAlgebra& alg);

    std::size_t degree() const { return degree_; }
    const ConformalAlgebra& algebra() const { return coeffs_.algebra; }
    const ConformalBimodule& coefficients() const { return coeffs_; }
    std::size_t tuple_count() const { return values_.size(); }
    bool is_zero() const;
    // Self-valued with the regular actions (required by the bracket).
    bool is_regular_valued() const;

    // Row-major flat index of a basis tuple.
    std::size_t flat_index(std::span<const std::size_t> tuple) const;
    std::vector<std::size_t> unflatten(std::size_t flat) const;
    const ModElement& value(std::span<const std::size_t> tuple) const;
    const ModElement& value_flat(std::size_t flat) const { return values_[flat]; }
    void set_value(std::span<const std::size_t> tuple, ModElement v);
    void set_value_flat(std::size_t flat, ModElement v);

    CdLinearMap to_linear_map() const;  // degree 1 only

    Cochain operator-() const;
    Cochain& operator+=(const Cochain&);
    Cochain& operator-=(const Cochain&);
    friend Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
    friend Cochain operator-(Cochain a, const Cochain& b) { return a -= b; }
    friend Cochain operator*(const Scalar& c, Cochain f);
    // Exact equality of stored values; degree 0 compares modulo D*M.
    bool operator==(const Cochain&) const;

    int max_partial_degree() const;
    int max_lambda_degree() const;

private:
    std::size_t degree_;
    ConformalBimodule coeffs_;
    std::vector<ModElement> values_;
};

// Multilinear sesquilinear evaluation: args are elements of A whose
// coefficients share the arity of the slot values nus (|nus| = degree-1).
ModElement eval_cochain(const Cochain& f, std::span<const ModElement> args,
                        std::span<const Poly> nus);
// Formal evaluation at nu_i = L<i> in arity degree-1.
ModElement eval_cochain(const Cochain& f, std::span<const ModElement> args);

// Hochschild differential; degree n -> n+1.
//   d0(v)(a)      = a |>_{-D} v - v <|_0 a
//   dn(f)(a_1..a_{n+1}) = a_1 |>_{L1} f_{L2..Ln}(a_2..a_{n+1})
//     + sum_{i=1..n} (-1)^i f_{..,Li+L<i+1>,..}(.., a_i o_{Li} a_{i+1}, ..)
//     + (-1)^{n+1} f_{L1..L<n-1>}(a_1..a_n) <|_{L1+..+Ln} a_{n+1},
// where the i = n merge lands in f's last slot and f keeps L1..L<n-1>.
Cochain differential(const Cochain& f);

struct CocycleReport {
    bool is_cocycle = true;
    // First basis tuple where the differential is nonzero, with its value.
    std::vector<std::size_t> witness_tuple;
    std::optional<ModElement> witness_value;
};
CocycleReport is_cocycle(const Cochain& f);

// v == w in M modulo D*M?
bool equal_mod_partial(const ModElement& v, const ModElement& w);

// Gerstenhaber insertion f o_i g (0 <= i <= deg f - 1), degrees m,n >= 1,
// both self-valued: g consumes argument slots i+1..i+n with the output
// variables L<i+1>..L<i+n-1>; for i < m-1 f's slot i+1 carries the merged
// subscript L<i+1>+...+L<i+n>, for i = m-1 the g-value sits in f's last slot.
Cochain circ_i(const Cochain& f, const Cochain& g, std::size_t i);
// f . g = sum_i (-1)^{(deg g - 1) i} f o_i g.
Cochain circ(const Cochain& f, const Cochain& g);
// [f,g] = f.g - (-1)^{(m-1)(n-1)} g.f.
Cochain gbracket(const Cochain& f, const Cochain& g);

// Differential with the sign that turns the bracket relation into
// dbar(f) = [mult, f]; dbar_n = (-1)^{n-1} d_n.
Cochain dbar(const Cochain& f);

// Graded Jacobi for (f,g,h) and graded Leibniz of dbar over the bracket.
struct DglaReport {
    bool jacobi_ok = true;
    bool leibniz_fg_ok = true;
    std::string summary() const;
};
DglaReport dgla_axiom_check(const Cochain& f, const Cochain& g, const Cochain& h);

// Truncation box for desk-scale searches.
struct Bounds {
    int ddeg = 0;  // max exponent of D
    int ldeg = 0;  // max total degree in the lambda variables
};

// Monomial basis of the truncated cochain space in the given degree: one
// cochain per (basis tuple, module basis vector, monomial within bounds).
// Degree 0 enumerates constant representatives only (they span M mod D*M).
std::vector<Cochain> truncated_basis(const ConformalBimodule& coeffs, std::size_t degree,
                                     const Bounds& b);

// Least-squares-free exact solve of d(psi) = f with psi in the truncated
// basis; the result is re-differentiated and compared exactly before being
// returned. nullopt = no solution within the bounds (undecided globally).
std::optional<Cochain> solve_coboundary(const Cochain& f, const Bounds& b);

struct TruncatedCohomology {
    std::size_t cocycle_dim = 0;    // dim of Z^n intersected with the box
    std::size_t coboundary_dim = 0; // dim of d(C^{n-1} intersected with the box)
    std::size_t quotient_dim = 0;   // cocycle_dim - dim(intersection with B)
};
TruncatedCohomology truncated_cohomology_dim(const ConformalBimodule& coeffs,
                                             std::size_t degree, const Bounds& b);

}  // namespace confalg
