#pragma once

#include "confalg/poly.hpp"

#include <optional>
#include <vector>

namespace confalg {

using PolyMatrix = std::vector<std::vector<Poly>>;  // arity-0 entries

// Division with remainder in Q[D]: a = q*b + r with deg r < deg b.
void poly_divmod(const Poly& a, const Poly& b, Poly& q, Poly& r);

// Exact division of p (any arity) by a nonzero D-only divisor, done separately
// on each lambda-monomial group; nullopt when the division is not exact.
std::optional<Poly> divide_exact_partial(const Poly& p, const Poly& divisor);

// left * m * right == diag, with left and right invertible over k[D]
// (their determinants are nonzero scalars). The diagonal is monic and each
// entry divides the next; trailing entries may be zero.
struct SmithDecomposition {
    PolyMatrix left, right;
    std::vector<Poly> diag;  // length min(rows, cols)
    std::size_t rank() const;
};

SmithDecomposition smith_normal_form(const PolyMatrix& m);

PolyMatrix mat_mul(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix mat_identity(std::size_t n);

// Solve m x = b over k[D]. The right-hand side may carry lambda variables;
// the solution is computed lambda-monomial by lambda-monomial. The kernel is
// a k[D]-basis of solutions of m x = 0 (arity-0 vectors).
struct KdSolveResult {
    bool solvable = false;
    std::vector<Poly> particular;
    std::vector<std::vector<Poly>> kernel;
};

KdSolveResult solve_over_kd(const PolyMatrix& m, const std::vector<Poly>& b);

// Convenience: does b lie in the column span of m over k[D]?
bool in_column_span(const PolyMatrix& m, const std::vector<Poly>& b);

}  // namespace confalg
