#pragma once

#include "confalg/poly.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

namespace confalg {

// Dense exact rational matrix.
struct QMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<Scalar> a;  // row-major

    QMatrix() = default;
    QMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, Scalar(0)) {}
    Scalar& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    const Scalar& at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
};

std::size_t qrank(QMatrix m);

struct QSolveResult {
    bool solvable = false;
    std::vector<Scalar> x;
    std::vector<std::vector<Scalar>> kernel;
};

// Solve A x = b by Gauss elimination; kernel basis optional.
QSolveResult qsolve(const QMatrix& A, const std::vector<Scalar>& b, bool want_kernel = false);

// Affine system over unknown D-polynomials of bounded degree.
// Each equation asserts  constant + sum_k multiplier_k * u_{i_k} == 0  as a
// polynomial identity, where every unknown u_i ranges over D-polynomials of
// degree <= degree_bound. Quadratic terms are rejected with NotAffine.
struct AffineTerm {
    std::size_t unknown;
    Poly multiplier;
};
struct QuadTerm {
    std::size_t unknown_a, unknown_b;
    Poly multiplier;
};
struct PolyEquation {
    Poly constant{0};
    std::vector<AffineTerm> linear;
    std::vector<QuadTerm> quadratic;
};
struct BoundedSolveResult {
    bool solvable = false;
    std::vector<Poly> unknowns;  // arity 0, degree <= bound
};

BoundedSolveResult bounded_coefficient_solve(std::size_t unknown_count,
                                             const std::vector<PolyEquation>& equations,
                                             int degree_bound);

// Black-box affine solver: residual(x) must be affine in x; the system
// residual(x) == 0 is assembled by probing at 0 and the unit vectors.
// Returns nullopt when inconsistent. The result is re-verified by evaluation.
std::optional<std::vector<Scalar>> solve_affine_by_probing(
    std::size_t unknown_count,
    const std::function<std::vector<Poly>(const std::vector<Scalar>&)>& residual);

// Probe an (at most) quadratic residual map and return, per flattened scalar
// coordinate, the polynomial  c + sum l_i x_i + sum_{i<=j} q_ij x_i x_j  as
// coefficient tables. Used to hand quadratic systems to the Groebner engine.
struct QuadraticCoordinate {
    Scalar constant{0};
    std::vector<Scalar> linear;                         // size n
    std::vector<std::vector<Scalar>> quad;              // upper triangular, quad[i][j-i]
};
std::vector<QuadraticCoordinate> probe_quadratic(
    std::size_t unknown_count,
    const std::function<std::vector<Poly>(const std::vector<Scalar>&)>& residual);

}  // namespace confalg
