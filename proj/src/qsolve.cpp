#include "confalg/qsolve.hpp"

#include "confalg/error.hpp"

#include <map>

namespace confalg {

std::size_t qrank(QMatrix m) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m.cols && rank < m.rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < m.rows && m.at(pivot, col) == 0) ++pivot;
        if (pivot == m.rows) continue;
        for (std::size_t c = 0; c < m.cols; ++c) std::swap(m.at(rank, c), m.at(pivot, c));
        const Scalar inv = Scalar(1) / m.at(rank, col);
        for (std::size_t c = col; c < m.cols; ++c) m.at(rank, c) *= inv;
        for (std::size_t r = 0; r < m.rows; ++r) {
            if (r == rank || m.at(r, col) == 0) continue;
            const Scalar f = m.at(r, col);
            for (std::size_t c = col; c < m.cols; ++c) m.at(r, c) -= f * m.at(rank, c);
        }
        ++rank;
    }
    return rank;
}

QSolveResult qsolve(const QMatrix& A, const std::vector<Scalar>& b, bool want_kernel) {
    if (b.size() != A.rows) throw Error("qsolve: size mismatch");
    QMatrix m(A.rows, A.cols + 1);
    for (std::size_t r = 0; r < A.rows; ++r) {
        for (std::size_t c = 0; c < A.cols; ++c) m.at(r, c) = A.at(r, c);
        m.at(r, A.cols) = b[r];
    }
    std::vector<std::size_t> pivot_col;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < A.cols && rank < m.rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < m.rows && m.at(pivot, col) == 0) ++pivot;
        if (pivot == m.rows) continue;
        for (std::size_t c = 0; c < m.cols; ++c) std::swap(m.at(rank, c), m.at(pivot, c));
        const Scalar inv = Scalar(1) / m.at(rank, col);
        for (std::size_t c = col; c < m.cols; ++c) m.at(rank, c) *= inv;
        for (std::size_t r = 0; r < m.rows; ++r) {
            if (r == rank || m.at(r, col) == 0) continue;
            const Scalar f = m.at(r, col);
            for (std::size_t c = col; c < m.cols; ++c) m.at(r, c) -= f * m.at(rank, c);
        }
        pivot_col.push_back(col);
        ++rank;
    }
    QSolveResult res;
    for (std::size_t r = rank; r < m.rows; ++r)
        if (m.at(r, A.cols) != 0) return res;  // inconsistent
    res.solvable = true;
    res.x.assign(A.cols, Scalar(0));
    for (std::size_t r = 0; r < rank; ++r) res.x[pivot_col[r]] = m.at(r, A.cols);
    if (want_kernel) {
        std::vector<bool> is_pivot(A.cols, false);
        for (auto c : pivot_col) is_pivot[c] = true;
        for (std::size_t free = 0; free < A.cols; ++free) {
            if (is_pivot[free]) continue;
            std::vector<Scalar> v(A.cols, Scalar(0));
            v[free] = Scalar(1);
            for (std::size_t r = 0; r < rank; ++r) v[pivot_col[r]] = -m.at(r, free);
            res.kernel.push_back(std::move(v));
        }
    }
    return res;
}

BoundedSolveResult bounded_coefficient_solve(std::size_t unknown_count,
                                             const std::vector<PolyEquation>& equations,
                                             int degree_bound) {
    for (const auto& eq : equations)
        for (const auto& q : eq.quadratic)
            if (!q.multiplier.is_zero())
                throw NotAffine("equation system contains a quadratic term");
    if (degree_bound < 0) throw Error("negative degree bound");
    const std::size_t per = static_cast<std::size_t>(degree_bound) + 1;
    const std::size_t ncols = unknown_count * per;

    std::vector<std::vector<Scalar>> rows;
    std::vector<Scalar> rhs;
    for (const auto& eq : equations) {
        // One scalar row per monomial occurring in this equation.
        std::map<Monomial, std::size_t, MonomialDescending> index;
        auto row_of = [&](const Monomial& m) {
            auto [it, inserted] = index.try_emplace(m, rows.size());
            if (inserted) {
                rows.emplace_back(ncols, Scalar(0));
                rhs.emplace_back(0);
            }
            return it->second;
        };
        for (const auto& [m, c] : eq.constant.terms()) rhs[row_of(m)] -= c;
        for (const auto& term : eq.linear) {
            if (term.unknown >= unknown_count) throw Error("unknown index out of range");
            for (std::size_t k = 0; k < per; ++k) {
                // Contribution of coefficient k of the unknown: D^k * multiplier.
                for (const auto& [m, c] : term.multiplier.terms()) {
                    Monomial shifted = m;
                    shifted.d += static_cast<std::uint32_t>(k);
                    rows[row_of(shifted)][term.unknown * per + k] += c;
                }
            }
        }
    }
    QMatrix A(rows.size(), ncols);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < ncols; ++c) A.at(r, c) = rows[r][c];
    const QSolveResult sol = qsolve(A, rhs);
    BoundedSolveResult out;
    if (!sol.solvable) return out;
    out.solvable = true;
    out.unknowns.reserve(unknown_count);
    for (std::size_t i = 0; i < unknown_count; ++i) {
        Poly p(0);
        for (std::size_t k = 0; k < per; ++k)
            p.add_term(Monomial{{}, static_cast<std::uint32_t>(k)}, sol.x[i * per + k]);
        out.unknowns.push_back(std::move(p));
    }
    return out;
}

namespace {

std::vector<Scalar> unit_vector(std::size_t n, std::size_t i, const Scalar& v) {
    std::vector<Scalar> e(n, Scalar(0));
    e[i] = v;
    return e;
}

}  // namespace

std::optional<std::vector<Scalar>> solve_affine_by_probing(
    std::size_t unknown_count,
    const std::function<std::vector<Poly>(const std::vector<Scalar>&)>& residual) {
    const std::vector<Poly> base = residual(std::vector<Scalar>(unknown_count, Scalar(0)));
    std::vector<std::vector<Poly>> cols(unknown_count);
    for (std::size_t i = 0; i < unknown_count; ++i) {
        cols[i] = residual(unit_vector(unknown_count, i, Scalar(1)));
        for (std::size_t c = 0; c < base.size(); ++c) cols[i][c] -= base[c];
    }
    // Flatten over the union of supports.
    std::vector<std::vector<Scalar>> rows;
    std::vector<Scalar> rhs;
    for (std::size_t c = 0; c < base.size(); ++c) {
        std::map<Monomial, std::size_t, MonomialDescending> index;
        const std::size_t row0 = rows.size();
        auto row_of = [&](const Monomial& m) {
            auto [it, inserted] = index.try_emplace(m, rows.size());
            if (inserted) {
                rows.emplace_back(unknown_count, Scalar(0));
                rhs.emplace_back(0);
            }
            return it->second;
        };
        for (const auto& [m, coeff] : base[c].terms()) rhs[row_of(m)] -= coeff;
        for (std::size_t i = 0; i < unknown_count; ++i)
            for (const auto& [m, coeff] : cols[i][c].terms()) rows[row_of(m)][i] += coeff;
        (void)row0;
    }
    QMatrix A(rows.size(), unknown_count);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < unknown_count; ++c) A.at(r, c) = rows[r][c];
    const QSolveResult sol = qsolve(A, rhs);
    if (!sol.solvable) return std::nullopt;
    // The residual must vanish identically at the solution; if it does not,
    // the map was not affine and the caller picked the wrong solver.
    for (const auto& p : residual(sol.x))
        if (!p.is_zero()) throw NotAffine("probed residual is not affine in the unknowns");
    return sol.x;
}

std::vector<QuadraticCoordinate> probe_quadratic(
    std::size_t unknown_count,
    const std::function<std::vector<Poly>(const std::vector<Scalar>&)>& residual) {
    const std::size_t n = unknown_count;
    const std::vector<Poly> c0 = residual(std::vector<Scalar>(n, Scalar(0)));
    std::vector<std::vector<Poly>> f1(n), f2(n);
    for (std::size_t i = 0; i < n; ++i) {
        f1[i] = residual(unit_vector(n, i, Scalar(1)));
        f2[i] = residual(unit_vector(n, i, Scalar(2)));
    }
    const std::size_t ncomp = c0.size();
    // q_ii = (F(2e_i) - 2F(e_i) + F(0)) / 2 ;  l_i = F(e_i) - F(0) - q_ii ;
    // q_ij = F(e_i+e_j) - F(e_i) - F(e_j) + F(0)   (i < j).
    std::vector<std::vector<Poly>> lin(n), qdiag(n);
    for (std::size_t i = 0; i < n; ++i) {
        lin[i].reserve(ncomp);
        qdiag[i].reserve(ncomp);
        for (std::size_t c = 0; c < ncomp; ++c) {
            Poly qii = f2[i][c] - f1[i][c] - f1[i][c] + c0[c];
            qii = Scalar(1, 2) * qii;
            lin[i].push_back(f1[i][c] - c0[c] - qii);
            qdiag[i].push_back(std::move(qii));
        }
    }
    std::map<std::pair<std::size_t, std::size_t>, std::vector<Poly>> qcross;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            std::vector<Scalar> x(n, Scalar(0));
            x[i] = 1;
            x[j] = 1;
            std::vector<Poly> fij = residual(x);
            for (std::size_t c = 0; c < ncomp; ++c)
                fij[c] = fij[c] - f1[i][c] - f1[j][c] + c0[c];
            qcross.emplace(std::make_pair(i, j), std::move(fij));
        }
    std::vector<QuadraticCoordinate> out;
    for (std::size_t c = 0; c < ncomp; ++c) {
        std::map<Monomial, std::size_t, MonomialDescending> index;
        std::vector<QuadraticCoordinate> local;
        auto slot_of = [&](const Monomial& m) {
            auto [it, inserted] = index.try_emplace(m, local.size());
            if (inserted) {
                QuadraticCoordinate q;
                q.linear.assign(n, Scalar(0));
                q.quad.resize(n);
                for (std::size_t i = 0; i < n; ++i) q.quad[i].assign(n - i, Scalar(0));
                local.push_back(std::move(q));
            }
            return it->second;
        };
        for (const auto& [m, coeff] : c0[c].terms()) local[slot_of(m)].constant += coeff;
        for (std::size_t i = 0; i < n; ++i) {
            for (const auto& [m, coeff] : lin[i][c].terms()) local[slot_of(m)].linear[i] += coeff;
            for (const auto& [m, coeff] : qdiag[i][c].terms()) local[slot_of(m)].quad[i][0] += coeff;
        }
        for (const auto& [ij, polys] : qcross)
            for (const auto& [m, coeff] : polys[c].terms())
                local[slot_of(m)].quad[ij.first][ij.second - ij.first] += coeff;
        for (auto& q : local) out.push_back(std::move(q));
    }
    return out;
}

}  // namespace confalg
