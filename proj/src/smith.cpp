#include "confalg/smith.hpp"

#include "confalg/module.hpp"

#include <algorithm>
#include <map>

namespace confalg {

void poly_divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
    if (a.arity() != 0 || b.arity() != 0)
        throw ArityMismatch("poly_divmod expects D-only polynomials");
    if (b.is_zero()) throw Error("poly_divmod by zero");
    q = Poly(0);
    r = a;
    const int db = b.partial_degree();
    const Scalar lb = b.leading_coefficient();
    while (!r.is_zero() && r.partial_degree() >= db) {
        const int dr = r.partial_degree();
        // Leading coefficient of r in D.
        Scalar lr;
        for (const auto& [m, c] : r.terms())
            if (static_cast<int>(m.d) == dr) {
                lr = c;
                break;
            }
        Poly t(0);
        t.add_term(Monomial{{}, static_cast<std::uint32_t>(dr - db)}, lr / lb);
        q += t;
        r -= t * b;
    }
}

std::optional<Poly> divide_exact_partial(const Poly& p, const Poly& divisor) {
    if (divisor.arity() != 0 || divisor.is_zero())
        throw Error("divide_exact_partial needs a nonzero D-only divisor");
    // Group the dividend by lambda part; each group is univariate in D.
    std::map<std::vector<std::uint32_t>, Poly> groups;
    for (const auto& [m, c] : p.terms()) {
        auto [it, inserted] = groups.try_emplace(m.lam, Poly(0));
        it->second.add_term(Monomial{{}, m.d}, c);
    }
    Poly result(p.arity());
    for (const auto& [lampart, univ] : groups) {
        Poly q, r;
        poly_divmod(univ, divisor, q, r);
        if (!r.is_zero()) return std::nullopt;
        for (const auto& [m, c] : q.terms())
            result.add_term(Monomial{lampart, m.d}, c);
    }
    return result;
}

PolyMatrix mat_identity(std::size_t n) {
    PolyMatrix m(n, std::vector<Poly>(n, Poly(0)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = Poly::constant(Scalar(1), 0);
    return m;
}

PolyMatrix mat_mul(const PolyMatrix& a, const PolyMatrix& b) {
    const std::size_t r = a.size(), k = b.size(), c = k ? b[0].size() : 0;
    PolyMatrix out(r, std::vector<Poly>(c, Poly(0)));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            for (std::size_t t = 0; t < k; ++t)
                if (!a[i][t].is_zero() && !b[t][j].is_zero()) out[i][j] += a[i][t] * b[t][j];
    return out;
}

std::size_t SmithDecomposition::rank() const {
    std::size_t r = 0;
    for (const auto& d : diag)
        if (!d.is_zero()) ++r;
    return r;
}

namespace {

struct Worker {
    PolyMatrix work, left, right;
    std::size_t rows, cols;

    explicit Worker(const PolyMatrix& m)
        : work(m),
          left(mat_identity(m.size())),
          right(mat_identity(m.empty() ? 0 : m[0].size())),
          rows(m.size()),
          cols(m.empty() ? 0 : m[0].size()) {}

    void row_swap(std::size_t a, std::size_t b) {
        if (a == b) return;
        std::swap(work[a], work[b]);
        std::swap(left[a], left[b]);
    }
    void col_swap(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (auto& row : work) std::swap(row[a], row[b]);
        for (auto& row : right) std::swap(row[a], row[b]);
    }
    // row a -= q * row b
    void row_sub(std::size_t a, const Poly& q, std::size_t b) {
        for (std::size_t j = 0; j < cols; ++j) work[a][j] -= q * work[b][j];
        for (std::size_t j = 0; j < left[a].size(); ++j) left[a][j] -= q * left[b][j];
    }
    void row_add(std::size_t a, std::size_t b) {
        for (std::size_t j = 0; j < cols; ++j) work[a][j] += work[b][j];
        for (std::size_t j = 0; j < left[a].size(); ++j) left[a][j] += left[b][j];
    }
    // col a -= q * col b
    void col_sub(std::size_t a, const Poly& q, std::size_t b) {
        for (std::size_t i = 0; i < rows; ++i) work[i][a] -= q * work[i][b];
        for (std::size_t i = 0; i < right.size(); ++i) right[i][a] -= q * right[i][b];
    }
    void row_scale(std::size_t a, const Scalar& u) {
        for (auto& e : work[a]) e = u * e;
        for (auto& e : left[a]) e = u * e;
    }

    // Minimal-degree nonzero entry in the trailing submatrix, ties row-major.
    bool find_pivot(std::size_t t, std::size_t& pr, std::size_t& pc) const {
        int best = -1;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j) {
                if (work[i][j].is_zero()) continue;
                const int d = work[i][j].partial_degree();
                if (best < 0 || d < best) {
                    best = d;
                    pr = i;
                    pc = j;
                }
            }
        return best >= 0;
    }

    void run() {
        const std::size_t steps = std::min(rows, cols);
        for (std::size_t t = 0; t < steps; ++t) {
            for (;;) {
                std::size_t pr = t, pc = t;
                if (!find_pivot(t, pr, pc)) return;
                row_swap(t, pr);
                col_swap(t, pc);
                bool dirty = false;
                for (std::size_t i = t + 1; i < rows; ++i) {
                    if (work[i][t].is_zero()) continue;
                    Poly q, r;
                    poly_divmod(work[i][t], work[t][t], q, r);
                    row_sub(i, q, t);
                    if (!r.is_zero()) dirty = true;
                }
                for (std::size_t j = t + 1; j < cols; ++j) {
                    if (work[t][j].is_zero()) continue;
                    Poly q, r;
                    poly_divmod(work[t][j], work[t][t], q, r);
                    col_sub(j, q, t);
                    if (!r.is_zero()) dirty = true;
                }
                if (dirty) continue;  // smaller-degree entries appeared
                // Row and column t are clear; enforce divisibility of the rest.
                bool fixed = false;
                for (std::size_t i = t + 1; i < rows && !fixed; ++i)
                    for (std::size_t j = t + 1; j < cols && !fixed; ++j) {
                        if (work[i][j].is_zero()) continue;
                        Poly q, r;
                        poly_divmod(work[i][j], work[t][t], q, r);
                        if (!r.is_zero()) {
                            row_add(t, i);
                            fixed = true;
                        }
                    }
                if (fixed) continue;
                row_scale(t, Scalar(1) / work[t][t].leading_coefficient());
                break;
            }
        }
    }
};

std::vector<Poly> apply_matrix(const PolyMatrix& m, const std::vector<Poly>& v) {
    std::vector<Poly> out;
    out.reserve(m.size());
    for (const auto& row : m) {
        Poly acc(v.empty() ? 0 : v[0].arity());
        for (std::size_t j = 0; j < row.size(); ++j)
            if (!row[j].is_zero() && !v[j].is_zero()) acc += row[j].promote(acc.arity()) * v[j];
        out.push_back(std::move(acc));
    }
    return out;
}

}  // namespace

SmithDecomposition smith_normal_form(const PolyMatrix& m) {
    for (const auto& row : m)
        for (const auto& e : row)
            if (e.arity() != 0) throw ArityMismatch("Smith form expects D-only entries");
    Worker w(m);
    w.run();
    SmithDecomposition out;
    out.left = std::move(w.left);
    out.right = std::move(w.right);
    const std::size_t steps = std::min(w.rows, w.cols);
    out.diag.reserve(steps);
    for (std::size_t t = 0; t < steps; ++t) out.diag.push_back(w.work[t][t]);
    // Internal invariants: re-multiplication and unimodularity.
    const PolyMatrix check = mat_mul(mat_mul(out.left, m), out.right);
    for (std::size_t i = 0; i < w.rows; ++i)
        for (std::size_t j = 0; j < w.cols; ++j) {
            const Poly expect = (i == j && i < steps) ? out.diag[i] : Poly(0);
            if (!(check[i][j] == expect)) throw Error("Smith decomposition re-multiplication failed");
        }
    const Poly dl = matrix_determinant(out.left), dr = matrix_determinant(out.right);
    if (!dl.is_constant() || dl.is_zero() || !dr.is_constant() || dr.is_zero())
        throw Error("Smith transform matrices are not unimodular");
    return out;
}

KdSolveResult solve_over_kd(const PolyMatrix& m, const std::vector<Poly>& b) {
    const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    if (b.size() != rows) throw Error("solve_over_kd: size mismatch");
    const std::size_t arity = b.empty() ? 0 : b[0].arity();
    const SmithDecomposition s = smith_normal_form(m);
    const std::vector<Poly> c = apply_matrix(s.left, b);
    const std::size_t steps = std::min(rows, cols);

    KdSolveResult res;
    std::vector<Poly> y(cols, Poly(arity));
    for (std::size_t i = 0; i < rows; ++i) {
        const bool pivot = i < steps && !s.diag[i].is_zero();
        if (pivot) {
            auto q = divide_exact_partial(c[i], s.diag[i]);
            if (!q) return res;  // not solvable over k[D]
            y[i] = std::move(*q);
        } else if (!c[i].is_zero()) {
            return res;  // inconsistent row
        }
    }
    res.solvable = true;
    res.particular = apply_matrix(s.right, y);
    for (std::size_t j = 0; j < cols; ++j) {
        const bool free_col = j >= steps || s.diag[j].is_zero();
        if (!free_col) continue;
        std::vector<Poly> e(cols, Poly(0));
        e[j] = Poly::constant(Scalar(1), 0);
        res.kernel.push_back(apply_matrix(s.right, e));
    }
    return res;
}

bool in_column_span(const PolyMatrix& m, const std::vector<Poly>& b) {
    return solve_over_kd(m, b).solvable;
}

}  // namespace confalg
