#include "confalg/hochschild.hpp"

#include "confalg/error.hpp"
#include "confalg/smith.hpp"
#include "confalg/witness_audit.hpp"

#include <map>
#include <sstream>

namespace confalg {

namespace {

std::size_t pow_size(std::size_t base, std::size_t e) {
    std::size_t r = 1;
    while (e--) r *= base;
    return r;
}

}  // namespace

Cochain::Cochain(std::size_t degree, ConformalBimodule coefficients)
    : degree_(degree), coeffs_(std::move(coefficients)) {
    const std::size_t arity = degree_ >= 1 ? degree_ - 1 : 0;
    values_.assign(pow_size(coeffs_.algebra.rank(), degree_),
                   ModElement(coeffs_.carrier, arity));
}

Cochain Cochain::zero(std::size_t degree, ConformalBimodule coefficients) {
    return Cochain(degree, std::move(coefficients));
}

Cochain Cochain::degree0(ConformalBimodule coefficients, ModElement value) {
    Cochain f(0, std::move(coefficients));
    if (!same_module(value.module(), f.coeffs_.carrier) || value.arity() != 0)
        throw ModuleMismatch("degree-0 value must be an arity-0 element of the bimodule");
    f.values_[0] = std::move(value);
    return f;
}

Cochain Cochain::from_linear_map(ConformalBimodule coefficients, const CdLinearMap& f) {
    Cochain c(1, std::move(coefficients));
    if (!same_module(f.source(), c.algebra().carrier) ||
        !same_module(f.target(), c.coeffs_.carrier))
        throw ModuleMismatch("linear map must send the algebra into the bimodule");
    for (std::size_t i = 0; i < c.values_.size(); ++i) c.values_[i] = f.apply_basis(i, 0);
    return c;
}

Cochain Cochain::multiplication(const ConformalAlgebra& alg) {
    Cochain c(2, regular_bimodule(alg));
    const std::size_t n = alg.rank();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) c.values_[i * n + j] = alg.mult.entry[i][j];
    return c;
}

bool Cochain::is_zero() const {
    for (const auto& v : values_)
        if (!v.is_zero()) return false;
    return true;
}

bool Cochain::is_regular_valued() const {
    return same_module(coeffs_.carrier, coeffs_.algebra.carrier) &&
           coeffs_.left_action == coeffs_.algebra.mult &&
           coeffs_.right_action == coeffs_.algebra.mult;
}

std::size_t Cochain::flat_index(std::span<const std::size_t> tuple) const {
    if (tuple.size() != degree_) throw DegreeMismatch("tuple length differs from the degree");
    const std::size_t n = coeffs_.algebra.rank();
    std::size_t flat = 0;
    for (std::size_t j : tuple) {
        if (j >= n) throw Error("basis index out of range");
        flat = flat * n + j;
    }
    return flat;
}

std::vector<std::size_t> Cochain::unflatten(std::size_t flat) const {
    const std::size_t n = coeffs_.algebra.rank();
    std::vector<std::size_t> tuple(degree_, 0);
    for (std::size_t k = degree_; k-- > 0;) {
        tuple[k] = flat % n;
        flat /= n;
    }
    return tuple;
}

const ModElement& Cochain::value(std::span<const std::size_t> tuple) const {
    return values_[flat_index(tuple)];
}

void Cochain::set_value(std::span<const std::size_t> tuple, ModElement v) {
    set_value_flat(flat_index(tuple), std::move(v));
}

void Cochain::set_value_flat(std::size_t flat, ModElement v) {
    const std::size_t arity = degree_ >= 1 ? degree_ - 1 : 0;
    if (!same_module(v.module(), coeffs_.carrier) || v.arity() != arity)
        throw ModuleMismatch("cochain value has the wrong module or arity");
    values_[flat] = std::move(v);
}

CdLinearMap Cochain::to_linear_map() const {
    if (degree_ != 1) throw DegreeMismatch("only degree-1 cochains are module maps");
    const std::size_t rows = coeffs_.carrier->rank();
    std::vector<std::vector<Poly>> mat(rows, std::vector<Poly>(values_.size(), Poly(0)));
    for (std::size_t col = 0; col < values_.size(); ++col)
        for (std::size_t row = 0; row < rows; ++row) mat[row][col] = values_[col][row];
    return CdLinearMap(coeffs_.algebra.carrier, coeffs_.carrier, std::move(mat));
}

Cochain Cochain::operator-() const {
    Cochain r = *this;
    for (auto& v : r.values_) v = -v;
    return r;
}

namespace {

void require_compatible(const Cochain& a, const Cochain& b) {
    if (a.degree() != b.degree()) throw DegreeMismatch("cochain degrees differ");
    if (!same_module(a.coefficients().carrier, b.coefficients().carrier) ||
        !same_module(a.algebra().carrier, b.algebra().carrier))
        throw ModuleMismatch("cochains live over different data");
}

}  // namespace

Cochain& Cochain::operator+=(const Cochain& o) {
    require_compatible(*this, o);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
    return *this;
}

Cochain& Cochain::operator-=(const Cochain& o) {
    require_compatible(*this, o);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
    return *this;
}

Cochain operator*(const Scalar& c, Cochain f) {
    for (std::size_t i = 0; i < f.values_.size(); ++i) f.values_[i] = c * f.values_[i];
    return f;
}

bool Cochain::operator==(const Cochain& o) const {
    if (degree_ != o.degree_) return false;
    if (!same_module(coeffs_.carrier, o.coeffs_.carrier) ||
        !same_module(coeffs_.algebra.carrier, o.coeffs_.algebra.carrier))
        return false;
    if (degree_ == 0) return equal_mod_partial(values_[0], o.values_[0]);
    return values_ == o.values_;
}

int Cochain::max_partial_degree() const {
    int d = -1;
    for (const auto& v : values_) d = std::max(d, confalg::max_partial_degree(v));
    return d;
}

int Cochain::max_lambda_degree() const {
    int d = -1;
    for (const auto& v : values_)
        for (std::size_t i = 0; i < v.rank(); ++i) d = std::max(d, v[i].lambda_degree());
    return d;
}

ModElement eval_cochain(const Cochain& f, std::span<const ModElement> args,
                        std::span<const Poly> nus) {
    const std::size_t n = f.degree();
    if (n == 0 || args.size() != n)
        throw DegreeMismatch("evaluation needs exactly degree-many arguments");
    if (nus.size() + 1 != n) throw DegreeMismatch("evaluation needs degree-1 slot values");
    const std::size_t N = args.empty() ? 0 : args[0].arity();
    for (const auto& a : args) {
        if (!same_module(a.module(), f.algebra().carrier))
            throw ModuleMismatch("cochain arguments must lie in the algebra");
        if (a.arity() != N) throw ArityMismatch("cochain arguments must share one arity");
    }
    Poly total = Poly::zero(N);
    for (const auto& nu : nus) {
        if (nu.arity() != N) throw ArityMismatch("slot values must share the argument arity");
        total += nu;
    }
    const Poly last_image = total + Poly::partial(N);
    const std::size_t rank = f.algebra().rank();

    // Transformed coefficients per slot and basis index.
    std::vector<std::vector<Poly>> coef(n, std::vector<Poly>(rank, Poly(N)));
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t j = 0; j < rank; ++j) {
            const Poly& raw = args[s][j];
            if (raw.is_zero()) continue;
            coef[s][j] = (s + 1 < n) ? raw.subst_partial(-nus[s]) : raw.subst_partial(last_image);
        }

    std::vector<std::optional<Poly>> images(nus.begin(), nus.end());
    ModElement out(f.coefficients().carrier, N);
    std::vector<std::size_t> tuple(n, 0);
    for (;;) {
        Poly c = Poly::constant(Scalar(1), N);
        bool zero = false;
        for (std::size_t s = 0; s < n && !zero; ++s) {
            if (coef[s][tuple[s]].is_zero())
                zero = true;
            else
                c *= coef[s][tuple[s]];
        }
        if (!zero) {
            const ModElement& val = f.value(tuple);
            if (!val.is_zero())
                out += c * val.map_coeffs(
                              [&](const Poly& p) { return p.substitute(N, std::nullopt, images); });
        }
        std::size_t k = n;
        while (k-- > 0) {
            if (++tuple[k] < rank) break;
            tuple[k] = 0;
            if (k == 0) return out;
        }
    }
}

ModElement eval_cochain(const Cochain& f, std::span<const ModElement> args) {
    const std::size_t n = f.degree();
    std::vector<Poly> nus;
    for (std::size_t i = 1; i < n; ++i) nus.push_back(Poly::lambda(i, n - 1));
    return eval_cochain(f, args, nus);
}

Cochain differential(const Cochain& f) {
    const ConformalBimodule& M = f.coefficients();
    const ConformalAlgebra& A = M.algebra;
    const std::size_t n = f.degree();
    Cochain out(n + 1, M);

    if (n == 0) {
        const ModElement& v = f.value_flat(0);
        const Poly minus_d = -Poly::partial(0);
        const Poly zero0 = Poly::zero(0);
        for (std::size_t i = 0; i < A.rank(); ++i) {
            const ModElement a = ModElement::basis(A.carrier, i, 0);
            out.set_value_flat(i, left_act(M, a, v, minus_d) - right_act(M, v, a, zero0));
        }
        return out;
    }

    const std::size_t arity = n;  // output value arity
    std::vector<Poly> lam;
    for (std::size_t i = 1; i <= n; ++i) lam.push_back(Poly::lambda(i, arity));
    Poly lam_total = Poly::zero(arity);
    for (const auto& l : lam) lam_total += l;

    std::vector<std::size_t> shift_up(n - 1);  // L<i> -> L<i+1>
    for (std::size_t i = 0; i + 1 < n; ++i) shift_up[i] = i + 2;

    const std::size_t rank = A.rank();
    std::vector<std::size_t> t(n + 1, 0);
    for (;;) {
        ModElement acc(M.carrier, arity);

        // a_1 acting on f(a_2..a_{n+1}); f's variables shift to L2..Ln.
        {
            const ModElement& tail =
                f.value(std::span<const std::size_t>(t).subspan(1));
            const ModElement shifted =
                tail.map_coeffs([&](const Poly& p) { return p.rename_lambdas(shift_up, arity); });
            acc += left_act(M, ModElement::basis(A.carrier, t[0], arity), shifted, lam[0]);
        }

        // Merged products; the i = n merge sits in f's last slot.
        for (std::size_t i = 1; i <= n; ++i) {
            const ModElement inner =
                A.mult.entry[t[i - 1]][t[i]].map_coeffs(
                    [&](const Poly& p) { return p.at_lambda1(lam[i - 1]); });
            std::vector<ModElement> args;
            std::vector<Poly> nus;
            for (std::size_t s = 0; s + 1 <= i - 1; ++s)
                args.push_back(ModElement::basis(A.carrier, t[s], arity));
            args.push_back(inner);
            for (std::size_t s = i + 1; s <= n; ++s)
                args.push_back(ModElement::basis(A.carrier, t[s], arity));
            if (i < n) {
                for (std::size_t j = 1; j <= i - 1; ++j) nus.push_back(lam[j - 1]);
                nus.push_back(lam[i - 1] + lam[i]);
                for (std::size_t j = i + 1; j + 1 <= n; ++j) nus.push_back(lam[j]);
            } else {
                for (std::size_t j = 1; j + 1 <= n; ++j) nus.push_back(lam[j - 1]);
            }
            const ModElement term = eval_cochain(f, args, nus);
            acc += (i % 2 == 0) ? term : -term;
        }

        // f(a_1..a_n) acted on from the right at L1+...+Ln.
        {
            const ModElement& head =
                f.value(std::span<const std::size_t>(t).first(n));
            const ModElement promoted =
                head.map_coeffs([&](const Poly& p) { return p.promote(arity); });
            const ModElement term =
                right_act(M, promoted, ModElement::basis(A.carrier, t[n], arity), lam_total);
            acc += (n % 2 == 0) ? -term : term;  // sign (-1)^{n+1}
        }

        out.set_value(t, std::move(acc));
        std::size_t k = n + 1;
        while (k-- > 0) {
            if (++t[k] < rank) break;
            t[k] = 0;
            if (k == 0) return out;
        }
    }
}

CocycleReport is_cocycle(const Cochain& f) {
    const Cochain df = differential(f);
    CocycleReport rep;
    for (std::size_t i = 0; i < df.tuple_count(); ++i)
        if (!df.value_flat(i).is_zero()) {
            rep.is_cocycle = false;
            rep.witness_tuple = df.unflatten(i);
            rep.witness_value = df.value_flat(i);
            return rep;
        }
    return rep;
}

bool equal_mod_partial(const ModElement& v, const ModElement& w) {
    if (!same_module(v.module(), w.module()) || v.arity() != w.arity())
        return false;
    const ModElement diff = v - w;
    for (std::size_t i = 0; i < diff.rank(); ++i)
        if (!divide_exact_partial(diff[i], Poly::partial(0)).has_value()) return false;
    return true;
}

Cochain circ_i(const Cochain& f, const Cochain& g, std::size_t i) {
    if (!f.is_regular_valued() || !g.is_regular_valued())
        throw ModuleMismatch("insertion products need self-valued cochains");
    if (!same_module(f.algebra().carrier, g.algebra().carrier))
        throw ModuleMismatch("insertion products need a common algebra");
    const std::size_t m = f.degree(), n = g.degree();
    if (m < 1 || n < 1) throw DegreeMismatch("insertion needs degrees >= 1");
    if (i >= m) throw SlotOutOfRange("insertion slot exceeds the outer degree");
    const std::size_t out_deg = m + n - 1;
    const std::size_t N = out_deg - 1;
    Cochain out(out_deg, f.coefficients());

    std::vector<std::size_t> g_shift(n - 1);  // g's L<k> -> L<i+k>
    for (std::size_t k = 0; k + 1 < n; ++k) g_shift[k] = i + k + 1;

    const std::size_t rank = f.algebra().rank();
    std::vector<std::size_t> t(out_deg, 0);
    for (;;) {
        const ModElement& gval = g.value(std::span<const std::size_t>(t).subspan(i, n));
        const ModElement gelem =
            gval.map_coeffs([&](const Poly& p) { return p.rename_lambdas(g_shift, N); });

        std::vector<ModElement> args;
        for (std::size_t s = 0; s < i; ++s)
            args.push_back(ModElement::basis(f.algebra().carrier, t[s], N));
        args.push_back(gelem);
        for (std::size_t s = i + n; s < out_deg; ++s)
            args.push_back(ModElement::basis(f.algebra().carrier, t[s], N));

        std::vector<Poly> nus;
        if (i + 1 < m) {
            for (std::size_t j = 1; j <= i; ++j) nus.push_back(Poly::lambda(j, N));
            Poly merged = Poly::zero(N);
            for (std::size_t j = i + 1; j <= i + n; ++j) merged += Poly::lambda(j, N);
            nus.push_back(merged);
            for (std::size_t j = i + 2; j <= m - 1; ++j)
                nus.push_back(Poly::lambda(j + n - 1, N));
        } else {
            for (std::size_t j = 1; j + 1 <= m; ++j) nus.push_back(Poly::lambda(j, N));
        }
        out.set_value(t, eval_cochain(f, args, nus));

        std::size_t k = out_deg;
        while (k-- > 0) {
            if (++t[k] < rank) break;
            t[k] = 0;
            if (k == 0) return out;
        }
    }
}

Cochain circ(const Cochain& f, const Cochain& g) {
    const std::size_t m = f.degree(), n = g.degree();
    Cochain acc = circ_i(f, g, 0);
    for (std::size_t i = 1; i < m; ++i) {
        const Cochain term = circ_i(f, g, i);
        acc += ((n - 1) * i) % 2 == 0 ? term : -term;
    }
    return acc;
}

Cochain gbracket(const Cochain& f, const Cochain& g) {
    const std::size_t m = f.degree(), n = g.degree();
    const Cochain fg = circ(f, g);
    const Cochain gf = circ(g, f);
    return ((m - 1) * (n - 1)) % 2 == 0 ? fg - gf : fg + gf;
}

Cochain dbar(const Cochain& f) {
    const Cochain df = differential(f);
    return f.degree() % 2 == 1 ? df : Scalar(-1) * df;
}

std::string DglaReport::summary() const {
    if (jacobi_ok && leibniz_fg_ok) return "ok";
    std::string s;
    if (!jacobi_ok) s += "graded Jacobi fails";
    if (!leibniz_fg_ok) s += std::string(s.empty() ? "" : "; ") + "graded Leibniz fails";
    return s;
}

DglaReport dgla_axiom_check(const Cochain& f, const Cochain& g, const Cochain& h) {
    DglaReport rep;
    const auto sign = [](std::size_t par) { return par % 2 == 0 ? Scalar(1) : Scalar(-1); };
    const std::size_t df = f.degree() - 1, dg = g.degree() - 1, dh = h.degree() - 1;
    Cochain jac = sign(df * dh) * gbracket(f, gbracket(g, h));
    jac += sign(dg * df) * gbracket(g, gbracket(h, f));
    jac += sign(dh * dg) * gbracket(h, gbracket(f, g));
    rep.jacobi_ok = jac.is_zero();

    Cochain leib = dbar(gbracket(f, g)) - gbracket(dbar(f), g);
    leib -= sign(df) * gbracket(f, dbar(g));
    rep.leibniz_fg_ok = leib.is_zero();
    return rep;
}

std::vector<Cochain> truncated_basis(const ConformalBimodule& coeffs, std::size_t degree,
                                     const Bounds& b) {
    std::vector<Cochain> out;
    const std::size_t mrank = coeffs.carrier->rank();
    if (degree == 0) {
        for (std::size_t m = 0; m < mrank; ++m)
            out.push_back(Cochain::degree0(coeffs, ModElement::basis(coeffs.carrier, m, 0)));
        return out;
    }
    const std::size_t arity = degree - 1;
    // Enumerate monomials within the box, lambda-exponents then D.
    std::vector<Monomial> monos;
    std::vector<std::uint32_t> lam(arity, 0);
    for (;;) {
        int total = 0;
        for (auto e : lam) total += static_cast<int>(e);
        if (total <= b.ldeg)
            for (int d = 0; d <= b.ddeg; ++d)
                monos.push_back(Monomial{lam, static_cast<std::uint32_t>(d)});
        std::size_t k = arity;
        bool done = arity == 0;
        while (k-- > 0) {
            if (static_cast<int>(++lam[k]) <= b.ldeg) break;
            lam[k] = 0;
            if (k == 0) done = true;
        }
        if (done) break;
    }
    const std::size_t tuples = pow_size(coeffs.algebra.rank(), degree);
    for (std::size_t t = 0; t < tuples; ++t)
        for (std::size_t m = 0; m < mrank; ++m)
            for (const auto& mono : monos) {
                Cochain c(degree, coeffs);
                Poly p(arity);
                p.add_term(mono, Scalar(1));
                ModElement v(coeffs.carrier, arity);
                v[m] = p;
                c.set_value_flat(t, std::move(v));
                out.push_back(std::move(c));
            }
    return out;
}

namespace {

// Canonical flattening of cochain values to exact rational coordinates.
struct Flattener {
    using Key = std::tuple<std::size_t, std::size_t, Monomial>;
    struct KeyLess {
        bool operator()(const Key& a, const Key& b) const {
            if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
            if (std::get<1>(a) != std::get<1>(b)) return std::get<1>(a) < std::get<1>(b);
            return MonomialDescending{}(std::get<2>(a), std::get<2>(b));
        }
    };
    std::map<Key, std::size_t, KeyLess> index;

    void absorb(const Cochain& c) {
        for (std::size_t t = 0; t < c.tuple_count(); ++t) {
            const ModElement& v = c.value_flat(t);
            for (std::size_t m = 0; m < v.rank(); ++m)
                for (const auto& [mono, coeff] : v[m].terms())
                    index.try_emplace(Key{t, m, mono}, index.size());
        }
    }
    std::vector<Scalar> vectorize(const Cochain& c) const {
        std::vector<Scalar> out(index.size(), Scalar(0));
        for (std::size_t t = 0; t < c.tuple_count(); ++t) {
            const ModElement& v = c.value_flat(t);
            for (std::size_t m = 0; m < v.rank(); ++m)
                for (const auto& [mono, coeff] : v[m].terms())
                    out[index.at(Key{t, m, mono})] = coeff;
        }
        return out;
    }
};

}  // namespace

std::optional<Cochain> solve_coboundary(const Cochain& f, const Bounds& b) {
    if (f.degree() < 1) throw DegreeMismatch("coboundary solving needs degree >= 1");
    if (!is_cocycle(f).is_cocycle)
        throw InvalidInput("coboundary solving requires a cocycle input");
    const std::vector<Cochain> basis = truncated_basis(f.coefficients(), f.degree() - 1, b);
    std::vector<Cochain> images;
    images.reserve(basis.size());
    for (const auto& psi : basis) images.push_back(differential(psi));

    Flattener flat;
    for (const auto& img : images) flat.absorb(img);
    flat.absorb(f);
    QMatrix A(flat.index.size(), images.size());
    for (std::size_t c = 0; c < images.size(); ++c) {
        const auto col = flat.vectorize(images[c]);
        for (std::size_t r = 0; r < col.size(); ++r) A.at(r, c) = col[r];
    }
    const auto rhs = flat.vectorize(f);
    const QSolveResult sol = qsolve(A, rhs);
    if (!sol.solvable) return std::nullopt;
    Cochain psi(f.degree() - 1, f.coefficients());
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (sol.x[i] != 0) psi += sol.x[i] * basis[i];
    // Contract: only return witnesses that verify exactly.
    Cochain check = differential(psi) - f;
    if (!check.is_zero()) throw Error("internal: coboundary witness failed re-verification");
    witness_audit::record_verified();
    witness_audit::record_emitted();
    return psi;
}

TruncatedCohomology truncated_cohomology_dim(const ConformalBimodule& coeffs,
                                             std::size_t degree, const Bounds& b) {
    TruncatedCohomology out;
    const std::vector<Cochain> zbasis = truncated_basis(coeffs, degree, b);
    std::vector<Cochain> zimages;
    zimages.reserve(zbasis.size());
    for (const auto& c : zbasis) zimages.push_back(differential(c));

    Flattener dflat;
    for (const auto& img : zimages) dflat.absorb(img);
    QMatrix D(dflat.index.size(), zimages.size());
    for (std::size_t c = 0; c < zimages.size(); ++c) {
        const auto col = dflat.vectorize(zimages[c]);
        for (std::size_t r = 0; r < col.size(); ++r) D.at(r, c) = col[r];
    }
    const QSolveResult ker = qsolve(D, std::vector<Scalar>(D.rows, Scalar(0)), true);
    out.cocycle_dim = ker.kernel.size();

    // Coboundaries from one degree down (degree 0 has no predecessors).
    std::vector<Cochain> bimages;
    if (degree >= 1)
        for (const auto& c : truncated_basis(coeffs, degree - 1, b))
            bimages.push_back(differential(c));

    // Express kernel combinations and coboundary images in one value space.
    Flattener vflat;
    for (const auto& c : zbasis) vflat.absorb(c);
    for (const auto& img : bimages) vflat.absorb(img);
    std::vector<std::vector<Scalar>> zcols;
    for (const auto& kvec : ker.kernel) {
        Cochain combo(degree, coeffs);
        for (std::size_t i = 0; i < zbasis.size(); ++i)
            if (kvec[i] != 0) combo += kvec[i] * zbasis[i];
        zcols.push_back(vflat.vectorize(combo));
    }
    std::vector<std::vector<Scalar>> bcols;
    for (const auto& img : bimages) bcols.push_back(vflat.vectorize(img));

    const std::size_t rows = vflat.index.size();
    QMatrix B(rows, bcols.size());
    for (std::size_t c = 0; c < bcols.size(); ++c)
        for (std::size_t r = 0; r < rows; ++r) B.at(r, c) = bcols[c][r];
    out.coboundary_dim = qrank(B);

    QMatrix ZB(rows, zcols.size() + bcols.size());
    for (std::size_t c = 0; c < zcols.size(); ++c)
        for (std::size_t r = 0; r < rows; ++r) ZB.at(r, c) = zcols[c][r];
    for (std::size_t c = 0; c < bcols.size(); ++c)
        for (std::size_t r = 0; r < rows; ++r) ZB.at(r, zcols.size() + c) = bcols[c][r];
    const std::size_t zb_rank = qrank(ZB);
    const std::size_t intersection = out.cocycle_dim + out.coboundary_dim - zb_rank;
    out.quotient_dim = out.cocycle_dim - intersection;
    return out;
}

}  // namespace confalg
