#include "confalg/nonabelian.hpp"

#include "confalg/groebner.hpp"
#include "confalg/qsolve.hpp"
#include "confalg/witness_audit.hpp"

namespace confalg {

namespace {

void require_table_shape(const StructureTable& t, const ModulePtr& left, const ModulePtr& right,
                         const ModulePtr& out, const char* what) {
    if (!same_module(t.left, left) || !same_module(t.right, right) || !same_module(t.out, out))
        throw ModuleMismatch(std::string(what) + ": table is over the wrong modules");
    if (t.entry.size() != left->rank())
        throw InvalidInput(std::string(what) + ": table has the wrong row count");
    for (const auto& row : t.entry) {
        if (row.size() != right->rank())
            throw InvalidInput(std::string(what) + ": table has the wrong column count");
        for (const ModElement& e : row)
            if (e.arity() != 1)
                throw ArityMismatch(std::string(what) + ": table entries must have arity 1");
    }
}

void relabel_failures(CheckReport& into, const CheckReport& from, const std::string& label) {
    for (IdentityFailure f : from.failures) {
        f.identity = label;
        into.failures.push_back(std::move(f));
    }
}

}  // namespace

bool CocycleTriple::operator==(const CocycleTriple& o) const {
    return A == o.A && B == o.B && left == o.left && right == o.right && chi == o.chi;
}

CocycleTriple make_cocycle(ConformalAlgebra A, ConformalAlgebra B, StructureTable left,
                           StructureTable right, StructureTable chi) {
    require_table_shape(left, B.carrier, A.carrier, A.carrier, "left table");
    require_table_shape(right, A.carrier, B.carrier, A.carrier, "right table");
    require_table_shape(chi, B.carrier, B.carrier, A.carrier, "chi table");
    return CocycleTriple{std::move(A), std::move(B), std::move(left), std::move(right),
                         std::move(chi)};
}

CocycleTriple zero_cocycle(ConformalAlgebra A, ConformalAlgebra B) {
    StructureTable left = StructureTable::zero(B.carrier, A.carrier, A.carrier);
    StructureTable right = StructureTable::zero(A.carrier, B.carrier, A.carrier);
    StructureTable chi = StructureTable::zero(B.carrier, B.carrier, A.carrier);
    return make_cocycle(std::move(A), std::move(B), std::move(left), std::move(right),
                        std::move(chi));
}

CheckReport check_cocycle(const CocycleTriple& c) {
    CheckReport rep;
    relabel_failures(rep, check_associativity(c.A), "value algebra associativity");
    relabel_failures(rep, check_associativity(c.B), "base algebra associativity");

    const std::size_t na = c.A.rank(), nb = c.B.rank();
    const Poly l1 = Poly::lambda(1, 2), l2 = Poly::lambda(2, 2);
    const Poly l12 = l1 + l2;
    auto a = [&](std::size_t i) { return ModElement::basis(c.A.carrier, i, 2); };
    auto b = [&](std::size_t i) { return ModElement::basis(c.B.carrier, i, 2); };
    auto pa = [&](const ModElement& x, const ModElement& y, const Poly& nu) {
        return eval_table(c.A.mult, x, y, nu);
    };
    auto pb = [&](const ModElement& x, const ModElement& y, const Poly& nu) {
        return eval_table(c.B.mult, x, y, nu);
    };
    auto lact = [&](const ModElement& x, const ModElement& y, const Poly& nu) {
        return eval_table(c.left, x, y, nu);
    };
    auto ract = [&](const ModElement& x, const ModElement& y, const Poly& nu) {
        return eval_table(c.right, x, y, nu);
    };
    auto record = [&](const char* name, std::size_t i, std::size_t j, std::size_t k,
                      const ModElement& diff) {
        if (!diff.is_zero()) rep.failures.push_back({name, {i, j, k}, diff});
    };

    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < nb; ++j)
            for (std::size_t k = 0; k < na; ++k)
                record("coh1", i, j, k,
                       lact(b(i), lact(b(j), a(k), l2), l1) -
                           lact(pb(b(i), b(j), l1), a(k), l12) -
                           pa(eval_table(c.chi, b(i), b(j), l1), a(k), l12));

    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j)
            for (std::size_t k = 0; k < nb; ++k)
                record("coh2", i, j, k,
                       ract(ract(a(i), b(j), l1), b(k), l12) -
                           ract(a(i), pb(b(j), b(k), l2), l1) -
                           pa(a(i), eval_table(c.chi, b(j), b(k), l2), l1));

    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < na; ++j)
            for (std::size_t k = 0; k < nb; ++k)
                record("coh3", i, j, k,
                       lact(b(i), ract(a(j), b(k), l2), l1) -
                           ract(lact(b(i), a(j), l1), b(k), l12));

    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j)
            for (std::size_t k = 0; k < nb; ++k)
                record("coh4", i, j, k,
                       ract(pa(a(i), a(j), l1), b(k), l12) - pa(a(i), ract(a(j), b(k), l2), l1));

    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < na; ++j)
            for (std::size_t k = 0; k < na; ++k)
                record("coh4'", i, j, k,
                       lact(b(i), pa(a(j), a(k), l2), l1) - pa(lact(b(i), a(j), l1), a(k), l12));

    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j)
            for (std::size_t k = 0; k < na; ++k)
                record("coh4''", i, j, k,
                       pa(ract(a(i), b(j), l1), a(k), l12) - pa(a(i), lact(b(j), a(k), l2), l1));

    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < nb; ++j)
            for (std::size_t k = 0; k < nb; ++k)
                record("coh5", i, j, k,
                       lact(b(i), eval_table(c.chi, b(j), b(k), l2), l1) +
                           eval_table(c.chi, b(i), pb(b(j), b(k), l2), l1) -
                           eval_table(c.chi, pb(b(i), b(j), l1), b(k), l12) -
                           ract(eval_table(c.chi, b(i), b(j), l1), b(k), l12));

    rep.ok = rep.failures.empty();
    return rep;
}

namespace {

// Embed an element of a block into the A|B sum carrier.
ModElement embed(const ModElement& v, const ModulePtr& sum, std::size_t offset) {
    ModElement out(sum, v.arity());
    for (std::size_t i = 0; i < v.rank(); ++i) out[i + offset] = v[i];
    return out;
}

CdLinearMap block_injection(const ModulePtr& src, const ModulePtr& sum, std::size_t offset) {
    std::vector<std::vector<Poly>> m(sum->rank(), std::vector<Poly>(src->rank(), Poly(0)));
    for (std::size_t c = 0; c < src->rank(); ++c)
        m[c + offset][c] = Poly::constant(1, 0);
    return CdLinearMap(src, sum, std::move(m));
}

CdLinearMap block_projection(const ModulePtr& sum, const ModulePtr& dst, std::size_t offset) {
    std::vector<std::vector<Poly>> m(dst->rank(), std::vector<Poly>(sum->rank(), Poly(0)));
    for (std::size_t r = 0; r < dst->rank(); ++r)
        m[r][r + offset] = Poly::constant(1, 0);
    return CdLinearMap(sum, dst, std::move(m));
}

}  // namespace

Extension build_extension(const CocycleTriple& c) {
    const CheckReport rep = check_cocycle(c);
    if (!rep.ok) throw InvalidCocycle("cocycle equations fail: " + rep.summary());

    const std::size_t na = c.A.rank(), nb = c.B.rank();
    const ModulePtr sum = labeled_sum_module(c.A.carrier, c.B.carrier, "a", "b");
    StructureTable mult = StructureTable::zero(sum, sum, sum);
    for (std::size_t i = 0; i < na + nb; ++i)
        for (std::size_t j = 0; j < na + nb; ++j) {
            ModElement e(sum, 1);
            if (i < na && j < na)
                e = embed(c.A.mult.entry[i][j], sum, 0);
            else if (i < na)
                e = embed(c.right.entry[i][j - na], sum, 0);
            else if (j < na)
                e = embed(c.left.entry[i - na][j], sum, 0);
            else
                e = embed(c.chi.entry[i - na][j - na], sum, 0) +
                    embed(c.B.mult.entry[i - na][j - na], sum, na);
            mult.entry[i][j] = std::move(e);
        }

    Extension out{make_algebra(sum, std::move(mult)), c.A, c.B,
                  block_injection(c.A.carrier, sum, 0), block_projection(sum, c.B.carrier, na),
                  block_injection(c.B.carrier, sum, na)};
    return out;
}

Extension make_extension(const ConformalAlgebra& A, const ConformalAlgebra& B,
                         const StructureTable& mult) {
    const std::size_t na = A.rank(), nb = B.rank();
    if (mult.left->rank() != na + nb || !same_module(mult.left, mult.right) ||
        !same_module(mult.left, mult.out))
        throw InvalidInput("extension table must be square over the A|B sum carrier");

    const ModulePtr sum = labeled_sum_module(A.carrier, B.carrier, "a", "b");
    StructureTable table = StructureTable::zero(sum, sum, sum);
    for (std::size_t i = 0; i < na + nb; ++i)
        for (std::size_t j = 0; j < na + nb; ++j) {
            const ModElement& src = mult.entry[i][j];
            if (src.arity() != 1) throw ArityMismatch("extension table entries must have arity 1");
            ModElement e(sum, 1);
            for (std::size_t m = 0; m < na + nb; ++m) e[m] = src[m];
            table.entry[i][j] = std::move(e);
        }

    // A-block must be a subalgebra realizing A's product.
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j) {
            const ModElement& e = table.entry[i][j];
            for (std::size_t m = 0; m < na; ++m)
                if (e[m] != A.mult.entry[i][j][m])
                    throw InvalidInput("A-block product disagrees with the value algebra");
            for (std::size_t m = na; m < na + nb; ++m)
                if (!e[m].is_zero())
                    throw InvalidInput("A-block product leaks into the B-block");
        }
    // B-projection must be the homomorphism onto B's product.
    for (std::size_t i = 0; i < na + nb; ++i)
        for (std::size_t j = 0; j < na + nb; ++j) {
            const ModElement& e = table.entry[i][j];
            const bool bpair = i >= na && j >= na;
            for (std::size_t m = na; m < na + nb; ++m) {
                if (bpair) {
                    if (e[m] != B.mult.entry[i - na][j - na][m - na])
                        throw InvalidInput("B-projection of the product disagrees with the base");
                } else if (!e[m].is_zero()) {
                    throw InvalidInput("B-projection of the product disagrees with the base");
                }
            }
        }

    ConformalAlgebra E = make_algebra(sum, std::move(table));
    const CheckReport assoc = check_associativity(E);
    if (!assoc.ok) throw InvalidInput("extension product is not associative: " + assoc.summary());

    return Extension{std::move(E), A, B, block_injection(A.carrier, sum, 0),
                     block_projection(sum, B.carrier, na), block_injection(B.carrier, sum, na)};
}

CdLinearMap canonical_section(const Extension& e) {
    return block_injection(e.B.carrier, e.E.carrier, e.A.rank());
}

Extension with_section(Extension e, CdLinearMap gamma) {
    if (!same_module(gamma.source(), e.B.carrier) || !same_module(gamma.target(), e.E.carrier))
        throw ModuleMismatch("section must map the base into the extension");
    if (!(e.beta.compose(gamma) == CdLinearMap::identity(e.B.carrier)))
        throw InvalidInput("section is not split by the projection");
    e.gamma = std::move(gamma);
    return e;
}

CocycleTriple cocycle_of_extension(const Extension& e) {
    return cocycle_of_extension(e, e.gamma);
}

CocycleTriple cocycle_of_extension(const Extension& e, const CdLinearMap& gamma) {
    if (!same_module(gamma.source(), e.B.carrier) || !same_module(gamma.target(), e.E.carrier))
        throw ModuleMismatch("section must map the base into the extension");
    if (!(e.beta.compose(gamma) == CdLinearMap::identity(e.B.carrier)))
        throw InvalidInput("section is not split by the projection");

    const std::size_t na = e.A.rank(), nb = e.B.rank();
    const Poly l1 = Poly::lambda(1, 1);
    auto apart = [&](const ModElement& v) {
        ModElement out(e.A.carrier, v.arity());
        for (std::size_t m = 0; m < na; ++m) out[m] = v[m];
        for (std::size_t m = na; m < na + nb; ++m)
            if (!v[m].is_zero())
                throw Error("internal: extension product left the kernel of the projection");
        return out;
    };

    StructureTable left = StructureTable::zero(e.B.carrier, e.A.carrier, e.A.carrier);
    StructureTable right = StructureTable::zero(e.A.carrier, e.B.carrier, e.A.carrier);
    StructureTable chi = StructureTable::zero(e.B.carrier, e.B.carrier, e.A.carrier);
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < na; ++j)
            left.entry[i][j] = apart(
                eval_table(e.E.mult, gamma.apply_basis(i, 1), e.alpha.apply_basis(j, 1), l1));
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j)
            right.entry[i][j] = apart(
                eval_table(e.E.mult, e.alpha.apply_basis(i, 1), gamma.apply_basis(j, 1), l1));
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < nb; ++j) {
            const ModElement prod = eval_table(
                e.E.mult, gamma.apply_basis(i, 1), gamma.apply_basis(j, 1), l1);
            const ModElement through = gamma.apply(eval_table(
                e.B.mult, ModElement::basis(e.B.carrier, i, 1), ModElement::basis(e.B.carrier, j, 1),
                l1));
            chi.entry[i][j] = apart(prod - through);
        }
    return make_cocycle(e.A, e.B, std::move(left), std::move(right), std::move(chi));
}

namespace {

struct LabeledDiff {
    const char* identity;
    std::vector<std::size_t> indices;
    ModElement diff;
};

std::vector<LabeledDiff> equivalence_diffs(const CocycleTriple& from, const CocycleTriple& to,
                                           const CdLinearMap& delta) {
    const std::size_t na = from.A.rank(), nb = from.B.rank();
    const Poly l1 = Poly::lambda(1, 1);
    auto a = [&](std::size_t i) { return ModElement::basis(from.A.carrier, i, 1); };
    auto b = [&](std::size_t i) { return ModElement::basis(from.B.carrier, i, 1); };
    auto d = [&](std::size_t i) { return delta.apply_basis(i, 1); };

    std::vector<LabeledDiff> out;
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < na; ++j)
            out.push_back({"coh6",
                           {i, j},
                           to.left.entry[i][j] - from.left.entry[i][j] -
                               eval_table(from.A.mult, d(i), a(j), l1)});
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j)
            out.push_back({"coh7",
                           {i, j},
                           to.right.entry[i][j] - from.right.entry[i][j] -
                               eval_table(from.A.mult, a(i), d(j), l1)});
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < nb; ++j) {
            const ModElement rhs = eval_table(to.left, b(i), d(j), l1) -
                                   delta.apply(eval_table(from.B.mult, b(i), b(j), l1)) +
                                   eval_table(to.right, d(i), b(j), l1) -
                                   eval_table(from.A.mult, d(i), d(j), l1);
            out.push_back({"coh8", {i, j}, to.chi.entry[i][j] - from.chi.entry[i][j] - rhs});
        }
    return out;
}

void require_same_pair(const CocycleTriple& from, const CocycleTriple& to) {
    if (!(from.A == to.A) || !(from.B == to.B))
        throw ModuleMismatch("cocycles live over different algebra pairs");
}

}  // namespace

CheckReport check_equivalence_witness(const CocycleTriple& from, const CocycleTriple& to,
                                      const CdLinearMap& delta) {
    require_same_pair(from, to);
    if (!same_module(delta.source(), from.B.carrier) ||
        !same_module(delta.target(), from.A.carrier))
        throw ModuleMismatch("witness must map the base into the values");
    CheckReport rep;
    for (auto& [name, idx, diff] : equivalence_diffs(from, to, delta))
        if (!diff.is_zero()) rep.failures.push_back({name, idx, diff});
    rep.ok = rep.failures.empty();
    return rep;
}

int table_partial_degree(const StructureTable& t) {
    int d = -1;
    for (const auto& row : t.entry)
        for (const ModElement& e : row) d = std::max(d, max_partial_degree(e));
    return d;
}

namespace {

CdLinearMap delta_from_assignment(const CocycleTriple& from, int bound,
                                  const std::vector<Scalar>& x) {
    const std::size_t na = from.A.rank(), nb = from.B.rank();
    const std::size_t per = static_cast<std::size_t>(bound) + 1;
    std::vector<std::vector<Poly>> mat(na, std::vector<Poly>(nb, Poly(0)));
    for (std::size_t r = 0; r < na; ++r)
        for (std::size_t c = 0; c < nb; ++c) {
            Poly p(0);
            for (std::size_t k = 0; k < per; ++k) {
                const Scalar& coeff = x[(r * nb + c) * per + k];
                if (coeff == 0) continue;
                Poly term = Poly::constant(coeff, 0);
                for (std::size_t t = 0; t < k; ++t) term = term * Poly::partial(0);
                p += term;
            }
            mat[r][c] = std::move(p);
        }
    return CdLinearMap(from.B.carrier, from.A.carrier, std::move(mat));
}

}  // namespace

EquivalenceResult solve_equivalence(const CocycleTriple& from, const CocycleTriple& to) {
    int base = std::max({table_partial_degree(from.left), table_partial_degree(from.right),
                         table_partial_degree(from.chi), table_partial_degree(to.left),
                         table_partial_degree(to.right), table_partial_degree(to.chi),
                         table_partial_degree(from.A.mult), table_partial_degree(from.B.mult),
                         0});
    EquivalenceResult first = solve_equivalence(from, to, base + 2);
    if (first.outcome == EquivalenceOutcome::Witness ||
        first.outcome == EquivalenceOutcome::NotEquivalent)
        return first;
    return solve_equivalence(from, to, base + 4);
}

EquivalenceResult solve_equivalence(const CocycleTriple& from, const CocycleTriple& to,
                                    int degree_bound) {
    require_same_pair(from, to);
    if (degree_bound < 0) throw InvalidInput("degree bound must be nonnegative");
    const std::size_t na = from.A.rank(), nb = from.B.rank();
    const std::size_t per = static_cast<std::size_t>(degree_bound) + 1;
    const std::size_t unknowns = na * nb * per;

    EquivalenceResult result;
    result.bound_used = degree_bound;

    auto residual = [&](const std::vector<Scalar>& x) {
        const CdLinearMap delta = delta_from_assignment(from, degree_bound, x);
        std::vector<Poly> out;
        for (auto& [name, idx, diff] : equivalence_diffs(from, to, delta))
            for (std::size_t m = 0; m < diff.rank(); ++m) out.push_back(diff[m]);
        return out;
    };

    const auto coords = probe_quadratic(unknowns, residual);

    // An equation the unknowns cannot influence at this degree cannot be
    // influenced at any degree (the substitution images of D^k are nonzero
    // multiples of a fixed element); a nonzero constant there is a definitive
    // refutation.
    for (const QuadraticCoordinate& c : coords) {
        bool influenced = false;
        for (const Scalar& s : c.linear)
            if (s != 0) influenced = true;
        for (const auto& row : c.quad)
            for (const Scalar& s : row)
                if (s != 0) influenced = true;
        if (!influenced && c.constant != 0) {
            result.outcome = EquivalenceOutcome::NotEquivalent;
            return result;
        }
    }

    std::vector<std::string> names;
    names.reserve(unknowns);
    for (std::size_t i = 0; i < unknowns; ++i) names.push_back("d" + std::to_string(i));
    const DecideResult dec = decide(system_from_coordinates(std::move(names), coords));
    switch (dec.kind) {
        case DecideResult::Kind::RationalWitness: {
            CdLinearMap delta = delta_from_assignment(from, degree_bound, dec.witness);
            const CheckReport rep = check_equivalence_witness(from, to, delta);
            if (!rep.ok) throw Error("internal: equivalence witness failed re-verification");
            witness_audit::record_verified();
            result.outcome = EquivalenceOutcome::Witness;
            result.delta = std::move(delta);
            witness_audit::record_emitted();
            return result;
        }
        case DecideResult::Kind::SolvableNoRationalWitness:
            result.outcome = EquivalenceOutcome::NoRationalWitness;
            return result;
        case DecideResult::Kind::InconsistentOverClosure:
            result.outcome = EquivalenceOutcome::UndecidedWithinBounds;
            return result;
    }
    throw Error("internal: unreachable solver outcome");
}

}  // namespace confalg
