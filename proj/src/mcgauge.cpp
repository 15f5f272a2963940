#include "confalg/mcgauge.hpp"

#include "confalg/error.hpp"

#include <array>
#include <string>
#include <utility>

namespace confalg {

namespace {

ModElement lifted(const ModulePtr& target, const ModElement& v, std::size_t offset) {
    ModElement out(target, v.arity());
    for (std::size_t i = 0; i < v.rank(); ++i) out[i + offset] = v[i];
    return out;
}

ModElement block_of(const ModulePtr& target, const ModElement& v, std::size_t offset) {
    ModElement out(target, v.arity());
    for (std::size_t i = 0; i < target->rank(); ++i) out[i] = v[offset + i];
    return out;
}

bool rows_zero(const ModElement& v, std::size_t from, std::size_t to) {
    for (std::size_t i = from; i < to; ++i)
        if (!v[i].is_zero()) return false;
    return true;
}

void validate_element(const MixedContext& ctx, const Cochain& value) {
    if (value.degree() != 2) throw DegreeMismatch("a candidate element must be a 2-cochain");
    if (!(value.algebra() == ctx.sum))
        throw ModuleMismatch("element lives over a different sum algebra");
    if (!value.is_regular_valued()) throw InvalidInput("element must be self-valued");
    const std::size_t na = ctx.a_rank();
    for (std::size_t flat = 0; flat < value.tuple_count(); ++flat) {
        const ModElement& v = value.value_flat(flat);
        if (v.is_zero()) continue;
        const auto tuple = value.unflatten(flat);
        if (tuple[0] < na && tuple[1] < na)
            throw InvalidInput("element does not vanish on pure value-block pairs");
        if (!rows_zero(v, na, v.rank()))
            throw InvalidInput("element value leaves the A-block");
    }
}

// Argument pattern -> governing identity; true means a B-block argument.
const char* pattern_label(bool b0, bool b1, bool b2) {
    if (b0 && b1 && !b2) return "coh1";
    if (!b0 && b1 && b2) return "coh2";
    if (b0 && !b1 && b2) return "coh3";
    if (!b0 && !b1 && b2) return "coh4";
    if (b0 && !b1 && !b2) return "coh4'";
    if (!b0 && b1 && !b2) return "coh4''";
    if (b0 && b1 && b2) return "coh5";
    return "value algebra associativity";
}

// Degree-1 cochain over the sum that applies xi on the B-block and kills
// the A-block.
Cochain embed_parameter(const MixedContext& ctx, const CdLinearMap& xi) {
    if (!same_module(xi.source(), ctx.B.carrier) || !same_module(xi.target(), ctx.A.carrier))
        throw ModuleMismatch("gauge parameter must map the base block to the value block");
    Cochain out = Cochain::zero(1, regular_bimodule(ctx.sum));
    const std::size_t na = ctx.a_rank();
    for (std::size_t j = 0; j < ctx.b_rank(); ++j) {
        const std::array<std::size_t, 1> t{na + j};
        out.set_value(t, lifted(ctx.sum.carrier, xi.apply_basis(j, 0), 0));
    }
    return out;
}

void record_first_offender(CheckReport& rep, const Cochain& bad, const std::string& identity,
                           std::vector<std::size_t> indices) {
    for (std::size_t flat = 0; flat < bad.tuple_count(); ++flat) {
        const ModElement& v = bad.value_flat(flat);
        if (v.is_zero()) continue;
        for (auto t : bad.unflatten(flat)) indices.push_back(t);
        rep.failures.push_back({identity, std::move(indices), v});
        return;
    }
}

}  // namespace

MixedContext make_mixed_context(ConformalAlgebra A, ConformalAlgebra B) {
    ConformalAlgebra sum = direct_sum(A, B);
    return MixedContext{std::move(A), std::move(B), std::move(sum)};
}

MixedCochain make_mixed(const MixedContext& ctx, int m, int n, Cochain value) {
    if (n <= 0) throw InvalidInput("a mixed cochain needs a positive base-argument count");
    if (m < 0) throw InvalidInput("a mixed cochain needs a nonnegative value-argument count");
    if (value.degree() != static_cast<std::size_t>(m + n))
        throw DegreeMismatch("mixed cochain degree differs from m + n");
    if (!(value.algebra() == ctx.sum))
        throw ModuleMismatch("mixed cochain lives over a different sum algebra");
    if (!value.is_regular_valued()) throw InvalidInput("mixed cochains must be self-valued");
    const std::size_t na = ctx.a_rank();
    for (std::size_t flat = 0; flat < value.tuple_count(); ++flat) {
        const ModElement& v = value.value_flat(flat);
        if (v.is_zero()) continue;
        std::size_t nb = 0;
        for (auto t : value.unflatten(flat)) nb += (t >= na) ? 1 : 0;
        if (nb != static_cast<std::size_t>(n))
            throw InvalidInput("mixed cochain supported outside its bidegree");
        if (!rows_zero(v, na, v.rank()))
            throw InvalidInput("mixed cochain value leaves the A-block");
    }
    return MixedCochain{m, n, std::move(value)};
}

Cochain bidegree_part(const MixedContext& ctx, const Cochain& f, int m, int n) {
    Cochain out = Cochain::zero(f.degree(), f.coefficients());
    if (m < 0 || n < 0 || f.degree() != static_cast<std::size_t>(m + n)) return out;
    const std::size_t na = ctx.a_rank();
    for (std::size_t flat = 0; flat < f.tuple_count(); ++flat) {
        const ModElement& v = f.value_flat(flat);
        if (v.is_zero()) continue;
        std::size_t nb = 0;
        for (auto t : f.unflatten(flat)) nb += (t >= na) ? 1 : 0;
        if (nb != static_cast<std::size_t>(n)) continue;
        ModElement kept = lifted(ctx.sum.carrier, block_of(ctx.A.carrier, v, 0), 0);
        out.set_value_flat(flat, std::move(kept));
    }
    return out;
}

MCElement make_mc_element(const MixedContext& ctx, Cochain value) {
    validate_element(ctx, value);
    return MCElement{std::move(value)};
}

MCElement embed_cocycle(const MixedContext& ctx, const CocycleTriple& c) {
    if (!(c.A == ctx.A) || !(c.B == ctx.B))
        throw ModuleMismatch("cocycle triple belongs to a different algebra pair");
    const std::size_t na = ctx.a_rank(), nb = ctx.b_rank();
    Cochain value = Cochain::zero(2, regular_bimodule(ctx.sum));
    for (std::size_t i = 0; i < na + nb; ++i)
        for (std::size_t j = 0; j < na + nb; ++j) {
            if (i < na && j < na) continue;
            const ModElement* src = nullptr;
            if (i >= na && j < na)
                src = &c.left.entry[i - na][j];
            else if (i < na)
                src = &c.right.entry[i][j - na];
            else
                src = &c.chi.entry[i - na][j - na];
            if (src->is_zero()) continue;
            const std::array<std::size_t, 2> t{i, j};
            value.set_value(t, lifted(ctx.sum.carrier, *src, 0));
        }
    return MCElement{std::move(value)};
}

CocycleTriple extract_cocycle(const MixedContext& ctx, const MCElement& c) {
    validate_element(ctx, c.value);
    const std::size_t na = ctx.a_rank(), nb = ctx.b_rank();
    StructureTable left = StructureTable::zero(ctx.B.carrier, ctx.A.carrier, ctx.A.carrier);
    StructureTable right = StructureTable::zero(ctx.A.carrier, ctx.B.carrier, ctx.A.carrier);
    StructureTable chi = StructureTable::zero(ctx.B.carrier, ctx.B.carrier, ctx.A.carrier);
    for (std::size_t i = 0; i < na + nb; ++i)
        for (std::size_t j = 0; j < na + nb; ++j) {
            if (i < na && j < na) continue;
            const std::array<std::size_t, 2> t{i, j};
            ModElement v = block_of(ctx.A.carrier, c.value.value(t), 0);
            if (i >= na && j < na)
                left.entry[i - na][j] = std::move(v);
            else if (i < na)
                right.entry[i][j - na] = std::move(v);
            else
                chi.entry[i - na][j - na] = std::move(v);
        }
    return make_cocycle(ctx.A, ctx.B, std::move(left), std::move(right), std::move(chi));
}

CheckReport mc_check(const MixedContext& ctx, const MCElement& c) {
    validate_element(ctx, c.value);
    const Cochain total = Cochain::multiplication(ctx.sum) + c.value;
    // Half the self-bracket of an odd element is its self-composition: the
    // associator of the combined product.
    const Cochain resid = circ(total, total);
    CheckReport rep;
    const std::size_t na = ctx.a_rank();
    for (std::size_t flat = 0; flat < resid.tuple_count(); ++flat) {
        const ModElement& v = resid.value_flat(flat);
        if (v.is_zero()) continue;
        const auto tuple = resid.unflatten(flat);
        const bool b0 = tuple[0] >= na, b1 = tuple[1] >= na, b2 = tuple[2] >= na;
        ModElement a_part = lifted(ctx.sum.carrier, block_of(ctx.A.carrier, v, 0), 0);
        ModElement b_part = v - a_part;
        if (!a_part.is_zero())
            rep.failures.push_back({pattern_label(b0, b1, b2), tuple, std::move(a_part)});
        if (!b_part.is_zero()) {
            const char* label =
                (b0 && b1 && b2) ? "base algebra associativity" : "mixed associator leak";
            rep.failures.push_back({label, tuple, std::move(b_part)});
        }
    }
    rep.ok = rep.failures.empty();
    return rep;
}

MCElement gauge_transform(const MixedContext& ctx, const MCElement& c, const GaugeParameter& xi) {
    validate_element(ctx, c.value);
    const Cochain p = embed_parameter(ctx, xi.xi);
    const Cochain dp = dbar(p);
    const Cochain ad_c = gbracket(p, c.value);
    // The adjoint action of a parameter squares to zero: a parameter is
    // A-valued and vanishes on the A-block, so a second insertion always
    // meets an A-argument. Guard rather than assume.
    if (!gbracket(p, ad_c).is_zero() || !gbracket(p, gbracket(p, dp)).is_zero())
        throw Error("gauge parameter adjoint action fails to square to zero");
    Cochain value = c.value + ad_c - dp - Scalar(1, 2) * gbracket(p, dp);
    return make_mc_element(ctx, std::move(value));
}

CheckReport check_subdgla_closure(const MixedContext& ctx,
                                  const std::vector<MixedCochain>& samples) {
    CheckReport rep;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        for (std::size_t j = i; j < samples.size(); ++j) {
            const MixedCochain& p = samples[i];
            const MixedCochain& q = samples[j];
            const Cochain br = gbracket(p.value, q.value);
            const int m = p.m + q.m - 1, n = p.n + q.n;
            const Cochain bad = br - bidegree_part(ctx, br, m, n);
            if (!bad.is_zero())
                record_first_offender(rep, bad,
                                      "bracket leaves bidegree (" + std::to_string(m) + "," +
                                          std::to_string(n) + ")",
                                      {i, j});
        }
        const Cochain db = dbar(samples[i].value);
        const Cochain bad = db - bidegree_part(ctx, db, samples[i].m + 1, samples[i].n) -
                            bidegree_part(ctx, db, samples[i].m, samples[i].n + 1);
        if (!bad.is_zero())
            record_first_offender(rep, bad, "differential leaves its bidegree pair", {i});
    }
    rep.ok = rep.failures.empty();
    return rep;
}

}  // namespace confalg
