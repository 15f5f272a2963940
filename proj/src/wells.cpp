#include "confalg/wells.hpp"

#include "confalg/error.hpp"
#include "confalg/witness_audit.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <utility>
#include <vector>

namespace confalg {
namespace {

Poly lambda1() { return Poly::lambda(1, 1); }

void require_endo(const CdLinearMap& f, const ModulePtr& mod, const char* what) {
    if (!same_module(f.source(), mod) || !same_module(f.target(), mod))
        throw ModuleMismatch(std::string(what) + " must act on the expected carrier");
}

CdLinearMap inverse_or_throw(const CdLinearMap& f, const char* what) {
    auto inv = f.inverse();
    if (!inv) throw NotInvertible(std::string(what) + " has no k[D]-inverse");
    return *std::move(inv);
}

void add_failure(CheckReport& rep, std::string identity, std::vector<std::size_t> indices,
                 ModElement difference) {
    rep.ok = false;
    rep.failures.push_back({std::move(identity), std::move(indices), std::move(difference)});
}

// Record a nonzero linear map as a failure through its first nonzero column.
void add_map_failure(CheckReport& rep, const std::string& identity,
                     std::vector<std::size_t> indices, const CdLinearMap& diff) {
    if (diff.is_zero()) return;
    for (std::size_t j = 0; j < diff.source()->rank(); ++j) {
        ModElement col = diff.apply_basis(j, 0);
        if (col.is_zero()) continue;
        indices.push_back(j);
        add_failure(rep, identity, std::move(indices), std::move(col));
        return;
    }
}

void merge_prefixed(CheckReport& rep, CheckReport sub, const std::string& prefix,
                    std::optional<std::size_t> lead_index = std::nullopt) {
    for (auto& f : sub.failures) {
        f.identity = prefix + f.identity;
        if (lead_index) f.indices.insert(f.indices.begin(), *lead_index);
        rep.ok = false;
        rep.failures.push_back(std::move(f));
    }
}

// The A-block projection of an extension in normal form.
CdLinearMap block_projection(const Extension& e) {
    const std::size_t na = e.A.rank(), ne = e.E.rank();
    std::vector<std::vector<Poly>> mat(na, std::vector<Poly>(ne, Poly(0)));
    for (std::size_t r = 0; r < na; ++r) mat[r][r] = Poly::constant(Scalar(1), 0);
    return CdLinearMap(e.E.carrier, e.A.carrier, std::move(mat));
}

struct DerContext {
    CocycleTriple c;
    ConformalBimodule m;
};

DerContext der_context(const Extension& e) {
    CocycleTriple c = cocycle_of_extension(e);
    if (!c.A.mult.is_zero())
        throw NotAbelian("the ideal block carries a nonzero product");
    ConformalBimodule m = action_bimodule(c);
    return {std::move(c), std::move(m)};
}

void require_pair_in_g(const DerPair& d, const ConformalBimodule& m) {
    CheckReport memb = check_pair_in_g(d, m);
    if (!memb.ok)
        throw InvalidInput("derivation pair fails the compatibility identities: " +
                           memb.summary());
}

}  // namespace

AutPair make_aut_pair(const ConformalAlgebra& A, const ConformalAlgebra& B, CdLinearMap g,
                      CdLinearMap h) {
    require_endo(g, A.carrier, "the value component");
    require_endo(h, B.carrier, "the base component");
    if (!check_automorphism(A, g).ok)
        throw InvalidInput("the value component is not an automorphism");
    if (!check_automorphism(B, h).ok)
        throw InvalidInput("the base component is not an automorphism");
    return AutPair{std::move(g), std::move(h)};
}

AutPair compose(const AutPair& p, const AutPair& q) {
    return AutPair{p.g.compose(q.g), p.h.compose(q.h)};
}

DerPair der_bracket(const DerPair& d, const DerPair& e) {
    return DerPair{d.da.compose(e.da) - e.da.compose(d.da),
                   d.db.compose(e.db) - e.db.compose(d.db)};
}

CocycleTriple transform_cocycle(const AutPair& p, const CocycleTriple& c) {
    require_endo(p.g, c.A.carrier, "the value component");
    require_endo(p.h, c.B.carrier, "the base component");
    const CdLinearMap ginv = inverse_or_throw(p.g, "the value component");
    const CdLinearMap hinv = inverse_or_throw(p.h, "the base component");
    const Poly lam = lambda1();
    const std::size_t na = c.A.rank(), nb = c.B.rank();

    CocycleTriple out = c;
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < na; ++j)
            out.left.entry[i][j] =
                p.g.apply(eval_table(c.left, hinv.apply_basis(i, 1), ginv.apply_basis(j, 1), lam));
    for (std::size_t j = 0; j < na; ++j)
        for (std::size_t i = 0; i < nb; ++i)
            out.right.entry[j][i] =
                p.g.apply(eval_table(c.right, ginv.apply_basis(j, 1), hinv.apply_basis(i, 1), lam));
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < nb; ++j)
            out.chi.entry[i][j] =
                p.g.apply(eval_table(c.chi, hinv.apply_basis(i, 1), hinv.apply_basis(j, 1), lam));
    return out;
}

CheckReport check_induction_witness(const AutPair& p, const Extension& e,
                                    const CdLinearMap& omega) {
    const CocycleTriple c = cocycle_of_extension(e);
    if (!same_module(omega.source(), c.B.carrier) || !same_module(omega.target(), c.A.carrier))
        throw ModuleMismatch("the witness must map the base algebra into the ideal block");
    const CocycleTriple t = transform_cocycle(p, c);
    const Poly lam = lambda1();
    const std::size_t na = c.A.rank(), nb = c.B.rank();
    CheckReport rep;

    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < na; ++j) {
            ModElement diff = c.left.entry[i][j] - t.left.entry[i][j] -
                              eval_table(c.A.mult, omega.apply_basis(i, 1),
                                         ModElement::basis(c.A.carrier, j, 1), lam);
            if (!diff.is_zero())
                add_failure(rep, "lift compatibility (left action)", {i, j}, std::move(diff));
        }
    for (std::size_t j = 0; j < na; ++j)
        for (std::size_t i = 0; i < nb; ++i) {
            ModElement diff = c.right.entry[j][i] - t.right.entry[j][i] -
                              eval_table(c.A.mult, ModElement::basis(c.A.carrier, j, 1),
                                         omega.apply_basis(i, 1), lam);
            if (!diff.is_zero())
                add_failure(rep, "lift compatibility (right action)", {j, i}, std::move(diff));
        }
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < nb; ++j) {
            ModElement rhs =
                eval_table(c.left, ModElement::basis(c.B.carrier, i, 1), omega.apply_basis(j, 1),
                           lam) -
                omega.apply(c.B.mult.entry[i][j]) +
                eval_table(c.right, omega.apply_basis(i, 1), ModElement::basis(c.B.carrier, j, 1),
                           lam) -
                eval_table(c.A.mult, omega.apply_basis(i, 1), omega.apply_basis(j, 1), lam);
            ModElement diff = c.chi.entry[i][j] - t.chi.entry[i][j] - rhs;
            if (!diff.is_zero())
                add_failure(rep, "lift compatibility (pairing)", {i, j}, std::move(diff));
        }
    return rep;
}

CheckReport check_action_compatible_pair(const AutPair& p, const ConformalBimodule& m) {
    require_endo(p.g, m.carrier, "the value component");
    require_endo(p.h, m.algebra.carrier, "the base component");
    const Poly lam = lambda1();
    const std::size_t na = m.carrier->rank(), nb = m.algebra.rank();
    CheckReport rep;
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < na; ++j) {
            ModElement diff = p.g.apply(m.left_action.entry[i][j]) -
                              eval_table(m.left_action, p.h.apply_basis(i, 1),
                                         p.g.apply_basis(j, 1), lam);
            if (!diff.is_zero())
                add_failure(rep, "action compatibility (left)", {i, j}, std::move(diff));
        }
    for (std::size_t j = 0; j < na; ++j)
        for (std::size_t i = 0; i < nb; ++i) {
            ModElement diff = p.g.apply(m.right_action.entry[j][i]) -
                              eval_table(m.right_action, p.g.apply_basis(j, 1),
                                         p.h.apply_basis(i, 1), lam);
            if (!diff.is_zero())
                add_failure(rep, "action compatibility (right)", {j, i}, std::move(diff));
        }
    return rep;
}

CdLinearMap ideal_projection(const Extension& e) {
    const CdLinearMap id = CdLinearMap::identity(e.E.carrier);
    return block_projection(e).compose(id - e.gamma.compose(e.beta));
}

ConformalBimodule action_bimodule(const CocycleTriple& c) {
    if (!c.A.mult.is_zero())
        throw NotAbelian("the value algebra carries a nonzero product");
    return make_bimodule(c.B, c.A.carrier, c.left, c.right);
}

Cochain pairing_cochain(const CocycleTriple& c) {
    ConformalBimodule m = action_bimodule(c);
    Cochain out = Cochain::zero(2, std::move(m));
    for (std::size_t i = 0; i < c.B.rank(); ++i)
        for (std::size_t j = 0; j < c.B.rank(); ++j) {
            const std::array<std::size_t, 2> tuple{i, j};
            out.set_value(tuple, c.chi.entry[i][j]);
        }
    return out;
}

namespace {

AutWellsResult wells_aut_impl(const AutPair& p, const Extension& e,
                              std::optional<int> degree_bound) {
    const CocycleTriple c = cocycle_of_extension(e);
    AutWellsResult res;
    res.transformed = transform_cocycle(p, c);

    if (c.A.mult.is_zero()) {
        const ConformalBimodule m = action_bimodule(c);
        if (!check_action_compatible_pair(p, m).ok) {
            res.status = WellsStatus::NonZero;
            res.note =
                "the pair is not action-compatible on the abelian ideal; the obstruction "
                "equations for the actions have no unknowns, so no witness exists at any "
                "degree bound";
            return res;
        }
    }

    const EquivalenceResult sol = degree_bound
                                      ? solve_equivalence(res.transformed, c, *degree_bound)
                                      : solve_equivalence(res.transformed, c);
    res.bound_used = sol.bound_used;
    switch (sol.outcome) {
        case EquivalenceOutcome::Witness: {
            const CheckReport lift = check_induction_witness(p, e, *sol.delta);
            if (!lift.ok)
                throw Error("internal: an equivalence witness failed the lift identities");
            witness_audit::record_verified();
            res.status = WellsStatus::Zero;
            res.omega = sol.delta;
            witness_audit::record_emitted();
            break;
        }
        case EquivalenceOutcome::NotEquivalent:
            res.status = WellsStatus::NonZero;
            res.note =
                "refuted by an obstruction equation with no unknowns; no witness exists at "
                "any degree bound";
            break;
        case EquivalenceOutcome::NoRationalWitness:
            res.status = WellsStatus::NonZeroWithinBounds;
            res.note =
                "the bounded witness system is solvable over the algebraic closure but has "
                "no rational point; larger degree bounds are not excluded";
            break;
        case EquivalenceOutcome::UndecidedWithinBounds:
            res.status = WellsStatus::NonZeroWithinBounds;
            res.note =
                "no witness with entries of D-degree <= " + std::to_string(sol.bound_used) +
                "; larger degree bounds are not excluded";
            break;
    }
    return res;
}

}  // namespace

AutWellsResult wells_aut(const AutPair& p, const Extension& e) {
    return wells_aut_impl(p, e, std::nullopt);
}

AutWellsResult wells_aut(const AutPair& p, const Extension& e, int degree_bound) {
    return wells_aut_impl(p, e, degree_bound);
}

CdLinearMap induce_automorphism(const AutPair& p, const CdLinearMap& omega, const Extension& e) {
    const CheckReport lift = check_induction_witness(p, e, omega);
    if (!lift.ok)
        throw InvalidWitness("the witness fails the lift identities: " + lift.summary());

    const CdLinearMap pr = ideal_projection(e);
    const CdLinearMap f = e.alpha.compose(p.g).compose(pr) -
                          e.alpha.compose(omega).compose(p.h).compose(e.beta) +
                          e.gamma.compose(p.h).compose(e.beta);
    if (!check_automorphism(e.E, f).ok)
        throw InvalidWitness("the induced map fails the automorphism check");
    if (!(f.compose(e.alpha) == e.alpha.compose(p.g)) ||
        !(e.beta.compose(f).compose(e.gamma) == p.h))
        throw InvalidWitness("the induced map does not restrict to the given pair");
    witness_audit::record_verified();
    witness_audit::record_emitted();
    return f;
}

AutPair kappa(const CdLinearMap& f, const Extension& e) {
    require_endo(f, e.E.carrier, "the automorphism");
    if (!e.beta.compose(f).compose(e.alpha).is_zero())
        throw DoesNotPreserveA("the map does not preserve the ideal block");
    CdLinearMap g = ideal_projection(e).compose(f).compose(e.alpha);
    CdLinearMap h = e.beta.compose(f).compose(e.gamma);
    if (!check_automorphism(e.A, g).ok)
        throw InvalidInput("the restriction to the ideal block is not an automorphism");
    if (!check_automorphism(e.B, h).ok)
        throw InvalidInput("the induced base map is not an automorphism");
    return AutPair{std::move(g), std::move(h)};
}

CheckReport check_pair_in_g(const DerPair& d, const ConformalBimodule& m) {
    require_endo(d.da, m.carrier, "the value component");
    require_endo(d.db, m.algebra.carrier, "the base component");
    const Poly lam = lambda1();
    const std::size_t na = m.carrier->rank(), nb = m.algebra.rank();
    CheckReport rep;
    merge_prefixed(rep, check_algebra_derivation(m.algebra, d.db), "base component: ");
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < na; ++j) {
            ModElement diff = d.da.apply(m.left_action.entry[i][j]) -
                              eval_table(m.left_action, ModElement::basis(m.algebra.carrier, i, 1),
                                         d.da.apply_basis(j, 1), lam) -
                              eval_table(m.left_action, d.db.apply_basis(i, 1),
                                         ModElement::basis(m.carrier, j, 1), lam);
            if (!diff.is_zero())
                add_failure(rep, "derivation compatibility (left action)", {i, j},
                            std::move(diff));
        }
    for (std::size_t j = 0; j < na; ++j)
        for (std::size_t i = 0; i < nb; ++i) {
            ModElement diff = d.da.apply(m.right_action.entry[j][i]) -
                              eval_table(m.right_action, ModElement::basis(m.carrier, j, 1),
                                         d.db.apply_basis(i, 1), lam) -
                              eval_table(m.right_action, d.da.apply_basis(j, 1),
                                         ModElement::basis(m.algebra.carrier, i, 1), lam);
            if (!diff.is_zero())
                add_failure(rep, "derivation compatibility (right action)", {j, i},
                            std::move(diff));
        }
    return rep;
}

Cochain theta_action(const DerPair& d, const Cochain& phi) {
    const ConformalBimodule& m = phi.coefficients();
    require_endo(d.da, m.carrier, "the value component");
    require_endo(d.db, m.algebra.carrier, "the base component");
    const std::size_t n = phi.degree();
    Cochain out = Cochain::zero(n, m);
    if (n == 0) {
        out = Cochain::degree0(m, d.da.apply(phi.value_flat(0)));
        return out;
    }
    for (std::size_t t = 0; t < phi.tuple_count(); ++t) {
        const std::vector<std::size_t> tuple = phi.unflatten(t);
        ModElement acc = d.da.apply(phi.value_flat(t));
        for (std::size_t slot = 0; slot < n; ++slot) {
            std::vector<ModElement> args;
            args.reserve(n);
            for (std::size_t k = 0; k < n; ++k)
                args.push_back(k == slot
                                   ? d.db.apply_basis(tuple[k], n - 1)
                                   : ModElement::basis(m.algebra.carrier, tuple[k], n - 1));
            acc -= eval_cochain(phi, args);
        }
        out.set_value_flat(t, std::move(acc));
    }
    return out;
}

namespace {

DerWellsResult wells_der_impl(const DerPair& d, const Extension& e,
                              std::optional<int> degree_bound) {
    const DerContext ctx = der_context(e);
    require_pair_in_g(d, ctx.m);
    const Cochain chi = pairing_cochain(ctx.c);
    Cochain target = theta_action(d, chi);

    DerWellsResult res{WellsStatus::Undecided, std::move(target), std::nullopt, 0, ""};
    const Cochain& obstruction = res.theta_chi;

    // With zero actions and a zero base product, the coboundary of any map
    // B -> A vanishes identically, so the bounded search is conclusive.
    const bool coboundary_vanishes = ctx.m.left_action.is_zero() &&
                                     ctx.m.right_action.is_zero() && ctx.c.B.mult.is_zero();
    if (coboundary_vanishes) {
        if (obstruction.is_zero()) {
            CdLinearMap f = CdLinearMap::zero(ctx.c.B.carrier, ctx.c.A.carrier);
            if (!(differential(Cochain::from_linear_map(ctx.m, f)) == obstruction))
                throw Error("internal: the zero witness failed re-verification");
            witness_audit::record_verified();
            res.status = WellsStatus::Zero;
            res.f = std::move(f);
            witness_audit::record_emitted();
            res.note = "the coboundary operator vanishes identically; the zero map is a witness";
        } else {
            res.status = WellsStatus::NonZero;
            res.note =
                "the coboundary operator on maps from the base into the ideal vanishes "
                "identically, so the nonzero obstruction is final at every degree bound";
        }
        return res;
    }

    int base_bound =
        std::max({table_partial_degree(ctx.c.left), table_partial_degree(ctx.c.right),
                  table_partial_degree(ctx.c.chi), table_partial_degree(ctx.c.B.mult),
                  d.da.max_degree(), d.db.max_degree(), obstruction.max_partial_degree(), 0}) +
        2;
    std::vector<int> bounds;
    if (degree_bound)
        bounds = {*degree_bound};
    else
        bounds = {base_bound, base_bound + 2};

    const int ldeg = std::max(obstruction.max_lambda_degree(), 0) + 2;
    for (int bound : bounds) {
        res.bound_used = bound;
        std::optional<Cochain> psi = solve_coboundary(obstruction, Bounds{bound, ldeg});
        if (!psi) continue;
        CdLinearMap f = psi->to_linear_map();
        if (!(differential(Cochain::from_linear_map(ctx.m, f)) == obstruction))
            throw Error("internal: a coboundary witness failed re-verification");
        witness_audit::record_verified();
        res.status = WellsStatus::Zero;
        res.f = std::move(f);
        witness_audit::record_emitted();
        return res;
    }
    res.status = WellsStatus::NonZeroWithinBounds;
    res.note = "no witness with entries of D-degree <= " + std::to_string(res.bound_used) +
               "; larger degree bounds are not excluded";
    return res;
}

}  // namespace

DerWellsResult wells_der(const DerPair& d, const Extension& e) {
    return wells_der_impl(d, e, std::nullopt);
}

DerWellsResult wells_der(const DerPair& d, const Extension& e, int degree_bound) {
    return wells_der_impl(d, e, degree_bound);
}

CdLinearMap extend_derivation(const DerPair& d, const CdLinearMap& f, const Extension& e) {
    const DerContext ctx = der_context(e);
    require_pair_in_g(d, ctx.m);
    if (!same_module(f.source(), ctx.c.B.carrier) || !same_module(f.target(), ctx.c.A.carrier))
        throw ModuleMismatch("the witness must map the base algebra into the ideal block");
    const Cochain obstruction = theta_action(d, pairing_cochain(ctx.c));
    if (!(differential(Cochain::from_linear_map(ctx.m, f)) == obstruction))
        throw InvalidWitness("the candidate does not solve the obstruction equation");

    const CdLinearMap pr = ideal_projection(e);
    const CdLinearMap dE = e.alpha.compose(d.da).compose(pr) +
                           e.alpha.compose(f).compose(e.beta) +
                           e.gamma.compose(d.db).compose(e.beta);
    if (!check_algebra_derivation(e.E, dE).ok)
        throw InvalidWitness("the extended map fails the derivation check");
    if (!(dE.compose(e.alpha) == e.alpha.compose(d.da)) ||
        !(e.beta.compose(dE) == d.db.compose(e.beta)))
        throw InvalidWitness("the extended map does not restrict to the given pair");
    witness_audit::record_verified();
    witness_audit::record_emitted();
    return dE;
}

DerPair kappa_der(const CdLinearMap& dE, const Extension& e) {
    require_endo(dE, e.E.carrier, "the derivation");
    if (!e.beta.compose(dE).compose(e.alpha).is_zero())
        throw DoesNotPreserveA("the map does not preserve the ideal block");
    return DerPair{ideal_projection(e).compose(dE).compose(e.alpha),
                   e.beta.compose(dE).compose(e.gamma)};
}

namespace {

void require_split_abelian(const Extension& e) {
    const CocycleTriple c = cocycle_of_extension(e);
    if (!c.A.mult.is_zero())
        throw NotAbelian("the ideal block carries a nonzero product");
    if (!check_homomorphism(e.B, e.E, e.gamma).ok)
        throw NotSplit("the stored section is not an algebra homomorphism");
}

}  // namespace

DerDecomposition decompose_derivation(const Extension& e, const CdLinearMap& dE) {
    require_split_abelian(e);
    DerPair pair = kappa_der(dE, e);
    CdLinearMap eta =
        extend_derivation(pair, CdLinearMap::zero(e.B.carrier, e.A.carrier), e);
    CdLinearMap z1 = ideal_projection(e).compose(dE - eta).compose(e.gamma);
    return DerDecomposition{std::move(pair), std::move(z1), std::move(eta)};
}

CheckReport split_der_decomposition(const Extension& e, std::span<const CdLinearMap> samples) {
    require_split_abelian(e);
    const DerContext ctx = der_context(e);
    CheckReport rep;

    std::vector<std::optional<DerDecomposition>> decs(samples.size());
    for (std::size_t s = 0; s < samples.size(); ++s) {
        const CdLinearMap& dE = samples[s];
        merge_prefixed(rep, check_algebra_derivation(e.E, dE), "sample derivation: ", s);
        const CdLinearMap leak = e.beta.compose(dE).compose(e.alpha);
        if (!leak.is_zero()) {
            add_map_failure(rep, "sample preserves the ideal block", {s}, leak);
            continue;
        }
        DerPair pair = kappa_der(dE, e);
        CheckReport memb = check_pair_in_g(pair, ctx.m);
        if (!memb.ok) {
            merge_prefixed(rep, std::move(memb), "induced pair: ", s);
            continue;
        }
        DerDecomposition dec = decompose_derivation(e, dE);
        merge_prefixed(rep, check_derivation(ctx.m.algebra, ctx.m, dec.z1),
                       "kernel cocycle: ", s);
        add_map_failure(rep, "sample equals its lift plus the kernel part", {s},
                        dE - dec.eta - e.alpha.compose(dec.z1).compose(e.beta));
        decs[s] = std::move(dec);
    }

    for (std::size_t i = 0; i < decs.size(); ++i)
        for (std::size_t j = i + 1; j < decs.size(); ++j) {
            if (!decs[i] || !decs[j]) continue;
            const DerPair bracket = der_bracket(decs[i]->pair, decs[j]->pair);
            CheckReport bmemb = check_pair_in_g(bracket, ctx.m);
            if (!bmemb.ok) {
                merge_prefixed(rep, std::move(bmemb), "bracket of induced pairs: ", i);
                continue;
            }
            const CdLinearMap lifted =
                extend_derivation(bracket, CdLinearMap::zero(e.B.carrier, e.A.carrier), e);
            const CdLinearMap commutator = decs[i]->eta.compose(decs[j]->eta) -
                                           decs[j]->eta.compose(decs[i]->eta);
            add_map_failure(rep, "canonical lift respects brackets", {i, j},
                            lifted - commutator);
        }
    return rep;
}

}  // namespace confalg
