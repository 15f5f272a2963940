#include "confalg/homotopy.hpp"

#include "confalg/error.hpp"

#include <array>
#include <string>
#include <utility>

namespace confalg {

namespace {

void add_failure(CheckReport& rep, std::string identity, std::vector<std::size_t> indices,
                 ModElement diff) {
    rep.ok = false;
    rep.failures.push_back({std::move(identity), std::move(indices), std::move(diff)});
}

void merge_prefixed(CheckReport& rep, CheckReport sub, const std::string& prefix) {
    for (auto& f : sub.failures) {
        f.identity = prefix + f.identity;
        rep.ok = false;
        rep.failures.push_back(std::move(f));
    }
}

void require_table(const StructureTable& t, const ModulePtr& left, const ModulePtr& right,
                   const ModulePtr& out, const char* what) {
    if (!same_module(t.left, left) || !same_module(t.right, right) || !same_module(t.out, out))
        throw ModuleMismatch(std::string(what) + ": table carriers do not match");
    if (t.entry.size() != left->rank())
        throw ModuleMismatch(std::string(what) + ": table has the wrong number of rows");
    for (const auto& row : t.entry) {
        if (row.size() != right->rank())
            throw ModuleMismatch(std::string(what) + ": table has the wrong number of columns");
        for (const auto& e : row)
            if (!same_module(e.module(), out) || e.arity() != 1)
                throw ModuleMismatch(std::string(what) + ": table entry has the wrong shape");
    }
}

void require_map(const CdLinearMap& f, const ModulePtr& source, const ModulePtr& target,
                 const char* what) {
    if (!same_module(f.source(), source) || !same_module(f.target(), target))
        throw ModuleMismatch(std::string(what) + ": map has the wrong source or target");
}

std::vector<Poly> coeff_vector(const ModElement& v) {
    std::vector<Poly> out;
    out.reserve(v.rank());
    for (std::size_t i = 0; i < v.rank(); ++i) out.push_back(v[i]);
    return out;
}

std::vector<Poly> matrix_column(const PolyMatrix& m, std::size_t j) {
    std::vector<Poly> out;
    out.reserve(m.size());
    for (const auto& row : m) out.push_back(row[j]);
    return out;
}

// Unique preimage under an injective map, solved over k[D]; the right-hand
// side may carry lambda variables.
ModElement pull_back(const CdLinearMap& f, const ModElement& v, const char* what) {
    auto sol = solve_over_kd(f.matrix(), coeff_vector(v));
    if (!sol.solvable) throw InvalidInput(what);
    return ModElement(f.source(), std::move(sol.particular));
}

bool same_bimodule_data(const ConformalBimodule& a, const ConformalBimodule& b) {
    return a.algebra == b.algebra && same_module(a.carrier, b.carrier) &&
           a.left_action == b.left_action && a.right_action == b.right_action;
}

// Rebuild a degree-3 cochain over the bimodule the tables induce.
Cochain rehome_cochain(const Cochain& m3, const ConformalBimodule& bm) {
    Cochain out = Cochain::zero(3, bm);
    for (std::size_t t = 0; t < m3.tuple_count(); ++t) out.set_value_flat(t, m3.value_flat(t));
    return out;
}

}  // namespace

ConformalAlgebra TwoTermSHAC::base_algebra() const { return make_algebra(A0, m00); }

ConformalBimodule TwoTermSHAC::homotopy_bimodule() const {
    return make_bimodule(base_algebra(), A1, m01, m10);
}

bool TwoTermSHAC::operator==(const TwoTermSHAC& o) const {
    return same_module(A1, o.A1) && same_module(A0, o.A0) && fd == o.fd && m00 == o.m00 &&
           m01 == o.m01 && m10 == o.m10 && m11 == o.m11 && m3 == o.m3;
}

TwoTermSHAC make_twoterm(ModulePtr A1, ModulePtr A0, CdLinearMap fd, StructureTable m00,
                         StructureTable m01, StructureTable m10, StructureTable m11,
                         const Cochain& m3) {
    require_map(fd, A1, A0, "boundary");
    require_table(m00, A0, A0, A0, "degree-zero product");
    require_table(m01, A0, A1, A1, "mixed product (degree-one right)");
    require_table(m10, A1, A0, A1, "mixed product (degree-one left)");
    require_table(m11, A1, A1, A1, "degree-one product");
    if (m3.degree() != 3) throw DegreeMismatch("the ternary homotopy must have degree 3");
    if (!same_module(m3.algebra().carrier, A0) || !same_module(m3.coefficients().carrier, A1))
        throw ModuleMismatch("the ternary homotopy lives over the wrong carriers");
    ConformalBimodule bm = make_bimodule(make_algebra(A0, m00), A1, m01, m10);
    Cochain m3c = rehome_cochain(m3, bm);
    return TwoTermSHAC{std::move(A1), std::move(A0), std::move(fd), std::move(m00),
                       std::move(m01), std::move(m10), std::move(m11), std::move(m3c)};
}

TwoTermSHAC make_strict_twoterm(ModulePtr A1, ModulePtr A0, CdLinearMap fd, StructureTable m00,
                                StructureTable m01, StructureTable m10) {
    StructureTable m11 = StructureTable::zero(A1, A1, A1);
    Cochain m3 = Cochain::zero(3, make_bimodule(make_algebra(A0, m00), A1, m01, m10));
    return make_twoterm(std::move(A1), std::move(A0), std::move(fd), std::move(m00),
                        std::move(m01), std::move(m10), std::move(m11), m3);
}

CheckReport check_twoterm(const TwoTermSHAC& t) {
    CheckReport rep;
    const std::size_t n0 = t.A0->rank(), n1 = t.A1->rank();

    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n1; ++j)
            if (!t.m11.entry[i][j].is_zero())
                add_failure(rep, "degree-one product vanishes", {i, j}, t.m11.entry[i][j]);

    const Poly l1 = Poly::lambda(1, 1);
    for (std::size_t a = 0; a < n0; ++a)
        for (std::size_t b = 0; b < n1; ++b) {
            const ModElement ea = ModElement::basis(t.A0, a, 1);
            const ModElement eb = ModElement::basis(t.A1, b, 1);
            ModElement d1 = t.fd.apply(eval_table(t.m01, ea, eb, l1)) -
                            eval_table(t.m00, ea, t.fd.apply_basis(b, 1), l1);
            if (!d1.is_zero()) add_failure(rep, "2-t1", {a, b}, std::move(d1));
            ModElement d2 = t.fd.apply(eval_table(t.m10, eb, ea, l1)) -
                            eval_table(t.m00, t.fd.apply_basis(b, 1), ea, l1);
            if (!d2.is_zero()) add_failure(rep, "2-t2", {b, a}, std::move(d2));
        }
    for (std::size_t b1 = 0; b1 < n1; ++b1)
        for (std::size_t b2 = 0; b2 < n1; ++b2) {
            ModElement d = eval_table(t.m01, t.fd.apply_basis(b1, 1),
                                      ModElement::basis(t.A1, b2, 1), l1) -
                           eval_table(t.m10, ModElement::basis(t.A1, b1, 1),
                                      t.fd.apply_basis(b2, 1), l1);
            if (!d.is_zero()) add_failure(rep, "2-t3", {b1, b2}, std::move(d));
        }

    const Poly p1 = Poly::lambda(1, 2), p2 = Poly::lambda(2, 2);
    for (std::size_t i = 0; i < n0; ++i)
        for (std::size_t j = 0; j < n0; ++j) {
            const ModElement ei = ModElement::basis(t.A0, i, 2);
            const ModElement ej = ModElement::basis(t.A0, j, 2);
            for (std::size_t k = 0; k < n0; ++k) {
                const ModElement ek = ModElement::basis(t.A0, k, 2);
                const std::array<std::size_t, 3> tup{i, j, k};
                ModElement assoc =
                    eval_table(t.m00, eval_table(t.m00, ei, ej, p1), ek, p1 + p2) -
                    eval_table(t.m00, ei, eval_table(t.m00, ej, ek, p2), p1);
                ModElement d = t.fd.apply(t.m3.value(tup)) - assoc;
                if (!d.is_zero()) add_failure(rep, "2-t4", {i, j, k}, std::move(d));
            }
            for (std::size_t b = 0; b < n1; ++b) {
                const ModElement eb = ModElement::basis(t.A1, b, 2);
                const ModElement db = t.fd.apply_basis(b, 2);
                {
                    const std::vector<ModElement> args{db, ei, ej};
                    ModElement d = eval_cochain(t.m3, args) -
                                   (eval_table(t.m10, eval_table(t.m10, eb, ei, p1), ej, p1 + p2) -
                                    eval_table(t.m10, eb, eval_table(t.m00, ei, ej, p2), p1));
                    if (!d.is_zero()) add_failure(rep, "2-t5", {b, i, j}, std::move(d));
                }
                {
                    const std::vector<ModElement> args{ei, db, ej};
                    ModElement d = eval_cochain(t.m3, args) -
                                   (eval_table(t.m10, eval_table(t.m01, ei, eb, p1), ej, p1 + p2) -
                                    eval_table(t.m01, ei, eval_table(t.m10, eb, ej, p2), p1));
                    if (!d.is_zero()) add_failure(rep, "2-t6", {i, b, j}, std::move(d));
                }
                {
                    const std::vector<ModElement> args{ei, ej, db};
                    ModElement d = eval_cochain(t.m3, args) -
                                   (eval_table(t.m01, eval_table(t.m00, ei, ej, p1), eb, p1 + p2) -
                                    eval_table(t.m01, ei, eval_table(t.m01, ej, eb, p2), p1));
                    if (!d.is_zero()) add_failure(rep, "2-t7", {i, j, b}, std::move(d));
                }
            }
        }

    const Poly q1 = Poly::lambda(1, 3), q2 = Poly::lambda(2, 3), q3 = Poly::lambda(3, 3);
    for (std::size_t i = 0; i < n0; ++i)
        for (std::size_t j = 0; j < n0; ++j)
            for (std::size_t k = 0; k < n0; ++k)
                for (std::size_t l = 0; l < n0; ++l) {
                    const ModElement ei = ModElement::basis(t.A0, i, 3);
                    const ModElement ej = ModElement::basis(t.A0, j, 3);
                    const ModElement ek = ModElement::basis(t.A0, k, 3);
                    const ModElement el = ModElement::basis(t.A0, l, 3);
                    const std::vector<ModElement> aijk{ei, ej, ek};
                    const std::vector<ModElement> ajkl{ej, ek, el};
                    const std::vector<Poly> n12{q1, q2};
                    const std::vector<Poly> n23{q2, q3};
                    ModElement t1 = eval_table(t.m10, eval_cochain(t.m3, aijk, n12), el,
                                               q1 + q2 + q3);
                    ModElement t2 = eval_table(t.m01, ei, eval_cochain(t.m3, ajkl, n23), q1);
                    const std::vector<ModElement> left{eval_table(t.m00, ei, ej, q1), ek, el};
                    const std::vector<Poly> nl{q1 + q2, q3};
                    ModElement t3 = eval_cochain(t.m3, left, nl);
                    const std::vector<ModElement> mid{ei, eval_table(t.m00, ej, ek, q2), el};
                    const std::vector<Poly> nm{q1, q2 + q3};
                    ModElement t4 = eval_cochain(t.m3, mid, nm);
                    const std::vector<ModElement> right{ei, ej, eval_table(t.m00, ek, el, q3)};
                    ModElement t5 = eval_cochain(t.m3, right, n12);
                    ModElement d = t1 + t2 - t3 + t4 - t5;
                    if (!d.is_zero()) add_failure(rep, "2-t8", {i, j, k, l}, std::move(d));
                }
    return rep;
}

ConformalBimodule CrossedModule::action_bimodule() const {
    return make_bimodule(X, Y.carrier, left_act, right_act);
}

bool CrossedModule::operator==(const CrossedModule& o) const {
    return X == o.X && Y == o.Y && rho == o.rho && left_act == o.left_act &&
           right_act == o.right_act;
}

CrossedModule make_crossed(ConformalAlgebra X, ConformalAlgebra Y, CdLinearMap rho,
                           StructureTable left_act, StructureTable right_act) {
    require_map(rho, Y.carrier, X.carrier, "boundary");
    require_table(left_act, X.carrier, Y.carrier, Y.carrier, "left action");
    require_table(right_act, Y.carrier, X.carrier, Y.carrier, "right action");
    return CrossedModule{std::move(X), std::move(Y), std::move(rho), std::move(left_act),
                         std::move(right_act)};
}

CheckReport check_crossed(const CrossedModule& c) {
    CheckReport rep;
    merge_prefixed(rep, check_associativity(c.X), "acting algebra: ");
    merge_prefixed(rep, check_associativity(c.Y), "acted algebra: ");
    const ConformalBimodule bm{c.X, c.Y.carrier, c.left_act, c.right_act};
    merge_prefixed(rep, check_bimodule(bm), "action: ");

    const std::size_t nx = c.X.rank(), ny = c.Y.rank();
    const Poly p1 = Poly::lambda(1, 2), p2 = Poly::lambda(2, 2);
    for (std::size_t x = 0; x < nx; ++x)
        for (std::size_t y1 = 0; y1 < ny; ++y1)
            for (std::size_t y2 = 0; y2 < ny; ++y2) {
                const ModElement ex = ModElement::basis(c.X.carrier, x, 2);
                const ModElement e1 = ModElement::basis(c.Y.carrier, y1, 2);
                const ModElement e2 = ModElement::basis(c.Y.carrier, y2, 2);
                ModElement dl =
                    eval_table(c.Y.mult, eval_table(c.left_act, ex, e1, p1), e2, p1 + p2) -
                    eval_table(c.left_act, ex, eval_table(c.Y.mult, e1, e2, p2), p1);
                if (!dl.is_zero())
                    add_failure(rep, "action associativity (left)", {x, y1, y2}, std::move(dl));
                ModElement dm =
                    eval_table(c.Y.mult, eval_table(c.right_act, e1, ex, p1), e2, p1 + p2) -
                    eval_table(c.Y.mult, e1, eval_table(c.left_act, ex, e2, p2), p1);
                if (!dm.is_zero())
                    add_failure(rep, "action associativity (middle)", {y1, x, y2}, std::move(dm));
                ModElement dr =
                    eval_table(c.right_act, eval_table(c.Y.mult, e1, e2, p1), ex, p1 + p2) -
                    eval_table(c.Y.mult, e1, eval_table(c.right_act, e2, ex, p2), p1);
                if (!dr.is_zero())
                    add_failure(rep, "action associativity (right)", {y1, y2, x}, std::move(dr));
            }

    const Poly l1 = Poly::lambda(1, 1);
    for (std::size_t x = 0; x < nx; ++x)
        for (std::size_t y = 0; y < ny; ++y) {
            const ModElement ex = ModElement::basis(c.X.carrier, x, 1);
            const ModElement ey = ModElement::basis(c.Y.carrier, y, 1);
            ModElement dl = c.rho.apply(eval_table(c.left_act, ex, ey, l1)) -
                            eval_table(c.X.mult, ex, c.rho.apply_basis(y, 1), l1);
            if (!dl.is_zero())
                add_failure(rep, "boundary respects the left action", {x, y}, std::move(dl));
            ModElement dr = c.rho.apply(eval_table(c.right_act, ey, ex, l1)) -
                            eval_table(c.X.mult, c.rho.apply_basis(y, 1), ex, l1);
            if (!dr.is_zero())
                add_failure(rep, "boundary respects the right action", {y, x}, std::move(dr));
        }
    for (std::size_t y1 = 0; y1 < ny; ++y1)
        for (std::size_t y2 = 0; y2 < ny; ++y2) {
            const ModElement e1 = ModElement::basis(c.Y.carrier, y1, 1);
            const ModElement e2 = ModElement::basis(c.Y.carrier, y2, 1);
            const ModElement prod = eval_table(c.Y.mult, e1, e2, l1);
            ModElement dl = eval_table(c.left_act, c.rho.apply_basis(y1, 1), e2, l1) - prod;
            if (!dl.is_zero())
                add_failure(rep, "Peiffer identity (left)", {y1, y2}, std::move(dl));
            ModElement dr = eval_table(c.right_act, e1, c.rho.apply_basis(y2, 1), l1) - prod;
            if (!dr.is_zero())
                add_failure(rep, "Peiffer identity (right)", {y1, y2}, std::move(dr));
            ModElement dh = c.rho.apply(prod) -
                            eval_table(c.X.mult, c.rho.apply_basis(y1, 1),
                                       c.rho.apply_basis(y2, 1), l1);
            if (!dh.is_zero())
                add_failure(rep, "boundary is an algebra homomorphism", {y1, y2}, std::move(dh));
        }
    return rep;
}

TwoTermSHAC crossed_to_shac(const CrossedModule& c) {
    return make_strict_twoterm(c.Y.carrier, c.X.carrier, c.rho, c.X.mult, c.left_act,
                               c.right_act);
}

CrossedModule shac_to_crossed(const TwoTermSHAC& t) {
    if (!t.is_strict())
        throw NotStrict("only a strict structure induces a crossed module");
    const Poly l1 = Poly::lambda(1, 1);
    StructureTable ymult = StructureTable::zero(t.A1, t.A1, t.A1);
    for (std::size_t i = 0; i < t.A1->rank(); ++i)
        for (std::size_t j = 0; j < t.A1->rank(); ++j)
            ymult.entry[i][j] = eval_table(t.m01, t.fd.apply_basis(i, 1),
                                           ModElement::basis(t.A1, j, 1), l1);
    return make_crossed(make_algebra(t.A0, t.m00), make_algebra(t.A1, std::move(ymult)), t.fd,
                        t.m01, t.m10);
}

SkeletalData skeletal_to_cocycle(const TwoTermSHAC& t) {
    if (!t.is_skeletal())
        throw NotSkeletal("the boundary map does not vanish");
    return SkeletalData{t.base_algebra(), t.homotopy_bimodule(), t.m3};
}

TwoTermSHAC cocycle_to_skeletal(const ConformalAlgebra& a, const ConformalBimodule& m,
                                const Cochain& zeta) {
    if (!(m.algebra == a)) throw InvalidInput("the bimodule is not over the given algebra");
    if (zeta.degree() != 3) throw DegreeMismatch("a degree-3 cochain is required");
    if (!same_bimodule_data(zeta.coefficients(), m))
        throw InvalidInput("the cochain lives over different coefficient data");
    const CocycleReport r = is_cocycle(zeta);
    if (!r.is_cocycle)
        throw NotACocycle("the prescribed ternary homotopy fails the cocycle equation");
    return make_twoterm(m.carrier, a.carrier, CdLinearMap::zero(m.carrier, a.carrier), a.mult,
                        m.left_action, m.right_action,
                        StructureTable::zero(m.carrier, m.carrier, m.carrier), zeta);
}

bool TwoTermMorphism::operator==(const TwoTermMorphism& o) const {
    return f0 == o.f0 && f1 == o.f1 && f2 == o.f2;
}

TwoTermMorphism identity_morphism(const TwoTermSHAC& t) {
    return TwoTermMorphism{CdLinearMap::identity(t.A0), CdLinearMap::identity(t.A1),
                           StructureTable::zero(t.A0, t.A0, t.A1)};
}

CheckReport check_morphism(const TwoTermMorphism& f, const TwoTermSHAC& source,
                           const TwoTermSHAC& target) {
    require_map(f.f0, source.A0, target.A0, "degree-zero component");
    require_map(f.f1, source.A1, target.A1, "degree-one component");
    require_table(f.f2, source.A0, source.A0, target.A1, "binary correction");

    CheckReport rep;
    const std::size_t n0 = source.A0->rank(), n1 = source.A1->rank();
    const CdLinearMap chain = target.fd.compose(f.f1) - f.f0.compose(source.fd);
    for (std::size_t b = 0; b < n1; ++b) {
        ModElement d = chain.apply_basis(b, 1);
        if (!d.is_zero()) add_failure(rep, "chain map", {b}, std::move(d));
    }

    const Poly l1 = Poly::lambda(1, 1);
    for (std::size_t i = 0; i < n0; ++i)
        for (std::size_t j = 0; j < n0; ++j) {
            const ModElement ei = ModElement::basis(source.A0, i, 1);
            const ModElement ej = ModElement::basis(source.A0, j, 1);
            ModElement d = target.fd.apply(eval_table(f.f2, ei, ej, l1)) -
                           (f.f0.apply(eval_table(source.m00, ei, ej, l1)) -
                            eval_table(target.m00, f.f0.apply_basis(i, 1),
                                       f.f0.apply_basis(j, 1), l1));
            if (!d.is_zero())
                add_failure(rep, "morphism compatibility (products)", {i, j}, std::move(d));
        }
    for (std::size_t a = 0; a < n0; ++a)
        for (std::size_t b = 0; b < n1; ++b) {
            const ModElement ea = ModElement::basis(source.A0, a, 1);
            const ModElement eb = ModElement::basis(source.A1, b, 1);
            ModElement dr = eval_table(f.f2, ea, source.fd.apply_basis(b, 1), l1) -
                            (f.f1.apply(eval_table(source.m01, ea, eb, l1)) -
                             eval_table(target.m01, f.f0.apply_basis(a, 1),
                                        f.f1.apply_basis(b, 1), l1));
            if (!dr.is_zero())
                add_failure(rep, "morphism compatibility (right slot)", {a, b}, std::move(dr));
            ModElement dl = eval_table(f.f2, source.fd.apply_basis(b, 1), ea, l1) -
                            (f.f1.apply(eval_table(source.m10, eb, ea, l1)) -
                             eval_table(target.m10, f.f1.apply_basis(b, 1),
                                        f.f0.apply_basis(a, 1), l1));
            if (!dl.is_zero())
                add_failure(rep, "morphism compatibility (left slot)", {b, a}, std::move(dl));
        }

    const Poly p1 = Poly::lambda(1, 2), p2 = Poly::lambda(2, 2);
    for (std::size_t i = 0; i < n0; ++i)
        for (std::size_t j = 0; j < n0; ++j)
            for (std::size_t k = 0; k < n0; ++k) {
                const ModElement ei = ModElement::basis(source.A0, i, 2);
                const ModElement ej = ModElement::basis(source.A0, j, 2);
                const ModElement ek = ModElement::basis(source.A0, k, 2);
                const std::array<std::size_t, 3> tup{i, j, k};
                ModElement lhs =
                    eval_table(f.f2, eval_table(source.m00, ei, ej, p1), ek, p1 + p2) -
                    eval_table(f.f2, ei, eval_table(source.m00, ej, ek, p2), p1) +
                    eval_table(target.m01, f.f0.apply_basis(i, 2),
                               eval_table(f.f2, ej, ek, p2), p1);
                const std::vector<ModElement> images{f.f0.apply_basis(i, 2),
                                                     f.f0.apply_basis(j, 2),
                                                     f.f0.apply_basis(k, 2)};
                ModElement rhs = f.f1.apply(source.m3.value(tup)) -
                                 eval_cochain(target.m3, images) +
                                 eval_table(target.m10, eval_table(f.f2, ei, ej, p1),
                                            f.f0.apply_basis(k, 2), p1 + p2);
                ModElement d = lhs - rhs;
                if (!d.is_zero())
                    add_failure(rep, "morphism compatibility (homotopies)", {i, j, k},
                                std::move(d));
            }
    return rep;
}

TwoTermMorphism compose_morphisms(const TwoTermMorphism& g, const TwoTermMorphism& f) {
    if (!same_module(g.f0.source(), f.f0.target()) ||
        !same_module(g.f1.source(), f.f1.target()) ||
        !same_module(f.f2.out, f.f1.target()) || !same_module(g.f2.left, g.f0.source()))
        throw ModuleMismatch("morphisms are not composable");
    const Poly l1 = Poly::lambda(1, 1);
    StructureTable h = StructureTable::zero(f.f0.source(), f.f0.source(), g.f1.target());
    for (std::size_t i = 0; i < f.f0.source()->rank(); ++i)
        for (std::size_t j = 0; j < f.f0.source()->rank(); ++j) {
            const ModElement ei = ModElement::basis(f.f0.source(), i, 1);
            const ModElement ej = ModElement::basis(f.f0.source(), j, 1);
            h.entry[i][j] = eval_table(g.f2, f.f0.apply_basis(i, 1), f.f0.apply_basis(j, 1), l1) +
                            g.f1.apply(eval_table(f.f2, ei, ej, l1));
        }
    return TwoTermMorphism{g.f0.compose(f.f0), g.f1.compose(f.f1), std::move(h)};
}

bool CrossedExtension::operator==(const CrossedExtension& o) const {
    return same_bimodule_data(M, o.M) && Y == o.Y && X == o.X && alpha == o.alpha &&
           beta == o.beta && gamma == o.gamma && left_act == o.left_act &&
           right_act == o.right_act && varrho == o.varrho && image_basis == o.image_basis &&
           sigma_values == o.sigma_values;
}

namespace {

// sigma applied to an element of the boundary image: coordinates in the
// stored image basis (unique, the columns are k[D]-independent), then the
// same combination of the stored preimages.
ModElement apply_kernel_section(const CrossedExtension& s, const ModElement& v) {
    auto sol = solve_over_kd(s.image_basis, coeff_vector(v));
    if (!sol.solvable)
        throw InvalidInput("a section defect value lies outside the boundary image");
    const std::size_t arity = v.arity();
    ModElement out(s.Y.carrier, arity);
    for (std::size_t row = 0; row < s.Y.rank(); ++row) {
        Poly acc(arity);
        for (std::size_t c = 0; c < sol.particular.size(); ++c)
            acc += s.sigma_values[row][c].promote(arity) * sol.particular[c];
        out[row] = std::move(acc);
    }
    return out;
}

void verify_base_section(const ConformalBimodule& M, const CdLinearMap& alpha,
                         const CdLinearMap& gamma, const StructureTable& left_act,
                         const StructureTable& right_act, const CdLinearMap& varrho) {
    const ConformalAlgebra& A = M.algebra;
    require_map(varrho, A.carrier, gamma.source(), "base section");
    if (!(gamma.compose(varrho) == CdLinearMap::identity(A.carrier)))
        throw InvalidInput("the base section does not split the quotient map");
    const Poly l1 = Poly::lambda(1, 1);
    for (std::size_t i = 0; i < A.rank(); ++i)
        for (std::size_t j = 0; j < M.carrier->rank(); ++j) {
            const ModElement lv =
                eval_table(left_act, varrho.apply_basis(i, 1), alpha.apply_basis(j, 1), l1);
            auto ls = solve_over_kd(alpha.matrix(), coeff_vector(lv));
            if (!ls.solvable || !(ModElement(M.carrier, ls.particular) ==
                                  M.left_action.entry[i][j]))
                throw InvalidBimodule(
                    "the left action induced through the base section differs from the "
                    "declared one");
            const ModElement rv =
                eval_table(right_act, alpha.apply_basis(j, 1), varrho.apply_basis(i, 1), l1);
            auto rs = solve_over_kd(alpha.matrix(), coeff_vector(rv));
            if (!rs.solvable || !(ModElement(M.carrier, rs.particular) ==
                                  M.right_action.entry[j][i]))
                throw InvalidBimodule(
                    "the right action induced through the base section differs from the "
                    "declared one");
        }
}

CrossedExtension build_crossed_extension(ConformalBimodule M, ConformalAlgebra Y,
                                         ConformalAlgebra X, CdLinearMap alpha,
                                         CdLinearMap beta, CdLinearMap gamma,
                                         StructureTable left_act, StructureTable right_act,
                                         std::optional<CdLinearMap> varrho) {
    const ConformalAlgebra& A = M.algebra;
    require_map(alpha, M.carrier, Y.carrier, "kernel inclusion");
    require_map(beta, Y.carrier, X.carrier, "middle boundary");
    require_map(gamma, X.carrier, A.carrier, "quotient map");
    require_table(left_act, X.carrier, Y.carrier, Y.carrier, "left action");
    require_table(right_act, Y.carrier, X.carrier, Y.carrier, "right action");

    const CheckReport cm =
        check_crossed(CrossedModule{X, Y, beta, left_act, right_act});
    if (!cm.ok)
        throw InvalidInput("the middle data is not a crossed module: " + cm.summary());
    const CheckReport bm = check_bimodule(M);
    if (!bm.ok) throw InvalidInput("the declared bimodule is invalid: " + bm.summary());
    const ConformalAlgebra mzero =
        make_algebra(M.carrier, StructureTable::zero(M.carrier, M.carrier, M.carrier));
    const CheckReport ha = check_homomorphism(mzero, Y, alpha);
    if (!ha.ok)
        throw InvalidInput("the kernel inclusion is not an algebra homomorphism: " +
                           ha.summary());
    const CheckReport hg = check_homomorphism(X, A, gamma);
    if (!hg.ok)
        throw InvalidInput("the quotient map is not an algebra homomorphism: " + hg.summary());

    // exactness, node by node
    const std::vector<Poly> zy(Y.rank(), Poly(0));
    if (!solve_over_kd(alpha.matrix(), zy).kernel.empty())
        throw InvalidInput("the kernel inclusion is not injective");
    if (!beta.compose(alpha).is_zero())
        throw InvalidInput("the kernel inclusion does not land in the middle kernel");
    const std::vector<Poly> zx(X.rank(), Poly(0));
    for (const auto& v : solve_over_kd(beta.matrix(), zx).kernel)
        if (!in_column_span(alpha.matrix(), v))
            throw InvalidInput("the middle kernel exceeds the image of the kernel inclusion");
    if (!gamma.compose(beta).is_zero())
        throw InvalidInput("the middle boundary does not land in the quotient kernel");
    const std::vector<Poly> za(A.rank(), Poly(0));
    for (const auto& v : solve_over_kd(gamma.matrix(), za).kernel)
        if (!in_column_span(beta.matrix(), v))
            throw InvalidInput("the quotient kernel exceeds the image of the middle boundary");
    for (std::size_t i = 0; i < A.rank(); ++i) {
        std::vector<Poly> e(A.rank(), Poly(0));
        e[i] = Poly::constant(Scalar(1), 0);
        if (!in_column_span(gamma.matrix(), e))
            throw InvalidInput("the quotient map is not surjective");
    }

    if (!varrho) {
        PolyMatrix sec(X.rank(), std::vector<Poly>(A.rank(), Poly(0)));
        for (std::size_t i = 0; i < A.rank(); ++i) {
            std::vector<Poly> e(A.rank(), Poly(0));
            e[i] = Poly::constant(Scalar(1), 0);
            auto sol = solve_over_kd(gamma.matrix(), e);
            if (!sol.solvable)
                throw Error("certified surjectivity yielded no preimage");
            for (std::size_t r = 0; r < X.rank(); ++r) sec[r][i] = sol.particular[r];
        }
        varrho = CdLinearMap(A.carrier, X.carrier, std::move(sec));
    }
    verify_base_section(M, alpha, gamma, left_act, right_act, *varrho);

    const SmithDecomposition sd = smith_normal_form(beta.matrix());
    const PolyMatrix mr = mat_mul(beta.matrix(), sd.right);
    const std::size_t r = sd.rank();
    PolyMatrix image(X.rank(), std::vector<Poly>(r, Poly(0)));
    for (std::size_t row = 0; row < X.rank(); ++row)
        for (std::size_t c = 0; c < r; ++c) image[row][c] = mr[row][c];
    PolyMatrix sigma(Y.rank(), std::vector<Poly>(r, Poly(0)));
    for (std::size_t row = 0; row < Y.rank(); ++row)
        for (std::size_t c = 0; c < r; ++c) sigma[row][c] = sd.right[row][c];

    return CrossedExtension{std::move(M),         std::move(Y),        std::move(X),
                            std::move(alpha),     std::move(beta),     std::move(gamma),
                            std::move(left_act),  std::move(right_act), std::move(varrho),
                            std::move(image),     std::move(sigma)};
}

}  // namespace

CrossedExtension make_crossed_extension(ConformalBimodule M, ConformalAlgebra Y,
                                        ConformalAlgebra X, CdLinearMap alpha,
                                        CdLinearMap beta, CdLinearMap gamma,
                                        StructureTable left_act, StructureTable right_act) {
    return build_crossed_extension(std::move(M), std::move(Y), std::move(X), std::move(alpha),
                                   std::move(beta), std::move(gamma), std::move(left_act),
                                   std::move(right_act), std::nullopt);
}

CrossedExtension make_crossed_extension(ConformalBimodule M, ConformalAlgebra Y,
                                        ConformalAlgebra X, CdLinearMap alpha,
                                        CdLinearMap beta, CdLinearMap gamma,
                                        StructureTable left_act, StructureTable right_act,
                                        CdLinearMap varrho) {
    return build_crossed_extension(std::move(M), std::move(Y), std::move(X), std::move(alpha),
                                   std::move(beta), std::move(gamma), std::move(left_act),
                                   std::move(right_act), std::move(varrho));
}

bool is_split(const CrossedExtension& s) { return s.varrho.has_value(); }

CrossedModule crossed_module_of(const CrossedExtension& s) {
    return CrossedModule{s.X, s.Y, s.beta, s.left_act, s.right_act};
}

CrossedExtension with_base_section(const CrossedExtension& s, CdLinearMap varrho) {
    verify_base_section(s.M, s.alpha, s.gamma, s.left_act, s.right_act, varrho);
    CrossedExtension out = s;
    out.varrho = std::move(varrho);
    return out;
}

CrossedExtension with_kernel_section(const CrossedExtension& s, PolyMatrix sigma_values) {
    const std::size_t cols = s.image_basis.empty() ? 0 : s.image_basis[0].size();
    if (sigma_values.size() != s.Y.rank())
        throw ModuleMismatch("preimage matrix has the wrong number of rows");
    for (const auto& row : sigma_values) {
        if (row.size() != cols)
            throw ModuleMismatch("preimage matrix has the wrong number of columns");
        for (const auto& e : row)
            if (e.arity() != 0) throw ArityMismatch("preimages must be D-only combinations");
    }
    if (!(mat_mul(s.beta.matrix(), sigma_values) == s.image_basis))
        throw InvalidInput("the proposed preimages do not map onto the stored image basis");
    CrossedExtension out = s;
    out.sigma_values = std::move(sigma_values);
    return out;
}

StructureTable base_section_defect(const CrossedExtension& s) {
    if (!s.varrho) throw NotSplit("the extension has no base section attached");
    const CdLinearMap& vr = *s.varrho;
    const ConformalAlgebra& A = s.M.algebra;
    const Poly l1 = Poly::lambda(1, 1);
    StructureTable g = StructureTable::zero(A.carrier, A.carrier, s.Y.carrier);
    for (std::size_t i = 0; i < A.rank(); ++i)
        for (std::size_t j = 0; j < A.rank(); ++j) {
            const ModElement ei = ModElement::basis(A.carrier, i, 1);
            const ModElement ej = ModElement::basis(A.carrier, j, 1);
            const ModElement defect =
                eval_table(s.X.mult, vr.apply_basis(i, 1), vr.apply_basis(j, 1), l1) -
                vr.apply(eval_table(A.mult, ei, ej, l1));
            g.entry[i][j] = apply_kernel_section(s, defect);
        }
    return g;
}

Cochain crossed_extension_theta(const CrossedExtension& s) {
    if (!s.varrho) throw NotSplit("the extension has no base section attached");
    const StructureTable g = base_section_defect(s);
    const CdLinearMap& vr = *s.varrho;
    const ConformalAlgebra& A = s.M.algebra;
    const Poly p1 = Poly::lambda(1, 2), p2 = Poly::lambda(2, 2);
    Cochain f = Cochain::zero(3, s.M);
    for (std::size_t i = 0; i < A.rank(); ++i)
        for (std::size_t j = 0; j < A.rank(); ++j)
            for (std::size_t k = 0; k < A.rank(); ++k) {
                const ModElement ei = ModElement::basis(A.carrier, i, 2);
                const ModElement ej = ModElement::basis(A.carrier, j, 2);
                const ModElement ek = ModElement::basis(A.carrier, k, 2);
                const ModElement val =
                    eval_table(s.left_act, vr.apply_basis(i, 2),
                               eval_table(g, ej, ek, p2), p1) -
                    eval_table(g, eval_table(A.mult, ei, ej, p1), ek, p1 + p2) +
                    eval_table(g, ei, eval_table(A.mult, ej, ek, p2), p1) -
                    eval_table(s.right_act, eval_table(g, ei, ej, p1),
                               vr.apply_basis(k, 2), p1 + p2);
                if (!s.beta.apply(val).is_zero())
                    throw InvalidInput(
                        "a homotopy value survives the middle boundary; the extension data "
                        "is inconsistent");
                const std::array<std::size_t, 3> tup{i, j, k};
                f.set_value(tup, pull_back(s.alpha, val,
                                           "a homotopy value lies outside the kernel image"));
            }
    const CocycleReport r = is_cocycle(f);
    if (!r.is_cocycle)
        throw InvalidInput("the section defect violates the cocycle equation; the extension "
                           "data is inconsistent");
    return f;
}

namespace {

void require_same_extension_data(const CrossedExtension& a, const CrossedExtension& b,
                                 bool compare_sigma, bool compare_varrho) {
    const bool same = same_bimodule_data(a.M, b.M) && a.Y == b.Y && a.X == b.X &&
                      a.alpha == b.alpha && a.beta == b.beta && a.gamma == b.gamma &&
                      a.left_act == b.left_act && a.right_act == b.right_act &&
                      a.image_basis == b.image_basis &&
                      (!compare_sigma || a.sigma_values == b.sigma_values) &&
                      (!compare_varrho || a.varrho == b.varrho);
    if (!same)
        throw InvalidInput("the two extensions do not share the same underlying data");
}

}  // namespace

Cochain base_section_correction(const CrossedExtension& from, const CrossedExtension& to) {
    if (!from.varrho || !to.varrho)
        throw NotSplit("both extensions need a base section attached");
    require_same_extension_data(from, to, /*compare_sigma=*/true, /*compare_varrho=*/false);
    const ConformalAlgebra& A = from.M.algebra;
    const CdLinearMap diff = *to.varrho - *from.varrho;

    PolyMatrix etam(from.Y.rank(), std::vector<Poly>(A.rank(), Poly(0)));
    for (std::size_t i = 0; i < A.rank(); ++i) {
        auto sol = solve_over_kd(from.beta.matrix(), matrix_column(diff.matrix(), i));
        if (!sol.solvable)
            throw InvalidInput(
                "the base sections do not differ by a value in the boundary image");
        for (std::size_t row = 0; row < from.Y.rank(); ++row) etam[row][i] = sol.particular[row];
    }
    const CdLinearMap eta(A.carrier, from.Y.carrier, std::move(etam));
    const CdLinearMap& vrp = *to.varrho;

    const StructureTable g = base_section_defect(from);
    const StructureTable gbar = base_section_defect(to);
    const Poly l1 = Poly::lambda(1, 1);
    Cochain corr = Cochain::zero(2, from.M);
    for (std::size_t i = 0; i < A.rank(); ++i)
        for (std::size_t j = 0; j < A.rank(); ++j) {
            const ModElement ei = ModElement::basis(A.carrier, i, 1);
            const ModElement ej = ModElement::basis(A.carrier, j, 1);
            const ModElement twist =
                eval_table(from.left_act, vrp.apply_basis(i, 1), eta.apply_basis(j, 1), l1) +
                eval_table(from.right_act, eta.apply_basis(i, 1), vrp.apply_basis(j, 1), l1) -
                eta.apply(eval_table(A.mult, ei, ej, l1)) -
                eval_table(from.Y.mult, eta.apply_basis(i, 1), eta.apply_basis(j, 1), l1);
            const ModElement val = gbar.entry[i][j] - g.entry[i][j] - twist;
            const std::array<std::size_t, 2> tup{i, j};
            corr.set_value(tup, pull_back(from.alpha, val,
                                          "the section comparison leaves the kernel image"));
        }
    return corr;
}

Cochain kernel_section_correction(const CrossedExtension& from, const CrossedExtension& to) {
    if (!from.varrho || !to.varrho)
        throw NotSplit("both extensions need a base section attached");
    require_same_extension_data(from, to, /*compare_sigma=*/false, /*compare_varrho=*/true);
    const ConformalAlgebra& A = from.M.algebra;
    const CdLinearMap& vr = *from.varrho;
    const Poly l1 = Poly::lambda(1, 1);
    Cochain corr = Cochain::zero(2, from.M);
    for (std::size_t i = 0; i < A.rank(); ++i)
        for (std::size_t j = 0; j < A.rank(); ++j) {
            const ModElement ei = ModElement::basis(A.carrier, i, 1);
            const ModElement ej = ModElement::basis(A.carrier, j, 1);
            const ModElement defect =
                eval_table(from.X.mult, vr.apply_basis(i, 1), vr.apply_basis(j, 1), l1) -
                vr.apply(eval_table(A.mult, ei, ej, l1));
            const ModElement val =
                apply_kernel_section(to, defect) - apply_kernel_section(from, defect);
            const std::array<std::size_t, 2> tup{i, j};
            corr.set_value(tup, pull_back(from.alpha, val,
                                          "the section comparison leaves the kernel image"));
        }
    return corr;
}

}  // namespace confalg
