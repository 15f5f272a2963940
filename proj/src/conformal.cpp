#include "confalg/conformal.hpp"

#include "confalg/error.hpp"

#include <sstream>

namespace confalg {

namespace {

void require_entry_shape(const StructureTable& t) {
    if (!t.left || !t.right || !t.out) throw InvalidInput("structure table missing a module");
    if (t.entry.size() != t.left->rank()) throw InvalidInput("structure table row count mismatch");
    for (const auto& row : t.entry) {
        if (row.size() != t.right->rank())
            throw InvalidInput("structure table column count mismatch");
        for (const auto& e : row) {
            if (!same_module(e.module(), t.out))
                throw ModuleMismatch("structure table entry lives in the wrong module");
            if (e.arity() != 1)
                throw ArityMismatch("structure table entries must have arity 1");
        }
    }
}

}  // namespace

StructureTable StructureTable::zero(ModulePtr left, ModulePtr right, ModulePtr out) {
    StructureTable t;
    t.left = std::move(left);
    t.right = std::move(right);
    t.out = std::move(out);
    t.entry.assign(t.left->rank(),
                   std::vector<ModElement>(t.right->rank(), ModElement(t.out, 1)));
    return t;
}

bool StructureTable::is_zero() const {
    for (const auto& row : entry)
        for (const auto& e : row)
            if (!e.is_zero()) return false;
    return true;
}

bool StructureTable::operator==(const StructureTable& o) const {
    return same_module(left, o.left) && same_module(right, o.right) &&
           same_module(out, o.out) && entry == o.entry;
}

ModElement eval_table(const StructureTable& t, const ModElement& x, const ModElement& y,
                      const Poly& nu) {
    if (!same_module(x.module(), t.left) || !same_module(y.module(), t.right))
        throw ModuleMismatch("eval_table operands do not match the table modules");
    const std::size_t n = nu.arity();
    if (x.arity() != n || y.arity() != n)
        throw ArityMismatch("eval_table operands must share the arity of the product value");
    const Poly shifted = nu + Poly::partial(n);
    ModElement out(t.out, n);
    for (std::size_t i = 0; i < x.rank(); ++i) {
        if (x[i].is_zero()) continue;
        const Poly f = x[i].subst_partial(-nu);
        for (std::size_t j = 0; j < y.rank(); ++j) {
            if (y[j].is_zero()) continue;
            const Poly fg = f * y[j].subst_partial(shifted);
            const ModElement& e = t.entry[i][j];
            for (std::size_t m = 0; m < out.rank(); ++m) {
                if (e[m].is_zero()) continue;
                out[m] += fg * e[m].at_lambda1(nu);
            }
        }
    }
    return out;
}

std::string CheckReport::summary() const {
    if (ok) return "ok";
    std::ostringstream out;
    out << failures.size() << " identity failure(s); first: " << failures.front().identity
        << " at (";
    for (std::size_t i = 0; i < failures.front().indices.size(); ++i)
        out << (i ? "," : "") << failures.front().indices[i];
    out << "), difference " << to_string(failures.front().difference);
    return out.str();
}

bool ConformalAlgebra::operator==(const ConformalAlgebra& o) const {
    return same_module(carrier, o.carrier) && mult == o.mult;
}

ConformalAlgebra make_algebra(ModulePtr carrier, StructureTable mult) {
    if (!same_module(mult.left, carrier) || !same_module(mult.right, carrier) ||
        !same_module(mult.out, carrier))
        throw ModuleMismatch("algebra structure table must act on the carrier");
    require_entry_shape(mult);
    return ConformalAlgebra{std::move(carrier), std::move(mult)};
}

ModElement conformal_product(const ConformalAlgebra& alg, const ModElement& x,
                             const ModElement& y, const Poly& nu) {
    return eval_table(alg.mult, x, y, nu);
}

namespace {

void record(CheckReport& rep, const std::string& identity, std::vector<std::size_t> idx,
            const ModElement& diff) {
    if (diff.is_zero()) return;
    rep.ok = false;
    rep.failures.push_back({identity, std::move(idx), diff});
}

}  // namespace

CheckReport check_associativity(const ConformalAlgebra& alg) {
    CheckReport rep;
    const Poly lam = Poly::lambda(1, 2), mu = Poly::lambda(2, 2);
    const Poly both = lam + mu;
    const std::size_t n = alg.rank();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const ModElement ei = ModElement::basis(alg.carrier, i, 2);
            const ModElement ej = ModElement::basis(alg.carrier, j, 2);
            const ModElement ij = eval_table(alg.mult, ei, ej, lam);
            for (std::size_t k = 0; k < n; ++k) {
                const ModElement ek = ModElement::basis(alg.carrier, k, 2);
                const ModElement lhs = eval_table(alg.mult, ij, ek, both);
                const ModElement rhs =
                    eval_table(alg.mult, ei, eval_table(alg.mult, ej, ek, mu), lam);
                record(rep, "associativity", {i, j, k}, lhs - rhs);
            }
        }
    return rep;
}

ConformalAlgebra cur_of(const std::vector<std::string>& basis,
                        const std::vector<std::vector<std::vector<Scalar>>>& table) {
    const std::size_t n = basis.size();
    if (table.size() != n) throw InvalidInput("current-algebra table row count mismatch");
    for (const auto& row : table) {
        if (row.size() != n) throw InvalidInput("current-algebra table column count mismatch");
        for (const auto& cell : row)
            if (cell.size() != n)
                throw InvalidInput("current-algebra table entry length mismatch");
    }
    // Associativity of the underlying scalar algebra.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l) {
                    Scalar lhs(0), rhs(0);
                    for (std::size_t m = 0; m < n; ++m) {
                        lhs += table[i][j][m] * table[m][k][l];
                        rhs += table[j][k][m] * table[i][m][l];
                    }
                    if (lhs != rhs)
                        throw NotAssociativeBase(
                            "scalar multiplication table fails associativity at (" +
                            std::to_string(i) + "," + std::to_string(j) + "," +
                            std::to_string(k) + ")");
                }
    ModulePtr carrier = make_module(basis);
    StructureTable t = StructureTable::zero(carrier, carrier, carrier);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                t.entry[i][j][k] = Poly::constant(table[i][j][k], 1);
    return make_algebra(carrier, std::move(t));
}

ConformalAlgebra trivial_algebra(const std::vector<std::string>& basis) {
    ModulePtr carrier = make_module(basis);
    return make_algebra(carrier, StructureTable::zero(carrier, carrier, carrier));
}

namespace {

// Re-express an element of `part` inside the direct sum at the given offset.
ModElement embed_block(const ModElement& v, const ModulePtr& sum, std::size_t offset) {
    ModElement out(sum, v.arity());
    for (std::size_t i = 0; i < v.rank(); ++i) out[offset + i] = v[i];
    return out;
}

}  // namespace

ConformalAlgebra direct_sum(const ConformalAlgebra& a, const ConformalAlgebra& b) {
    ModulePtr carrier = labeled_sum_module(a.carrier, b.carrier, "l", "r");
    StructureTable t = StructureTable::zero(carrier, carrier, carrier);
    const std::size_t na = a.rank();
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j)
            t.entry[i][j] = embed_block(a.mult.entry[i][j], carrier, 0);
    for (std::size_t i = 0; i < b.rank(); ++i)
        for (std::size_t j = 0; j < b.rank(); ++j)
            t.entry[na + i][na + j] = embed_block(b.mult.entry[i][j], carrier, na);
    return make_algebra(carrier, std::move(t));
}

ConformalBimodule make_bimodule(ConformalAlgebra algebra, ModulePtr carrier,
                                StructureTable left_action, StructureTable right_action) {
    if (!same_module(left_action.left, algebra.carrier) ||
        !same_module(left_action.right, carrier) || !same_module(left_action.out, carrier))
        throw ModuleMismatch("left action must map algebra x carrier -> carrier");
    if (!same_module(right_action.left, carrier) ||
        !same_module(right_action.right, algebra.carrier) ||
        !same_module(right_action.out, carrier))
        throw ModuleMismatch("right action must map carrier x algebra -> carrier");
    require_entry_shape(left_action);
    require_entry_shape(right_action);
    return ConformalBimodule{std::move(algebra), std::move(carrier), std::move(left_action),
                             std::move(right_action)};
}

ConformalBimodule regular_bimodule(const ConformalAlgebra& alg) {
    return make_bimodule(alg, alg.carrier, alg.mult, alg.mult);
}

ConformalBimodule zero_bimodule(const ConformalAlgebra& alg, ModulePtr carrier) {
    StructureTable l = StructureTable::zero(alg.carrier, carrier, carrier);
    StructureTable r = StructureTable::zero(carrier, alg.carrier, carrier);
    return make_bimodule(alg, carrier, std::move(l), std::move(r));
}

ModElement left_act(const ConformalBimodule& m, const ModElement& a, const ModElement& v,
                    const Poly& nu) {
    return eval_table(m.left_action, a, v, nu);
}

ModElement right_act(const ConformalBimodule& m, const ModElement& v, const ModElement& a,
                     const Poly& nu) {
    return eval_table(m.right_action, v, a, nu);
}

CheckReport check_bimodule(const ConformalBimodule& m) {
    CheckReport rep;
    const ConformalAlgebra& A = m.algebra;
    const Poly lam1 = Poly::lambda(1, 1);
    const Poly dee1 = Poly::partial(1);
    const Poly lam = Poly::lambda(1, 2), mu = Poly::lambda(2, 2);
    const Poly both = lam + mu;
    const std::size_t na = A.rank(), nm = m.carrier->rank();

    // Sesquilinearity in each slot of each action (holds by construction of
    // eval_table; checked anyway so corrupt tables cannot hide behind it).
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nm; ++j) {
            const ModElement a = ModElement::basis(A.carrier, i, 1);
            const ModElement v = ModElement::basis(m.carrier, j, 1);
            const ModElement av = left_act(m, a, v, lam1);
            record(rep, "left action sesquilinear in the algebra slot", {i, j},
                   left_act(m, dee1 * a, v, lam1) + lam1 * av);
            record(rep, "left action sesquilinear in the module slot", {i, j},
                   left_act(m, a, dee1 * v, lam1) - (dee1 + lam1) * av);
            const ModElement va = right_act(m, v, a, lam1);
            record(rep, "right action sesquilinear in the module slot", {j, i},
                   right_act(m, dee1 * v, a, lam1) + lam1 * va);
            record(rep, "right action sesquilinear in the algebra slot", {j, i},
                   right_act(m, v, dee1 * a, lam1) - (dee1 + lam1) * va);
        }

    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j) {
            const ModElement a = ModElement::basis(A.carrier, i, 2);
            const ModElement b = ModElement::basis(A.carrier, j, 2);
            const ModElement ab = conformal_product(A, a, b, lam);
            for (std::size_t k = 0; k < nm; ++k) {
                const ModElement v = ModElement::basis(m.carrier, k, 2);
                record(rep, "left module associativity", {i, j, k},
                       left_act(m, ab, v, both) - left_act(m, a, left_act(m, b, v, mu), lam));
                record(rep, "right module associativity", {k, i, j},
                       right_act(m, right_act(m, v, a, lam), b, both) -
                           right_act(m, v, ab, lam));
                record(rep, "left-right compatibility", {i, k, j},
                       right_act(m, left_act(m, a, v, lam), b, both) -
                           left_act(m, a, right_act(m, v, b, mu), lam));
            }
        }
    return rep;
}

ConformalAlgebra semidirect_product(const ConformalAlgebra& b, const ConformalBimodule& m) {
    if (!(m.algebra == b))
        throw ModuleMismatch("bimodule is not over the given algebra");
    const CheckReport bc = check_bimodule(m);
    if (!bc.ok) throw InvalidBimodule("action tables fail the bimodule axioms: " + bc.summary());
    ModulePtr carrier = labeled_sum_module(m.carrier, b.carrier, "m", "b");
    const std::size_t nm = m.carrier->rank();
    StructureTable t = StructureTable::zero(carrier, carrier, carrier);
    for (std::size_t i = 0; i < nm; ++i)
        for (std::size_t j = 0; j < b.rank(); ++j)
            t.entry[i][nm + j] = embed_block(m.right_action.entry[i][j], carrier, 0);
    for (std::size_t i = 0; i < b.rank(); ++i) {
        for (std::size_t j = 0; j < nm; ++j)
            t.entry[nm + i][j] = embed_block(m.left_action.entry[i][j], carrier, 0);
        for (std::size_t j = 0; j < b.rank(); ++j)
            t.entry[nm + i][nm + j] = embed_block(b.mult.entry[i][j], carrier, nm);
    }
    return make_algebra(carrier, std::move(t));
}

CheckReport check_homomorphism(const ConformalAlgebra& src, const ConformalAlgebra& dst,
                               const CdLinearMap& f) {
    if (!same_module(f.source(), src.carrier) || !same_module(f.target(), dst.carrier))
        throw ModuleMismatch("homomorphism candidate has the wrong source or target");
    CheckReport rep;
    const Poly lam = Poly::lambda(1, 1);
    for (std::size_t i = 0; i < src.rank(); ++i)
        for (std::size_t j = 0; j < src.rank(); ++j) {
            const ModElement ei = ModElement::basis(src.carrier, i, 1);
            const ModElement ej = ModElement::basis(src.carrier, j, 1);
            const ModElement lhs = f.apply(conformal_product(src, ei, ej, lam));
            const ModElement rhs =
                conformal_product(dst, f.apply_basis(i, 1), f.apply_basis(j, 1), lam);
            record(rep, "homomorphism", {i, j}, lhs - rhs);
        }
    return rep;
}

CheckReport check_automorphism(const ConformalAlgebra& alg, const CdLinearMap& f) {
    if (!f.inverse())
        throw NotInvertible("matrix is not invertible over the polynomial ring in D");
    return check_homomorphism(alg, alg, f);
}

CheckReport check_derivation(const ConformalAlgebra& alg, const ConformalBimodule& m,
                             const CdLinearMap& d) {
    if (!same_module(d.source(), alg.carrier) || !same_module(d.target(), m.carrier))
        throw ModuleMismatch("derivation candidate has the wrong source or target");
    if (!(m.algebra == alg)) throw ModuleMismatch("bimodule is not over the given algebra");
    CheckReport rep;
    const Poly lam = Poly::lambda(1, 1);
    for (std::size_t i = 0; i < alg.rank(); ++i)
        for (std::size_t j = 0; j < alg.rank(); ++j) {
            const ModElement ei = ModElement::basis(alg.carrier, i, 1);
            const ModElement ej = ModElement::basis(alg.carrier, j, 1);
            const ModElement lhs = d.apply(conformal_product(alg, ei, ej, lam));
            const ModElement rhs = left_act(m, ei, d.apply_basis(j, 1), lam) +
                                   right_act(m, d.apply_basis(i, 1), ej, lam);
            record(rep, "derivation", {i, j}, lhs - rhs);
        }
    return rep;
}

CheckReport check_algebra_derivation(const ConformalAlgebra& alg, const CdLinearMap& d) {
    return check_derivation(alg, regular_bimodule(alg), d);
}

}  // namespace confalg
