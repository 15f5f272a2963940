#include "confalg/module.hpp"

#include <algorithm>
#include <sstream>

namespace confalg {

ModulePtr make_module(std::vector<std::string> basis) {
    return std::make_shared<FreeCdModule>(FreeCdModule{std::move(basis)});
}

ModulePtr direct_sum_module(const ModulePtr& a, const ModulePtr& b) {
    std::vector<std::string> names = a->basis;
    for (const auto& n : b->basis) {
        if (std::find(names.begin(), names.end(), n) != names.end())
            throw ModuleMismatch("direct sum with a duplicated basis name: " + n);
        names.push_back(n);
    }
    return make_module(std::move(names));
}

ModulePtr labeled_sum_module(const ModulePtr& a, const ModulePtr& b,
                             const std::string& prefix_a, const std::string& prefix_b) {
    bool collision = false;
    for (const auto& n : b->basis)
        if (std::find(a->basis.begin(), a->basis.end(), n) != a->basis.end()) collision = true;
    if (!collision) return direct_sum_module(a, b);
    std::vector<std::string> names;
    for (const auto& n : a->basis) names.push_back(prefix_a + "." + n);
    for (const auto& n : b->basis) names.push_back(prefix_b + "." + n);
    return make_module(std::move(names));
}

ModElement::ModElement(ModulePtr mod, std::size_t arity)
    : mod_(std::move(mod)), arity_(arity), coeff_(mod_->rank(), Poly(arity)) {}

ModElement::ModElement(ModulePtr mod, std::vector<Poly> coeffs)
    : mod_(std::move(mod)), arity_(0), coeff_(std::move(coeffs)) {
    if (coeff_.size() != mod_->rank())
        throw ModuleMismatch("coefficient count differs from the module rank");
    arity_ = coeff_.empty() ? 0 : coeff_.front().arity();
    for (const auto& c : coeff_)
        if (c.arity() != arity_) throw ArityMismatch(c.arity(), arity_);
}

ModElement ModElement::basis(ModulePtr mod, std::size_t index, std::size_t arity) {
    ModElement v(std::move(mod), arity);
    v.coeff_[index] = Poly::constant(Scalar(1), arity);
    return v;
}

bool ModElement::is_zero() const {
    return std::all_of(coeff_.begin(), coeff_.end(), [](const Poly& p) { return p.is_zero(); });
}

ModElement ModElement::operator-() const {
    ModElement r = *this;
    for (auto& c : r.coeff_) c = -c;
    return r;
}

ModElement& ModElement::operator+=(const ModElement& o) {
    if (!same_module(mod_, o.mod_)) throw ModuleMismatch("adding elements of different modules");
    if (arity_ != o.arity_) throw ArityMismatch(arity_, o.arity_);
    for (std::size_t i = 0; i < coeff_.size(); ++i) coeff_[i] += o.coeff_[i];
    return *this;
}

ModElement& ModElement::operator-=(const ModElement& o) {
    if (!same_module(mod_, o.mod_)) throw ModuleMismatch("subtracting elements of different modules");
    if (arity_ != o.arity_) throw ArityMismatch(arity_, o.arity_);
    for (std::size_t i = 0; i < coeff_.size(); ++i) coeff_[i] -= o.coeff_[i];
    return *this;
}

ModElement operator*(const Poly& p, const ModElement& v) {
    ModElement r = v;
    for (std::size_t i = 0; i < r.coeff_.size(); ++i) r.coeff_[i] = p * r.coeff_[i];
    return r;
}

ModElement operator*(const Scalar& c, const ModElement& v) {
    ModElement r = v;
    for (auto& p : r.coeff_) p = c * p;
    return r;
}

bool ModElement::operator==(const ModElement& o) const {
    return same_module(mod_, o.mod_) && arity_ == o.arity_ && coeff_ == o.coeff_;
}

std::string to_string(const ModElement& v) {
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = 0; i < v.rank(); ++i) {
        if (v[i].is_zero()) continue;
        if (!first) out << " + ";
        out << "(" << to_string(v[i]) << ")*" << v.module()->basis[i];
        first = false;
    }
    if (first) out << "0";
    return out.str();
}

ModElement subst_lambdas(const ModElement& v, std::span<const Poly> lams) {
    if (lams.size() != v.arity())
        throw ArityMismatch("lambda substitution list does not match the element arity");
    const std::size_t target = lams.empty() ? 0 : lams[0].arity();
    std::vector<std::optional<Poly>> imgs(lams.begin(), lams.end());
    return v.map_coeffs([&](const Poly& p) { return p.substitute(target, std::nullopt, imgs); });
}

int max_partial_degree(const ModElement& v) {
    int d = -1;
    for (std::size_t i = 0; i < v.rank(); ++i) d = std::max(d, v[i].partial_degree());
    return d;
}

CdLinearMap::CdLinearMap(ModulePtr source, ModulePtr target, std::vector<std::vector<Poly>> matrix)
    : src_(std::move(source)), dst_(std::move(target)), mat_(std::move(matrix)) {
    if (mat_.size() != dst_->rank())
        throw ModuleMismatch("matrix row count differs from the target rank");
    for (const auto& row : mat_) {
        if (row.size() != src_->rank())
            throw ModuleMismatch("matrix column count differs from the source rank");
        for (const auto& e : row)
            if (e.arity() != 0) throw ArityMismatch("linear map entries must be D-only");
    }
}

CdLinearMap CdLinearMap::zero(ModulePtr source, ModulePtr target) {
    std::vector<std::vector<Poly>> m(target->rank(), std::vector<Poly>(source->rank(), Poly(0)));
    return CdLinearMap(std::move(source), std::move(target), std::move(m));
}

CdLinearMap CdLinearMap::identity(ModulePtr mod) {
    return scaling(std::move(mod), Scalar(1));
}

CdLinearMap CdLinearMap::scaling(ModulePtr mod, const Scalar& c) {
    std::vector<std::vector<Poly>> m(mod->rank(), std::vector<Poly>(mod->rank(), Poly(0)));
    for (std::size_t i = 0; i < mod->rank(); ++i) m[i][i] = Poly::constant(c, 0);
    return CdLinearMap(mod, mod, std::move(m));
}

CdLinearMap CdLinearMap::partial_scaling(ModulePtr mod) {
    std::vector<std::vector<Poly>> m(mod->rank(), std::vector<Poly>(mod->rank(), Poly(0)));
    for (std::size_t i = 0; i < mod->rank(); ++i) m[i][i] = Poly::partial(0);
    return CdLinearMap(mod, mod, std::move(m));
}

bool CdLinearMap::is_zero() const {
    for (const auto& row : mat_)
        for (const auto& e : row)
            if (!e.is_zero()) return false;
    return true;
}

ModElement CdLinearMap::apply(const ModElement& v) const {
    if (!same_module(v.module(), src_)) throw ModuleMismatch("applying a map to a foreign element");
    ModElement r(dst_, v.arity());
    for (std::size_t i = 0; i < dst_->rank(); ++i)
        for (std::size_t j = 0; j < src_->rank(); ++j)
            if (!mat_[i][j].is_zero() && !v[j].is_zero())
                r[i] += mat_[i][j].promote(v.arity()) * v[j];
    return r;
}

ModElement CdLinearMap::apply_basis(std::size_t index, std::size_t arity) const {
    return apply(ModElement::basis(src_, index, arity));
}

CdLinearMap CdLinearMap::compose(const CdLinearMap& inner) const {
    if (!same_module(inner.dst_, src_)) throw ModuleMismatch("composing incompatible maps");
    std::vector<std::vector<Poly>> m(dst_->rank(), std::vector<Poly>(inner.src_->rank(), Poly(0)));
    for (std::size_t i = 0; i < dst_->rank(); ++i)
        for (std::size_t j = 0; j < inner.src_->rank(); ++j)
            for (std::size_t k = 0; k < src_->rank(); ++k)
                m[i][j] += mat_[i][k] * inner.mat_[k][j];
    return CdLinearMap(inner.src_, dst_, std::move(m));
}

CdLinearMap CdLinearMap::operator-() const {
    CdLinearMap r = *this;
    for (auto& row : r.mat_)
        for (auto& e : row) e = -e;
    return r;
}

CdLinearMap& CdLinearMap::operator+=(const CdLinearMap& o) {
    if (!same_module(src_, o.src_) || !same_module(dst_, o.dst_))
        throw ModuleMismatch("adding maps with different source or target");
    for (std::size_t i = 0; i < mat_.size(); ++i)
        for (std::size_t j = 0; j < mat_[i].size(); ++j) mat_[i][j] += o.mat_[i][j];
    return *this;
}

CdLinearMap& CdLinearMap::operator-=(const CdLinearMap& o) {
    return *this += -o;
}

CdLinearMap operator*(const Scalar& c, const CdLinearMap& f) {
    CdLinearMap r = f;
    for (auto& row : r.mat_)
        for (auto& e : row) e = c * e;
    return r;
}

bool CdLinearMap::operator==(const CdLinearMap& o) const {
    return same_module(src_, o.src_) && same_module(dst_, o.dst_) && mat_ == o.mat_;
}

Poly matrix_determinant(const std::vector<std::vector<Poly>>& m) {
    const std::size_t n = m.size();
    if (n == 0) return Poly::constant(Scalar(1), 0);
    if (n == 1) return m[0][0];
    // Cofactor expansion along the first row; ranks here are small.
    Poly det(0);
    for (std::size_t j = 0; j < n; ++j) {
        if (m[0][j].is_zero()) continue;
        std::vector<std::vector<Poly>> minor;
        minor.reserve(n - 1);
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<Poly> row;
            row.reserve(n - 1);
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(m[i][k]);
            minor.push_back(std::move(row));
        }
        Poly term = m[0][j] * matrix_determinant(minor);
        det += (j % 2 == 0) ? term : -term;
    }
    return det;
}

Poly CdLinearMap::determinant() const {
    if (src_->rank() != dst_->rank())
        throw ModuleMismatch("determinant of a non-square map");
    return matrix_determinant(mat_);
}

std::optional<CdLinearMap> CdLinearMap::inverse() const {
    if (src_->rank() != dst_->rank()) return std::nullopt;
    const Poly det = determinant();
    if (!det.is_constant() || det.is_zero()) return std::nullopt;
    const Scalar inv = Scalar(1) / det.constant_value();
    const std::size_t n = src_->rank();
    std::vector<std::vector<Poly>> adj(n, std::vector<Poly>(n, Poly(0)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<std::vector<Poly>> minor;
            minor.reserve(n - 1);
            for (std::size_t r = 0; r < n; ++r) {
                if (r == i) continue;
                std::vector<Poly> row;
                row.reserve(n - 1);
                for (std::size_t c = 0; c < n; ++c)
                    if (c != j) row.push_back(mat_[r][c]);
                minor.push_back(std::move(row));
            }
            Poly cof = matrix_determinant(minor);
            if ((i + j) % 2 == 1) cof = -cof;
            adj[j][i] = inv * cof;  // transpose of the cofactor matrix
        }
    }
    return CdLinearMap(dst_, src_, std::move(adj));
}

int CdLinearMap::max_degree() const {
    int d = -1;
    for (const auto& row : mat_)
        for (const auto& e : row) d = std::max(d, e.partial_degree());
    return d;
}

}  // namespace confalg
