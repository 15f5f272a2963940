#pragma once

#include "confalg/poly.hpp"

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace confalg {

// Finite-rank free module over k[D] with named basis elements.
struct FreeCdModule {
    std::vector<std::string> basis;
    std::size_t rank() const { return basis.size(); }
    bool operator==(const FreeCdModule&) const = default;
};

using ModulePtr = std::shared_ptr<const FreeCdModule>;

ModulePtr make_module(std::vector<std::string> basis);
// Basis of the direct sum is the concatenation a-basis then b-basis.
ModulePtr direct_sum_module(const ModulePtr& a, const ModulePtr& b);
// Same concatenation, but when the plain union would repeat a name, every
// name is prefixed with its block label ("<prefix>.<name>").
ModulePtr labeled_sum_module(const ModulePtr& a, const ModulePtr& b,
                             const std::string& prefix_a, const std::string& prefix_b);

inline bool same_module(const ModulePtr& a, const ModulePtr& b) {
    return a == b || (a && b && *a == *b);
}

// Element of a free module whose coefficients live in Q[L1..Ln, D] for a
// common ambient arity n.
class ModElement {
public:
    ModElement(ModulePtr mod, std::size_t arity);
    ModElement(ModulePtr mod, std::vector<Poly> coeffs);
    static ModElement basis(ModulePtr mod, std::size_t index, std::size_t arity);

    const ModulePtr& module() const { return mod_; }
    std::size_t rank() const { return coeff_.size(); }
    std::size_t arity() const { return arity_; }
    bool is_zero() const;
    const Poly& operator[](std::size_t i) const { return coeff_[i]; }
    Poly& operator[](std::size_t i) { return coeff_[i]; }

    ModElement operator-() const;
    ModElement& operator+=(const ModElement&);
    ModElement& operator-=(const ModElement&);
    friend ModElement operator+(ModElement a, const ModElement& b) { return a += b; }
    friend ModElement operator-(ModElement a, const ModElement& b) { return a -= b; }
    friend ModElement operator*(const Poly& p, const ModElement& v);
    friend ModElement operator*(const Scalar& c, const ModElement& v);
    bool operator==(const ModElement&) const;

    // Apply f to every coefficient; the result arity is taken from f's output.
    template <typename F>
    ModElement map_coeffs(F&& f) const {
        std::vector<Poly> out;
        out.reserve(coeff_.size());
        for (const auto& c : coeff_) out.push_back(f(c));
        return ModElement(mod_, std::move(out));
    }

private:
    ModulePtr mod_;
    std::size_t arity_;
    std::vector<Poly> coeff_;
};

std::string to_string(const ModElement&);
// Substitute L<i> -> lams[i-1] in every coefficient (target = lams' arity).
ModElement subst_lambdas(const ModElement& v, std::span<const Poly> lams);
int max_partial_degree(const ModElement& v);

// k[D]-linear map between free modules: a matrix of arity-0 polynomials,
// rows indexed by the target basis, columns by the source basis.
class CdLinearMap {
public:
    CdLinearMap(ModulePtr source, ModulePtr target, std::vector<std::vector<Poly>> matrix);
    static CdLinearMap zero(ModulePtr source, ModulePtr target);
    static CdLinearMap identity(ModulePtr mod);
    static CdLinearMap scaling(ModulePtr mod, const Scalar& c);
    static CdLinearMap partial_scaling(ModulePtr mod);  // multiplication by D

    const ModulePtr& source() const { return src_; }
    const ModulePtr& target() const { return dst_; }
    const Poly& entry(std::size_t row, std::size_t col) const { return mat_[row][col]; }
    Poly& entry(std::size_t row, std::size_t col) { return mat_[row][col]; }
    const std::vector<std::vector<Poly>>& matrix() const { return mat_; }
    bool is_zero() const;

    ModElement apply(const ModElement& v) const;
    ModElement apply_basis(std::size_t index, std::size_t arity) const;
    CdLinearMap compose(const CdLinearMap& inner) const;  // this after inner
    CdLinearMap operator-() const;
    CdLinearMap& operator+=(const CdLinearMap&);
    CdLinearMap& operator-=(const CdLinearMap&);
    friend CdLinearMap operator+(CdLinearMap a, const CdLinearMap& b) { return a += b; }
    friend CdLinearMap operator-(CdLinearMap a, const CdLinearMap& b) { return a -= b; }
    friend CdLinearMap operator*(const Scalar& c, const CdLinearMap& f);
    bool operator==(const CdLinearMap&) const;

    Poly determinant() const;                       // square matrices only
    std::optional<CdLinearMap> inverse() const;     // exists iff det is a nonzero scalar
    int max_degree() const;                         // max D-degree of the entries

private:
    ModulePtr src_, dst_;
    std::vector<std::vector<Poly>> mat_;
};

Poly matrix_determinant(const std::vector<std::vector<Poly>>& m);

}  // namespace confalg
