#pragma once

#include "confalg/error.hpp"
#include "confalg/scalar.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace confalg {

// Exponent vector of one monomial in Q[L1..Ln, D]. lam.size() equals the arity
// of the owning polynomial; d is the exponent of the distinguished variable D.
struct Monomial {
    std::vector<std::uint32_t> lam;
    std::uint32_t d = 0;

    std::uint64_t total_degree() const;
    std::uint64_t lambda_degree() const;
    bool operator==(const Monomial&) const = default;
};

// Graded lexicographic order on (L1,...,Ln,D) with D least significant.
// Sorts descending, so the first map entry is the leading term.
struct MonomialDescending {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

// Multivariate polynomial over Q in D and L1..L<arity>. Terms are kept in a
// canonical ordered map with no explicit zero coefficients, so operator== and
// printing are canonical.
class Poly {
public:
    using TermMap = std::map<Monomial, Scalar, MonomialDescending>;

    explicit Poly(std::size_t arity = 0) : arity_(arity) {}
    static Poly zero(std::size_t arity) { return Poly(arity); }
    static Poly constant(const Scalar& c, std::size_t arity);
    static Poly partial(std::size_t arity);                    // D
    static Poly lambda(std::size_t index, std::size_t arity);  // L<index>, 1-based

    std::size_t arity() const { return arity_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Scalar constant_value() const;  // 0 for the zero polynomial
    int degree() const;             // total degree, -1 when zero
    int partial_degree() const;     // max D exponent, -1 when zero
    int lambda_degree() const;      // max total lambda degree, -1 when zero
    Scalar coefficient(const Monomial&) const;
    Scalar leading_coefficient() const;  // 0 when zero

    Poly operator-() const;
    Poly& operator+=(const Poly&);
    Poly& operator-=(const Poly&);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly&, const Poly&);
    Poly& operator*=(const Poly& o);
    friend Poly operator*(const Scalar&, const Poly&);
    Poly pow(std::size_t e) const;
    bool operator==(const Poly&) const = default;

    // Ring homomorphism determined by images of D and of each L<i>; a variable
    // without an image maps to itself inside the target arity.
    Poly substitute(std::size_t target_arity,
                    const std::optional<Poly>& partial_image,
                    const std::vector<std::optional<Poly>>& lambda_images) const;
    // D -> image, lambdas untouched; target arity is the image's arity.
    Poly subst_partial(const Poly& image) const;
    // For an arity-1 structure entry: L1 -> value, D -> D in the value's arity.
    Poly at_lambda1(const Poly& value) const;
    // Embed into a wider lambda context, keeping variable indices.
    Poly promote(std::size_t target_arity) const;
    // Shrink the context; the dropped variables must be absent.
    Poly restrict_arity(std::size_t target_arity) const;
    // Send L<i+1> to L<perm[i]> (1-based targets; 0 means the variable must be
    // absent). Throws IndexCollision if two variables collide.
    Poly rename_lambdas(const std::vector<std::size_t>& perm, std::size_t target_arity) const;

    void add_term(const Monomial& m, const Scalar& c);

private:
    std::size_t arity_;
    TermMap terms_;
};

// Canonical text form; parse_poly(to_string(p), p.arity()) == p.
std::string to_string(const Poly&);
// Parser for the expression grammar (rationals, D, L<k>, + - * ^, parentheses).
Poly parse_poly(const std::string& src, std::size_t arity);

}  // namespace confalg
