#pragma once

#include "confalg/error.hpp"
#include "confalg/qsolve.hpp"
#include "confalg/scalar.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace confalg {

enum class MonomialOrder { Lex, GRevLex };

// Exponent vector, one entry per unknown; index 0 is the most significant
// variable under Lex.
using Exponents = std::vector<unsigned>;

struct ExponentsLess {
    MonomialOrder order = MonomialOrder::Lex;
    bool operator()(const Exponents& a, const Exponents& b) const;
};

// Multivariate polynomial over the rationals in a fixed number of unknowns.
class GPoly {
public:
    GPoly(std::size_t nvars, MonomialOrder order);
    static GPoly constant(std::size_t nvars, MonomialOrder order, const Scalar& c);
    static GPoly variable(std::size_t nvars, MonomialOrder order, std::size_t index);

    std::size_t nvars() const { return nvars_; }
    MonomialOrder order() const { return order_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    unsigned total_degree() const;  // 0 for the zero polynomial

    const Exponents& lead_exponents() const;  // throws InvalidInput when zero
    const Scalar& lead_coeff() const;

    void add_term(const Exponents& e, const Scalar& c);
    GPoly with_order(MonomialOrder order) const;

    GPoly operator-() const;
    GPoly& operator+=(const GPoly&);
    GPoly& operator-=(const GPoly&);
    friend GPoly operator+(GPoly a, const GPoly& b) { return a += b; }
    friend GPoly operator-(GPoly a, const GPoly& b) { return a -= b; }
    GPoly operator*(const GPoly&) const;
    GPoly operator*(const Scalar&) const;
    bool operator==(const GPoly&) const;

    Scalar evaluate(std::span<const Scalar> point) const;
    // Plug fixed values into a suffix of the variables (index >= first_fixed).
    GPoly substitute_tail(std::size_t first_fixed, std::span<const Scalar> values) const;
    // Indices of variables that actually occur.
    std::vector<std::size_t> support() const;

    std::string to_string(std::span<const std::string> names) const;
    std::string to_string() const;  // default names x0, x1, ...

    const std::map<Exponents, Scalar, ExponentsLess>& terms() const { return terms_; }

private:
    std::size_t nvars_;
    MonomialOrder order_;
    std::map<Exponents, Scalar, ExponentsLess> terms_;
};

// Full normal form of f with respect to the given polynomials (multivariate
// division: every term of the result is divisible by no leading term).
GPoly reduce(const GPoly& f, const std::vector<GPoly>& basis);

// Buchberger's algorithm. The result is interreduced, monic, and sorted by
// descending leading monomial, so equal ideals give identical output. Every
// S-polynomial of the returned set is re-checked to reduce to zero.
std::vector<GPoly> buchberger(std::vector<GPoly> gens);

struct PolySystem {
    std::vector<std::string> unknowns;
    std::vector<GPoly> equations;
};

struct DecideResult {
    enum class Kind { InconsistentOverClosure, RationalWitness, SolvableNoRationalWitness };
    Kind kind = Kind::SolvableNoRationalWitness;
    // Present exactly for RationalWitness; values indexed like unknowns and
    // verified against every equation before being returned.
    std::vector<Scalar> witness;
};

// Consistency over the algebraic closure via the Groebner basis (1 in the
// ideal?), then best-effort rational witness extraction by lex triangular
// back-substitution with exact rational root search.
DecideResult decide(const PolySystem& system);

// One equation per probed residual coordinate (see probe_quadratic).
PolySystem system_from_coordinates(std::vector<std::string> unknowns,
                                   const std::vector<QuadraticCoordinate>& coords);

// Exact rational roots of sum_k coeffs[k] * t^k. Degenerate inputs: the zero
// polynomial has "every" root (reported as nullopt), a nonzero constant has
// none. Degrees 1 and 2 are solved in closed form; higher degrees use the
// rational root bound.
std::optional<std::vector<Scalar>> rational_roots(const std::vector<Scalar>& coeffs);

}  // namespace confalg
