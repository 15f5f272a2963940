#include "confalg/groebner.hpp"

#include "confalg/witness_audit.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

namespace confalg {

namespace {

unsigned exp_sum(const Exponents& e) {
    return std::accumulate(e.begin(), e.end(), 0u);
}

bool divides(const Exponents& a, const Exponents& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Exponents exp_sub(const Exponents& a, const Exponents& b) {
    Exponents r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Exponents exp_lcm(const Exponents& a, const Exponents& b) {
    Exponents r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

bool coprime(const Exponents& a, const Exponents& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > 0 && b[i] > 0) return false;
    return true;
}

// coeff * x^shift * g
GPoly monomial_mult(const GPoly& g, const Exponents& shift, const Scalar& coeff) {
    GPoly r(g.nvars(), g.order());
    for (const auto& [e, c] : g.terms()) {
        Exponents ne = e;
        for (std::size_t i = 0; i < ne.size(); ++i) ne[i] += shift[i];
        r.add_term(ne, c * coeff);
    }
    return r;
}

GPoly make_monic(const GPoly& g) {
    if (g.is_zero()) return g;
    return g * (Scalar(1) / g.lead_coeff());
}

}  // namespace

bool ExponentsLess::operator()(const Exponents& a, const Exponents& b) const {
    if (order == MonomialOrder::Lex) {
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    }
    const unsigned da = exp_sum(a), db = exp_sum(b);
    if (da != db) return da < db;
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] > b[i];
    return false;
}

GPoly::GPoly(std::size_t nvars, MonomialOrder order)
    : nvars_(nvars), order_(order), terms_(ExponentsLess{order}) {}

GPoly GPoly::constant(std::size_t nvars, MonomialOrder order, const Scalar& c) {
    GPoly r(nvars, order);
    r.add_term(Exponents(nvars, 0), c);
    return r;
}

GPoly GPoly::variable(std::size_t nvars, MonomialOrder order, std::size_t index) {
    if (index >= nvars) throw InvalidInput("variable index out of range");
    GPoly r(nvars, order);
    Exponents e(nvars, 0);
    e[index] = 1;
    r.add_term(e, Scalar(1));
    return r;
}

unsigned GPoly::total_degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, exp_sum(e));
    return d;
}

const Exponents& GPoly::lead_exponents() const {
    if (terms_.empty()) throw InvalidInput("zero polynomial has no leading term");
    return terms_.rbegin()->first;
}

const Scalar& GPoly::lead_coeff() const {
    if (terms_.empty()) throw InvalidInput("zero polynomial has no leading term");
    return terms_.rbegin()->second;
}

void GPoly::add_term(const Exponents& e, const Scalar& c) {
    if (e.size() != nvars_) throw InvalidInput("exponent vector length mismatch");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

GPoly GPoly::with_order(MonomialOrder order) const {
    GPoly r(nvars_, order);
    for (const auto& [e, c] : terms_) r.add_term(e, c);
    return r;
}

GPoly GPoly::operator-() const {
    GPoly r(nvars_, order_);
    for (const auto& [e, c] : terms_) r.add_term(e, -c);
    return r;
}

GPoly& GPoly::operator+=(const GPoly& o) {
    if (o.nvars_ != nvars_ || o.order_ != order_)
        throw InvalidInput("polynomial shape mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

GPoly& GPoly::operator-=(const GPoly& o) {
    if (o.nvars_ != nvars_ || o.order_ != order_)
        throw InvalidInput("polynomial shape mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

GPoly GPoly::operator*(const GPoly& o) const {
    if (o.nvars_ != nvars_ || o.order_ != order_)
        throw InvalidInput("polynomial shape mismatch");
    GPoly r(nvars_, order_);
    for (const auto& [ea, ca] : terms_)
        for (const auto& [eb, cb] : o.terms_) {
            Exponents e(nvars_);
            for (std::size_t i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    return r;
}

GPoly GPoly::operator*(const Scalar& c) const {
    GPoly r(nvars_, order_);
    for (const auto& [e, tc] : terms_) r.add_term(e, tc * c);
    return r;
}

bool GPoly::operator==(const GPoly& o) const {
    if (nvars_ != o.nvars_) return false;
    return std::equal(terms_.begin(), terms_.end(), o.terms_.begin(), o.terms_.end(),
                      [](const auto& a, const auto& b) {
                          return a.first == b.first && a.second == b.second;
                      }) &&
           terms_.size() == o.terms_.size();
}

Scalar GPoly::evaluate(std::span<const Scalar> point) const {
    if (point.size() != nvars_) throw InvalidInput("evaluation point length mismatch");
    Scalar total(0);
    for (const auto& [e, c] : terms_) {
        Scalar t = c;
        for (std::size_t i = 0; i < nvars_; ++i)
            for (unsigned k = 0; k < e[i]; ++k) t *= point[i];
        total += t;
    }
    return total;
}

GPoly GPoly::substitute_tail(std::size_t first_fixed, std::span<const Scalar> values) const {
    if (first_fixed + values.size() != nvars_)
        throw InvalidInput("substitution tail length mismatch");
    GPoly r(nvars_, order_);
    for (const auto& [e, c] : terms_) {
        Scalar t = c;
        Exponents ne = e;
        for (std::size_t i = first_fixed; i < nvars_; ++i) {
            for (unsigned k = 0; k < e[i]; ++k) t *= values[i - first_fixed];
            ne[i] = 0;
        }
        r.add_term(ne, t);
    }
    return r;
}

std::vector<std::size_t> GPoly::support() const {
    std::vector<bool> seen(nvars_, false);
    for (const auto& [e, c] : terms_)
        for (std::size_t i = 0; i < nvars_; ++i)
            if (e[i] > 0) seen[i] = true;
    std::vector<std::size_t> r;
    for (std::size_t i = 0; i < nvars_; ++i)
        if (seen[i]) r.push_back(i);
    return r;
}

std::string GPoly::to_string(std::span<const std::string> names) const {
    if (names.size() != nvars_) throw InvalidInput("name list length mismatch");
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        const bool neg = c < 0;
        const Scalar mag = neg ? Scalar(-c) : c;
        if (first)
            out << (neg ? "-" : "");
        else
            out << (neg ? " - " : " + ");
        first = false;
        std::vector<std::string> factors;
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (e[i] == 0) continue;
            std::string f = names[i];
            if (e[i] > 1) f += "^" + std::to_string(e[i]);
            factors.push_back(f);
        }
        const bool unit = mag == 1;
        if (!unit || factors.empty()) out << mag.str();
        for (std::size_t i = 0; i < factors.size(); ++i) {
            if (i > 0 || !unit) out << "*";
            out << factors[i];
        }
    }
    return out.str();
}

std::string GPoly::to_string() const {
    std::vector<std::string> names;
    names.reserve(nvars_);
    for (std::size_t i = 0; i < nvars_; ++i) names.push_back("x" + std::to_string(i));
    return to_string(names);
}

GPoly reduce(const GPoly& f, const std::vector<GPoly>& basis) {
    GPoly p = f;
    GPoly r(f.nvars(), f.order());
    while (!p.is_zero()) {
        const Exponents lead = p.lead_exponents();
        const Scalar c = p.lead_coeff();
        const GPoly* divisor = nullptr;
        for (const GPoly& g : basis)
            if (!g.is_zero() && divides(g.lead_exponents(), lead)) {
                divisor = &g;
                break;
            }
        if (divisor) {
            p -= monomial_mult(*divisor, exp_sub(lead, divisor->lead_exponents()),
                               c / divisor->lead_coeff());
        } else {
            r.add_term(lead, c);
            p.add_term(lead, -c);
        }
    }
    return r;
}

namespace {

GPoly s_poly(const GPoly& f, const GPoly& g) {
    const Exponents l = exp_lcm(f.lead_exponents(), g.lead_exponents());
    return monomial_mult(f, exp_sub(l, f.lead_exponents()), Scalar(1) / f.lead_coeff()) -
           monomial_mult(g, exp_sub(l, g.lead_exponents()), Scalar(1) / g.lead_coeff());
}

}  // namespace

std::vector<GPoly> buchberger(std::vector<GPoly> gens) {
    std::vector<GPoly> basis;
    for (const GPoly& g : gens) {
        if (g.is_zero()) continue;
        if (!basis.empty() &&
            (g.nvars() != basis.front().nvars() || g.order() != basis.front().order()))
            throw InvalidInput("generators disagree on unknowns or ordering");
        basis.push_back(make_monic(g));
    }
    if (basis.empty()) return {};

    std::deque<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j) pairs.emplace_back(i, j);

    while (!pairs.empty()) {
        const auto [i, j] = pairs.front();
        pairs.pop_front();
        if (coprime(basis[i].lead_exponents(), basis[j].lead_exponents())) continue;
        const GPoly rem = reduce(s_poly(basis[i], basis[j]), basis);
        if (rem.is_zero()) continue;
        basis.push_back(make_monic(rem));
        for (std::size_t k = 0; k + 1 < basis.size(); ++k)
            pairs.emplace_back(k, basis.size() - 1);
    }

    // Minimalize: drop elements whose leading monomial another one divides.
    std::vector<GPoly> minimal;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
            if (i == j) continue;
            if (!divides(basis[j].lead_exponents(), basis[i].lead_exponents())) continue;
            // Equal leads: keep the earlier index only.
            if (basis[i].lead_exponents() == basis[j].lead_exponents())
                redundant = j < i;
            else
                redundant = true;
        }
        if (!redundant) minimal.push_back(basis[i]);
    }

    // Tail-reduce each element against the others.
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<GPoly> others;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        minimal[i] = make_monic(reduce(minimal[i], others));
    }

    std::sort(minimal.begin(), minimal.end(), [](const GPoly& a, const GPoly& b) {
        const ExponentsLess less{a.order()};
        return less(b.lead_exponents(), a.lead_exponents());
    });

    for (std::size_t i = 0; i < minimal.size(); ++i)
        for (std::size_t j = i + 1; j < minimal.size(); ++j)
            if (!reduce(s_poly(minimal[i], minimal[j]), minimal).is_zero())
                throw Error("Groebner self-check failed: an S-polynomial does not reduce to zero");
    return minimal;
}

namespace {

std::vector<Integer> divisors_up_to_cap(Integer n, std::size_t cap) {
    std::vector<Integer> divs;
    if (n < 0) n = -n;
    std::size_t steps = 0;
    for (Integer d = 1; d * d <= n; ++d) {
        if (++steps > cap) break;
        if (n % d == 0) {
            divs.push_back(d);
            divs.push_back(n / d);
        }
    }
    return divs;
}

Scalar horner(const std::vector<Scalar>& coeffs, const Scalar& t) {
    Scalar v(0);
    for (std::size_t i = coeffs.size(); i-- > 0;) v = v * t + coeffs[i];
    return v;
}

}  // namespace

std::optional<std::vector<Scalar>> rational_roots(const std::vector<Scalar>& coeffs) {
    std::vector<Scalar> c = coeffs;
    while (!c.empty() && c.back() == 0) c.pop_back();
    if (c.empty()) return std::nullopt;  // zero polynomial: everything is a root
    if (c.size() == 1) return std::vector<Scalar>{};

    std::vector<Scalar> roots;
    std::size_t shift = 0;
    while (c[shift] == 0) ++shift;
    if (shift > 0) {
        roots.push_back(Scalar(0));
        c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(shift));
    }

    if (c.size() >= 2) {
        Integer scale(1);
        for (const Scalar& s : c) scale = lcm(scale, denominator(s));
        std::vector<Integer> a;
        a.reserve(c.size());
        for (const Scalar& s : c) a.push_back(numerator(s) * (scale / denominator(s)));
        Integer content(0);
        for (const Integer& v : a) content = gcd(content, v);
        for (Integer& v : a) v /= content;

        const std::size_t deg = a.size() - 1;
        if (deg == 1) {
            roots.push_back(Scalar(-a[0], a[1]));
        } else if (deg == 2) {
            const Integer disc = a[1] * a[1] - 4 * a[0] * a[2];
            if (disc >= 0) {
                const Integer s = sqrt(disc);
                if (s * s == disc) {
                    roots.push_back(Scalar(-a[1] + s, 2 * a[2]));
                    if (s != 0) roots.push_back(Scalar(-a[1] - s, 2 * a[2]));
                }
            }
        } else {
            const auto ps = divisors_up_to_cap(a[0], 2'000'000);
            const auto qs = divisors_up_to_cap(a.back(), 2'000'000);
            for (const Integer& p : ps)
                for (const Integer& q : qs)
                    for (int sign : {1, -1}) {
                        const Scalar cand(sign * p, q);
                        if (horner(c, cand) == 0) roots.push_back(cand);
                    }
        }
    }

    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

namespace {

struct WitnessSearch {
    const std::vector<GPoly>& gb;
    std::size_t nvars;
    std::vector<Scalar> tail;  // values of x_{k+1}..x_{n-1}, innermost first
    std::size_t nodes = 0;
    static constexpr std::size_t node_cap = 20000;

    // Values currently assigned to the suffix starting at `first`.
    std::vector<Scalar> suffix_values(std::size_t first) const {
        std::vector<Scalar> v(tail.rbegin(), tail.rend());
        (void)first;
        return v;
    }

    bool run(std::vector<Scalar>& out) {
        tail.clear();
        if (!descend()) return false;
        out.assign(tail.rbegin(), tail.rend());
        return true;
    }

    bool descend() {
        if (++nodes > node_cap) return false;
        if (tail.size() == nvars) return true;
        const std::size_t k = nvars - 1 - tail.size();
        const std::vector<Scalar> vals = suffix_values(k + 1);

        // Univariate constraints on x_k after plugging in the suffix.
        std::vector<std::vector<Scalar>> constraints;
        for (const GPoly& g : gb) {
            const GPoly h = g.substitute_tail(k + 1, vals);
            if (h.is_zero()) continue;
            const auto sup = h.support();
            if (sup.empty()) return false;  // nonzero constant: dead branch
            if (sup.size() == 1 && sup[0] == k) {
                std::vector<Scalar> uni(h.total_degree() + 1, Scalar(0));
                for (const auto& [e, coeff] : h.terms()) uni[e[k]] = coeff;
                constraints.push_back(std::move(uni));
            }
        }

        std::vector<Scalar> candidates;
        if (constraints.empty()) {
            candidates = {Scalar(0), Scalar(1), Scalar(-1), Scalar(2)};
        } else {
            const auto roots = rational_roots(constraints.front());
            if (!roots) return false;  // cannot happen: constraints are nonzero
            for (const Scalar& r : *roots) {
                bool all = true;
                for (std::size_t i = 1; i < constraints.size() && all; ++i)
                    all = horner(constraints[i], r) == 0;
                if (all) candidates.push_back(r);
            }
        }

        for (const Scalar& cand : candidates) {
            tail.push_back(cand);
            if (descend()) return true;
            tail.pop_back();
        }
        return false;
    }
};

}  // namespace

DecideResult decide(const PolySystem& system) {
    const std::size_t n = system.unknowns.size();
    std::vector<GPoly> eqs;
    for (const GPoly& e : system.equations) {
        if (e.nvars() != n)
            throw InvalidInput("equation does not match the unknown list");
        if (!e.is_zero()) eqs.push_back(e.with_order(MonomialOrder::Lex));
    }

    DecideResult result;
    if (eqs.empty()) {
        result.kind = DecideResult::Kind::RationalWitness;
        result.witness.assign(n, Scalar(0));
        witness_audit::record_verified();
        witness_audit::record_emitted();
        return result;
    }

    const std::vector<GPoly> gb = buchberger(eqs);
    for (const GPoly& g : gb)
        if (!g.is_zero() && g.total_degree() == 0) {
            result.kind = DecideResult::Kind::InconsistentOverClosure;
            return result;
        }

    WitnessSearch search{gb, n, {}, 0};
    std::vector<Scalar> witness;
    if (search.run(witness)) {
        for (const GPoly& e : system.equations)
            if (e.evaluate(witness) != 0)
                throw Error("witness verification failed after exact root extraction");
        witness_audit::record_verified();
        result.kind = DecideResult::Kind::RationalWitness;
        result.witness = std::move(witness);
        witness_audit::record_emitted();
        return result;
    }
    result.kind = DecideResult::Kind::SolvableNoRationalWitness;
    return result;
}

PolySystem system_from_coordinates(std::vector<std::string> unknowns,
                                   const std::vector<QuadraticCoordinate>& coords) {
    const std::size_t n = unknowns.size();
    PolySystem sys;
    sys.unknowns = std::move(unknowns);
    for (const QuadraticCoordinate& c : coords) {
        if (c.linear.size() != n || c.quad.size() != n)
            throw InvalidInput("coordinate size does not match the unknown list");
        for (std::size_t i = 0; i < n; ++i)
            if (c.quad[i].size() != n - i)
                throw InvalidInput("coordinate size does not match the unknown list");
        GPoly eq = GPoly::constant(n, MonomialOrder::Lex, c.constant);
        for (std::size_t i = 0; i < n; ++i) {
            if (c.linear[i] != 0) {
                Exponents e(n, 0);
                e[i] = 1;
                eq.add_term(e, c.linear[i]);
            }
            for (std::size_t j = i; j < n; ++j) {
                const Scalar& q = c.quad[i][j - i];
                if (q == 0) continue;
                Exponents e(n, 0);
                e[i] += 1;
                e[j] += 1;
                eq.add_term(e, q);
            }
        }
        sys.equations.push_back(std::move(eq));
    }
    return sys;
}

}  // namespace confalg
