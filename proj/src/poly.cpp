#include "confalg/poly.hpp"

#include <algorithm>
#include <sstream>

namespace confalg {

std::uint64_t Monomial::total_degree() const {
    std::uint64_t t = d;
    for (auto e : lam) t += e;
    return t;
}

std::uint64_t Monomial::lambda_degree() const {
    std::uint64_t t = 0;
    for (auto e : lam) t += e;
    return t;
}

bool MonomialDescending::operator()(const Monomial& a, const Monomial& b) const {
    const auto ta = a.total_degree(), tb = b.total_degree();
    if (ta != tb) return ta > tb;
    for (std::size_t i = 0; i < a.lam.size(); ++i)
        if (a.lam[i] != b.lam[i]) return a.lam[i] > b.lam[i];
    return a.d > b.d;
}

Poly Poly::constant(const Scalar& c, std::size_t arity) {
    Poly p(arity);
    p.add_term(Monomial{std::vector<std::uint32_t>(arity, 0), 0}, c);
    return p;
}

Poly Poly::partial(std::size_t arity) {
    Poly p(arity);
    p.add_term(Monomial{std::vector<std::uint32_t>(arity, 0), 1}, Scalar(1));
    return p;
}

Poly Poly::lambda(std::size_t index, std::size_t arity) {
    if (index == 0 || index > arity)
        throw ArityMismatch("lambda index L" + std::to_string(index) +
                            " outside arity " + std::to_string(arity));
    Poly p(arity);
    Monomial m{std::vector<std::uint32_t>(arity, 0), 0};
    m.lam[index - 1] = 1;
    p.add_term(m, Scalar(1));
    return p;
}

bool Poly::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && terms_.begin()->first.total_degree() == 0;
}

Scalar Poly::constant_value() const {
    if (terms_.empty()) return Scalar(0);
    if (!is_constant()) throw Error("constant_value on a non-constant polynomial");
    return terms_.begin()->second;
}

int Poly::degree() const {
    if (terms_.empty()) return -1;
    return static_cast<int>(terms_.begin()->first.total_degree());
}

int Poly::partial_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.d));
    return d;
}

int Poly::lambda_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.lambda_degree()));
    return d;
}

Scalar Poly::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar(0) : it->second;
}

Scalar Poly::leading_coefficient() const {
    return terms_.empty() ? Scalar(0) : terms_.begin()->second;
}

void Poly::add_term(const Monomial& m, const Scalar& c) {
    if (c == 0) return;
    if (m.lam.size() != arity_)
        throw ArityMismatch(m.lam.size(), arity_);
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Poly Poly::operator-() const {
    Poly r(arity_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    if (arity_ != o.arity_) throw ArityMismatch(arity_, o.arity_);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (arity_ != o.arity_) throw ArityMismatch(arity_, o.arity_);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.arity_ != b.arity_) throw ArityMismatch(a.arity_, b.arity_);
    Poly r(a.arity_);
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            Monomial m = ma;
            m.d += mb.d;
            for (std::size_t i = 0; i < m.lam.size(); ++i) m.lam[i] += mb.lam[i];
            r.add_term(m, ca * cb);
        }
    }
    return r;
}

Poly& Poly::operator*=(const Poly& o) {
    *this = *this * o;
    return *this;
}

Poly operator*(const Scalar& c, const Poly& p) {
    Poly r(p.arity_);
    if (c == 0) return r;
    for (const auto& [m, pc] : p.terms_) r.terms_.emplace(m, c * pc);
    return r;
}

Poly Poly::pow(std::size_t e) const {
    Poly r = Poly::constant(Scalar(1), arity_);
    Poly base = *this;
    while (e > 0) {
        if (e & 1) r = r * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return r;
}

Poly Poly::substitute(std::size_t target_arity,
                      const std::optional<Poly>& partial_image,
                      const std::vector<std::optional<Poly>>& lambda_images) const {
    if (lambda_images.size() > arity_)
        throw ArityMismatch("more lambda images than the source arity");
    auto image_of = [&](std::size_t var) -> Poly {  // var 0 = D, var i = L<i>
        const std::optional<Poly>* img = nullptr;
        if (var == 0)
            img = &partial_image;
        else if (var <= lambda_images.size())
            img = &lambda_images[var - 1];
        if (img && img->has_value()) {
            if ((*img)->arity() != target_arity)
                throw ArityMismatch((*img)->arity(), target_arity);
            return **img;
        }
        return var == 0 ? Poly::partial(target_arity) : Poly::lambda(var, target_arity);
    };
    // Cache successive powers of each variable image on demand.
    std::vector<std::vector<Poly>> powers(arity_ + 1);
    auto power = [&](std::size_t var, std::uint32_t e) -> const Poly& {
        auto& tab = powers[var];
        if (tab.empty()) tab.push_back(Poly::constant(Scalar(1), target_arity));
        while (tab.size() <= e) {
            if (tab.size() == 1)
                tab.push_back(image_of(var));
            else
                tab.push_back(tab.back() * tab[1]);
        }
        return tab[e];
    };
    Poly r(target_arity);
    for (const auto& [m, c] : terms_) {
        Poly t = Poly::constant(c, target_arity);
        if (m.d) t = t * power(0, m.d);
        for (std::size_t i = 0; i < m.lam.size(); ++i)
            if (m.lam[i]) t = t * power(i + 1, m.lam[i]);
        r += t;
    }
    return r;
}

Poly Poly::subst_partial(const Poly& image) const {
    return substitute(image.arity(), image, {});
}

Poly Poly::at_lambda1(const Poly& value) const {
    if (arity_ != 1) throw ArityMismatch("at_lambda1 requires an arity-1 polynomial");
    return substitute(value.arity(), std::nullopt, {value});
}

Poly Poly::promote(std::size_t target_arity) const {
    if (target_arity < arity_)
        throw ArityMismatch("promote cannot shrink the arity");
    Poly r(target_arity);
    for (const auto& [m, c] : terms_) {
        Monomial mm = m;
        mm.lam.resize(target_arity, 0);
        r.terms_.emplace(std::move(mm), c);
    }
    return r;
}

Poly Poly::restrict_arity(std::size_t target_arity) const {
    if (target_arity >= arity_) return promote(target_arity);
    Poly r(target_arity);
    for (const auto& [m, c] : terms_) {
        for (std::size_t i = target_arity; i < arity_; ++i)
            if (m.lam[i])
                throw ArityMismatch("restrict_arity drops a used lambda variable L" +
                                    std::to_string(i + 1));
        Monomial mm = m;
        mm.lam.resize(target_arity);
        r.terms_.emplace(std::move(mm), c);
    }
    return r;
}

Poly Poly::rename_lambdas(const std::vector<std::size_t>& perm, std::size_t target_arity) const {
    if (perm.size() != arity_)
        throw ArityMismatch("rename map size differs from arity");
    std::vector<bool> used(target_arity + 1, false);
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (perm[i] == 0) continue;
        if (perm[i] > target_arity)
            throw ArityMismatch("rename target L" + std::to_string(perm[i]) +
                                " outside arity " + std::to_string(target_arity));
        if (used[perm[i]])
            throw IndexCollision("two lambda variables renamed to L" + std::to_string(perm[i]));
        used[perm[i]] = true;
    }
    Poly r(target_arity);
    for (const auto& [m, c] : terms_) {
        Monomial mm{std::vector<std::uint32_t>(target_arity, 0), m.d};
        for (std::size_t i = 0; i < arity_; ++i) {
            if (!m.lam[i]) continue;
            if (perm[i] == 0)
                throw IndexCollision("renaming drops a used lambda variable L" +
                                     std::to_string(i + 1));
            mm.lam[perm[i] - 1] += m.lam[i];
        }
        r.add_term(mm, c);
    }
    return r;
}

std::string to_string(const Poly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        const bool negative = c < 0;
        const Scalar mag = negative ? Scalar(-c) : c;
        if (first) {
            if (negative) out << "-";
            first = false;
        } else {
            out << (negative ? " - " : " + ");
        }
        std::string vars;
        for (std::size_t i = 0; i < m.lam.size(); ++i) {
            if (!m.lam[i]) continue;
            if (!vars.empty()) vars += "*";
            vars += "L" + std::to_string(i + 1);
            if (m.lam[i] > 1) vars += "^" + std::to_string(m.lam[i]);
        }
        if (m.d) {
            if (!vars.empty()) vars += "*";
            vars += "D";
            if (m.d > 1) vars += "^" + std::to_string(m.d);
        }
        if (vars.empty())
            out << to_string(mag);
        else if (mag == 1)
            out << vars;
        else
            out << to_string(mag) << "*" << vars;
    }
    return out.str();
}

namespace {

// Recursive-descent parser for:
//   expr     := term { ("+"|"-") term }
//   term     := factor { "*" factor }
//   factor   := atom [ "^" uint ]
//   atom     := rational | var | "(" expr ")" | "-" factor
//   var      := "D" | "L" uint
//   rational := uint [ "/" uint ]
class Parser {
public:
    Parser(const std::string& src, std::size_t arity) : src_(src), arity_(arity) {}

    Poly run() {
        Poly p = expr();
        skip_ws();
        if (pos_ != src_.size()) fail("unexpected trailing input");
        return p;
    }

private:
    const std::string& src_;
    std::size_t arity_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, pos_); }

    void skip_ws() {
        while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t')) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    Integer uint_lit() {
        skip_ws();
        if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
            fail("expected an unsigned integer");
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        return Integer(src_.substr(start, pos_ - start));
    }

    Poly expr() {
        Poly p = term();
        for (;;) {
            if (accept('+'))
                p += term();
            else if (accept('-'))
                p -= term();
            else
                return p;
        }
    }

    Poly term() {
        Poly p = factor();
        while (accept('*')) p = p * factor();
        return p;
    }

    Poly factor() {
        Poly p = atom();
        if (accept('^')) {
            Integer e = uint_lit();
            if (e > 64) fail("exponent too large");
            p = p.pow(static_cast<std::size_t>(e));
        }
        return p;
    }

    Poly atom() {
        const char c = peek();
        if (c == '-') {
            ++pos_;
            return -factor();
        }
        if (c == '(') {
            ++pos_;
            Poly p = expr();
            if (!accept(')')) fail("expected ')'");
            return p;
        }
        if (c == 'D') {
            ++pos_;
            return Poly::partial(arity_);
        }
        if (c == 'L') {
            ++pos_;
            Integer idx = uint_lit();
            if (idx == 0 || idx > Integer(arity_))
                fail("lambda index outside the declared arity");
            return Poly::lambda(static_cast<std::size_t>(idx), arity_);
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Integer num = uint_lit();
            if (accept('/')) {
                Integer den = uint_lit();
                if (den == 0) fail("zero denominator");
                return Poly::constant(Scalar(num, den), arity_);
            }
            return Poly::constant(Scalar(num), arity_);
        }
        fail("expected a rational, variable, '(' or '-'");
    }
};

}  // namespace

Poly parse_poly(const std::string& src, std::size_t arity) {
    return Parser(src, arity).run();
}

}  // namespace confalg
