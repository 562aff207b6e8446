#pragma once

#include <algorithm>
#include <cctype>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "spshadow/monomial.hpp"
#include "spshadow/rational.hpp"

namespace spshadow {

/// Ordered variable list. Convention: x-block first, then y-block, then any
/// auxiliary variables appended by ideal operations.
class Ring {
public:
    explicit Ring(std::vector<std::string> names) : names_(std::move(names)) {
        if (names_.size() > static_cast<std::size_t>(kMaxVars))
            throw std::invalid_argument("Ring: too many variables (max " + std::to_string(kMaxVars) + ")");
    }

    int nvars() const { return static_cast<int>(names_.size()); }
    const std::string& name(int i) const { return names_[static_cast<std::size_t>(i)]; }
    const std::vector<std::string>& names() const { return names_; }

    int index_of(const std::string& name) const {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == name) return static_cast<int>(i);
        return -1;
    }

    friend bool operator==(const Ring& a, const Ring& b) { return a.names_ == b.names_; }

private:
    std::vector<std::string> names_;
};

using RingPtr = std::shared_ptr<const Ring>;

inline RingPtr make_ring(std::vector<std::string> names) {
    return std::make_shared<const Ring>(std::move(names));
}

/// Ring with variables x1..xd, y1..yp.
inline RingPtr make_xy_ring(int d, int p) {
    std::vector<std::string> names;
    for (int i = 1; i <= d; ++i) names.push_back("x" + std::to_string(i));
    for (int j = 1; j <= p; ++j) names.push_back("y" + std::to_string(j));
    return make_ring(std::move(names));
}

inline bool same_ring(const RingPtr& a, const RingPtr& b) {
    return a == b || (a && b && *a == *b);
}

struct Term {
    Monomial mono;
    Rational coeff;
};

namespace detail {

/// dst := a + c * (m * b), all term lists strictly descending under `desc`.
template <class Desc>
inline void add_scaled(std::vector<Term>& dst, const std::vector<Term>& a, const Rational& c,
                       const Monomial& m, const std::vector<Term>& b, Desc desc) {
    dst.clear();
    dst.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        Monomial mb = m.is_one() ? b[j].mono : m * b[j].mono;
        if (a[i].mono == mb) {
            Rational s = a[i].coeff + c * b[j].coeff;
            if (!s.is_zero()) dst.push_back({a[i].mono, std::move(s)});
            ++i;
            ++j;
        } else if (desc(a[i].mono, mb)) {
            dst.push_back(a[i]);
            ++i;
        } else {
            Rational s = c * b[j].coeff;
            if (!s.is_zero()) dst.push_back({std::move(mb), std::move(s)});
            ++j;
        }
    }
    for (; i < a.size(); ++i) dst.push_back(a[i]);
    for (; j < b.size(); ++j) {
        Rational s = c * b[j].coeff;
        if (!s.is_zero()) dst.push_back({m.is_one() ? b[j].mono : m * b[j].mono, std::move(s)});
    }
}

struct GrevlexDesc {
    bool operator()(const Monomial& a, const Monomial& b) const {
        return MonomialOrder::grevlex_less(b, a);
    }
};

}  // namespace detail

/// Sparse multivariate polynomial over Rational. Terms are kept strictly
/// descending in grevlex; that is also the canonical text order.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

    static Polynomial zero(RingPtr ring) { return Polynomial(std::move(ring)); }

    static Polynomial constant(RingPtr ring, Rational c) {
        Polynomial f(std::move(ring));
        if (!c.is_zero()) f.terms_.push_back({Monomial(f.ring_->nvars()), std::move(c)});
        return f;
    }

    static Polynomial variable(RingPtr ring, int v) {
        Polynomial f(std::move(ring));
        f.check_var(v);
        Monomial m(f.ring_->nvars());
        m.set(v, 1);
        f.terms_.push_back({m, Rational(1)});
        return f;
    }

    static Polynomial monomial_term(RingPtr ring, Monomial m, Rational c) {
        Polynomial f(std::move(ring));
        if (m.nvars() != f.ring_->nvars()) throw std::invalid_argument("Polynomial: monomial arity mismatch");
        if (!c.is_zero()) f.terms_.push_back({std::move(m), std::move(c)});
        return f;
    }

    /// Builds from arbitrary (possibly unsorted, duplicated) terms.
    static Polynomial from_terms(RingPtr ring, std::vector<Term> terms) {
        Polynomial f(std::move(ring));
        std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
            return detail::GrevlexDesc{}(a.mono, b.mono);
        });
        for (auto& t : terms) {
            if (t.mono.nvars() != f.ring_->nvars())
                throw std::invalid_argument("Polynomial: monomial arity mismatch");
            if (!f.terms_.empty() && f.terms_.back().mono == t.mono)
                f.terms_.back().coeff += t.coeff;
            else
                f.terms_.push_back(std::move(t));
            if (!f.terms_.empty() && f.terms_.back().coeff.is_zero()) f.terms_.pop_back();
        }
        return f;
    }

    const RingPtr& ring() const { return ring_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }

    Rational constant_value() const {
        if (terms_.empty()) return Rational(0);
        if (!is_constant()) throw std::logic_error("Polynomial: not a constant");
        return terms_[0].coeff;
    }

    int total_degree() const {
        unsigned d = 0;
        for (const auto& t : terms_) d = std::max(d, t.mono.degree());
        return terms_.empty() ? -1 : static_cast<int>(d);
    }

    int degree_in(int v) const {
        check_var(v);
        int d = -1;
        for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.mono[v]));
        return terms_.empty() ? -1 : d;
    }

    bool uses_var(int v) const {
        check_var(v);
        for (const auto& t : terms_)
            if (t.mono[v] > 0) return true;
        return false;
    }

    /// Leading term under the canonical grevlex order.
    const Term& leading() const {
        if (terms_.empty()) throw std::logic_error("Polynomial: leading term of zero");
        return terms_.front();
    }

    /// Leading term under an arbitrary order (linear scan).
    const Term& leading(const MonomialOrder& ord) const {
        if (terms_.empty()) throw std::logic_error("Polynomial: leading term of zero");
        const Term* best = &terms_[0];
        for (const auto& t : terms_)
            if (ord.less(best->mono, t.mono)) best = &t;
        return *best;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        if (!same_ring(a.ring_, b.ring_) || a.terms_.size() != b.terms_.size()) return false;
        for (std::size_t i = 0; i < a.terms_.size(); ++i)
            if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coeff != b.terms_[i].coeff) return false;
        return true;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    Polynomial operator-() const {
        Polynomial r(*this);
        for (auto& t : r.terms_) t.coeff = -t.coeff;
        return r;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        a.check_same_ring(b);
        Polynomial r(a.ring_);
        detail::add_scaled(r.terms_, a.terms_, Rational(1), Monomial(a.nvars()), b.terms_,
                           detail::GrevlexDesc{});
        return r;
    }

    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        a.check_same_ring(b);
        Polynomial r(a.ring_);
        detail::add_scaled(r.terms_, a.terms_, Rational(-1), Monomial(a.nvars()), b.terms_,
                           detail::GrevlexDesc{});
        return r;
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.check_same_ring(b);
        if (a.terms_.empty() || b.terms_.empty()) return Polynomial(a.ring_);
        std::vector<Term> products;
        products.reserve(a.terms_.size() * b.terms_.size());
        for (const auto& s : a.terms_)
            for (const auto& t : b.terms_) products.push_back({s.mono * t.mono, s.coeff * t.coeff});
        return from_terms(a.ring_, std::move(products));
    }

    Polynomial scaled(const Rational& c) const {
        Polynomial r(ring_);
        if (c.is_zero()) return r;
        r.terms_ = terms_;
        for (auto& t : r.terms_) t.coeff *= c;
        return r;
    }

    Polynomial pow(unsigned e) const {
        Polynomial acc = constant(ring_, Rational(1));
        Polynomial base = *this;
        while (e) {
            if (e & 1u) acc = acc * base;
            if (e >>= 1u) base = base * base;
        }
        return acc;
    }

    Polynomial derivative(int v) const {
        check_var(v);
        Polynomial r(ring_);
        std::vector<Term> out;
        for (const auto& t : terms_) {
            unsigned e = t.mono[v];
            if (e == 0) continue;
            Monomial m = t.mono;
            m.set(v, e - 1);
            out.push_back({m, t.coeff * Rational(static_cast<long>(e))});
        }
        return from_terms(ring_, std::move(out));
    }

    /// Exact evaluation by recursive Horner over the trailing variable.
    Rational evaluate(const std::vector<Rational>& point) const {
        if (static_cast<int>(point.size()) != nvars())
            throw std::invalid_argument("evaluate: arity mismatch");
        return horner<Rational>(terms_, nvars() - 1, point,
                                [](const Rational& c) { return c; });
    }

    double evaluate_float(const std::vector<double>& point) const {
        if (static_cast<int>(point.size()) != nvars())
            throw std::invalid_argument("evaluate_float: arity mismatch");
        return horner<double>(terms_, nvars() - 1, point,
                              [](const Rational& c) { return c.to_double(); });
    }

    /// Coefficient of v^k, as a polynomial in the same ring (v-free).
    Polynomial coeff_of(int v, unsigned k) const {
        check_var(v);
        std::vector<Term> out;
        for (const auto& t : terms_) {
            if (t.mono[v] != k) continue;
            Monomial m = t.mono;
            m.set(v, 0);
            out.push_back({m, t.coeff});
        }
        return from_terms(ring_, std::move(out));
    }

    /// Transports the polynomial to `target`; `var_map[i]` is the target index
    /// of source variable i, or -1 if the variable must be absent.
    Polynomial map_vars(const RingPtr& target, const std::vector<int>& var_map) const {
        Polynomial r(target);
        std::vector<Term> out;
        for (const auto& t : terms_) {
            Monomial m(target->nvars());
            for (int v = 0; v < nvars(); ++v) {
                if (t.mono[v] == 0) continue;
                if (var_map[static_cast<std::size_t>(v)] < 0)
                    throw std::invalid_argument("map_vars: polynomial uses a dropped variable");
                m.set(var_map[static_cast<std::size_t>(v)], t.mono[v]);
            }
            out.push_back({m, t.coeff});
        }
        return from_terms(target, std::move(out));
    }

    std::string to_text() const;
    static Polynomial parse(const RingPtr& ring, const std::string& text);

    int nvars() const { return ring_ ? ring_->nvars() : 0; }

    void check_same_ring(const Polynomial& o) const {
        if (!same_ring(ring_, o.ring_)) throw std::invalid_argument("Polynomial: ring mismatch");
    }

private:
    void check_var(int v) const {
        if (v < 0 || v >= nvars()) throw std::invalid_argument("Polynomial: invalid variable index");
    }

    template <class S, class Conv>
    static S horner(const std::vector<Term>& terms, int v, const std::vector<S>& point, Conv conv) {
        if (terms.empty()) return S(0);
        if (v < 0) return conv(terms[0].coeff);
        // split by exponent of v, descending; terms within a bucket keep order
        std::vector<std::pair<unsigned, std::vector<Term>>> buckets;
        for (const auto& t : terms) {
            unsigned e = t.mono[v];
            Term stripped{t.mono, t.coeff};
            stripped.mono.set(v, 0);
            auto it = std::find_if(buckets.begin(), buckets.end(),
                                   [e](const auto& b) { return b.first == e; });
            if (it == buckets.end()) {
                buckets.push_back({e, {stripped}});
            } else {
                it->second.push_back(stripped);
            }
        }
        std::sort(buckets.begin(), buckets.end(),
                  [](const auto& a, const auto& b) { return a.first > b.first; });
        S acc(0);
        unsigned prev_exp = buckets.front().first;
        for (std::size_t i = 0; i < buckets.size(); ++i) {
            if (i > 0) {
                for (unsigned k = buckets[i].first; k < prev_exp; ++k)
                    acc = acc * point[static_cast<std::size_t>(v)];
                prev_exp = buckets[i].first;
            }
            acc += horner<S>(buckets[i].second, v - 1, point, conv);
        }
        for (unsigned k = 0; k < prev_exp; ++k) acc = acc * point[static_cast<std::size_t>(v)];
        return acc;
    }

    RingPtr ring_;
    std::vector<Term> terms_;
};

/// Scales f so that all coefficients are integers with content 1 and the
/// grevlex-leading coefficient is positive. Idempotent.
inline Polynomial canonical_normalize(const Polynomial& f) {
    if (f.is_zero()) throw std::invalid_argument("canonical_normalize: zero polynomial");
    mpz_class den_lcm = 1;
    for (const auto& t : f.terms()) {
        mpz_class d = t.coeff.denominator();
        den_lcm = lcm(den_lcm, d);
    }
    mpz_class num_gcd = 0;
    for (const auto& t : f.terms()) {
        mpz_class scaled = t.coeff.numerator() * (den_lcm / t.coeff.denominator());
        num_gcd = gcd(num_gcd, scaled);
    }
    mpq_class factor(den_lcm, num_gcd);
    factor.canonicalize();
    Rational scale(factor);  // positive: den_lcm > 0, num_gcd > 0
    if (f.leading().coeff.sign() < 0) scale = -scale;
    return f.scaled(scale);
}

inline std::string Polynomial::to_text() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        Rational c = t.coeff;
        bool neg = c.sign() < 0;
        if (first) {
            if (neg) os << "-";
            first = false;
        } else {
            os << (neg ? " - " : " + ");
        }
        Rational a = c.abs();
        bool printed_coeff = false;
        if (!a.is_one() || t.mono.is_one()) {
            os << a.to_string();
            printed_coeff = true;
        }
        bool first_var = true;
        for (int v = 0; v < nvars(); ++v) {
            unsigned e = t.mono[v];
            if (e == 0) continue;
            if (printed_coeff || !first_var) os << "*";
            os << ring_->name(v);
            if (e > 1) os << "^" << e;
            printed_coeff = true;
            first_var = false;
        }
    }
    return os.str();
}

inline Polynomial Polynomial::parse(const RingPtr& ring, const std::string& text) {
    struct Lexer {
        const std::string& s;
        std::size_t i = 0;
        void skip_ws() {
            while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        }
        bool eof() {
            skip_ws();
            return i >= s.size();
        }
        char peek() {
            skip_ws();
            return i < s.size() ? s[i] : '\0';
        }
        char take() {
            skip_ws();
            return s[i++];
        }
        std::string take_number() {
            skip_ws();
            std::size_t b = i;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            if (b == i) throw std::invalid_argument("polynomial parse: expected digits at position " +
                                                    std::to_string(b));
            return s.substr(b, i - b);
        }
        std::string take_ident() {
            skip_ws();
            std::size_t b = i;
            while (i < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
                ++i;
            if (b == i) throw std::invalid_argument("polynomial parse: expected identifier at position " +
                                                    std::to_string(b));
            return s.substr(b, i - b);
        }
    } lex{text};

    std::vector<Term> out;
    bool first = true;
    while (!lex.eof()) {
        int sign = 1;
        char c = lex.peek();
        if (c == '+' || c == '-') {
            lex.take();
            sign = c == '-' ? -1 : 1;
        } else if (!first) {
            throw std::invalid_argument("polynomial parse: expected '+' or '-' at position " +
                                        std::to_string(lex.i));
        }
        first = false;

        Rational coeff(1);
        Monomial mono(ring->nvars());
        bool have_factor = false;
        bool expect_factor = true;
        while (expect_factor) {
            char p = lex.peek();
            if (std::isdigit(static_cast<unsigned char>(p))) {
                std::string num = lex.take_number();
                std::string lit = num;
                if (lex.peek() == '/') {
                    lex.take();
                    lit += "/" + lex.take_number();
                }
                coeff *= Rational::parse(lit);
                have_factor = true;
            } else if (std::isalpha(static_cast<unsigned char>(p)) || p == '_') {
                std::string name = lex.take_ident();
                int v = ring->index_of(name);
                if (v < 0)
                    throw std::invalid_argument("polynomial parse: unknown variable '" + name + "'");
                unsigned e = 1;
                if (lex.peek() == '^') {
                    lex.take();
                    e = static_cast<unsigned>(std::stoul(lex.take_number()));
                }
                mono.set(v, mono[v] + e);
                have_factor = true;
            } else {
                throw std::invalid_argument("polynomial parse: unexpected character at position " +
                                            std::to_string(lex.i));
            }
            if (lex.peek() == '*') {
                lex.take();
                expect_factor = true;
            } else {
                expect_factor = false;
            }
        }
        if (!have_factor) throw std::invalid_argument("polynomial parse: empty term");
        if (sign < 0) coeff = -coeff;
        out.push_back({mono, coeff});
    }
    return Polynomial::from_terms(ring, std::move(out));
}

}  // namespace spshadow
