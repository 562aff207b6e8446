#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace spshadow {

/// Exact rational scalar backed by GMP. Always kept canonical:
/// gcd(|num|, den) = 1, den >= 1, zero is 0/1.
class Rational {
public:
    Rational() : q_(0) {}
    Rational(long n) : q_(static_cast<signed long>(n)) {}
    Rational(int n) : q_(n) {}
    Rational(long num, long den) : q_(static_cast<signed long>(num), static_cast<signed long>(den)) {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        q_.canonicalize();
    }
    explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }
    explicit Rational(const mpz_class& z) : q_(z) {}

    static Rational parse(const std::string& text);

    const mpq_class& raw() const { return q_; }
    mpz_class numerator() const { return q_.get_num(); }
    mpz_class denominator() const { return q_.get_den(); }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_one() const { return q_ == 1; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    Rational operator-() const { Rational r; r.q_ = -q_; return r; }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::invalid_argument("Rational: division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

    Rational abs() const { Rational r; r.q_ = ::abs(q_); return r; }

    Rational pow(unsigned e) const {
        Rational acc(1), base = *this;
        while (e) {
            if (e & 1u) acc *= base;
            base *= base;
            e >>= 1u;
        }
        return acc;
    }

    double to_double() const { return q_.get_d(); }

    std::string to_string() const {
        if (is_integer()) return q_.get_num().get_str();
        return q_.get_num().get_str() + "/" + q_.get_den().get_str();
    }

private:
    mpq_class q_;
};

inline Rational Rational::parse(const std::string& text) {
    std::size_t begin = text.find_first_not_of(" \t");
    std::size_t end = text.find_last_not_of(" \t");
    if (begin == std::string::npos) throw std::invalid_argument("Rational: empty literal");
    std::string body = text.substr(begin, end - begin + 1);
    // validate: [-+]?digits(/digits)?
    std::size_t i = 0;
    if (body[i] == '+' || body[i] == '-') ++i;
    std::size_t digits = 0;
    while (i < body.size() && body[i] >= '0' && body[i] <= '9') { ++i; ++digits; }
    if (digits == 0) throw std::invalid_argument("Rational: malformed literal '" + body + "'");
    if (i < body.size()) {
        if (body[i] != '/') throw std::invalid_argument("Rational: malformed literal '" + body + "'");
        ++i;
        std::size_t den_digits = 0;
        while (i < body.size() && body[i] >= '0' && body[i] <= '9') { ++i; ++den_digits; }
        if (den_digits == 0 || i != body.size())
            throw std::invalid_argument("Rational: malformed literal '" + body + "'");
    }
    if (body[0] == '+') body.erase(0, 1);  // GMP accepts only '-' signs
    mpq_class q(body);
    if (q.get_den() == 0) throw std::invalid_argument("Rational: zero denominator in '" + body + "'");
    q.canonicalize();
    return Rational(q);
}

inline Rational rational_gcd(const Rational& a, const Rational& b) {
    // gcd on numerators over a common denominator; used for integer content
    mpz_class g = gcd(a.numerator() * b.denominator(), b.numerator() * a.denominator());
    mpz_class d = a.denominator() * b.denominator();
    mpq_class q(g, d);
    q.canonicalize();
    Rational r(q);
    return r.sign() < 0 ? -r : r;
}

}  // namespace spshadow
