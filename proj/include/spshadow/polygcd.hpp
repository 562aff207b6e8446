#pragma once

#include <optional>

#include "spshadow/polynomial.hpp"

namespace spshadow {

/// Exact division: returns f / g when g divides f exactly, nullopt otherwise.
inline std::optional<Polynomial> try_divide(const Polynomial& f, const Polynomial& g) {
    f.check_same_ring(g);
    if (g.is_zero()) return std::nullopt;
    std::vector<Term> r = f.terms();
    std::vector<Term> scratch, quotient;
    const Term& gl = g.leading();
    while (!r.empty()) {
        const Term& rl = r.front();
        if (!gl.mono.divides(rl.mono)) return std::nullopt;
        Term t{gl.mono.divide_into(rl.mono), rl.coeff / gl.coeff};
        detail::add_scaled(scratch, r, -t.coeff, t.mono, g.terms(), detail::GrevlexDesc{});
        r.swap(scratch);
        quotient.push_back(std::move(t));
    }
    return Polynomial::from_terms(f.ring(), std::move(quotient));
}

inline Polynomial divide_exact(const Polynomial& f, const Polynomial& g) {
    auto q = try_divide(f, g);
    if (!q) throw std::logic_error("divide_exact: not divisible");
    return *q;
}

namespace detail {

inline int top_variable(const Polynomial& f, const Polynomial& g) {
    for (int v = f.nvars() - 1; v >= 0; --v)
        if (f.uses_var(v) || g.uses_var(v)) return v;
    return -1;
}

}  // namespace detail

Polynomial multivariate_gcd(const Polynomial& f, const Polynomial& g);

namespace detail {

/// Content of f viewed as a univariate polynomial in v (gcd of the
/// coefficient polynomials, which are v-free).
inline Polynomial content_in(const Polynomial& f, int v) {
    Polynomial c = Polynomial::zero(f.ring());
    int d = f.degree_in(v);
    for (int k = 0; k <= d; ++k) {
        Polynomial ck = f.coeff_of(v, static_cast<unsigned>(k));
        if (ck.is_zero()) continue;
        c = c.is_zero() ? canonical_normalize(ck) : multivariate_gcd(c, ck);
        if (c.is_constant()) return Polynomial::constant(f.ring(), Rational(1));
    }
    return c;
}

/// Exact pseudo-remainder lc(G)^(deg F - deg G + 1) * F  mod  G in the
/// variable v (deg_v F >= deg_v G >= 1).
inline Polynomial pseudo_rem(Polynomial R, const Polynomial& G, int v) {
    const int dg = G.degree_in(v);
    const int df = R.degree_in(v);
    const Polynomial lcg = G.coeff_of(v, static_cast<unsigned>(dg));
    int scale_left = df - dg + 1;
    while (!R.is_zero()) {
        int dr = R.degree_in(v);
        if (dr < dg) break;
        Polynomial lcr = R.coeff_of(v, static_cast<unsigned>(dr));
        Polynomial shift = Polynomial::variable(R.ring(), v).pow(static_cast<unsigned>(dr - dg));
        R = lcg * R - lcr * shift * G;
        --scale_left;
    }
    if (scale_left > 0 && !R.is_zero()) R = R * lcg.pow(static_cast<unsigned>(scale_left));
    return R;
}

}  // namespace detail

/// Greatest common divisor by polynomial remainder sequences in the trailing
/// variable (subresultant divisors inside the loop, primitive parts at entry
/// and exit), recursing on the coefficient ring. Result is canonically
/// normalized; gcd(f, 0) = canonical_normalize(f).
inline Polynomial multivariate_gcd(const Polynomial& f, const Polynomial& g) {
    f.check_same_ring(g);
    if (f.is_zero() && g.is_zero()) return Polynomial::zero(f.ring());
    if (f.is_zero()) return canonical_normalize(g);
    if (g.is_zero()) return canonical_normalize(f);
    if (f.is_constant() || g.is_constant()) return Polynomial::constant(f.ring(), Rational(1));

    int v = detail::top_variable(f, g);
    if (v < 0) return Polynomial::constant(f.ring(), Rational(1));
    bool fv = f.uses_var(v), gv = g.uses_var(v);
    if (fv && !gv) return multivariate_gcd(detail::content_in(f, v), g);
    if (!fv && gv) return multivariate_gcd(f, detail::content_in(g, v));

    Polynomial cf = detail::content_in(f, v);
    Polynomial cg = detail::content_in(g, v);
    Polynomial c = multivariate_gcd(cf, cg);
    Polynomial F = canonical_normalize(divide_exact(f, cf));
    Polynomial G = canonical_normalize(divide_exact(g, cg));
    if (F.degree_in(v) < G.degree_in(v)) std::swap(F, G);

    // subresultant remainder sequence: divide each pseudo-remainder by the
    // predicted factor lc * h^delta rather than computing contents per step
    const Polynomial one = Polynomial::constant(f.ring(), Rational(1));
    Polynomial lead = one, hpow = one;
    Polynomial result_pp = one;
    bool first = true;
    while (true) {
        int delta = F.degree_in(v) - G.degree_in(v);
        Polynomial R = detail::pseudo_rem(F, G, v);
        if (R.is_zero()) {
            Polynomial cG = detail::content_in(G, v);
            result_pp = canonical_normalize(divide_exact(G, cG));
            break;
        }
        if (R.degree_in(v) <= 0) break;  // v-free remainder: primitive parts are coprime
        Polynomial divisor = first ? one : lead * hpow.pow(static_cast<unsigned>(delta));
        first = false;
        F = G;
        G = divide_exact(R, divisor);
        lead = F.coeff_of(v, static_cast<unsigned>(F.degree_in(v)));
        if (delta >= 1) {
            Polynomial lp = lead.pow(static_cast<unsigned>(delta));
            hpow = delta == 1 ? lead : divide_exact(lp, hpow.pow(static_cast<unsigned>(delta - 1)));
        }
    }
    return canonical_normalize(c * result_pp);
}

/// Product of the distinct irreducible factors of f, canonically normalized.
/// Computed as f / gcd(f, all nonzero first partials).
inline Polynomial squarefree_part(const Polynomial& f) {
    if (f.is_zero()) throw std::invalid_argument("squarefree_part: zero polynomial");
    if (f.is_constant()) return Polynomial::constant(f.ring(), Rational(1));
    Polynomial g = f;
    for (int v = 0; v < f.nvars(); ++v) {
        Polynomial d = f.derivative(v);
        if (!d.is_zero()) g = multivariate_gcd(g, d);
        if (g.is_constant()) break;
    }
    if (g.is_constant()) return canonical_normalize(f);
    return canonical_normalize(divide_exact(f, g));
}

}  // namespace spshadow
