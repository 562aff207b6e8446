#pragma once

#include "spshadow/ideal.hpp"
#include "spshadow/polymatrix.hpp"

namespace spshadow {

using QMatrix = std::vector<std::vector<Rational>>;

inline QMatrix qmatrix_zero(int n) {
    return QMatrix(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n)));
}

inline QMatrix qmatrix_identity(int n) {
    QMatrix m = qmatrix_zero(n);
    for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = Rational(1);
    return m;
}

inline bool qmatrix_symmetric(const QMatrix& m) {
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j)
            if (m[i][j] != m[j][i]) return false;
    return true;
}

/// The data (n, d, p, A_1..A_d, B_1..B_p, C) of symmetric rational matrices
/// describing the set {x : exists y with sum x_i A_i + sum y_j B_j + C psd}.
struct SymPencil {
    int n = 0, d = 0, p = 0;
    std::vector<QMatrix> A;
    std::vector<QMatrix> B;
    QMatrix C;

    SymPencil(int n_, int d_, int p_, std::vector<QMatrix> A_, std::vector<QMatrix> B_, QMatrix C_)
        : n(n_), d(d_), p(p_), A(std::move(A_)), B(std::move(B_)), C(std::move(C_)) {
        if (n < 1 || d < 1 || p < 0) throw std::invalid_argument("SymPencil: need n >= 1, d >= 1, p >= 0");
        if (static_cast<int>(A.size()) != d || static_cast<int>(B.size()) != p)
            throw std::invalid_argument("SymPencil: matrix count mismatch");
        auto check = [&](const QMatrix& m, const std::string& which) {
            if (static_cast<int>(m.size()) != n)
                throw std::invalid_argument("SymPencil: " + which + " is not " + std::to_string(n) + "x" +
                                            std::to_string(n));
            for (const auto& row : m)
                if (static_cast<int>(row.size()) != n)
                    throw std::invalid_argument("SymPencil: " + which + " is not square");
            if (!qmatrix_symmetric(m))
                throw std::invalid_argument("SymPencil: " + which + " is not symmetric");
        };
        for (int i = 0; i < d; ++i) check(A[static_cast<std::size_t>(i)], "A" + std::to_string(i + 1));
        for (int j = 0; j < p; ++j) check(B[static_cast<std::size_t>(j)], "B" + std::to_string(j + 1));
        check(C, "C");
    }
};

/// The symmetric matrix of affine-linear entries in x_1..x_d, y_1..y_p.
inline PolyMatrix assemble(const SymPencil& P) {
    RingPtr ring = make_xy_ring(P.d, P.p);
    std::vector<std::vector<Polynomial>> entries;
    for (int i = 0; i < P.n; ++i) {
        std::vector<Polynomial> row;
        for (int j = 0; j < P.n; ++j) {
            std::vector<Term> terms;
            Monomial one(ring->nvars());
            const Rational& c = P.C[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (!c.is_zero()) terms.push_back({one, c});
            for (int k = 0; k < P.d; ++k) {
                const Rational& a = P.A[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)]
                                       [static_cast<std::size_t>(j)];
                if (a.is_zero()) continue;
                Monomial m(ring->nvars());
                m.set(k, 1);
                terms.push_back({m, a});
            }
            for (int k = 0; k < P.p; ++k) {
                const Rational& b = P.B[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)]
                                       [static_cast<std::size_t>(j)];
                if (b.is_zero()) continue;
                Monomial m(ring->nvars());
                m.set(P.d + k, 1);
                terms.push_back({m, b});
            }
            row.push_back(Polynomial::from_terms(ring, std::move(terms)));
        }
        entries.push_back(std::move(row));
    }
    return PolyMatrix(ring, std::move(entries));
}

/// Constraint data of the dual spectrahedron
///   Q = { U psd : <B_j, U> = 0, <C, U> = 1 },  pi(U) = (<A_i, U>)_i.
/// Pure reorganization of the pencil.
struct DualSystem {
    int n = 0;
    std::vector<QMatrix> trace_zero;  // the B_j, right-hand side 0
    QMatrix trace_one;                // C, right-hand side 1
    std::vector<QMatrix> objective;   // the A_i

    SymPencil to_pencil(int d, int p) const {
        return SymPencil(n, d, p, objective, trace_zero, trace_one);
    }
};

inline DualSystem dual_system(const SymPencil& P) {
    return DualSystem{P.n, P.B, P.C, P.A};
}

/// True iff the singular locus of the symmetroid det(assemble(P)) = 0
/// contains no corank-1 points: the saturation of <f> + <all first partials>
/// by the (n-1)-minors ideal must be the unit ideal.
inline bool check_transversal(const SymPencil& P, const GBOptions& opts = {}) {
    if (P.n > kSymbolicSizeCap)
        throw std::invalid_argument("check_transversal: n exceeds the symbolic cap of " +
                                    std::to_string(kSymbolicSizeCap));
    PolyMatrix M = assemble(P);
    Polynomial f = determinant(M);
    if (f.is_zero()) throw std::invalid_argument("check_transversal: determinant vanishes identically");
    std::vector<Polynomial> sing{f};
    for (int v = 0; v < f.nvars(); ++v) sing.push_back(f.derivative(v));
    Ideal I(M.ring(), std::move(sing));
    if (P.n == 1) return is_unit_ideal(I, opts);  // no corank-2 locus to remove
    // sat(I, J) = <1> iff every single-generator saturation is the unit
    // ideal, i.e. 1 in I + <1 - t*g> for each nonzero minor g; the unit test
    // needs no elimination step
    for (const Polynomial& g : minors(M, P.n - 1)) {
        if (g.is_zero()) continue;
        int t_index = 0;
        RingPtr ext = detail::ring_with_fresh_var(M.ring(), "t", &t_index);
        std::vector<int> up = detail::identity_map(M.ring()->nvars());
        std::vector<Polynomial> gens;
        for (const auto& h : I.generators()) gens.push_back(h.map_vars(ext, up));
        gens.push_back(Polynomial::constant(ext, Rational(1)) -
                       Polynomial::variable(ext, t_index) * g.map_vars(ext, up));
        if (!is_unit_ideal(Ideal(ext, std::move(gens)), opts)) return false;
    }
    return true;
}

}  // namespace spshadow
