#pragma once

#include <cstdint>

#include "spshadow/sympencil.hpp"

namespace spshadow {

namespace detail {

inline QMatrix qm(std::vector<std::vector<long>> rows) {
    QMatrix m;
    for (auto& r : rows) {
        std::vector<Rational> row;
        for (long v : r) row.push_back(Rational(v));
        m.push_back(std::move(row));
    }
    return m;
}


inline QMatrix qm_add(QMatrix a, const QMatrix& b, const Rational& scale) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) a[i][j] += scale * b[i][j];
    return a;
}

}  // namespace detail

/// Unit-diagonal 3x3 pencil: d = 3, p = 0; the classic cubic spectrahedron.
inline SymPencil elliptope_pencil() {
    using detail::qm;
    return SymPencil(3, 3, 0,
                     {qm({{0, 1, 0}, {1, 0, 0}, {0, 0, 0}}),
                      qm({{0, 0, 1}, {0, 0, 0}, {1, 0, 0}}),
                      qm({{0, 0, 0}, {0, 0, 1}, {0, 1, 0}})},
                     {}, qmatrix_identity(3));
}

/// Planar shadow of type (3,2,2) with the mixed-entry 3x3 matrix
/// [[y1, x1, x2], [x1, y2, -x1-6/5 x2-7/10], [x2, *, 2-y1-y2]].
inline SymPencil example322_pencil() {
    using detail::qm;
    Rational six_fifths(6, 5), seven_tenths(7, 10);
    QMatrix A1 = qm({{0, 1, 0}, {1, 0, -1}, {0, -1, 0}});
    QMatrix A2 = qm({{0, 0, 1}, {0, 0, 0}, {1, 0, 0}});
    A2[1][2] = -six_fifths;
    A2[2][1] = -six_fifths;
    QMatrix B1 = qm({{1, 0, 0}, {0, 0, 0}, {0, 0, -1}});
    QMatrix B2 = qm({{0, 0, 0}, {0, 1, 0}, {0, 0, -1}});
    QMatrix C = qmatrix_zero(3);
    C[1][2] = -seven_tenths;
    C[2][1] = -seven_tenths;
    C[2][2] = Rational(2);
    return SymPencil(3, 2, 2, {A1, A2}, {B1, B2}, C);
}

/// Type (4,2,1) pencil whose shadow is the square with vertices (+-1, +-1).
inline SymPencil square_pencil() {
    using detail::qm;
    QMatrix A1 = qm({{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}});
    QMatrix A2 = qm({{0, 0, 1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, 1, 0, 0}});
    QMatrix B1 = qm({{0, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}});
    return SymPencil(4, 2, 1, {A1, A2}, {B1}, qmatrix_identity(4));
}

/// Type (4,2,3) pencil for the hexagon with vertices
/// (-1,1), (-1,0), (0,-1), (1,-1), (1,0), (0,1).
inline SymPencil hexagon_gouveia_pencil() {
    using detail::qm;
    QMatrix A1 = qm({{0, 1, 0, 1}, {1, 0, 0, 0}, {0, 0, 0, 0}, {1, 0, 0, 0}});
    QMatrix A2 = qm({{0, 0, 1, 1}, {0, 0, 0, 0}, {1, 0, 0, 0}, {1, 0, 0, 0}});
    QMatrix B1 = qm({{0, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 0}});
    QMatrix B2 = qm({{0, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 0, 0}, {0, 1, 0, 0}});
    QMatrix B3 = qm({{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}});
    return SymPencil(4, 2, 3, {A1, A2}, {B1, B2, B3}, qmatrix_identity(4));
}

/// Type (4,2,3) pencil for the hexagon with vertices (+-1/2, +-sqrt(3)/2),
/// (+-1, 0); entries carry the 1/2 weights of its defining matrix.
inline SymPencil hexagon_fs_pencil() {
    using detail::qm;
    Rational half(1, 2);
    QMatrix A1 = qm({{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}});
    QMatrix A2 = qm({{0, 0, 1, 0}, {0, 0, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 0}});
    QMatrix B1 = qmatrix_zero(4);
    B1[1][1] = half;
    B1[2][2] = -half;
    B1[1][3] = Rational(1);
    B1[3][1] = Rational(1);
    QMatrix B2 = qmatrix_zero(4);
    B2[1][2] = half;
    B2[2][1] = half;
    B2[2][3] = Rational(-1);
    B2[3][2] = Rational(-1);
    QMatrix B3 = qm({{0, 0, 0, 1}, {0, 0, 0, 0}, {0, 0, 0, 0}, {1, 0, 0, 0}});
    QMatrix C = qmatrix_identity(4);
    C[1][1] = half;
    C[2][2] = half;
    return SymPencil(4, 2, 3, {A1, A2}, {B1, B2, B3}, C);
}

inline SymPencil builtin_pencil(const std::string& name) {
    if (name == "elliptope") return elliptope_pencil();
    if (name == "example322") return example322_pencil();
    if (name == "square") return square_pencil();
    if (name == "hexagon_gouveia") return hexagon_gouveia_pencil();
    if (name == "hexagon_fs") return hexagon_fs_pencil();
    throw std::invalid_argument("builtin_pencil: unknown name '" + name +
                                "' (expected elliptope, example322, square, hexagon_gouveia, "
                                "hexagon_fs)");
}

/// One-parameter perturbation families; parameter 0 gives the unperturbed
/// builtin exactly.
struct PencilFamily {
    std::string name;  // square_A_eps | hexagon_H_eps | hexagon_fs_eps
    Rational parameter;
};

inline SymPencil family_pencil(const PencilFamily& fam) {
    using detail::qm;
    using detail::qm_add;
    const Rational& e = fam.parameter;
    if (fam.name == "square_A_eps") {
        SymPencil P = square_pencil();
        // + eps * diag(2 y, 3 x2, 5 y, -7 x1)
        P.A[0] = qm_add(P.A[0], qm({{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, -7}}), e);
        P.A[1] = qm_add(P.A[1], qm({{0, 0, 0, 0}, {0, 3, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}}), e);
        P.B[0] = qm_add(P.B[0], qm({{2, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 5, 0}, {0, 0, 0, 0}}), e);
        return P;
    }
    if (fam.name == "hexagon_H_eps") {
        SymPencil P = hexagon_gouveia_pencil();
        // + eps * [[7y1, 2y2, 3y3, 0], [2y2, 5y3, 0, 0], [3y3, 0, 3y1, 0], [0, 0, 0, 5y2+y3]]
        P.B[0] = qm_add(P.B[0], qm({{7, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 3, 0}, {0, 0, 0, 0}}), e);
        P.B[1] = qm_add(P.B[1], qm({{0, 2, 0, 0}, {2, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 5}}), e);
        P.B[2] = qm_add(P.B[2], qm({{0, 0, 3, 0}, {0, 5, 0, 0}, {3, 0, 0, 0}, {0, 0, 0, 1}}), e);
        return P;
    }
    if (fam.name == "hexagon_fs_eps") {
        SymPencil P = hexagon_fs_pencil();
        // + eps * diag(5 y2, 7 y3, 0, 3 x1)
        P.A[0] = qm_add(P.A[0], qm({{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 3}}), e);
        P.B[1] = qm_add(P.B[1], qm({{5, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}}), e);
        P.B[2] = qm_add(P.B[2], qm({{0, 0, 0, 0}, {0, 7, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}}), e);
        return P;
    }
    throw std::invalid_argument("family_pencil: unknown family '" + fam.name +
                                "' (expected square_A_eps, hexagon_H_eps, hexagon_fs_eps)");
}

/// Fixed type (3,2,1) instance: the unit-diagonal cubic pencil re-mixed so the
/// projected-away direction is generic. Mix (recorded here as the fixture):
///   A1' = A_x,  A2' = A_y,  B1' = A_x + A_y + 2 A_z,  C = I.
inline SymPencil elliptope_projection_321() {
    using detail::qm;
    QMatrix A1 = qm({{0, 1, 0}, {1, 0, 0}, {0, 0, 0}});
    QMatrix A2 = qm({{0, 0, 1}, {0, 0, 0}, {1, 0, 0}});
    QMatrix B1 = qm({{0, 1, 1}, {1, 0, 2}, {1, 2, 0}});
    return SymPencil(3, 2, 1, {A1, A2}, {B1}, qmatrix_identity(3));
}

/// Deterministic 64-bit stream used for the seeded fixture pencils.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Seeded pencil with symmetric integer matrices (entries in [-3, 3]) and
/// C = I, reproducible across platforms.
inline SymPencil seeded_pencil(int n, int d, int p, std::uint64_t seed) {
    std::uint64_t state = seed;
    auto sym = [&]() {
        QMatrix m = qmatrix_zero(n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                long e = static_cast<long>(splitmix64_next(state) % 7u) - 3;
                m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = Rational(e);
                m[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = Rational(e);
            }
        return m;
    };
    std::vector<QMatrix> A, B;
    for (int i = 0; i < d; ++i) A.push_back(sym());
    for (int j = 0; j < p; ++j) B.push_back(sym());
    return SymPencil(n, d, p, std::move(A), std::move(B), qmatrix_identity(n));
}

/// Fixture pencils for the degree-independence checks: types (3,1,1),
/// (3,2,1), (3,3,1) built from four fixed symmetric integer matrices.
inline SymPencil degree_independence_pencil(int d) {
    using detail::qm;
    QMatrix S1 = qm({{1, 2, 0}, {2, -1, 1}, {0, 1, 1}});
    QMatrix S2 = qm({{0, 1, -1}, {1, 1, 2}, {-1, 2, -2}});
    QMatrix S3 = qm({{2, -1, 1}, {-1, 0, 3}, {1, 3, 1}});
    QMatrix S4 = qm({{1, 0, 2}, {0, -2, 1}, {2, 1, 0}});
    std::vector<QMatrix> pool{S1, S2, S3, S4};
    if (d < 1 || d > 3) throw std::invalid_argument("degree_independence_pencil: d must be 1..3");
    std::vector<QMatrix> A(pool.begin(), pool.begin() + d);
    std::vector<QMatrix> B{pool[static_cast<std::size_t>(d)]};
    return SymPencil(3, d, 1, std::move(A), std::move(B), qmatrix_identity(3));
}

}  // namespace spshadow
