#pragma once

#include <bit>
#include <unordered_map>

#include "spshadow/polynomial.hpp"
#include "spshadow/polygcd.hpp"

namespace spshadow {

inline constexpr int kSymbolicSizeCap = 6;

/// Symmetric matrix of polynomial entries.
class PolyMatrix {
public:
    PolyMatrix(RingPtr ring, std::vector<std::vector<Polynomial>> entries)
        : ring_(std::move(ring)), e_(std::move(entries)) {
        n_ = static_cast<int>(e_.size());
        for (const auto& row : e_) {
            if (static_cast<int>(row.size()) != n_) throw std::invalid_argument("PolyMatrix: not square");
            for (const auto& p : row)
                if (!same_ring(p.ring(), ring_)) throw std::invalid_argument("PolyMatrix: ring mismatch");
        }
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j)
                if (at(i, j) != at(j, i)) throw std::invalid_argument("PolyMatrix: not symmetric");
    }

    int size() const { return n_; }
    const RingPtr& ring() const { return ring_; }
    const Polynomial& at(int i, int j) const {
        return e_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }

private:
    RingPtr ring_;
    int n_ = 0;
    std::vector<std::vector<Polynomial>> e_;
};

namespace detail {

/// Determinant of a general polynomial grid by first-row expansion with
/// memoization over column subsets.
inline Polynomial det_grid(const std::vector<std::vector<Polynomial>>& a, const RingPtr& ring) {
    const int n = static_cast<int>(a.size());
    if (n == 0) return Polynomial::constant(ring, Rational(1));
    std::unordered_map<std::uint32_t, Polynomial> memo;
    auto rec = [&](auto&& self, std::uint32_t mask) -> Polynomial {
        if (mask == 0) return Polynomial::constant(ring, Rational(1));
        auto it = memo.find(mask);
        if (it != memo.end()) return it->second;
        int row = n - std::popcount(mask);
        Polynomial acc = Polynomial::zero(ring);
        int sign = 1;
        for (int j = 0; j < n; ++j) {
            if (!(mask & (1u << j))) continue;
            const Polynomial& piv = a[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)];
            if (!piv.is_zero()) {
                Polynomial sub = self(self, mask & ~(1u << j));
                Polynomial term = piv * sub;
                acc = sign > 0 ? acc + term : acc - term;
            }
            sign = -sign;
        }
        memo.emplace(mask, acc);
        return acc;
    };
    return rec(rec, (n >= 32 ? ~0u : (1u << n) - 1u));
}

/// Plain recursive cofactor expansion, no memoization. Kept as an
/// independent cross-check path for tests.
inline Polynomial det_cofactor_plain(const std::vector<std::vector<Polynomial>>& a,
                                     const RingPtr& ring) {
    const int n = static_cast<int>(a.size());
    if (n == 0) return Polynomial::constant(ring, Rational(1));
    if (n == 1) return a[0][0];
    Polynomial acc = Polynomial::zero(ring);
    for (int j = 0; j < n; ++j) {
        if (a[0][static_cast<std::size_t>(j)].is_zero()) continue;
        std::vector<std::vector<Polynomial>> sub;
        for (int r = 1; r < n; ++r) {
            std::vector<Polynomial> row;
            for (int c = 0; c < n; ++c)
                if (c != j) row.push_back(a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
            sub.push_back(std::move(row));
        }
        Polynomial term = a[0][static_cast<std::size_t>(j)] * det_cofactor_plain(sub, ring);
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

/// Bareiss fraction-free determinant with exact polynomial divisions.
inline Polynomial det_bareiss(std::vector<std::vector<Polynomial>> a, const RingPtr& ring) {
    const int n = static_cast<int>(a.size());
    if (n == 0) return Polynomial::constant(ring, Rational(1));
    int sign = 1;
    Polynomial prev = Polynomial::constant(ring, Rational(1));
    for (int k = 0; k < n - 1; ++k) {
        if (a[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)].is_zero()) {
            int swap_row = -1;
            for (int r = k + 1; r < n; ++r)
                if (!a[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)].is_zero()) {
                    swap_row = r;
                    break;
                }
            if (swap_row < 0) return Polynomial::zero(ring);
            std::swap(a[static_cast<std::size_t>(k)], a[static_cast<std::size_t>(swap_row)]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                Polynomial num = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                                     a[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] -
                                 a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
                                     a[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
                a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    num.is_zero() ? std::move(num) : divide_exact(num, prev);
            }
        prev = a[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)];
    }
    Polynomial d = a[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(n - 1)];
    return sign > 0 ? d : -d;
}

}  // namespace detail

/// Exact determinant (memoized cofactor expansion).
inline Polynomial determinant(const PolyMatrix& M) {
    std::vector<std::vector<Polynomial>> a;
    for (int i = 0; i < M.size(); ++i) {
        std::vector<Polynomial> row;
        for (int j = 0; j < M.size(); ++j) row.push_back(M.at(i, j));
        a.push_back(std::move(row));
    }
    return detail::det_grid(a, M.ring());
}

/// Fraction-free cross-check path.
inline Polynomial determinant_bareiss(const PolyMatrix& M) {
    std::vector<std::vector<Polynomial>> a;
    for (int i = 0; i < M.size(); ++i) {
        std::vector<Polynomial> row;
        for (int j = 0; j < M.size(); ++j) row.push_back(M.at(i, j));
        a.push_back(std::move(row));
    }
    return detail::det_bareiss(std::move(a), M.ring());
}

namespace detail {

inline void combinations(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
        fn(idx);
        int i = k - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) break;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
}

}  // namespace detail

/// All k x k minors of the symmetric matrix, deduplicated by
/// minor(I,J) = minor(J,I); the lexicographically smaller (rows, cols)
/// representative is kept and the output order is (rows, cols) ascending.
inline std::vector<Polynomial> minors(const PolyMatrix& M, int k) {
    if (k < 1 || k > M.size()) throw std::invalid_argument("minors: k out of range");
    std::vector<Polynomial> out;
    detail::combinations(M.size(), k, [&](const std::vector<int>& rows) {
        detail::combinations(M.size(), k, [&](const std::vector<int>& cols) {
            if (cols < rows) return;  // symmetric duplicate
            std::vector<std::vector<Polynomial>> sub;
            for (int r : rows) {
                std::vector<Polynomial> row;
                for (int c : cols) row.push_back(M.at(r, c));
                sub.push_back(std::move(row));
            }
            out.push_back(detail::det_grid(sub, M.ring()));
        });
    });
    return out;
}

/// Determinant of the Sylvester matrix of f and g in the variable v; entries
/// are the v-coefficients (polynomials in the remaining variables).
inline Polynomial sylvester_resultant(const Polynomial& f, const Polynomial& g, int v) {
    f.check_same_ring(g);
    const int m = f.degree_in(v);
    const int k = g.degree_in(v);
    if (m < 1 || k < 1) throw std::invalid_argument("sylvester_resultant: degree-zero input in v");
    const RingPtr& ring = f.ring();
    const int size = m + k;
    std::vector<std::vector<Polynomial>> a(
        static_cast<std::size_t>(size),
        std::vector<Polynomial>(static_cast<std::size_t>(size), Polynomial::zero(ring)));
    for (int r = 0; r < k; ++r)
        for (int i = 0; i <= m; ++i)
            a[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + i)] =
                f.coeff_of(v, static_cast<unsigned>(m - i));
    for (int r = 0; r < m; ++r)
        for (int i = 0; i <= k; ++i)
            a[static_cast<std::size_t>(k + r)][static_cast<std::size_t>(r + i)] =
                g.coeff_of(v, static_cast<unsigned>(k - i));
    return detail::det_grid(a, ring);
}

}  // namespace spshadow
