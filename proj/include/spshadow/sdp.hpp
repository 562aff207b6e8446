#pragma once

#include <functional>
#include <limits>
#include <numeric>

#include "spshadow/floatmat.hpp"
#include "spshadow/sympencil.hpp"

namespace spshadow {

namespace detail {

inline FloatSymMatrix to_float(const QMatrix& m) {
    const int n = static_cast<int>(m.size());
    FloatSymMatrix out(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out.raw(i, j) = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].to_double();
    return out;
}

/// A(z) = offset + sum_k z_k * mats[k].
struct AffineMap {
    int n = 0;
    std::vector<FloatSymMatrix> mats;
    FloatSymMatrix offset{1};

    FloatSymMatrix eval(const std::vector<double>& z) const {
        FloatSymMatrix a = offset;
        for (std::size_t k = 0; k < mats.size(); ++k) a.add_scaled(mats[k], z[k]);
        return a;
    }
};

inline AffineMap pencil_map(const SymPencil& P) {
    AffineMap m;
    m.n = P.n;
    m.offset = to_float(P.C);
    for (const auto& a : P.A) m.mats.push_back(to_float(a));
    for (const auto& b : P.B) m.mats.push_back(to_float(b));
    return m;
}

/// Cholesky attempt; returns false unless A - floor*I is positive definite.
/// On success *logdet receives log det A.
inline bool cholesky_logdet(const FloatSymMatrix& A, double floor_shift, double* logdet) {
    const int n = A.size();
    std::vector<double> L(static_cast<std::size_t>(n) * n, 0.0);
    double ld = 0;
    for (int j = 0; j < n; ++j) {
        double d = A(j, j) - floor_shift;
        for (int k = 0; k < j; ++k) d -= L[static_cast<std::size_t>(j) * n + k] * L[static_cast<std::size_t>(j) * n + k];
        if (d <= 0 || !std::isfinite(d)) return false;
        double root = std::sqrt(d);
        L[static_cast<std::size_t>(j) * n + j] = root;
        ld += std::log(root);
        for (int i = j + 1; i < n; ++i) {
            double s = A(i, j);
            for (int k = 0; k < j; ++k)
                s -= L[static_cast<std::size_t>(i) * n + k] * L[static_cast<std::size_t>(j) * n + k];
            L[static_cast<std::size_t>(i) * n + j] = s / root;
        }
    }
    if (logdet) *logdet = 2 * ld;
    return true;
}

/// Damped-Newton path following for   max obj.z  s.t.  A(z) psd:
/// minimizes -obj.z - (1/t) log det A(z) for geometrically increasing t.
/// `stop` may end the outer loop early (used by the feasibility phase).
struct BarrierResult {
    std::vector<double> z;
    FloatSymMatrix matrix{1};
};

inline BarrierResult barrier_maximize(const AffineMap& map, const std::vector<double>& obj,
                                      std::vector<double> z, double gap_target,
                                      const std::function<bool(const std::vector<double>&)>& stop = {}) {
    const int K = static_cast<int>(map.mats.size());
    const int n = map.n;
    const double z_cap = 1e8 * (1 + std::sqrt(std::inner_product(z.begin(), z.end(), z.begin(), 0.0)));

    auto phi = [&](const std::vector<double>& zz, double t, double* ok) -> double {
        double ld = 0;
        if (!cholesky_logdet(map.eval(zz), 0.0, &ld)) {
            *ok = 0;
            return 0;
        }
        *ok = 1;
        double lin = 0;
        for (int k = 0; k < K; ++k) lin += obj[static_cast<std::size_t>(k)] * zz[static_cast<std::size_t>(k)];
        return -lin - ld / t;
    };

    double t = 1.0;
    const double mu = 10.0;
    while (true) {
        for (int iter = 0; iter < 80; ++iter) {
            FloatSymMatrix A = map.eval(z);
            EigenResult eig = jacobi_eigen(A);
            if (eig.values.back() <= 0)
                throw NumericError("barrier_maximize: iterate left the cone");
            // Mt[k] = Q^T mats[k] Q in the eigenbasis
            std::vector<std::vector<double>> Mt(static_cast<std::size_t>(K));
            for (int k = 0; k < K; ++k) {
                std::vector<double>& out = Mt[static_cast<std::size_t>(k)];
                out.assign(static_cast<std::size_t>(n) * n, 0.0);
                const FloatSymMatrix& Mk = map.mats[static_cast<std::size_t>(k)];
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) {
                        double s = 0;
                        for (int a = 0; a < n; ++a)
                            for (int b = 0; b < n; ++b)
                                s += eig.vectors[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)] *
                                     Mk(a, b) *
                                     eig.vectors[static_cast<std::size_t>(j)][static_cast<std::size_t>(b)];
                        out[static_cast<std::size_t>(i) * n + j] = s;
                    }
            }
            std::vector<double> grad(static_cast<std::size_t>(K), 0.0);
            std::vector<std::vector<double>> H(static_cast<std::size_t>(K),
                                               std::vector<double>(static_cast<std::size_t>(K), 0.0));
            for (int k = 0; k < K; ++k) {
                double tr = 0;
                for (int i = 0; i < n; ++i)
                    tr += Mt[static_cast<std::size_t>(k)][static_cast<std::size_t>(i) * n + i] /
                          eig.values[static_cast<std::size_t>(i)];
                grad[static_cast<std::size_t>(k)] = -obj[static_cast<std::size_t>(k)] - tr / t;
            }
            for (int k = 0; k < K; ++k)
                for (int l = k; l < K; ++l) {
                    double s = 0;
                    for (int i = 0; i < n; ++i)
                        for (int j = 0; j < n; ++j)
                            s += Mt[static_cast<std::size_t>(k)][static_cast<std::size_t>(i) * n + j] *
                                 Mt[static_cast<std::size_t>(l)][static_cast<std::size_t>(i) * n + j] /
                                 (eig.values[static_cast<std::size_t>(i)] * eig.values[static_cast<std::size_t>(j)]);
                    H[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)] = s / t;
                    H[static_cast<std::size_t>(l)][static_cast<std::size_t>(k)] = s / t;
                }

            // Newton direction via eigen pseudo-inverse of H
            FloatSymMatrix Hm(K);
            for (int k = 0; k < K; ++k)
                for (int l = 0; l < K; ++l) Hm.raw(k, l) = H[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)];
            EigenResult he = jacobi_eigen(Hm);
            std::vector<double> step(static_cast<std::size_t>(K), 0.0);
            double hmax = std::max(he.values.front(), 1e-300);
            for (int m = 0; m < K; ++m) {
                double lam = he.values[static_cast<std::size_t>(m)];
                if (lam <= 1e-13 * hmax) continue;
                double coef = 0;
                for (int k = 0; k < K; ++k)
                    coef += he.vectors[static_cast<std::size_t>(m)][static_cast<std::size_t>(k)] *
                            grad[static_cast<std::size_t>(k)];
                coef /= lam;
                for (int k = 0; k < K; ++k)
                    step[static_cast<std::size_t>(k)] -=
                        coef * he.vectors[static_cast<std::size_t>(m)][static_cast<std::size_t>(k)];
            }
            double gdotstep = 0;
            for (int k = 0; k < K; ++k) gdotstep += grad[static_cast<std::size_t>(k)] * step[static_cast<std::size_t>(k)];
            const double decrement = -gdotstep;
            if (decrement < 1e-14) break;

            double ok0 = 0;
            double f0 = phi(z, t, &ok0);
            double alpha = 1.0;
            std::vector<double> znew = z;
            bool moved = false;
            while (alpha > 1e-14) {
                for (int k = 0; k < K; ++k)
                    znew[static_cast<std::size_t>(k)] = z[static_cast<std::size_t>(k)] +
                                                        alpha * step[static_cast<std::size_t>(k)];
                double okn = 0;
                double fn = phi(znew, t, &okn);
                if (okn > 0 && fn <= f0 + 0.25 * alpha * gdotstep) {
                    z = znew;
                    moved = true;
                    break;
                }
                alpha *= 0.5;
            }
            if (!moved) break;  // stalled: accept current point for this t
            double znorm = 0;
            for (double v : z) znorm = std::max(znorm, std::abs(v));
            if (znorm > z_cap)
                throw NumericError("barrier_maximize: iterate norm exceeded the cap (unbounded direction?)");
        }
        if (stop && stop(z)) break;
        if (static_cast<double>(n) / t < gap_target) break;
        t *= mu;
    }
    return BarrierResult{z, map.eval(z)};
}

/// Strictly feasible point for A(z) psd, or NumericError. Tries z = 0 first,
/// then runs the barrier on the slack-extended problem min s, A(z) + s I psd.
inline std::vector<double> find_strict_interior(const AffineMap& map) {
    const int K = static_cast<int>(map.mats.size());
    const double scale = 1 + map.offset.frobenius_norm();
    std::vector<double> zero(static_cast<std::size_t>(K), 0.0);
    if (cholesky_logdet(map.offset, 1e-6 * scale, nullptr)) return zero;

    AffineMap ext = map;
    FloatSymMatrix eye(map.n);
    for (int i = 0; i < map.n; ++i) eye.raw(i, i) = 1.0;
    ext.mats.push_back(eye);
    EigenResult e0 = jacobi_eigen(map.offset);
    std::vector<double> z0(static_cast<std::size_t>(K + 1), 0.0);
    z0[static_cast<std::size_t>(K)] = -std::min(0.0, e0.values.back()) + scale;
    std::vector<double> obj(static_cast<std::size_t>(K + 1), 0.0);
    obj[static_cast<std::size_t>(K)] = -1.0;  // maximize -s
    const double margin = 1e-4 * scale;
    BarrierResult r = barrier_maximize(ext, obj, z0, 1e-10, [&](const std::vector<double>& z) {
        return z.back() < -margin;
    });
    if (r.z.back() >= 0)
        throw NumericError("find_strict_interior: no strictly feasible point found");
    std::vector<double> z(r.z.begin(), r.z.end() - 1);
    // A(z) is strictly inside: A(z) = A_ext(z, s) - s I with s < 0
    return z;
}

}  // namespace detail

struct MemberResult {
    bool feasible = false;
    std::vector<double> witness_y;
    double final_gap = 0;
    int iterations = 0;
};

/// Alternating projections between the affine slice {A(x, y) : y} and the
/// psd cone. The infeasible verdict is heuristic and carries the final gap.
inline MemberResult is_member(const SymPencil& P, const std::vector<double>& x, double tol = 1e-7,
                              int max_iter = 5000) {
    if (static_cast<int>(x.size()) != P.d) throw std::invalid_argument("is_member: point arity mismatch");
    if (tol <= 0) throw std::invalid_argument("is_member: tol must be positive");
    detail::AffineMap map = detail::pencil_map(P);
    FloatSymMatrix A0 = map.offset;
    for (int i = 0; i < P.d; ++i) A0.add_scaled(map.mats[static_cast<std::size_t>(i)], x[static_cast<std::size_t>(i)]);
    const double scale = 1 + A0.frobenius_norm();

    MemberResult out;
    if (P.p == 0) {
        FloatSymMatrix W = psd_project(A0);
        out.final_gap = (W - A0).frobenius_norm();
        out.iterations = 1;
        out.feasible = out.final_gap <= tol * scale;
        return out;
    }

    // Gram matrix of the B-span, pseudo-inverted once
    FloatSymMatrix G(P.p);
    for (int a = 0; a < P.p; ++a)
        for (int b = 0; b < P.p; ++b)
            G.raw(a, b) = FloatSymMatrix::dot(map.mats[static_cast<std::size_t>(P.d + a)],
                                              map.mats[static_cast<std::size_t>(P.d + b)]);
    EigenResult ge = jacobi_eigen(G);
    double gmax = std::max(ge.values.front(), 1e-300);

    std::vector<double> y(static_cast<std::size_t>(P.p), 0.0);
    FloatSymMatrix Z = A0;
    for (int it = 1; it <= max_iter; ++it) {
        FloatSymMatrix W = psd_project(Z);
        // least squares in the B-span: G y = <B_j, W - A0>
        std::vector<double> rhs(static_cast<std::size_t>(P.p), 0.0);
        FloatSymMatrix D = W - A0;
        for (int j = 0; j < P.p; ++j)
            rhs[static_cast<std::size_t>(j)] = FloatSymMatrix::dot(map.mats[static_cast<std::size_t>(P.d + j)], D);
        for (auto& v : y) v = 0;
        for (int m = 0; m < P.p; ++m) {
            double lam = ge.values[static_cast<std::size_t>(m)];
            if (lam <= 1e-12 * gmax) continue;
            double coef = 0;
            for (int j = 0; j < P.p; ++j)
                coef += ge.vectors[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)] *
                        rhs[static_cast<std::size_t>(j)];
            coef /= lam;
            for (int j = 0; j < P.p; ++j)
                y[static_cast<std::size_t>(j)] += coef * ge.vectors[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)];
        }
        Z = A0;
        for (int j = 0; j < P.p; ++j) Z.add_scaled(map.mats[static_cast<std::size_t>(P.d + j)], y[static_cast<std::size_t>(j)]);
        out.final_gap = (W - Z).frobenius_norm();
        out.iterations = it;
        if (out.final_gap <= tol * scale) {
            out.feasible = true;
            out.witness_y = y;
            return out;
        }
    }
    out.feasible = false;
    out.witness_y = y;
    return out;
}

struct SupportResult {
    double value = 0;
    std::vector<double> argmax;
    std::vector<double> witness_y;
    FloatSymMatrix optimal_matrix{1};
    int rank = 0;
    double rank_gap = 0;  // smallest kept / largest dropped eigenvalue
};

/// h_S(c) = max c.x over the shadow, by log-det barrier path following.
inline SupportResult support_function(const SymPencil& P, const std::vector<double>& c,
                                      double tol = 1e-9, double rank_tol = 1e-7) {
    if (static_cast<int>(c.size()) != P.d)
        throw std::invalid_argument("support_function: direction arity mismatch");
    double cnorm = 0;
    for (double v : c) cnorm += v * v;
    if (cnorm <= 0) throw std::invalid_argument("support_function: zero direction");
    if (tol <= 0) throw std::invalid_argument("support_function: tol must be positive");

    detail::AffineMap map = detail::pencil_map(P);
    std::vector<double> z0 = detail::find_strict_interior(map);
    std::vector<double> obj(map.mats.size(), 0.0);
    for (int i = 0; i < P.d; ++i) obj[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(i)];
    detail::BarrierResult r = detail::barrier_maximize(map, obj, z0, tol);

    SupportResult out;
    out.argmax.assign(r.z.begin(), r.z.begin() + P.d);
    out.witness_y.assign(r.z.begin() + P.d, r.z.end());
    out.optimal_matrix = r.matrix;
    out.value = 0;
    for (int i = 0; i < P.d; ++i) out.value += c[static_cast<std::size_t>(i)] * out.argmax[static_cast<std::size_t>(i)];

    EigenResult eig = jacobi_eigen(r.matrix);
    double lmax = eig.values.front();
    double thresh = rank_tol * std::max(lmax, 0.0);
    double kept_min = 0, dropped_max = 0;
    for (double lam : eig.values) {
        if (lam > thresh) {
            out.rank += 1;
            kept_min = lam;  // eigenvalues are descending: kept is a prefix
        } else {
            dropped_max = std::max(dropped_max, std::abs(lam));
        }
    }
    if (out.rank == 0)
        out.rank_gap = 0;
    else if (dropped_max <= 0)
        out.rank_gap = std::numeric_limits<double>::infinity();
    else
        out.rank_gap = kept_min / dropped_max;
    return out;
}

struct ScanPoint {
    double angle = 0;
    std::vector<double> point;
    int rank = 0;
    double rank_gap = 0;
    bool ok = false;
    std::string error;
};

/// Support-function sweep over equally spaced directions in the plane.
inline std::vector<ScanPoint> boundary_scan(const SymPencil& P, int num_directions, double tol = 1e-9,
                                            double rank_tol = 1e-7) {
    if (P.d != 2) throw std::invalid_argument("boundary_scan: requires d = 2");
    if (num_directions < 1) throw std::invalid_argument("boundary_scan: need at least one direction");
    std::vector<ScanPoint> out;
    for (int k = 0; k < num_directions; ++k) {
        double angle = 2.0 * M_PI * k / num_directions;
        ScanPoint sp;
        sp.angle = angle;
        try {
            SupportResult s = support_function(P, {std::cos(angle), std::sin(angle)}, tol, rank_tol);
            sp.point = s.argmax;
            sp.rank = s.rank;
            sp.rank_gap = s.rank_gap;
            sp.ok = true;
        } catch (const std::exception& e) {
            sp.error = e.what();
        }
        out.push_back(std::move(sp));
    }
    return out;
}

}  // namespace spshadow
