#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace spshadow {

class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Dense symmetric matrix of doubles; symmetry is enforced by averaging on
/// construction and entries must be finite.
class FloatSymMatrix {
public:
    explicit FloatSymMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0.0) {
        if (n < 1) throw std::invalid_argument("FloatSymMatrix: need n >= 1");
    }

    static FloatSymMatrix from_rows(const std::vector<std::vector<double>>& rows) {
        FloatSymMatrix m(static_cast<int>(rows.size()));
        for (int i = 0; i < m.n_; ++i) {
            if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != m.n_)
                throw std::invalid_argument("FloatSymMatrix: not square");
            for (int j = 0; j < m.n_; ++j)
                m.raw(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
        m.symmetrize_and_check();
        return m;
    }

    int size() const { return n_; }
    double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }
    double& raw(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }

    void set_sym(int i, int j, double v) {
        raw(i, j) = v;
        raw(j, i) = v;
    }

    void symmetrize_and_check() {
        for (int i = 0; i < n_; ++i)
            for (int j = i; j < n_; ++j) {
                double v = 0.5 * (raw(i, j) + raw(j, i));
                if (!std::isfinite(v)) throw std::invalid_argument("FloatSymMatrix: non-finite entry");
                raw(i, j) = v;
                raw(j, i) = v;
            }
    }

    double frobenius_norm() const {
        double s = 0;
        for (double v : a_) s += v * v;
        return std::sqrt(s);
    }

    double trace() const {
        double s = 0;
        for (int i = 0; i < n_; ++i) s += (*this)(i, i);
        return s;
    }

    static double dot(const FloatSymMatrix& a, const FloatSymMatrix& b) {
        double s = 0;
        for (std::size_t k = 0; k < a.a_.size(); ++k) s += a.a_[k] * b.a_[k];
        return s;
    }

    FloatSymMatrix& add_scaled(const FloatSymMatrix& o, double c) {
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += c * o.a_[k];
        return *this;
    }

    friend FloatSymMatrix operator-(const FloatSymMatrix& a, const FloatSymMatrix& b) {
        FloatSymMatrix r = a;
        r.add_scaled(b, -1.0);
        return r;
    }

private:
    int n_;
    std::vector<double> a_;
};

struct EigenResult {
    std::vector<double> values;            // descending
    std::vector<std::vector<double>> vectors;  // vectors[k] is the eigenvector of values[k]
};

/// Cyclic Jacobi rotations until every off-diagonal entry is below
/// tol * ||M||_F; a fixed sweep budget guards against pathological input.
inline EigenResult jacobi_eigen(const FloatSymMatrix& M, double tol = 1e-13) {
    if (tol <= 0) throw std::invalid_argument("jacobi_eigen: tol must be positive");
    const int n = M.size();
    FloatSymMatrix a = M;
    std::vector<std::vector<double>> q(static_cast<std::size_t>(n),
                                       std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (int i = 0; i < n; ++i) q[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1.0;

    const double scale = M.frobenius_norm();
    const double thresh = scale > 0 ? tol * scale : 0.0;
    auto off_norm = [&]() {
        double s = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) s += 2 * a(i, j) * a(i, j);
        return std::sqrt(s);
    };

    const int max_sweeps = 100;
    int sweep = 0;
    while (off_norm() > thresh) {
        if (++sweep > max_sweeps) throw NumericError("jacobi_eigen: no convergence in sweep budget");
        for (int p = 0; p < n; ++p)
            for (int r = p + 1; r < n; ++r) {
                double apr = a(p, r);
                if (std::abs(apr) <= 1e-300) continue;
                double theta = (a(r, r) - a(p, p)) / (2 * apr);
                double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
                double c = 1 / std::sqrt(t * t + 1);
                double s = t * c;
                double tau = s / (1 + c);
                double app = a(p, p), arr = a(r, r);
                a.raw(p, p) = app - t * apr;
                a.raw(r, r) = arr + t * apr;
                a.raw(p, r) = 0;
                a.raw(r, p) = 0;
                for (int k = 0; k < n; ++k) {
                    if (k != p && k != r) {
                        double akp = a(k, p), akr = a(k, r);
                        a.set_sym(k, p, akp - s * (akr + tau * akp));
                        a.set_sym(k, r, akr + s * (akp - tau * akr));
                    }
                    double qkp = q[static_cast<std::size_t>(k)][static_cast<std::size_t>(p)];
                    double qkr = q[static_cast<std::size_t>(k)][static_cast<std::size_t>(r)];
                    q[static_cast<std::size_t>(k)][static_cast<std::size_t>(p)] = qkp - s * (qkr + tau * qkp);
                    q[static_cast<std::size_t>(k)][static_cast<std::size_t>(r)] = qkr + s * (qkp - tau * qkr);
                }
            }
    }

    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i) > a(j, j); });
    EigenResult out;
    for (int k : order) {
        out.values.push_back(a(k, k));
        std::vector<double> v(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] =
            q[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
        out.vectors.push_back(std::move(v));
    }
    return out;
}

/// Frobenius-nearest positive semidefinite matrix: eigendecompose, clip the
/// negative eigenvalues, recompose.
inline FloatSymMatrix psd_project(const FloatSymMatrix& M) {
    EigenResult e = jacobi_eigen(M);
    const int n = M.size();
    FloatSymMatrix out(n);
    for (int k = 0; k < n; ++k) {
        double lam = e.values[static_cast<std::size_t>(k)];
        if (lam <= 0) continue;
        const auto& v = e.vectors[static_cast<std::size_t>(k)];
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                out.raw(i, j) += lam * v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)];
    }
    out.symmetrize_and_check();
    return out;
}

}  // namespace spshadow
