#pragma once

#include <variant>

#include "spshadow/degrees.hpp"
#include "spshadow/sympencil.hpp"

namespace spshadow {

/// Raised when a computation is gated behind the long-running flag.
class LongRunningRequired : public BudgetExceeded {
public:
    using BudgetExceeded::BudgetExceeded;
};

enum class BranchMethod { Groebner, Resultant, Auto };

struct BranchOptions {
    bool saturate_lower = false;
    bool reduce = true;
    BranchMethod method = BranchMethod::Auto;
    GBOptions gb;
    bool long_running = false;
};

/// One boundary stratum: the defining polynomial of the rank-r branch curve
/// in the x-variables, or the (possibly zero) elimination ideal when it is
/// not principal.
struct StratumCurve {
    int rank = 0;
    std::variant<Polynomial, Ideal> body;  // Polynomial when principal
    int degree = -1;                       // total degree when principal
    DegreeEntry expected;

    bool principal() const { return std::holds_alternative<Polynomial>(body); }
    const Polynomial& poly() const { return std::get<Polynomial>(body); }
    const Ideal& elimination_ideal() const { return std::get<Ideal>(body); }
};

namespace detail {

// Jacobian-minor counts above this require the long-running flag; the
// corank-1 case (c = 1) is never gated.
inline constexpr long long kJacobianGateLimit = 60;

inline DegreeEntry expected_degree_or_unknown(int n, int p, int r) {
    for (int q : pataki_range(n, p).ranks)
        if (q == r) return sdp_degree(n, p, r);
    return DegreeEntry{p + 1, n, r, std::nullopt};
}

inline std::vector<int> y_indices(const SymPencil& P) {
    std::vector<int> ys;
    for (int j = 0; j < P.p; ++j) ys.push_back(P.d + j);
    return ys;
}

}  // namespace detail

/// Defining polynomial of the rank-r stratum of the shadow boundary.
///
/// Let M = assemble(P) and I the ideal of (r+1)-minors; c = C(n-r+1, 2) is
/// the codimension of the rank <= r locus. When c <= p the fiber-criticality
/// condition is the vanishing of the c x c minors of the Jacobian of the
/// generators with respect to the y-variables, and those minors are adjoined;
/// when c > p the image is already lower-dimensional and nothing is added.
/// For r = n-1 this reduces to <f, df/dy_1, ..., df/dy_p>. Optionally
/// saturate by the next minor ideal to remove lower-rank strata, then
/// eliminate the y-variables.
inline StratumCurve rank_branch_locus(const SymPencil& P, int r, const BranchOptions& opts = {}) {
    if (P.n > kSymbolicSizeCap)
        throw std::invalid_argument("rank_branch_locus: n exceeds the symbolic cap of " +
                                    std::to_string(kSymbolicSizeCap));
    if (r < 1 || r > P.n - 1) throw std::invalid_argument("rank_branch_locus: need 1 <= r <= n-1");

    const bool resultant_shape = (P.p == 1 && r == P.n - 1);
    BranchMethod method = opts.method;
    if (method == BranchMethod::Auto)
        method = (resultant_shape && !opts.saturate_lower) ? BranchMethod::Resultant
                                                           : BranchMethod::Groebner;
    if (method == BranchMethod::Resultant && !resultant_shape)
        throw std::invalid_argument(
            "rank_branch_locus: resultant method requires p = 1 and r = n-1");
    if (method == BranchMethod::Resultant && opts.saturate_lower)
        throw std::invalid_argument(
            "rank_branch_locus: resultant method cannot saturate by lower strata");

    PolyMatrix M = assemble(P);
    RingPtr xy = M.ring();
    RingPtr xring = make_xy_ring(P.d, 0);
    StratumCurve out;
    out.rank = r;
    out.expected = detail::expected_degree_or_unknown(P.n, P.p, r);

    auto finish = [&](Ideal elim) {
        if (elim.generators().size() == 1) {
            Polynomial g = elim.generators()[0];
            if (opts.reduce) g = squarefree_part(g);
            g = canonical_normalize(g);
            out.degree = g.total_degree();
            out.body = std::move(g);
        } else {
            out.body = std::move(elim);
        }
        return out;
    };

    if (method == BranchMethod::Resultant) {
        Polynomial f = determinant(M);
        const int v = P.d;  // the single y-variable
        if (f.degree_in(v) < 2)
            throw std::invalid_argument(
                "rank_branch_locus: resultant method needs y-degree >= 2 in the determinant");
        Polynomial fy = f.derivative(v);
        Polynomial res = sylvester_resultant(f, fy, v);
        if (res.is_zero()) return finish(Ideal::zero(xring));
        std::vector<int> var_map(static_cast<std::size_t>(xy->nvars()), -1);
        for (int i = 0; i < P.d; ++i) var_map[static_cast<std::size_t>(i)] = i;
        return finish(Ideal(xring, {res.map_vars(xring, var_map)}));
    }

    std::vector<Polynomial> gens = minors(M, r + 1);
    Ideal I(xy, gens);
    const long long c = binomial(P.n - r + 1, 2);
    std::vector<Polynomial> augmented = I.generators();
    if (c <= P.p) {
        // Jacobian rows: generators of I; columns: the y-variables
        std::vector<std::vector<Polynomial>> jac;
        for (const auto& g : I.generators()) {
            std::vector<Polynomial> row;
            for (int j = 0; j < P.p; ++j) row.push_back(g.derivative(P.d + j));
            jac.push_back(std::move(row));
        }
        const long long rows = static_cast<long long>(jac.size());
        const long long count = binomial(rows, c) * binomial(P.p, c);
        if (c > 1 && count > detail::kJacobianGateLimit && !opts.long_running)
            throw LongRunningRequired("rank_branch_locus: " + std::to_string(count) +
                                      " Jacobian minors exceed the desk-scale gate; rerun with the "
                                      "long-running option");
        detail::combinations(static_cast<int>(rows), static_cast<int>(c),
                             [&](const std::vector<int>& rsel) {
                                 detail::combinations(P.p, static_cast<int>(c),
                                                      [&](const std::vector<int>& csel) {
                                                          std::vector<std::vector<Polynomial>> sub;
                                                          for (int a : rsel) {
                                                              std::vector<Polynomial> row;
                                                              for (int b : csel)
                                                                  row.push_back(
                                                                      jac[static_cast<std::size_t>(a)]
                                                                         [static_cast<std::size_t>(b)]);
                                                              sub.push_back(std::move(row));
                                                          }
                                                          augmented.push_back(detail::det_grid(sub, xy));
                                                      });
                             });
    }
    Ideal J(xy, std::move(augmented));
    if (opts.saturate_lower) {
        if (r >= 1) {
            Ideal lower(xy, minors(M, r));
            if (!lower.is_zero_ideal()) J = saturate_by_ideal(J, lower, opts.gb);
        }
    }
    return finish(eliminate(J, detail::y_indices(P), opts.gb));
}

/// Spec-shaped convenience overload.
inline StratumCurve rank_branch_locus(const SymPencil& P, int r, bool saturate_lower, bool reduce,
                                      BranchMethod method = BranchMethod::Auto) {
    BranchOptions o;
    o.saturate_lower = saturate_lower;
    o.reduce = reduce;
    o.method = method;
    return rank_branch_locus(P, r, o);
}

enum class FactorCheckStatus { Equal, ProperDivisor, Fail };

struct FactorCheck {
    FactorCheckStatus status = FactorCheckStatus::Fail;
    std::optional<Polynomial> cofactor;  // set for ProperDivisor
};

/// Expands the product of the given (factor, multiplicity) pairs and compares
/// with f: equal up to canonical normalization, a proper divisor (returning
/// the exact cofactor of the raw product in the raw f), or neither.
inline FactorCheck verify_factorization(const Polynomial& f,
                                        const std::vector<std::pair<Polynomial, unsigned>>& factors) {
    if (f.is_zero()) throw std::invalid_argument("verify_factorization: zero polynomial");
    Polynomial prod = Polynomial::constant(f.ring(), Rational(1));
    for (const auto& [g, mult] : factors) {
        if (g.is_zero()) throw std::invalid_argument("verify_factorization: zero factor");
        if (!same_ring(g.ring(), f.ring()))
            throw std::invalid_argument("verify_factorization: ring mismatch");
        prod = prod * g.pow(mult);
    }
    FactorCheck out;
    if (canonical_normalize(prod) == canonical_normalize(f)) {
        out.status = FactorCheckStatus::Equal;
        return out;
    }
    if (auto q = try_divide(f, prod); q && !q->is_constant()) {
        out.status = FactorCheckStatus::ProperDivisor;
        out.cofactor = std::move(*q);
        return out;
    }
    return out;
}

/// One row of a boundary report: either the computed stratum or the reason
/// it was skipped. Skipped ranks are always listed, never dropped.
struct BoundaryReportEntry {
    int rank = 0;
    DegreeEntry expected;
    std::optional<StratumCurve> curve;
    std::string skip_reason;
};

struct BoundaryReportOptions {
    /// When unset, lower-strata saturation is applied to every rank above the
    /// minimum of the Pataki range (the minimal stratum has nothing below it).
    std::optional<bool> saturate_lower;
    bool reduce = true;
    BranchMethod method = BranchMethod::Auto;
    GBOptions gb;
    bool long_running = false;
};

/// Runs rank_branch_locus for every rank in the Pataki range, ascending.
inline std::vector<BoundaryReportEntry> boundary_report(const SymPencil& P,
                                                        const BoundaryReportOptions& opts = {}) {
    std::vector<BoundaryReportEntry> out;
    PatakiRange range = pataki_range(P.n, P.p);
    for (int r : range.ranks) {
        BoundaryReportEntry entry;
        entry.rank = r;
        entry.expected = sdp_degree(P.n, P.p, r);
        BranchOptions bo;
        bo.saturate_lower = opts.saturate_lower ? *opts.saturate_lower : (r > range.ranks.front());
        bo.reduce = opts.reduce;
        bo.method = opts.method;
        bo.gb = opts.gb;
        bo.long_running = opts.long_running;
        try {
            entry.curve = rank_branch_locus(P, r, bo);
        } catch (const std::exception& e) {
            entry.skip_reason = e.what();
        }
        out.push_back(std::move(entry));
    }
    return out;
}

}  // namespace spshadow
