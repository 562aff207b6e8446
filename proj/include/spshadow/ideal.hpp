#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <queue>
#include <span>
#include <unordered_set>

#include "spshadow/polygcd.hpp"
#include "spshadow/polynomial.hpp"

namespace spshadow {

/// Pair/basis limits for Buchberger runs. Exceeding a limit raises
/// BudgetExceeded; it never silently truncates.
struct GBOptions {
    std::uint64_t max_pairs = 1'000'000;
    std::size_t max_basis = 10'000;
};

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline bool operator==(const MonomialOrder& a, const MonomialOrder& b) {
    return a.kind == b.kind && a.block == b.block;
}

class Ideal {
public:
    Ideal(RingPtr ring, std::vector<Polynomial> gens)
        : ring_(std::move(ring)), cache_(std::make_shared<Cache>()) {
        for (auto& g : gens) {
            if (!same_ring(g.ring(), ring_)) throw std::invalid_argument("Ideal: generator ring mismatch");
            if (!g.is_zero()) gens_.push_back(std::move(g));
        }
    }

    static Ideal zero(RingPtr ring) { return Ideal(std::move(ring), {}); }

    const RingPtr& ring() const { return ring_; }
    const std::vector<Polynomial>& generators() const { return gens_; }
    bool is_zero_ideal() const { return gens_.empty(); }

    // reduced-basis cache, shared across copies
    std::optional<std::vector<Polynomial>> cached_basis(const MonomialOrder& ord) const {
        std::lock_guard<std::mutex> lock(cache_->mu);
        for (auto& e : cache_->entries)
            if (e.first == ord) return e.second;
        return std::nullopt;
    }
    void store_basis(const MonomialOrder& ord, std::vector<Polynomial> basis) const {
        std::lock_guard<std::mutex> lock(cache_->mu);
        for (auto& e : cache_->entries)
            if (e.first == ord) return;
        cache_->entries.push_back({ord, std::move(basis)});
    }

private:
    struct Cache {
        std::mutex mu;
        std::vector<std::pair<MonomialOrder, std::vector<Polynomial>>> entries;
    };
    RingPtr ring_;
    std::vector<Polynomial> gens_;
    std::shared_ptr<Cache> cache_;
};

namespace detail {

struct RuntimeDesc {
    MonomialOrder ord;
    bool operator()(const Monomial& a, const Monomial& b) const { return ord.less(b, a); }
};

/// dst := a + c * (m * b) for spans sorted strictly descending under `desc`.
template <class Desc>
inline void add_scaled_span(std::vector<Term>& dst, std::span<const Term> a, const Rational& c,
                            const Monomial& m, std::span<const Term> b, Desc desc) {
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

/// Working polynomial sorted descending under the active order.
struct OPoly {
    std::vector<Term> terms;
    const Term& lead() const { return terms.front(); }
    bool empty() const { return terms.empty(); }
};

inline OPoly to_opoly(const Polynomial& f, const MonomialOrder& ord) {
    OPoly p{f.terms()};
    std::sort(p.terms.begin(), p.terms.end(),
              [&](const Term& a, const Term& b) { return ord.less(b.mono, a.mono); });
    return p;
}

inline Polynomial from_opoly(const RingPtr& ring, OPoly p) {
    return Polynomial::from_terms(ring, std::move(p.terms));
}

/// Full normal form of r against the reducers; deterministic first-divisor rule.
inline OPoly normal_form_opoly(OPoly r, const std::vector<OPoly>& reducers, const MonomialOrder& ord) {
    RuntimeDesc desc{ord};
    std::vector<Term> out;
    std::vector<Term> scratch;
    std::size_t head = 0;
    while (head < r.terms.size()) {
        const Term& t = r.terms[head];
        const OPoly* red = nullptr;
        for (const auto& g : reducers)
            if (!g.empty() && g.lead().mono.divides(t.mono)) {
                red = &g;
                break;
            }
        if (!red) {
            out.push_back(std::move(r.terms[head]));
            ++head;
            continue;
        }
        Rational c = -(t.coeff / red->lead().coeff);
        Monomial m = red->lead().mono.divide_into(t.mono);
        add_scaled_span(scratch, std::span<const Term>(r.terms).subspan(head), c, m,
                        std::span<const Term>(red->terms), desc);
        r.terms.swap(scratch);
        head = 0;
    }
    return OPoly{std::move(out)};
}

inline OPoly spoly(const OPoly& f, const OPoly& g, const MonomialOrder& ord) {
    RuntimeDesc desc{ord};
    Monomial L = Monomial::lcm(f.lead().mono, g.lead().mono);
    Monomial mf = f.lead().mono.divide_into(L);
    Monomial mg = g.lead().mono.divide_into(L);
    // (1/lc f) * mf * f  -  (1/lc g) * mg * g
    std::vector<Term> left, result;
    add_scaled_span(left, {}, Rational(1) / f.lead().coeff, mf, std::span<const Term>(f.terms), desc);
    add_scaled_span(result, left, -(Rational(1) / g.lead().coeff), mg, std::span<const Term>(g.terms),
                    desc);
    return OPoly{std::move(result)};
}

inline OPoly normalize_opoly(OPoly p, const RingPtr& ring, const MonomialOrder& ord) {
    Polynomial f = from_opoly(ring, std::move(p));
    return to_opoly(canonical_normalize(f), ord);
}

}  // namespace detail

/// Remainder of f on division by `basis` under `ord`; no remainder term is
/// divisible by any basis leading term, and f - result lies in <basis>.
inline Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& basis,
                              const MonomialOrder& ord) {
    std::vector<detail::OPoly> reducers;
    for (const auto& g : basis) {
        if (g.is_zero()) throw std::invalid_argument("normal_form: zero basis polynomial");
        if (!same_ring(g.ring(), f.ring())) throw std::invalid_argument("normal_form: ring mismatch");
        reducers.push_back(detail::to_opoly(g, ord));
    }
    return detail::from_opoly(f.ring(),
                              detail::normal_form_opoly(detail::to_opoly(f, ord), reducers, ord));
}

/// Reduced Groebner basis by Buchberger's algorithm (normal pair selection,
/// coprime and chain criteria). Deterministic: the result is the unique
/// reduced basis, canonically normalized and sorted by leading monomial.
inline std::vector<Polynomial> groebner_basis(const Ideal& I, const MonomialOrder& ord,
                                              const GBOptions& opts = {}) {
    if (auto hit = I.cached_basis(ord)) return *hit;
    const RingPtr& ring = I.ring();
    std::vector<detail::OPoly> basis;
    for (const auto& g : I.generators())
        basis.push_back(detail::to_opoly(canonical_normalize(g), ord));
    if (basis.empty()) return {};

    struct PairEntry {
        unsigned deg;
        Monomial lcm;
        std::uint32_t i, j;
    };
    auto pair_less = [&](const PairEntry& a, const PairEntry& b) {
        // priority_queue pops the *largest*; invert to pop the smallest
        if (a.deg != b.deg) return a.deg > b.deg;
        if (!(a.lcm == b.lcm)) return ord.less(b.lcm, a.lcm);
        if (a.i != b.i) return a.i > b.i;
        return a.j > b.j;
    };
    std::priority_queue<PairEntry, std::vector<PairEntry>, decltype(pair_less)> queue(pair_less);
    std::unordered_set<std::uint64_t> pending;
    auto key = [](std::uint32_t i, std::uint32_t j) {
        return (static_cast<std::uint64_t>(i) << 32) | j;
    };
    auto push_pair = [&](std::uint32_t i, std::uint32_t j) {
        Monomial L = Monomial::lcm(basis[i].lead().mono, basis[j].lead().mono);
        queue.push({L.degree(), L, i, j});
        pending.insert(key(i, j));
    };
    for (std::uint32_t i = 0; i < basis.size(); ++i)
        for (std::uint32_t j = i + 1; j < basis.size(); ++j) push_pair(i, j);

    std::uint64_t processed = 0;
    while (!queue.empty()) {
        PairEntry e = queue.top();
        queue.pop();
        pending.erase(key(e.i, e.j));
        if (++processed > opts.max_pairs)
            throw BudgetExceeded("groebner_basis: pair budget exceeded (" +
                                 std::to_string(opts.max_pairs) + ")");
        const Monomial& li = basis[e.i].lead().mono;
        const Monomial& lj = basis[e.j].lead().mono;
        if (li.coprime_with(lj)) continue;  // Buchberger's first criterion
        bool chained = false;               // Buchberger's second (chain) criterion
        for (std::uint32_t k = 0; k < basis.size() && !chained; ++k) {
            if (k == e.i || k == e.j) continue;
            if (!basis[k].lead().mono.divides(e.lcm)) continue;
            auto mk = [&](std::uint32_t a, std::uint32_t b) { return key(std::min(a, b), std::max(a, b)); };
            if (!pending.count(mk(e.i, k)) && !pending.count(mk(e.j, k))) chained = true;
        }
        if (chained) continue;

        detail::OPoly s = detail::spoly(basis[e.i], basis[e.j], ord);
        detail::OPoly h = detail::normal_form_opoly(std::move(s), basis, ord);
        if (h.empty()) continue;
        h = detail::normalize_opoly(std::move(h), ring, ord);
        basis.push_back(std::move(h));
        if (basis.size() > opts.max_basis)
            throw BudgetExceeded("groebner_basis: basis size budget exceeded (" +
                                 std::to_string(opts.max_basis) + ")");
        std::uint32_t n = static_cast<std::uint32_t>(basis.size()) - 1;
        for (std::uint32_t k = 0; k < n; ++k) push_pair(k, n);
    }

    // minimalize: drop elements whose lead is divisible by another kept lead
    std::sort(basis.begin(), basis.end(), [&](const detail::OPoly& a, const detail::OPoly& b) {
        return ord.less(a.lead().mono, b.lead().mono);
    });
    std::vector<detail::OPoly> minimal;
    for (auto& g : basis) {
        bool redundant = false;
        for (const auto& kept : minimal)
            if (kept.lead().mono.divides(g.lead().mono)) {
                redundant = true;
                break;
            }
        if (!redundant) minimal.push_back(std::move(g));
    }
    // tail-reduce each element against the others
    std::vector<Polynomial> result;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<detail::OPoly> others;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        detail::OPoly red = detail::normal_form_opoly(minimal[i], others, ord);
        result.push_back(canonical_normalize(detail::from_opoly(ring, std::move(red))));
    }
    I.store_basis(ord, result);
    return result;
}

inline bool ideal_membership(const Polynomial& f, const Ideal& I, const MonomialOrder& ord,
                             const GBOptions& opts = {}) {
    if (!same_ring(f.ring(), I.ring())) throw std::invalid_argument("ideal_membership: ring mismatch");
    if (f.is_zero()) return true;
    if (I.is_zero_ideal()) return false;
    return normal_form(f, groebner_basis(I, ord, opts), ord).is_zero();
}

/// I contains J (every generator of J lies in I)?
inline bool ideal_contains(const Ideal& I, const Ideal& J, const GBOptions& opts = {}) {
    for (const auto& g : J.generators())
        if (!ideal_membership(g, I, MonomialOrder::grevlex(), opts)) return false;
    return true;
}

inline bool is_unit_ideal(const Ideal& I, const GBOptions& opts = {}) {
    auto G = groebner_basis(I, MonomialOrder::grevlex(), opts);
    return G.size() == 1 && G[0].is_constant() && !G[0].is_zero();
}

namespace detail {

inline RingPtr ring_with_fresh_var(const RingPtr& ring, std::string base, int* index_out) {
    std::string name = base;
    int counter = 0;
    while (ring->index_of(name) >= 0) name = base + std::to_string(counter++);
    std::vector<std::string> names = ring->names();
    names.push_back(name);
    *index_out = static_cast<int>(names.size()) - 1;
    return make_ring(std::move(names));
}

inline std::vector<int> identity_map(int n) {
    std::vector<int> m(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)] = i;
    return m;
}

}  // namespace detail

/// Generators of I restricted to the subring without `drop_vars`:
/// block-elimination Groebner basis, keep the block-free elements, re-index.
/// May return the zero ideal (empty generator list).
inline Ideal eliminate(const Ideal& I, const std::vector<int>& drop_vars, const GBOptions& opts = {}) {
    const RingPtr& ring = I.ring();
    std::vector<bool> dropped(static_cast<std::size_t>(ring->nvars()), false);
    for (int v : drop_vars) {
        if (v < 0 || v >= ring->nvars()) throw std::invalid_argument("eliminate: bad variable index");
        dropped[static_cast<std::size_t>(v)] = true;
    }
    std::vector<std::string> kept_names;
    std::vector<int> var_map(static_cast<std::size_t>(ring->nvars()), -1);
    for (int v = 0; v < ring->nvars(); ++v)
        if (!dropped[static_cast<std::size_t>(v)]) {
            var_map[static_cast<std::size_t>(v)] = static_cast<int>(kept_names.size());
            kept_names.push_back(ring->name(v));
        }
    RingPtr sub = make_ring(std::move(kept_names));
    if (I.is_zero_ideal()) return Ideal::zero(sub);

    auto G = groebner_basis(I, MonomialOrder::block_elim(drop_vars), opts);
    std::vector<Polynomial> kept;
    for (const auto& g : G) {
        bool touches = false;
        for (int v : drop_vars)
            if (g.uses_var(v)) {
                touches = true;
                break;
            }
        if (!touches) kept.push_back(g.map_vars(sub, var_map));
    }
    return Ideal(sub, std::move(kept));
}

/// Saturation I : f^inf by the auxiliary-variable method.
inline Ideal saturate(const Ideal& I, const Polynomial& f, const GBOptions& opts = {}) {
    if (!same_ring(f.ring(), I.ring())) throw std::invalid_argument("saturate: ring mismatch");
    if (f.is_zero()) throw std::invalid_argument("saturate: zero polynomial");
    if (f.is_constant()) return I;  // units change nothing
    if (I.is_zero_ideal()) return I;
    int t_index = 0;
    RingPtr ext = detail::ring_with_fresh_var(I.ring(), "t", &t_index);
    std::vector<int> up = detail::identity_map(I.ring()->nvars());
    std::vector<Polynomial> gens;
    for (const auto& g : I.generators()) gens.push_back(g.map_vars(ext, up));
    Polynomial t = Polynomial::variable(ext, t_index);
    gens.push_back(Polynomial::constant(ext, Rational(1)) - t * f.map_vars(ext, up));
    Ideal lifted(ext, std::move(gens));
    Ideal result = eliminate(lifted, {t_index}, opts);
    // eliminate rebuilt the ring by names; re-anchor on the original ring object
    std::vector<Polynomial> back;
    for (const auto& g : result.generators())
        back.push_back(g.map_vars(I.ring(), detail::identity_map(I.ring()->nvars())));
    return Ideal(I.ring(), std::move(back));
}

/// I ∩ J via the auxiliary variable t: eliminate t from t*I + (1-t)*J.
inline Ideal intersect(const Ideal& I, const Ideal& J, const GBOptions& opts = {}) {
    if (!same_ring(I.ring(), J.ring())) throw std::invalid_argument("intersect: ring mismatch");
    if (I.is_zero_ideal() || J.is_zero_ideal()) return Ideal::zero(I.ring());
    int t_index = 0;
    RingPtr ext = detail::ring_with_fresh_var(I.ring(), "t", &t_index);
    std::vector<int> up = detail::identity_map(I.ring()->nvars());
    Polynomial t = Polynomial::variable(ext, t_index);
    Polynomial one_minus_t = Polynomial::constant(ext, Rational(1)) - t;
    std::vector<Polynomial> gens;
    for (const auto& g : I.generators()) gens.push_back(t * g.map_vars(ext, up));
    for (const auto& h : J.generators()) gens.push_back(one_minus_t * h.map_vars(ext, up));
    Ideal lifted(ext, std::move(gens));
    Ideal result = eliminate(lifted, {t_index}, opts);
    std::vector<Polynomial> back;
    for (const auto& g : result.generators())
        back.push_back(g.map_vars(I.ring(), detail::identity_map(I.ring()->nvars())));
    return Ideal(I.ring(), std::move(back));
}

/// I : J^inf as the intersection of the single-generator saturations.
/// Mutual-containment shortcuts avoid the elimination when one side already
/// contains the other.
inline Ideal saturate_by_ideal(const Ideal& I, const Ideal& J, const GBOptions& opts = {}) {
    if (!same_ring(I.ring(), J.ring()))
        throw std::invalid_argument("saturate_by_ideal: ring mismatch");
    std::vector<Polynomial> gens;
    for (const auto& g : J.generators())
        if (!g.is_zero()) gens.push_back(g);
    if (gens.empty()) throw std::invalid_argument("saturate_by_ideal: J has no nonzero generators");
    std::optional<Ideal> acc;
    for (const auto& g : gens) {
        Ideal s = saturate(I, g, opts);
        if (!acc) {
            acc = std::move(s);
            continue;
        }
        if (ideal_contains(s, *acc, opts)) continue;   // acc ⊆ s: intersection is acc
        if (ideal_contains(*acc, s, opts)) { acc = std::move(s); continue; }
        acc = intersect(*acc, s, opts);
    }
    return *acc;
}

}  // namespace spshadow
