#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace spshadow {

inline constexpr int kMaxVars = 16;

/// Exponent vector of fixed arity (one slot per ring variable).
class Monomial {
public:
    Monomial() = default;

    explicit Monomial(int nvars) : nvars_(static_cast<std::uint8_t>(nvars)) {
        if (nvars < 0 || nvars > kMaxVars)
            throw std::invalid_argument("Monomial: variable count out of range");
    }

    Monomial(int nvars, std::initializer_list<unsigned> exps) : Monomial(nvars) {
        int i = 0;
        for (unsigned e : exps) set(i++, e);
    }

    int nvars() const { return nvars_; }
    unsigned operator[](int i) const { return e_[static_cast<std::size_t>(i)]; }
    unsigned degree() const { return deg_; }
    bool is_one() const { return deg_ == 0; }

    void set(int i, unsigned e) {
        if (e > 0xFFFFu) throw std::invalid_argument("Monomial: exponent overflow");
        deg_ = deg_ - e_[static_cast<std::size_t>(i)] + e;
        e_[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>(e);
    }

    Monomial operator*(const Monomial& o) const {
        Monomial r(*this);
        for (int i = 0; i < nvars_; ++i) {
            unsigned s = r.e_[static_cast<std::size_t>(i)] + o.e_[static_cast<std::size_t>(i)];
            if (s > 0xFFFFu) throw std::overflow_error("Monomial: exponent overflow");
            r.e_[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>(s);
        }
        r.deg_ = deg_ + o.deg_;
        return r;
    }

    bool divides(const Monomial& o) const {
        for (int i = 0; i < nvars_; ++i)
            if (e_[static_cast<std::size_t>(i)] > o.e_[static_cast<std::size_t>(i)]) return false;
        return true;
    }

    /// Quotient o / this; caller guarantees divisibility.
    Monomial divide_into(const Monomial& o) const {
        Monomial r(nvars_);
        for (int i = 0; i < nvars_; ++i)
            r.e_[static_cast<std::size_t>(i)] =
                static_cast<std::uint16_t>(o.e_[static_cast<std::size_t>(i)] - e_[static_cast<std::size_t>(i)]);
        r.deg_ = o.deg_ - deg_;
        return r;
    }

    static Monomial lcm(const Monomial& a, const Monomial& b) {
        Monomial r(a.nvars_);
        unsigned d = 0;
        for (int i = 0; i < a.nvars_; ++i) {
            std::uint16_t m = std::max(a.e_[static_cast<std::size_t>(i)], b.e_[static_cast<std::size_t>(i)]);
            r.e_[static_cast<std::size_t>(i)] = m;
            d += m;
        }
        r.deg_ = d;
        return r;
    }

    bool coprime_with(const Monomial& o) const {
        for (int i = 0; i < nvars_; ++i)
            if (e_[static_cast<std::size_t>(i)] && o.e_[static_cast<std::size_t>(i)]) return false;
        return true;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.nvars_ == b.nvars_ && a.deg_ == b.deg_ && a.e_ == b.e_;
    }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

private:
    std::array<std::uint16_t, kMaxVars> e_{};
    std::uint8_t nvars_ = 0;
    std::uint32_t deg_ = 0;
};

/// Term orders. Block elimination compares grevlex on a chosen variable
/// subset first, then grevlex on the rest; any monomial touching the block
/// sorts above every block-free monomial, which is what elimination needs.
struct MonomialOrder {
    enum class Kind { Lex, Grevlex, BlockElim };

    Kind kind = Kind::Grevlex;
    std::uint32_t block = 0;  // bitmask of first-block variables

    static MonomialOrder lex() { return {Kind::Lex, 0}; }
    static MonomialOrder grevlex() { return {Kind::Grevlex, 0}; }
    static MonomialOrder block_elim(const std::vector<int>& first_block_vars) {
        std::uint32_t mask = 0;
        for (int v : first_block_vars) {
            if (v < 0 || v >= kMaxVars) throw std::invalid_argument("block_elim: bad variable index");
            mask |= (1u << v);
        }
        return {Kind::BlockElim, mask};
    }

    bool less(const Monomial& a, const Monomial& b) const {
        switch (kind) {
            case Kind::Lex: return lex_less(a, b);
            case Kind::Grevlex: return grevlex_less(a, b);
            case Kind::BlockElim: {
                int c = block_cmp(a, b, block);
                if (c != 0) return c < 0;
                return block_cmp(a, b, ~block) < 0;
            }
        }
        return false;
    }

    bool greater(const Monomial& a, const Monomial& b) const { return less(b, a); }

    static bool lex_less(const Monomial& a, const Monomial& b) {
        for (int i = 0; i < a.nvars(); ++i)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    }

    static bool grevlex_less(const Monomial& a, const Monomial& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        for (int i = a.nvars() - 1; i >= 0; --i)
            if (a[i] != b[i]) return a[i] > b[i];
        return false;
    }

private:
    // grevlex comparison restricted to masked variables: -1 less, 0 equal, 1 greater
    static int block_cmp(const Monomial& a, const Monomial& b, std::uint32_t mask) {
        unsigned da = 0, db = 0;
        for (int i = 0; i < a.nvars(); ++i)
            if (mask & (1u << i)) { da += a[i]; db += b[i]; }
        if (da != db) return da < db ? -1 : 1;
        for (int i = a.nvars() - 1; i >= 0; --i)
            if (mask & (1u << i)) {
                if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
            }
        return 0;
    }
};

/// Strict-descending comparator adapter for sorting term lists.
struct OrderDesc {
    MonomialOrder ord;
    bool operator()(const Monomial& a, const Monomial& b) const { return ord.less(b, a); }
};

}  // namespace spshadow
