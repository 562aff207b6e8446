#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace spshadow {

inline long long binomial(long long n, long long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    long long r = 1;
    for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// Possible ranks of general boundary points for matrix size n and projection
/// codimension p: the integers 1 <= r <= n-1 with
///   C(n-r+1, 2) <= p+1   and   C(r+1, 2) <= C(n+1, 2) - (p+1).
struct PatakiRange {
    int n = 0, p = 0;
    std::vector<int> ranks;  // ascending
};

inline PatakiRange pataki_range(int n, int p) {
    if (n < 1 || p < 0) throw std::invalid_argument("pataki_range: need n >= 1, p >= 0");
    PatakiRange out{n, p, {}};
    for (int r = 1; r <= n - 1; ++r) {
        bool lower = binomial(n - r + 1, 2) <= p + 1;
        bool upper = binomial(r + 1, 2) <= binomial(n + 1, 2) - (p + 1);
        if (lower && upper) out.ranks.push_back(r);
    }
    return out;
}

/// One boundary-degree value delta(m, n, r) with m = p+1; degree is empty
/// when no tabulated value or closed form applies.
struct DegreeEntry {
    int m = 0, n = 0, r = 0;
    std::optional<long long> degree;
};

struct DegreeCell {
    int p, n, r;
    long long degree;
};

/// Degrees of the boundary hypersurface components, tabulated for
/// p = 1..9, n = 3..10; within each (p, n) box the ranks run top-to-bottom
/// in descending order. Boxes absent from the table have an empty rank range.
inline constexpr std::array<DegreeCell, 139> kDegreeTable{{
    {1, 3, 2, 6},      {1, 4, 3, 12},     {1, 5, 4, 20},      {1, 6, 5, 30},
    {1, 7, 6, 42},     {1, 8, 7, 56},     {1, 9, 8, 72},      {1, 10, 9, 90},

    {2, 3, 2, 4},      {2, 3, 1, 4},      {2, 4, 3, 16},      {2, 4, 2, 10},
    {2, 5, 4, 40},     {2, 5, 3, 20},     {2, 6, 5, 80},      {2, 6, 4, 35},
    {2, 7, 6, 140},    {2, 7, 5, 56},     {2, 8, 7, 224},     {2, 8, 6, 84},
    {2, 9, 8, 336},    {2, 9, 7, 120},    {2, 10, 9, 480},    {2, 10, 8, 165},

    {3, 3, 1, 6},      {3, 4, 3, 8},      {3, 4, 2, 30},      {3, 5, 4, 40},
    {3, 5, 3, 90},     {3, 6, 5, 120},    {3, 6, 4, 210},     {3, 7, 6, 280},
    {3, 7, 5, 420},    {3, 8, 7, 560},    {3, 8, 6, 756},     {3, 9, 8, 1008},
    {3, 9, 7, 1260},   {3, 10, 9, 1680},  {3, 10, 8, 1980},

    {4, 3, 1, 3},      {4, 4, 2, 42},     {4, 5, 4, 16},      {4, 5, 3, 207},
    {4, 6, 5, 96},     {4, 6, 4, 672},    {4, 7, 6, 336},     {4, 7, 5, 1722},
    {4, 8, 7, 896},    {4, 8, 6, 3780},   {4, 9, 8, 2016},    {4, 9, 7, 7434},
    {4, 10, 9, 4032},  {4, 10, 8, 13464},

    {5, 4, 2, 30},     {5, 4, 1, 8},      {5, 5, 3, 290},     {5, 5, 2, 35},
    {5, 6, 5, 32},     {5, 6, 4, 1400},   {5, 6, 3, 112},     {5, 7, 6, 224},
    {5, 7, 5, 4760},   {5, 7, 4, 294},    {5, 8, 7, 896},     {5, 8, 6, 13020},
    {5, 8, 5, 672},    {5, 9, 8, 2688},   {5, 9, 7, 30660},   {5, 9, 6, 1386},
    {5, 10, 9, 6720},  {5, 10, 8, 64680}, {5, 10, 7, 2640},

    {6, 4, 2, 10},     {6, 4, 1, 16},     {6, 5, 3, 260},     {6, 5, 2, 140},
    {6, 6, 4, 2040},   {6, 6, 3, 672},    {6, 7, 6, 64},      {6, 7, 5, 9600},
    {6, 7, 4, 2352},   {6, 8, 7, 512},    {6, 8, 6, 33540},   {6, 8, 5, 6720},
    {6, 9, 8, 2304},   {6, 9, 7, 96120},  {6, 9, 6, 16632},   {6, 10, 9, 7680},
    {6, 10, 8, 238920},{6, 10, 7, 36960},

    {7, 4, 1, 12},     {7, 5, 3, 140},    {7, 5, 2, 260},     {7, 6, 4, 2100},
    {7, 6, 3, 1992},   {7, 7, 5, 14532},  {7, 7, 4, 9576},    {7, 8, 7, 128},
    {7, 8, 6, 66948},  {7, 8, 5, 34800},  {7, 9, 8, 1152},    {7, 9, 7, 238140},
    {7, 9, 6, 104544}, {7, 10, 9, 5760},  {7, 10, 8, 706860}, {7, 10, 7, 273240},

    {8, 4, 1, 4},      {8, 5, 3, 35},     {8, 5, 2, 290},     {8, 6, 4, 1470},
    {8, 6, 3, 3812},   {8, 7, 5, 16485},  {8, 7, 4, 25998},   {8, 8, 6, 104692},
    {8, 8, 5, 122400}, {8, 9, 8, 256},    {8, 9, 7, 474145},  {8, 9, 6, 451638},
    {8, 10, 9, 2560},  {8, 10, 8, 1708630}, {8, 10, 7, 1399860},

    {9, 5, 2, 207},    {9, 5, 1, 16},     {9, 6, 4, 630},     {9, 6, 3, 5184},
    {9, 6, 2, 126},    {9, 7, 5, 13650},  {9, 7, 4, 52143},   {9, 7, 3, 672},
    {9, 8, 6, 127596}, {9, 8, 5, 324624}, {9, 8, 4, 2772},    {9, 9, 7, 761364},
    {9, 9, 6, 1490049},{9, 9, 5, 9504},   {9, 10, 9, 512},    {9, 10, 8, 3401574},
    {9, 10, 7, 5524728}, {9, 10, 6, 28314},
}};

/// delta(p+1, n, r): the tabulated value when available, n(n-1) on the p = 1
/// row beyond the table, otherwise unknown. r must lie in the Pataki range.
inline DegreeEntry sdp_degree(int n, int p, int r) {
    PatakiRange range = pataki_range(n, p);
    bool in_range = false;
    for (int q : range.ranks) in_range = in_range || q == r;
    if (!in_range)
        throw std::invalid_argument("sdp_degree: rank " + std::to_string(r) +
                                    " outside the Pataki range for (n=" + std::to_string(n) +
                                    ", p=" + std::to_string(p) + ")");
    DegreeEntry e{p + 1, n, r, std::nullopt};
    if (p >= 1 && p <= 9 && n >= 3 && n <= 10) {
        for (const auto& c : kDegreeTable)
            if (c.p == p && c.n == n && c.r == r) {
                e.degree = c.degree;
                return e;
            }
        return e;  // no such cell
    }
    if (p == 1) e.degree = static_cast<long long>(n) * (n - 1);
    return e;
}

}  // namespace spshadow
