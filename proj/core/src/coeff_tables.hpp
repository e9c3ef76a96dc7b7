#pragma once

// Internal: per-term coefficient maps shared by the perturbation and
// closed-form evaluators. Not installed.

#include <array>

#include "pwhs/errors.hpp"

namespace pwhs::detail {

// Contribution of one coefficient a_{k,l} to r*M1 on the basis
// [r, r^2, r^3, r^4, (r^2-1)^2 atanh, (r^4-1) atanh, r^2 atanh]:
// Im(a) enters through `im`, Re(a) through pi*`re` on the monomial slots
// (re[j] multiplies pi*r^{j+1}). Upper-side values; the lower side keeps
// `im` and negates `re`. Verified against adaptive quadrature to 1e-30.
struct TermMap {
    int k, l;
    std::array<int, 7> im;
    std::array<int, 4> re;
};

inline constexpr std::array<TermMap, 10> kTermMaps{{
    {0, 0, {1, 0, -1, 0, 0, 0, 0}, {0, -1, 0, 0}},
    {0, 1, {-1, 0, -1, 0, 0, 0, 0}, {0, 0, 0, 0}},
    {1, 1, {1, 0, 1, 0, -2, 0, 0}, {0, 1, 0, -1}},
    {0, 2, {1, 0, -1, 0, 0, 0, 0}, {0, 1, 0, 0}},
    {1, 2, {-1, 0, 1, 0, 0, -2, 0}, {0, 0, 0, -1}},
    {2, 2, {5, 0, -5, 0, 0, 4, 0}, {0, -1, 0, 2}},
    {0, 3, {-1, 0, -1, 0, 0, 0, 8}, {0, -2, 0, 0}},
    {1, 3, {1, 0, 1, 0, -2, 0, -8}, {0, -1, 0, -1}},
    {2, 3, {-5, 0, -5, 0, 4, 0, 8}, {0, 0, 0, 2}},
    {3, 3, {5, 0, 5, 0, -6, 0, -8}, {0, 1, 0, -3}},
}};

inline const TermMap& term_map(int k, int l) {
    for (const auto& t : kTermMaps)
        if (t.k == k && t.l == l) return t;
    throw domain_error("no coefficient map for (k,l)=(" + std::to_string(k) +
                       "," + std::to_string(l) + ")");
}

}  // namespace pwhs::detail
