#pragma once

// Independent brute-force oracle for the catalog quantifiers' extensional
// tables. Unary relations over a domain of size n are bitmasks over n bits;
// the tables are computed straight from the set-theoretic definitions and
// compared against the library's realize() output after converting it to
// masks. This file must stay independent of gqw/quantifier.hpp internals.

#include <cstdint>
#include <set>
#include <utility>

namespace catalog_oracle {

inline int popcount(std::uint32_t mask) {
    int c = 0;
    while (mask) {
        c += mask & 1u;
        mask >>= 1;
    }
    return c;
}

// forall: only the full set.
inline std::set<std::uint32_t> forall_table(std::size_t n) {
    return {static_cast<std::uint32_t>((1u << n) - 1)};
}

// exists: every nonempty set.
inline std::set<std::uint32_t> exists_table(std::size_t n) {
    std::set<std::uint32_t> out;
    for (std::uint32_t a = 1; a < (1u << n); ++a) out.insert(a);
    return out;
}

// equicardinality: all pairs with the same number of elements.
inline std::set<std::pair<std::uint32_t, std::uint32_t>> hartig_table(std::size_t n) {
    std::set<std::pair<std::uint32_t, std::uint32_t>> out;
    for (std::uint32_t a = 0; a < (1u << n); ++a)
        for (std::uint32_t b = 0; b < (1u << n); ++b)
            if (popcount(a) == popcount(b)) out.insert({a, b});
    return out;
}

inline std::set<std::uint32_t> atleast_table(std::size_t n, int k) {
    std::set<std::uint32_t> out;
    for (std::uint32_t a = 0; a < (1u << n); ++a)
        if (popcount(a) >= k) out.insert(a);
    return out;
}

// strict majority of A inside B: |A & B| > |A \ B|.
inline std::set<std::pair<std::uint32_t, std::uint32_t>> most_table(std::size_t n) {
    std::set<std::pair<std::uint32_t, std::uint32_t>> out;
    for (std::uint32_t a = 0; a < (1u << n); ++a)
        for (std::uint32_t b = 0; b < (1u << n); ++b)
            if (popcount(a & b) > popcount(a & ~b)) out.insert({a, b});
    return out;
}

} // namespace catalog_oracle
