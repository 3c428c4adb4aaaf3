#pragma once

// Test-only brute-force reference: enumerate every involutive bijection of
// X^2 directly, check the defining conditions from scratch, and reduce by
// explicit relabeling orbits.  Independent of the production search,
// validator and canonical form.

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "ybset/solution.hpp"

namespace oracle {

inline bool direct_check(const ybset::SolutionTable& s) {
    const int n = s.n;
    std::vector<int> seen(n * n, 0);
    for (int x = 0; x < n; x++)
        for (int y = 0; y < n; y++) seen[s.S1(x, y) * n + s.S2(x, y)]++;
    for (int v : seen)
        if (v != 1) return false;
    for (int x = 0; x < n; x++)
        for (int y = 0; y < n; y++) {
            auto [u, v] = s.S(x, y);
            if (s.S(u, v) != std::make_pair(x, y)) return false;
        }
    for (int x = 0; x < n; x++)
        for (int y = 0; y < n; y++)
            for (int z = 0; z < n; z++) {
                int a1 = x, b1 = y, c1 = z, t;
                t = s.S1(a1, b1); b1 = s.S2(a1, b1); a1 = t;
                t = s.S1(b1, c1); c1 = s.S2(b1, c1); b1 = t;
                t = s.S1(a1, b1); b1 = s.S2(a1, b1); a1 = t;
                int a2 = x, b2 = y, c2 = z;
                t = s.S1(b2, c2); c2 = s.S2(b2, c2); b2 = t;
                t = s.S1(a2, b2); b2 = s.S2(a2, b2); a2 = t;
                t = s.S1(b2, c2); c2 = s.S2(b2, c2); b2 = t;
                if (a1 != a2 || b1 != b2 || c1 != c2) return false;
            }
    for (int y = 0; y < n; y++) {
        std::vector<int> hit(n, 0);
        for (int x = 0; x < n; x++) hit[s.S2(x, y)]++;
        for (int v : hit)
            if (v != 1) return false;
    }
    for (int z = 0; z < n; z++) {
        std::vector<int> hit(n, 0);
        for (int x = 0; x < n; x++) hit[s.S1(z, x)]++;
        for (int v : hit)
            if (v != 1) return false;
    }
    return true;
}

// lexicographically least S-table over the full relabeling orbit
inline std::vector<int> orbit_min(const ybset::SolutionTable& s) {
    const int n = s.n;
    std::vector<int> phi(n), best;
    std::iota(phi.begin(), phi.end(), 0);
    do {
        std::vector<int> inv(n);
        for (int i = 0; i < n; i++) inv[phi[i]] = i;
        std::vector<int> flat;
        flat.reserve(2 * n * n);
        for (int x = 0; x < n; x++)
            for (int y = 0; y < n; y++) {
                flat.push_back(phi[s.S1(inv[x], inv[y])]);
                flat.push_back(phi[s.S2(inv[x], inv[y])]);
            }
        if (best.empty() || flat < best) best = std::move(flat);
    } while (std::next_permutation(phi.begin(), phi.end()));
    return best;
}

// every class of size n, as orbit-minimal S-tables, via raw enumeration of
// the involutive pair bijections
inline std::set<std::vector<int>> classes_by_raw_enumeration(int n) {
    std::set<std::vector<int>> classes;
    const int m = n * n;
    // enumerate involutions of {0..m-1} as products of fixed points and
    // transpositions, depth-first over the least unmatched point
    std::vector<int> match(m, -1);
    ybset::SolutionTable s;
    s.n = n;
    s.s1.assign(m, 0);
    s.s2.assign(m, 0);
    auto emit = [&]() {
        for (int p = 0; p < m; p++) {
            s.s1[p] = match[p] / n;
            s.s2[p] = match[p] % n;
        }
        if (!direct_check(s)) return;
        classes.insert(orbit_min(s));
    };
    auto rec = [&](auto&& self, int p) -> void {
        while (p < m && match[p] != -1) p++;
        if (p == m) {
            emit();
            return;
        }
        match[p] = p;  // fixed point
        self(self, p + 1);
        match[p] = -1;
        for (int q = p + 1; q < m; q++) {
            if (match[q] != -1) continue;
            match[p] = q;
            match[q] = p;
            self(self, p + 1);
            match[p] = match[q] = -1;
        }
    };
    rec(rec, 0);
    return classes;
}

}  // namespace oracle
