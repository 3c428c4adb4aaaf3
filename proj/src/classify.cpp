#include <algorithm>
#include <atomic>
#include <thread>

#include "ybset/constructions.hpp"
#include "ybset/enumerate.hpp"

namespace ybset {

std::vector<std::vector<int>> orbits(const SolutionTable& s) {
    const int n = s.n;
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (int y = 0; y < n; y++)
        for (int x = 0; x < n; x++) {
            int a = find(x), b = find(s.S2(x, y));  // x ~ f_y(x)
            if (a != b) parent[a] = b;
        }
    std::vector<std::vector<int>> out;
    std::vector<int> slot(n, -1);
    for (int i = 0; i < n; i++) {
        int r = find(i);
        if (slot[r] == -1) {
            slot[r] = (int)out.size();
            out.emplace_back();
        }
        out[slot[r]].push_back(i);
    }
    return out;
}

std::vector<std::pair<std::vector<int>, std::vector<int>>> decompositions(
    const SolutionTable& s) {
    auto orb = orbits(s);
    const int m = (int)orb.size();
    std::vector<std::pair<std::vector<int>, std::vector<int>>> out;
    if (m < 2) return out;
    // unordered 2-partitions of the orbit set; orbit 0 stays in the first part
    for (std::uint32_t mask = 1; mask < (1u << (m - 1)); mask++) {
        std::uint32_t a = (mask << 1) | 1u;
        std::vector<int> left, right;
        for (int i = 0; i < m; i++) {
            auto& dst = ((a >> i) & 1) ? left : right;
            dst.insert(dst.end(), orb[i].begin(), orb[i].end());
        }
        if (right.empty()) continue;
        std::sort(left.begin(), left.end());
        std::sort(right.begin(), right.end());
        out.emplace_back(std::move(left), std::move(right));
    }
    // the all-remaining-orbits-right case (a = only orbit 0)
    {
        std::vector<int> left = orb[0], right;
        for (int i = 1; i < m; i++)
            right.insert(right.end(), orb[i].begin(), orb[i].end());
        std::sort(right.begin(), right.end());
        out.emplace_back(std::move(left), std::move(right));
    }
    return out;
}

namespace {

bool twisted_on(const SolutionTable& s, const std::vector<int>& X,
                const std::vector<int>& Y) {
    // S(x,y) = (g(y), f(x)) on X x Y: first output independent of x, second of y
    for (int y : Y) {
        int v = s.S1(X[0], y);
        for (int x : X)
            if (s.S1(x, y) != v) return false;
    }
    for (int x : X) {
        int v = s.S2(x, Y[0]);
        for (int y : Y)
            if (s.S2(x, y) != v) return false;
    }
    return true;
}

bool gtu_on(const SolutionTable& s, const std::vector<int>& X,
            const std::vector<int>& Y) {
    // cross maps: f_y : X -> X, f_y(x) = S2(x,y); g_x : Y -> Y, g_x(y) = S1(x,y).
    // Conditions: g_{f_y(x)} independent of y, f_{g_x(y)} independent of x.
    for (int x : X) {
        int xr = s.S2(x, Y[0]);  // f_{y0}(x)
        for (int y : Y) {
            int xp = s.S2(x, y);  // f_y(x)
            for (int w : Y)
                if (s.S1(xp, w) != s.S1(xr, w)) return false;
        }
    }
    for (int y : Y) {
        int yr = s.S1(X[0], y);  // g_{x0}(y)
        for (int x : X) {
            int yp = s.S1(x, y);  // g_x(y)
            for (int w : X)
                if (s.S2(w, yp) != s.S2(w, yr)) return false;
        }
    }
    return true;
}

}  // namespace

bool is_twisted_union(const SolutionTable& s) {
    for (const auto& [X, Y] : decompositions(s))
        if (twisted_on(s, X, Y)) return true;
    return false;
}

bool is_generalized_twisted_union(const SolutionTable& s) {
    for (const auto& [X, Y] : decompositions(s))
        if (gtu_on(s, X, Y) || gtu_on(s, Y, X)) return true;
    return false;
}

std::pair<SolutionTable, std::vector<int>> retraction(const SolutionTable& s) {
    const int n = s.n;
    std::vector<int> proj(n, -1);
    std::vector<int> reps;
    for (int x = 0; x < n; x++) {
        for (int j = 0; j < (int)reps.size(); j++) {
            bool same = true;
            for (int w = 0; w < n && same; w++)
                if (s.S2(w, x) != s.S2(w, reps[j])) same = false;
            if (same) {
                proj[x] = j;
                break;
            }
        }
        if (proj[x] == -1) {
            proj[x] = (int)reps.size();
            reps.push_back(x);
        }
    }
    const int m = (int)reps.size();
    SolutionTable r;
    r.n = m;
    r.s1.resize((size_t)m * m);
    r.s2.resize((size_t)m * m);
    for (int a = 0; a < m; a++)
        for (int b = 0; b < m; b++) {
            r.at1(a, b) = proj[s.S1(reps[a], reps[b])];
            r.at2(a, b) = proj[s.S2(reps[a], reps[b])];
        }
    if (!validate(r).ok())
        throw InternalInvariantViolation("retraction is not a valid solution");
    return {std::move(r), std::move(proj)};
}

std::optional<int> multipermutation_level(const SolutionTable& s) {
    SolutionTable cur = s;
    int level = 0;
    while (cur.n > 1) {
        auto [next, proj] = retraction(cur);
        if (next.n == cur.n) return std::nullopt;
        cur = std::move(next);
        level++;
    }
    return level;
}

bool is_irretractable(const SolutionTable& s) {
    if (s.n <= 1) return false;
    auto [r, proj] = retraction(s);
    return r.n == s.n;
}

bool is_affine(const SolutionTable& s) {
    if (s.n > 8) throw DomainError("affine recognition supports n <= 8");
    const auto& keys = affine_canonical_keys(s.n);
    return keys.count(canonical_form(s)) != 0;
}

ClassificationRecord classify(const SolutionTable& s) {
    ClassificationRecord rec;
    rec.indecomposable = orbits(s).size() == 1;
    rec.decomposable = !rec.indecomposable;
    rec.twisted_union = rec.decomposable && is_twisted_union(s);
    rec.generalized_twisted_union =
        rec.twisted_union || (rec.decomposable && is_generalized_twisted_union(s));
    rec.multipermutation_level = multipermutation_level(s);
    rec.irretractable = is_irretractable(s);
    rec.affine = s.n <= 8 && is_affine(s);
    return rec;
}

TableRow summary_row(int n, int jobs) {
    std::vector<SolutionTable> sols;
    EnumerateOptions opts;
    opts.jobs = jobs;
    enumerate_solutions(n, [&](const SolutionTable& t) { sols.push_back(t); }, opts);
    affine_canonical_keys(n);  // build the cache before the parallel part

    TableRow row;
    row.n = n;
    row.s = (long)sols.size();
    std::atomic<size_t> next{0};
    std::atomic<long> ds{0}, tu{0}, gtu{0}, id{0}, idmp{0}, idir{0}, idira{0};
    auto work = [&]() {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= sols.size()) break;
            const auto& t = sols[i];
            bool indec = orbits(t).size() == 1;
            if (indec) {
                id++;
                if (multipermutation_level(t)) idmp++;
                if (is_irretractable(t)) {
                    idir++;
                    if (is_affine(t)) idira++;
                }
            } else {
                ds++;
                bool t_u = is_twisted_union(t);
                if (t_u) tu++;
                if (t_u || is_generalized_twisted_union(t)) gtu++;
            }
        }
    };
    int k = jobs > 0 ? jobs : (int)std::max(1u, std::thread::hardware_concurrency());
    if (k <= 1 || sols.size() < 64) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < k; i++) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    row.ds = ds;
    row.tu = tu;
    row.gtu = gtu;
    row.id = id;
    row.idmp = idmp;
    row.idir = idir;
    row.idira = idira;
    return row;
}

std::vector<TableRow> summary_table(int n_max, int jobs) {
    std::vector<TableRow> rows;
    for (int n = 1; n <= n_max; n++) rows.push_back(summary_row(n, jobs));
    return rows;
}

}  // namespace ybset
