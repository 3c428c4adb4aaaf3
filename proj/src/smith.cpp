#include "ybset/smith.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "ybset/errors.hpp"

namespace ybset {

namespace {

struct Ops {
    std::vector<std::vector<long long>>* m;
    SmithResult* r;

    void col_swap(int i, int j) {
        for (auto& row : *m) std::swap(row[i], row[j]);
        for (auto& row : r->v) std::swap(row[i], row[j]);
        std::swap(r->v_inv[i], r->v_inv[j]);
    }
    void col_neg(int i) {
        for (auto& row : *m) row[i] = -row[i];
        for (auto& row : r->v) row[i] = -row[i];
        for (auto& x : r->v_inv[i]) x = -x;
    }
    // col j += k * col i  (V gets the same op; V^{-1} gets the inverse row op)
    void col_add(int j, int i, long long k) {
        for (auto& row : *m) row[j] += k * row[i];
        for (auto& row : r->v) row[j] += k * row[i];
        for (size_t c = 0; c < r->v_inv[i].size(); c++)
            r->v_inv[i][c] -= k * r->v_inv[j][c];
    }
    void row_swap(int i, int j) { std::swap((*m)[i], (*m)[j]); }
    void row_neg(int i) {
        for (auto& x : (*m)[i]) x = -x;
    }
    void row_add(int j, int i, long long k) {
        for (size_t c = 0; c < (*m)[i].size(); c++) (*m)[j][c] += k * (*m)[i][c];
    }
};

}  // namespace

SmithResult smith_normal_form(std::vector<std::vector<long long>> m, int cols) {
    const int nr = (int)m.size();
    SmithResult r;
    r.v.assign(cols, std::vector<long long>(cols, 0));
    r.v_inv.assign(cols, std::vector<long long>(cols, 0));
    for (int i = 0; i < cols; i++) r.v[i][i] = r.v_inv[i][i] = 1;
    r.diag.assign(cols, 0);
    Ops ops{&m, &r};

    const int lim = std::min(nr, cols);
    for (int t = 0; t < lim; t++) {
        for (;;) {
            // smallest nonzero entry of the trailing block as pivot
            int pi = -1, pj = -1;
            long long best = 0;
            for (int i = t; i < nr; i++)
                for (int j = t; j < cols; j++) {
                    long long a = std::llabs(m[i][j]);
                    if (a != 0 && (pi < 0 || a < best)) {
                        best = a;
                        pi = i;
                        pj = j;
                    }
                }
            if (pi < 0) goto done;  // trailing block is zero
            if (pi != t) ops.row_swap(pi, t);
            if (pj != t) ops.col_swap(pj, t);
            if (m[t][t] < 0) ops.row_neg(t);

            bool reduced = true;
            for (int i = t + 1; i < nr; i++)
                if (m[i][t] != 0) {
                    ops.row_add(i, t, -(m[i][t] / m[t][t]));
                    if (m[i][t] != 0) reduced = false;
                }
            for (int j = t + 1; j < cols; j++)
                if (m[t][j] != 0) {
                    ops.col_add(j, t, -(m[t][j] / m[t][t]));
                    if (m[t][j] != 0) reduced = false;
                }
            if (!reduced) continue;  // smaller remainders exist; repick pivot

            // divisor chain: pull in any entry the pivot does not divide
            bool divides = true;
            for (int i = t + 1; i < nr && divides; i++)
                for (int j = t + 1; j < cols; j++)
                    if (m[i][j] % m[t][t] != 0) {
                        ops.col_add(t, j, 1);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
    }
done:
    for (int i = 0; i < lim; i++) r.diag[i] = m[i][i];
    return r;
}

bool LatticeBasis::add(std::vector<long long> v) {
    bool grew = false;
    int lead = 0;
    while (lead < cols) {
        if (v[lead] == 0) {
            lead++;
            continue;
        }
        int pr = -1;
        for (int i = 0; i < (int)rows.size(); i++) {
            int l = 0;
            while (l < cols && rows[i][l] == 0) l++;
            if (l == lead) {
                pr = i;
                break;
            }
        }
        if (pr < 0) {
            if (v[lead] < 0)
                for (auto& x : v) x = -x;
            rows.push_back(v);
            std::sort(rows.begin(), rows.end(),
                      [this](const auto& a, const auto& b) {
                          int la = 0, lb = 0;
                          while (la < cols && a[la] == 0) la++;
                          while (lb < cols && b[lb] == 0) lb++;
                          return la < lb;
                      });
            return true;
        }
        while (v[lead] != 0) {
            long long q = v[lead] / rows[pr][lead];
            for (int c = 0; c < cols; c++) v[c] -= q * rows[pr][c];
            if (v[lead] != 0) {
                std::swap(rows[pr], v);
                if (rows[pr][lead] < 0)
                    for (auto& x : rows[pr]) x = -x;
                grew = true;
            }
        }
    }
    return grew;
}

long long det_bareiss(std::vector<std::vector<long long>> m) {
    const int n = (int)m.size();
    if (n == 0) return 1;
    long long sign = 1, prev = 1;
    for (int k = 0; k < n - 1; k++) {
        if (m[k][k] == 0) {
            int sw = -1;
            for (int i = k + 1; i < n; i++)
                if (m[i][k] != 0) {
                    sw = i;
                    break;
                }
            if (sw < 0) return 0;
            std::swap(m[k], m[sw]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; i++)
            for (int j = k + 1; j < n; j++)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

std::vector<std::vector<long long>> adjugate(const std::vector<std::vector<long long>>& m) {
    const int n = (int)m.size();
    std::vector<std::vector<long long>> adj(n, std::vector<long long>(n));
    if (n == 0) return adj;
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) {
            std::vector<std::vector<long long>> minor;
            for (int r = 0; r < n; r++) {
                if (r == i) continue;
                std::vector<long long> row;
                for (int c = 0; c < n; c++)
                    if (c != j) row.push_back(m[r][c]);
                minor.push_back(std::move(row));
            }
            long long cof = det_bareiss(std::move(minor));
            adj[j][i] = ((i + j) % 2 == 0) ? cof : -cof;
        }
    return adj;
}

}  // namespace ybset
