#include "ybset/canonical.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <functional>
#include <set>

namespace ybset {

namespace {

constexpr int kMaxN = 32;
constexpr std::uint8_t kInf = 0xff;

// Branch-and-bound search for the lex-minimal relabeling of an f-table.
// Positions are scanned row-major; sigma maps new labels to old, phi the
// reverse.  When a value beats the incumbent at some position the incumbent
// tail is spliced to +inf and the descent continues, so on return `best`
// holds the global minimum.  In check mode the search aborts as soon as any
// strictly smaller relabeling exists.
struct CanonSearch {
    int n = 0;
    const std::uint8_t* f = nullptr;  // original rows, f[y*n+x] = f_y(x)
    std::uint8_t best[kMaxN * kMaxN];
    int phi[kMaxN];
    int sigma[kMaxN];
    bool check_mode = false;
    bool smaller_found = false;

    void run(int n_, const std::uint8_t* rows, bool check) {
        n = n_;
        f = rows;
        check_mode = check;
        smaller_found = false;
        for (int i = 0; i < n * n; i++) best[i] = rows[i];
        std::fill(phi, phi + n, -1);
        std::fill(sigma, sigma + n, -1);
        dfs(0);
    }

    int min_unused_label() const {
        for (int u = 0; u < n; u++)
            if (sigma[u] == -1) return u;
        return -1;
    }

    void dfs(int pos) {
        if (smaller_found && check_mode) return;
        if (pos == n * n) return;  // best already equals this completion
        int r = pos / n, c = pos % n;

        if (sigma[r] == -1) {
            branch_label(r, pos);
            return;
        }
        if (sigma[c] == -1) {
            branch_label(c, pos);
            return;
        }
        int v = f[sigma[r] * n + sigma[c]];
        if (phi[v] == -1) {
            int u = min_unused_label();
            phi[v] = u;
            sigma[u] = v;
            step(pos, u);
            phi[v] = -1;
            sigma[u] = -1;
        } else {
            step(pos, phi[v]);
        }
    }

    // Compare the value at pos against the incumbent, splice on improvement,
    // then continue.  The incumbent is never restored: it is the running
    // global minimum.
    void step(int pos, int val) {
        if (val > best[pos]) return;
        if (val < best[pos]) {
            if (check_mode) {
                smaller_found = true;
                return;
            }
            best[pos] = (std::uint8_t)val;
            std::fill(best + pos + 1, best + n * n, kInf);
        }
        dfs(pos + 1);
    }

    // Assign sigma[label] by branching over unassigned old elements, ordered
    // by the value they would produce at the current position.
    void branch_label(int label, int pos) {
        int r = pos / n, c = pos % n;
        std::array<std::pair<int, int>, kMaxN> cand;  // (value, old)
        int m = 0;
        for (int o = 0; o < n; o++) {
            if (phi[o] != -1) continue;
            int val = 0;
            int orow = (label == r) ? o : sigma[r];
            int ocol = (label == c) ? o : sigma[c];
            if (orow >= 0 && ocol >= 0) {
                int v = f[orow * n + ocol];
                if (v == o)
                    val = label;
                else if (phi[v] != -1)
                    val = phi[v];
                else {
                    for (int t = 0; t < n; t++)
                        if (sigma[t] == -1 && t != label) {
                            val = t;
                            break;
                        }
                }
            }
            cand[m++] = {val, o};
        }
        std::sort(cand.begin(), cand.begin() + m);
        for (int i = 0; i < m; i++) {
            if (smaller_found && check_mode) return;
            int o = cand[i].second;
            phi[o] = label;
            sigma[label] = o;
            dfs(pos);
            phi[o] = -1;
            sigma[label] = -1;
        }
    }
};

void flat_rows(const SolutionTable& s, std::vector<std::uint8_t>& rows) {
    rows.resize((size_t)s.n * s.n);
    for (int y = 0; y < s.n; y++)
        for (int x = 0; x < s.n; x++) rows[(size_t)y * s.n + x] = (std::uint8_t)s.S2(x, y);
}

}  // namespace

namespace detail {

bool rows_are_canonical(int n, const std::uint8_t* rows) {
    CanonSearch cs;
    cs.run(n, rows, true);
    return !cs.smaller_found;
}

void rows_canonical_min(int n, const std::uint8_t* rows, std::uint8_t* out) {
    CanonSearch cs;
    cs.run(n, rows, false);
    std::memcpy(out, cs.best, (size_t)n * n);
}

}  // namespace detail

CanonicalKey canonical_form(const SolutionTable& s) {
    if (s.n > kMaxN) throw ResourceError("canonical form supports n <= 32");
    std::vector<std::uint8_t> rows;
    flat_rows(s, rows);
    CanonicalKey key;
    key.bytes.resize(1 + rows.size());
    key.bytes[0] = (std::uint8_t)s.n;
    detail::rows_canonical_min(s.n, rows.data(), key.bytes.data() + 1);
    return key;
}

SolutionTable table_of_key(const CanonicalKey& key) {
    int n = key.bytes.at(0);
    FMap fm;
    fm.n = n;
    for (int y = 0; y < n; y++) {
        std::vector<int> img(n);
        for (int x = 0; x < n; x++) img[x] = key.bytes.at(1 + (size_t)y * n + x);
        fm.f.emplace_back(std::move(img));
    }
    return from_f_table(fm);
}

SolutionTable canonical_representative(const SolutionTable& s) {
    return table_of_key(canonical_form(s));
}

bool is_canonical(const SolutionTable& s) {
    if (s.n > kMaxN) throw ResourceError("canonical form supports n <= 32");
    std::vector<std::uint8_t> rows;
    flat_rows(s, rows);
    return detail::rows_are_canonical(s.n, rows.data());
}

std::optional<Permutation> is_isomorphic(const SolutionTable& a, const SolutionTable& b) {
    if (a.n != b.n) return std::nullopt;
    const int n = a.n;

    // relabel-invariant fingerprints before backtracking
    if (r_fixed_points(a) != r_fixed_points(b)) return std::nullopt;
    auto fa = f_map_of(a), fb = f_map_of(b);
    {
        std::vector<std::vector<int>> ta, tb;
        for (int y = 0; y < n; y++) {
            ta.push_back(fa.f[y].cycle_type());
            tb.push_back(fb.f[y].cycle_type());
        }
        std::sort(ta.begin(), ta.end());
        std::sort(tb.begin(), tb.end());
        if (ta != tb) return std::nullopt;
    }
    {
        // orbit size profiles under the generated group
        auto orbit_profile = [n](const FMap& fm) {
            std::vector<int> parent(n);
            for (int i = 0; i < n; i++) parent[i] = i;
            auto find = [&](int v) {
                while (parent[v] != v) v = parent[v] = parent[parent[v]];
                return v;
            };
            for (int y = 0; y < n; y++)
                for (int x = 0; x < n; x++) {
                    int ra = find(x), rb = find(fm.f[y](x));
                    if (ra != rb) parent[ra] = rb;
                }
            std::vector<int> size(n, 0);
            for (int i = 0; i < n; i++) size[find(i)]++;
            std::vector<int> profile;
            for (int i = 0; i < n; i++)
                if (size[i]) profile.push_back(size[i]);
            std::sort(profile.begin(), profile.end());
            return profile;
        };
        if (orbit_profile(fa) != orbit_profile(fb)) return std::nullopt;
    }

    // backtracking with forced propagation: assigning phi on x,y forces phi
    // on both components of S(x,y)
    std::vector<int> phi(n, -1), used(n, 0);
    std::vector<std::vector<int>> type_a(n), type_b(n);
    for (int y = 0; y < n; y++) {
        type_a[y] = fa.f[y].cycle_type();
        type_b[y] = fb.f[y].cycle_type();
    }

    auto consistent = [&](std::vector<int>& p, std::vector<int>& u) -> bool {
        // propagate forced images until stable
        bool changed = true;
        while (changed) {
            changed = false;
            for (int x = 0; x < n; x++) {
                if (p[x] == -1) continue;
                for (int y = 0; y < n; y++) {
                    if (p[y] == -1) continue;
                    int va = a.S1(x, y), vb = b.S1(p[x], p[y]);
                    int wa = a.S2(x, y), wb = b.S2(p[x], p[y]);
                    for (auto [src, dst] : {std::pair{va, vb}, std::pair{wa, wb}}) {
                        if (p[src] == -1) {
                            if (u[dst]) return false;
                            p[src] = dst;
                            u[dst] = 1;
                            changed = true;
                        } else if (p[src] != dst) {
                            return false;
                        }
                    }
                }
            }
        }
        return true;
    };

    std::function<bool()> dfs = [&]() -> bool {
        int x = -1;
        for (int i = 0; i < n; i++)
            if (phi[i] == -1) {
                x = i;
                break;
            }
        if (x == -1) return true;
        for (int t = 0; t < n; t++) {
            if (used[t] || type_a[x] != type_b[t]) continue;
            auto saved_phi = phi;
            auto saved_used = used;
            phi[x] = t;
            used[t] = 1;
            if (consistent(phi, used) && dfs()) return true;
            phi = saved_phi;
            used = saved_used;
        }
        return false;
    };

    if (!dfs()) return std::nullopt;
    return Permutation(phi);
}

}  // namespace ybset
