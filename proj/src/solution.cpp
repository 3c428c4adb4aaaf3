#include "ybset/solution.hpp"

#include <string>

namespace ybset {

static void check_shape(const SolutionTable& s) {
    if (s.n < 1) throw StructuralError("table size must be >= 1");
    size_t want = (size_t)s.n * s.n;
    if (s.s1.size() != want || s.s2.size() != want)
        throw StructuralError("table dimensions do not match n");
    for (int v : s.s1)
        if (v < 0 || v >= s.n) throw StructuralError("s1 entry out of range");
    for (int v : s.s2)
        if (v < 0 || v >= s.n) throw StructuralError("s2 entry out of range");
}

ValidationReport validate(const SolutionTable& s) {
    check_shape(s);
    const int n = s.n;
    ValidationReport r;

    // pair map is a bijection of the n^2 pairs
    {
        std::vector<char> seen((size_t)n * n, 0);
        r.bijective = true;
        for (int x = 0; x < n && r.bijective; x++)
            for (int y = 0; y < n; y++) {
                int idx = s.S1(x, y) * n + s.S2(x, y);
                if (seen[idx]) {
                    r.bijective = false;
                    break;
                }
                seen[idx] = 1;
            }
    }

    // S(S(x,y)) = (x,y)
    r.involutive = true;
    for (int x = 0; x < n && r.involutive; x++)
        for (int y = 0; y < n; y++) {
            auto [u, v] = s.S(x, y);
            if (s.S1(u, v) != x || s.S2(u, v) != y) {
                r.involutive = false;
                break;
            }
        }

    // S12 S23 S12 = S23 S12 S23 on all triples
    r.braided = true;
    for (int x = 0; x < n && r.braided; x++)
        for (int y = 0; y < n && r.braided; y++)
            for (int z = 0; z < n; z++) {
                int a = x, b = y, c = z;
                int t;
                t = s.S1(a, b);
                b = s.S2(a, b);
                a = t;  // S12
                t = s.S1(b, c);
                c = s.S2(b, c);
                b = t;  // S23
                t = s.S1(a, b);
                b = s.S2(a, b);
                a = t;  // S12
                int p = x, q = y, w = z;
                t = s.S1(q, w);
                w = s.S2(q, w);
                q = t;  // S23
                t = s.S1(p, q);
                q = s.S2(p, q);
                p = t;  // S12
                t = s.S1(q, w);
                w = s.S2(q, w);
                q = t;  // S23
                if (a != p || b != q || c != w) {
                    r.braided = false;
                    break;
                }
            }

    // x -> S2(x,y) and x -> S1(z,x) bijective for fixed y, z
    r.nondegenerate = true;
    for (int y = 0; y < n && r.nondegenerate; y++) {
        std::vector<char> seen(n, 0);
        for (int x = 0; x < n; x++) {
            int v = s.S2(x, y);
            if (seen[v]) {
                r.nondegenerate = false;
                break;
            }
            seen[v] = 1;
        }
    }
    for (int z = 0; z < n && r.nondegenerate; z++) {
        std::vector<char> seen(n, 0);
        for (int x = 0; x < n; x++) {
            int v = s.S1(z, x);
            if (seen[v]) {
                r.nondegenerate = false;
                break;
            }
            seen[v] = 1;
        }
    }

    return r;
}

SolutionTable from_f_table(const FMap& fm) {
    const int n = fm.n;
    if (n < 1 || (int)fm.f.size() != n)
        throw StructuralError("f table must hold n permutations");
    for (const auto& p : fm.f)
        if (p.size() != n) throw StructuralError("f row has wrong size");

    std::vector<Permutation> finv(n);
    for (int y = 0; y < n; y++) finv[y] = fm.f[y].inverse();

    // T(y) = f_y^{-1}(y) must be a bijection
    {
        std::vector<char> seen(n, 0);
        for (int y = 0; y < n; y++) {
            int t = finv[y](y);
            if (seen[t])
                throw NondegeneracyError("T = y -> f_y^{-1}(y) is not a bijection");
            seen[t] = 1;
        }
    }

    // f_y f_x = f_{f_y(x)} f_{g_x(y)} with g_x(y) = f_{f_y(x)}^{-1}(y)
    for (int x = 0; x < n; x++)
        for (int y = 0; y < n; y++) {
            int z = fm.f[y](x);
            int t = finv[z](y);
            for (int w = 0; w < n; w++)
                if (fm.f[y](fm.f[x](w)) != fm.f[z](fm.f[t](w)))
                    throw BraidError("right-action law fails at (" +
                                         std::to_string(x) + "," + std::to_string(y) + ")",
                                     x, y);
        }

    SolutionTable s;
    s.n = n;
    s.s1.resize((size_t)n * n);
    s.s2.resize((size_t)n * n);
    for (int x = 0; x < n; x++)
        for (int y = 0; y < n; y++) {
            int z = fm.f[y](x);
            s.at1(x, y) = finv[z](y);
            s.at2(x, y) = z;
        }
    if (!validate(s).ok())
        throw InternalInvariantViolation("from_f_table produced an invalid table");
    return s;
}

FMap f_map_of(const SolutionTable& s) {
    FMap fm;
    fm.n = s.n;
    fm.f.reserve(s.n);
    for (int y = 0; y < s.n; y++) {
        std::vector<int> img(s.n);
        for (int x = 0; x < s.n; x++) img[x] = s.S2(x, y);
        fm.f.emplace_back(std::move(img));
    }
    return fm;
}

DerivedMaps derived_maps(const SolutionTable& s) {
    DerivedMaps d;
    d.f = f_map_of(s).f;
    d.g.reserve(s.n);
    for (int x = 0; x < s.n; x++) {
        std::vector<int> img(s.n);
        for (int y = 0; y < s.n; y++) img[y] = s.S1(x, y);
        d.g.emplace_back(std::move(img));
    }
    std::vector<int> t(s.n);
    for (int y = 0; y < s.n; y++) t[y] = d.f[y].inverse()(y);
    d.T = Permutation(std::move(t));
    return d;
}

long long r_fixed_points(const SolutionTable& s) {
    long long c = 0;
    for (int x = 0; x < s.n; x++)
        for (int y = 0; y < s.n; y++)
            if (s.S2(x, y) == x && s.S1(x, y) == y) c++;
    return c;
}

std::vector<std::uint32_t> j_map(const SolutionTable& s, int m, std::uint64_t budget) {
    if (m < 1) throw DomainError("arity must be >= 1");
    const int n = s.n;
    std::uint64_t total = 1;
    for (int i = 0; i < m; i++) {
        total *= (std::uint64_t)n;
        if (total > budget) throw ResourceError("j_map tuple budget exceeded");
    }
    auto fm = f_map_of(s);
    std::vector<std::uint32_t> out(total);
    std::vector<int> x(m), y(m);
    for (std::uint64_t idx = 0; idx < total; idx++) {
        std::uint64_t t = idx;
        for (int i = 0; i < m; i++) {
            x[i] = (int)(t % n);
            t /= n;
        }
        // y_i = f_{x_m} ... f_{x_{i+2}}(x_{i+1}) in 1-based terms; apply the
        // suffix of f's from the inside out
        for (int i = 0; i < m; i++) {
            int v = x[i];
            for (int j = i + 1; j < m; j++) v = fm.f[x[j]](v);
            y[i] = v;
        }
        std::uint64_t o = 0;
        for (int i = m - 1; i >= 0; i--) o = o * n + y[i];
        out[idx] = (std::uint32_t)o;
    }
    // result must be a bijection of X^m
    std::vector<char> seen(total, 0);
    for (auto v : out) {
        if (seen[v]) throw InternalInvariantViolation("j_map is not a bijection");
        seen[v] = 1;
    }
    return out;
}

bool check_crossing_symmetry(const SolutionTable& s) {
    const int n = s.n;
    // cnt[i][i'][j][j'] = #{(k,l) : S(l,j)=(k,i), S(k,i')=(l,j')}
    std::vector<int> cnt((size_t)n * n * n * n, 0);
    for (int l = 0; l < n; l++)
        for (int j = 0; j < n; j++) {
            int k = s.S1(l, j), i = s.S2(l, j);
            for (int ip = 0; ip < n; ip++) {
                int l2 = s.S1(k, ip), jp = s.S2(k, ip);
                if (l2 == l) cnt[(((size_t)i * n + ip) * n + j) * n + jp]++;
            }
        }
    for (int i = 0; i < n; i++)
        for (int ip = 0; ip < n; ip++)
            for (int j = 0; j < n; j++)
                for (int jp = 0; jp < n; jp++) {
                    int want = (i == ip && j == jp) ? 1 : 0;
                    if (cnt[(((size_t)i * n + ip) * n + j) * n + jp] != want)
                        return false;
                }
    return true;
}

SolutionTable cartesian_product(const SolutionTable& a, const SolutionTable& b) {
    SolutionTable s;
    s.n = a.n * b.n;
    s.s1.resize((size_t)s.n * s.n);
    s.s2.resize((size_t)s.n * s.n);
    auto id = [&](int xa, int xb) { return xa * b.n + xb; };
    for (int xa = 0; xa < a.n; xa++)
        for (int xb = 0; xb < b.n; xb++)
            for (int ya = 0; ya < a.n; ya++)
                for (int yb = 0; yb < b.n; yb++) {
                    int x = id(xa, xb), y = id(ya, yb);
                    s.at1(x, y) = id(a.S1(xa, ya), b.S1(xb, yb));
                    s.at2(x, y) = id(a.S2(xa, ya), b.S2(xb, yb));
                }
    return s;
}

SolutionTable trivial_solution(int n) {
    if (n < 1) throw DomainError("size must be >= 1");
    SolutionTable s;
    s.n = n;
    s.s1.resize((size_t)n * n);
    s.s2.resize((size_t)n * n);
    for (int x = 0; x < n; x++)
        for (int y = 0; y < n; y++) {
            s.at1(x, y) = y;
            s.at2(x, y) = x;
        }
    return s;
}

SolutionTable permutation_solution(const Permutation& f) {
    const int n = f.size();
    if (n < 1) throw DomainError("size must be >= 1");
    Permutation g = f.inverse();
    SolutionTable s;
    s.n = n;
    s.s1.resize((size_t)n * n);
    s.s2.resize((size_t)n * n);
    for (int x = 0; x < n; x++)
        for (int y = 0; y < n; y++) {
            s.at1(x, y) = f(y);
            s.at2(x, y) = g(x);
        }
    return s;
}

SolutionTable cyclic_solution(int m) {
    if (m < 1) throw DomainError("size must be >= 1");
    // S0(x,y) = (y-1, x+1): the permutation solution with f(y) = y-1
    std::vector<int> img(m);
    for (int i = 0; i < m; i++) img[i] = (i + m - 1) % m;
    return permutation_solution(Permutation(std::move(img)));
}

}  // namespace ybset
