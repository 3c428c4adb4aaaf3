#include "ybset/constructions.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <string>

namespace ybset {

AbelianGroup::AbelianGroup(std::vector<int> f) : factors(std::move(f)) {
    for (size_t i = 0; i < factors.size(); i++) {
        if (factors[i] < 1) throw StructuralError("invariant factor must be >= 1");
        if (i > 0 && factors[i] % factors[i - 1] != 0)
            throw StructuralError("invariant factors must form a divisor chain");
    }
}

int AbelianGroup::order() const {
    int o = 1;
    for (int d : factors) o *= d;
    return o;
}

std::vector<int> AbelianGroup::tuple(int idx) const {
    std::vector<int> t(rank());
    for (int i = 0; i < rank(); i++) {
        t[i] = idx % factors[i];
        idx /= factors[i];
    }
    return t;
}

int AbelianGroup::index(const std::vector<int>& t) const {
    int idx = 0;
    for (int i = rank() - 1; i >= 0; i--) {
        int v = t[i] % factors[i];
        if (v < 0) v += factors[i];
        idx = idx * factors[i] + v;
    }
    return idx;
}

int AbelianGroup::add(int a, int b) const {
    auto ta = tuple(a), tb = tuple(b);
    for (int i = 0; i < rank(); i++) ta[i] = (ta[i] + tb[i]) % factors[i];
    return index(ta);
}

int AbelianGroup::neg(int a) const {
    auto t = tuple(a);
    for (int i = 0; i < rank(); i++) t[i] = (factors[i] - t[i]) % factors[i];
    return index(t);
}

int AbelianGroup::scal(long long k, int a) const {
    auto t = tuple(a);
    for (int i = 0; i < rank(); i++) {
        long long v = (k % factors[i]) * t[i] % factors[i];
        if (v < 0) v += factors[i];
        t[i] = (int)v;
    }
    return index(t);
}

int Endomorphism::apply(int elemIdx) const {
    const int r = group.rank();
    auto t = group.tuple(elemIdx);
    std::vector<int> out(r, 0);
    for (int i = 0; i < r; i++) {
        long long acc = 0;
        for (int j = 0; j < r; j++) acc += (long long)mat[i * r + j] * t[j];
        out[i] = (int)(acc % group.factors[i]);
    }
    return group.index(out);
}

EndRing::EndRing(const AbelianGroup& g, std::uint64_t budget) : group(g) {
    const int r = g.rank();
    // entry (i,j) ranges over multiples of d_i / gcd(d_i, d_j) below d_i
    std::vector<int> step(r * r), count(r * r);
    std::uint64_t total = 1;
    for (int i = 0; i < r; i++)
        for (int j = 0; j < r; j++) {
            int di = g.factors[i], dj = g.factors[j];
            int st = di / std::gcd(di, dj);
            step[i * r + j] = st;
            count[i * r + j] = di / st;
            total *= (std::uint64_t)count[i * r + j];
            if (total > budget) throw ResourceError("endomorphism ring budget exceeded");
        }
    if (r == 0) {
        elems.push_back(Endomorphism{g, {}});
        return;
    }
    std::vector<int> pick(r * r, 0);
    for (;;) {
        Endomorphism e{g, std::vector<int>(r * r)};
        for (int k = 0; k < r * r; k++) e.mat[k] = pick[k] * step[k];
        elems.push_back(std::move(e));
        int k = 0;
        while (k < r * r && ++pick[k] == count[k]) pick[k++] = 0;
        if (k == r * r) break;
    }
}

Endomorphism EndRing::zero() const {
    const int r = group.rank();
    return Endomorphism{group, std::vector<int>(r * r, 0)};
}

Endomorphism EndRing::identity() const {
    const int r = group.rank();
    Endomorphism e{group, std::vector<int>(r * r, 0)};
    for (int i = 0; i < r; i++) e.mat[i * r + i] = 1 % group.factors[i];
    return e;
}

Endomorphism EndRing::add(const Endomorphism& a, const Endomorphism& b) const {
    const int r = group.rank();
    Endomorphism e{group, std::vector<int>(r * r)};
    for (int i = 0; i < r; i++)
        for (int j = 0; j < r; j++)
            e.mat[i * r + j] = (a.mat[i * r + j] + b.mat[i * r + j]) % group.factors[i];
    return e;
}

Endomorphism EndRing::sub(const Endomorphism& a, const Endomorphism& b) const {
    const int r = group.rank();
    Endomorphism e{group, std::vector<int>(r * r)};
    for (int i = 0; i < r; i++)
        for (int j = 0; j < r; j++) {
            int v = (a.mat[i * r + j] - b.mat[i * r + j]) % group.factors[i];
            if (v < 0) v += group.factors[i];
            e.mat[i * r + j] = v;
        }
    return e;
}

Endomorphism EndRing::mul(const Endomorphism& a, const Endomorphism& b) const {
    const int r = group.rank();
    Endomorphism e{group, std::vector<int>(r * r)};
    for (int i = 0; i < r; i++)
        for (int j = 0; j < r; j++) {
            long long acc = 0;
            for (int k = 0; k < r; k++)
                acc += (long long)a.mat[i * r + k] * b.mat[k * r + j];
            e.mat[i * r + j] = (int)(acc % group.factors[i]);
        }
    return e;
}

std::optional<Endomorphism> EndRing::inverse(const Endomorphism& a) const {
    Endomorphism id = identity();
    for (const auto& x : elems)
        if (mul(a, x) == id && mul(x, a) == id) return x;
    return std::nullopt;
}

std::vector<LinearPair> solve_linear_pairs(const AbelianGroup& g, std::uint64_t budget) {
    EndRing ring(g, budget);
    Endomorphism one = ring.identity();
    std::vector<LinearPair> out;
    for (const auto& a : ring.elems) {
        auto inv1pa = ring.inverse(ring.add(one, a));
        if (!inv1pa) continue;
        Endomorphism rhs_core = ring.mul(a, *inv1pa);  // a (1+a)^{-1}
        Endomorphism one_minus_a2 = ring.sub(one, ring.mul(a, a));
        auto invam1 = ring.inverse(ring.sub(a, one));
        if (!invam1) continue;  // (1-a^2) invertible requires a-1 invertible
        Endomorphism d = ring.mul(a, *invam1);
        for (const auto& b : ring.elems) {
            auto binv = ring.inverse(b);
            if (!binv) continue;
            if (!(ring.mul(b, a) == ring.mul(rhs_core, b))) continue;
            Endomorphism c = ring.mul(*binv, one_minus_a2);
            if (!ring.inverse(c)) continue;
            out.push_back({a, b, c, d});
        }
    }
    return out;
}

SolutionTable affine_solution(const AbelianGroup& g, const Endomorphism& a,
                              const Endomorphism& b, int z) {
    EndRing ring(g);
    Endomorphism one = ring.identity();
    auto binv = ring.inverse(b);
    auto inv1pa = ring.inverse(ring.add(one, a));
    auto invam1 = ring.inverse(ring.sub(a, one));
    if (!binv || !inv1pa || !invam1)
        throw StructureError("affine data requires b, 1+a and a-1 invertible");
    if (!(ring.mul(b, a) == ring.mul(ring.mul(a, *inv1pa), b)))
        throw StructureError("pair violates b a b^{-1} = a (1+a)^{-1}");
    Endomorphism c = ring.mul(*binv, ring.sub(one, ring.mul(a, a)));
    if (!ring.inverse(c)) throw StructureError("derived c = b^{-1}(1-a^2) not invertible");
    Endomorphism d = ring.mul(a, *invam1);
    // t = -b^{-1}(1+a) z
    int t = g.neg(ring.mul(*binv, ring.add(one, a)).apply(z));

    const int n = g.order();
    SolutionTable s;
    s.n = n;
    s.s1.resize((size_t)n * n);
    s.s2.resize((size_t)n * n);
    for (int x = 0; x < n; x++)
        for (int y = 0; y < n; y++) {
            s.at1(x, y) = g.add(g.add(a.apply(x), b.apply(y)), z);
            s.at2(x, y) = g.add(g.add(c.apply(x), d.apply(y)), t);
        }
    if (!validate(s).ok())
        throw InternalInvariantViolation("affine construction produced invalid table");
    return s;
}

std::pair<std::vector<std::vector<long long>>, std::vector<std::vector<long long>>>
jordan_binomial(int N) {
    if (N < 1) throw DomainError("N must be >= 1");
    auto binom = [](int n, int k) -> long long {
        if (k < 0 || k > n) return 0;
        long long r = 1;
        for (int i = 1; i <= k; i++) r = r * (n - k + i) / i;
        return r;
    };
    std::vector<std::vector<long long>> J(N, std::vector<long long>(N, 0));
    std::vector<std::vector<long long>> B(N, std::vector<long long>(N, 0));
    for (int i = 1; i <= N; i++)
        for (int j = 1; j <= N; j++) {
            if (i + 1 == j) J[i - 1][j - 1] = 1;
            B[i - 1][j - 1] = binom(j, i);
        }
    // ab = ba + aba
    auto mul = [&](const auto& X, const auto& Y) {
        std::vector<std::vector<long long>> R(N, std::vector<long long>(N, 0));
        for (int i = 0; i < N; i++)
            for (int k = 0; k < N; k++)
                if (X[i][k])
                    for (int j = 0; j < N; j++) R[i][j] += X[i][k] * Y[k][j];
        return R;
    };
    auto ab = mul(J, B), ba = mul(B, J), aba = mul(mul(J, B), J);
    for (int i = 0; i < N; i++)
        for (int j = 0; j < N; j++)
            if (ab[i][j] != ba[i][j] + aba[i][j])
                throw InternalInvariantViolation("binomial identity failed");
    return {J, B};
}

namespace {

bool preserves(const SolutionTable& s, const Permutation& p) {
    for (int x = 0; x < s.n; x++)
        for (int y = 0; y < s.n; y++) {
            if (p(s.S1(x, y)) != s.S1(p(x), p(y))) return false;
            if (p(s.S2(x, y)) != s.S2(p(x), p(y))) return false;
        }
    return true;
}

}  // namespace

SolutionTable twisted_union(const SolutionTable& x, const SolutionTable& y,
                            const Permutation& f, const Permutation& g) {
    if (f.size() != x.n || g.size() != y.n)
        throw StructuralError("permutation sizes must match the parts");
    if (!preserves(x, f)) throw StructureError("f is not an automorphism of the first part");
    if (!preserves(y, g)) throw StructureError("g is not an automorphism of the second part");
    const int nx = x.n, n = x.n + y.n;
    Permutation fi = f.inverse(), gi = g.inverse();
    SolutionTable s;
    s.n = n;
    s.s1.resize((size_t)n * n);
    s.s2.resize((size_t)n * n);
    for (int a = 0; a < n; a++)
        for (int b = 0; b < n; b++) {
            if (a < nx && b < nx) {
                s.at1(a, b) = x.S1(a, b);
                s.at2(a, b) = x.S2(a, b);
            } else if (a >= nx && b >= nx) {
                s.at1(a, b) = nx + y.S1(a - nx, b - nx);
                s.at2(a, b) = nx + y.S2(a - nx, b - nx);
            } else if (a < nx) {
                // S(x, y) = (g(y), f(x))
                s.at1(a, b) = nx + g(b - nx);
                s.at2(a, b) = f(a);
            } else {
                // S(y, x) = (f^{-1}(x), g^{-1}(y))
                s.at1(a, b) = fi(b);
                s.at2(a, b) = nx + gi(a - nx);
            }
        }
    if (!validate(s).ok())
        throw InternalInvariantViolation("twisted union produced invalid table");
    return s;
}

SolutionTable assemble_union(const SolutionTable& x, const SolutionTable& y,
                             const std::vector<std::vector<std::pair<int, int>>>& cross) {
    const int nx = x.n, ny = y.n, n = nx + ny;
    if ((int)cross.size() != nx) throw StructuralError("cross map must have |X| rows");
    for (auto& row : cross)
        if ((int)row.size() != ny) throw StructuralError("cross map row must have |Y| entries");
    std::vector<char> hit((size_t)nx * ny, 0);
    for (int a = 0; a < nx; a++)
        for (int b = 0; b < ny; b++) {
            auto [v, u] = cross[a][b];
            if (v < 0 || v >= ny || u < 0 || u >= nx)
                throw StructuralError("cross map entry out of range");
            if (hit[(size_t)v * nx + u])
                throw StructuralError("cross map is not a bijection");
            hit[(size_t)v * nx + u] = 1;
        }

    SolutionTable s;
    s.n = n;
    s.s1.resize((size_t)n * n);
    s.s2.resize((size_t)n * n);
    for (int a = 0; a < nx; a++)
        for (int b = 0; b < nx; b++) {
            s.at1(a, b) = x.S1(a, b);
            s.at2(a, b) = x.S2(a, b);
        }
    for (int a = 0; a < ny; a++)
        for (int b = 0; b < ny; b++) {
            s.at1(nx + a, nx + b) = nx + y.S1(a, b);
            s.at2(nx + a, nx + b) = nx + y.S2(a, b);
        }
    for (int a = 0; a < nx; a++)
        for (int b = 0; b < ny; b++) {
            auto [v, u] = cross[a][b];
            s.at1(a, nx + b) = nx + v;
            s.at2(a, nx + b) = u;
            // forced by involutivity
            s.at1(nx + v, u) = a;
            s.at2(nx + v, u) = nx + b;
        }

    auto rep = validate(s);
    if (!rep.ok()) {
        std::string flag = !rep.bijective     ? "bijective"
                           : !rep.involutive  ? "involutive"
                           : !rep.braided     ? "braided"
                                              : "nondegenerate";
        std::array<int, 3> witness{{-1, -1, -1}};
        if (!rep.braided) {
            // locate a violating triple for the error report
            auto step12 = [&](int& p, int& q) {
                int t = s.S1(p, q);
                q = s.S2(p, q);
                p = t;
            };
            for (int a = 0; a < n && witness[0] < 0; a++)
                for (int b = 0; b < n && witness[0] < 0; b++)
                    for (int c = 0; c < n; c++) {
                        int p = a, q = b, w = c;
                        step12(p, q);
                        step12(q, w);
                        step12(p, q);
                        int p2 = a, q2 = b, w2 = c;
                        step12(q2, w2);
                        step12(p2, q2);
                        step12(q2, w2);
                        if (p != p2 || q != q2 || w != w2) {
                            witness = {a, b, c};
                            break;
                        }
                    }
        }
        throw UnionError("assembled union failed validation (" + flag + ")", flag, witness);
    }
    return s;
}

SolutionTable right_extension(const SolutionTable& x, const SolutionTable& y,
                              const std::vector<Permutation>& fmap) {
    const int nx = x.n, ny = y.n;
    if ((int)fmap.size() != ny) throw StructuralError("fmap must have |Y| entries");
    for (const auto& p : fmap) {
        if (p.size() != nx) throw StructuralError("fmap entry has wrong size");
        if (!preserves(x, p))
            throw StructureError("fmap entry does not preserve the first part");
    }
    // relations: f_{y'} f_y = f_v f_u whenever S_Y(y, y') = (u, v)
    for (int a = 0; a < ny; a++)
        for (int b = 0; b < ny; b++) {
            int u = y.S1(a, b), v = y.S2(a, b);
            if (!(fmap[b] * fmap[a] == fmap[v] * fmap[u]))
                throw StructureError("fmap breaks the relation at (" + std::to_string(a) +
                                     "," + std::to_string(b) + ") of the right factor");
        }
    std::vector<std::vector<std::pair<int, int>>> cross(nx);
    for (int a = 0; a < nx; a++) {
        cross[a].resize(ny);
        for (int b = 0; b < ny; b++) cross[a][b] = {b, fmap[b](a)};
    }
    return assemble_union(x, y, cross);
}

std::vector<AbelianGroup> abelian_groups_of_order(int n) {
    switch (n) {
        case 1: return {AbelianGroup(std::vector<int>{})};
        case 2: return {AbelianGroup({2})};
        case 3: return {AbelianGroup({3})};
        case 4: return {AbelianGroup({4}), AbelianGroup({2, 2})};
        case 5: return {AbelianGroup({5})};
        case 6: return {AbelianGroup({6})};
        case 7: return {AbelianGroup({7})};
        case 8: return {AbelianGroup({8}), AbelianGroup({2, 4}), AbelianGroup({2, 2, 2})};
        default: throw DomainError("abelian group list covers n <= 8");
    }
}

const std::set<CanonicalKey>& affine_canonical_keys(int n) {
    static std::mutex mu;
    static std::map<int, std::set<CanonicalKey>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    std::set<CanonicalKey> keys;
    std::set<SolutionTable> raw_seen;
    for (const auto& g : abelian_groups_of_order(n)) {
        EndRing ring(g);
        Endomorphism one = ring.identity();
        for (const auto& pair : solve_linear_pairs(g)) {
            // translations conjugate z to z + (1 - a - b) w, so only cokernel
            // representatives of 1 - a - b are needed
            Endomorphism shift = ring.sub(ring.sub(one, pair.a), pair.b);
            std::set<int> image;
            for (int w = 0; w < n; w++) image.insert(shift.apply(w));
            std::set<int> reps;
            {
                std::set<int> covered;
                for (int z = 0; z < n; z++) {
                    if (covered.count(z)) continue;
                    reps.insert(z);
                    for (int im : image) covered.insert(g.add(z, im));
                }
            }
            for (int z : reps) {
                SolutionTable s = affine_solution(g, pair.a, pair.b, z);
                if (!raw_seen.insert(s).second) continue;
                keys.insert(canonical_form(s));
            }
        }
    }
    return cache.emplace(n, std::move(keys)).first->second;
}

}  // namespace ybset
