#include "ybset/tstruct.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace ybset {

namespace {

// all powers T^0 .. T^{ord-1}
std::vector<Permutation> powers(const Permutation& t, int count) {
    std::vector<Permutation> p;
    p.reserve(count);
    p.push_back(Permutation::identity(t.size()));
    for (int i = 1; i < count; i++) p.push_back(t * p.back());
    return p;
}

int cyclic_inverse(int a, int n) {
    for (int b = 0; b < n; b++)
        if (a * b % n == 1 % n) return b;
    return -1;
}

}  // namespace

bool is_t_structure(const AbelianGroup& a, const Permutation& t) {
    const int m = a.order();
    if (t.size() != m) throw StructuralError("permutation size must equal |A|");
    auto tp = powers(t, m);
    for (int x = 0; x < m; x++)
        for (int k = 0; k < m; k++) {
            int lhs = t(a.scal(k, x));
            int rhs = a.scal(k, tp[k](x));
            if (lhs != rhs) return false;
        }
    return true;
}

TStructure t_from_datum(const CocycleDatum& d) {
    validate_datum(d);
    const int m = d.m;
    std::vector<int> pi_inv(m);
    for (int g = 0; g < m; g++) pi_inv[d.pi[g]] = g;

    std::vector<int> img(m);
    for (int x = 0; x < m; x++) img[x] = d.action[pi_inv[x]][x];
    TStructure ts{d.A, Permutation(img)};

    // (y + x) o z = (y o x) o (y o z) with x o y = rho(pi^{-1}(x))(y); at the
    // group level this is pi^{-1}(y + x) = pi^{-1}(y o x) pi^{-1}(y)
    for (int x = 0; x < m; x++)
        for (int y = 0; y < m; y++) {
            int lhs = pi_inv[d.A.add(y, x)];
            int y_o_x = d.action[pi_inv[y]][x];
            int rhs = d.mult[pi_inv[y_o_x]][pi_inv[y]];
            if (lhs != rhs)
                throw InternalInvariantViolation("cocycle composition identity failed");
        }
    if (!is_t_structure(ts.group, ts.T))
        throw InternalInvariantViolation("datum did not induce a T-structure");
    return ts;
}

CocycleDatum datum_from_t_cyclic(int n, const Permutation& t) {
    if (n < 1) throw DomainError("order must be >= 1");
    AbelianGroup a(n > 1 ? std::vector<int>{n} : std::vector<int>{});
    if (!is_t_structure(a, t)) throw DomainError("not a T-structure on Z/n");

    auto tp = powers(t, n);
    // u_y = T^y(1); rho(y) z = z * u_y in the ring Z/n
    std::vector<int> u(n);
    for (int y = 0; y < n; y++) u[y] = (n == 1) ? 0 : tp[y](1 % n);

    CocycleDatum d;
    d.m = n;
    d.A = a;
    d.pi.resize(n);
    std::iota(d.pi.begin(), d.pi.end(), 0);
    d.action.assign(n, std::vector<int>(n));
    for (int y = 0; y < n; y++)
        for (int z = 0; z < n; z++) d.action[y][z] = (int)((long long)z * u[y] % n);
    d.mult.assign(n, std::vector<int>(n));
    for (int y = 0; y < n; y++)
        for (int z = 0; z < n; z++) {
            // y * z = z + y T^{-T(z)}(1)
            int exp = ((-t(z)) % n + n) % n;
            d.mult[y][z] = (int)((z + (long long)y * u[exp]) % n);
        }
    validate_datum(d);

    // round trip: the induced T-structure is t again
    TStructure back = t_from_datum(d);
    if (!(back.T == t))
        throw InternalInvariantViolation("cyclic datum does not reproduce its T-structure");
    return d;
}

std::vector<Permutation> enumerate_t_structures(int n) {
    if (n < 1) throw DomainError("order must be >= 1");
    if (n > 10) throw ResourceError("T-structure enumeration supports n <= 10");
    AbelianGroup a(n > 1 ? std::vector<int>{n} : std::vector<int>{});
    std::vector<Permutation> out;
    std::vector<int> img(n);
    std::iota(img.begin(), img.end(), 0);
    if (n == 1) return {Permutation(img)};

    // T(0) = 0 and each subgroup kA must be preserved
    std::vector<int> tail(n - 1);
    std::iota(tail.begin(), tail.end(), 1);
    do {
        img[0] = 0;
        for (int i = 1; i < n; i++) img[i] = tail[i - 1];
        bool ok = true;
        for (int i = 1; i < n && ok; i++)
            if (std::gcd(i, n) != std::gcd(img[i], n)) ok = false;  // preserves kA layers
        if (!ok) continue;
        Permutation t(img);
        if (is_t_structure(a, t)) out.push_back(std::move(t));
    } while (std::next_permutation(tail.begin(), tail.end()));
    return out;
}

CocycleDatum t_power_datum(const CocycleDatum& d, long long k) {
    validate_datum(d);
    const int m = d.m;
    std::vector<int> pi_inv(m);
    for (int g = 0; g < m; g++) pi_inv[d.pi[g]] = g;
    Permutation t = t_from_datum(d).T;
    Permutation tk = t.power(k);

    CocycleDatum r;
    r.m = m;
    r.A = d.A;
    r.pi.resize(m);
    std::iota(r.pi.begin(), r.pi.end(), 0);
    r.action.assign(m, std::vector<int>(m));
    for (int x = 0; x < m; x++) {
        int kx = d.A.scal(k, x);
        for (int y = 0; y < m; y++) r.action[x][y] = d.action[pi_inv[kx]][y];
    }
    r.mult.assign(m, std::vector<int>(m));
    for (int x = 0; x < m; x++)
        for (int y = 0; y < m; y++) {
            // x * y = y + (-T^k(y)) o x with the new action
            int w = d.A.neg(tk(y));
            r.mult[x][y] = d.A.add(y, r.action[w][x]);
        }
    validate_datum(r);
    TStructure back = t_from_datum(r);
    if (!(back.T == tk))
        throw InternalInvariantViolation("power datum does not induce T^k");
    return r;
}

std::pair<Permutation, SolutionTable> ring_solution(int n, int c) {
    if (n < 1) throw DomainError("order must be >= 1");
    c = ((c % n) + n) % n;
    std::vector<int> inv1cx(n);
    for (int x = 0; x < n; x++) {
        int v = (int)((1 + (long long)c * x) % n);
        int iv = cyclic_inverse(v, n);
        if (iv < 0)
            throw DomainError("1 + c*x is not a unit for x = " + std::to_string(x));
        inv1cx[x] = iv;
    }
    std::vector<int> timg(n);
    for (int x = 0; x < n; x++) timg[x] = (int)((long long)x * inv1cx[x] % n);
    Permutation t(timg);

    SolutionTable s;
    s.n = n;
    s.s1.resize((size_t)n * n);
    s.s2.resize((size_t)n * n);
    for (int x = 0; x < n; x++)
        for (int y = 0; y < n; y++) {
            // S(x,y) = (y (1 + cx + cxcy)^{-1}, x (1 + cy))
            long long cx = (long long)c * x % n;
            long long denom = (1 + cx + cx * c % n * y) % n;
            int iv = cyclic_inverse((int)denom, n);
            if (iv < 0) throw DomainError("ring solution denominator is not a unit");
            s.at1(x, y) = (int)((long long)y * iv % n);
            s.at2(x, y) = (int)((long long)x * (1 + (long long)c * y) % n);
        }
    if (!validate(s).ok())
        throw InternalInvariantViolation("ring solution does not validate");
    // the induced T-map of the table must match the formula
    auto dm = derived_maps(s);
    if (!(dm.T == t))
        throw InternalInvariantViolation("ring solution T-map mismatch");
    return {std::move(t), std::move(s)};
}

}  // namespace ybset
