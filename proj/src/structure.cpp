#include "ybset/structure.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <set>
#include <string>

#include "ybset/canonical.hpp"
#include "ybset/enumerate.hpp"

namespace ybset {

namespace {

// action of a group element (via its permutation p) on Z^n: out[p(i)] = v[i]
std::vector<long long> permute_vec(const Permutation& p, const std::vector<long long>& v) {
    std::vector<long long> out(v.size());
    for (size_t i = 0; i < v.size(); i++) out[p((int)i)] = v[i];
    return out;
}

}  // namespace

int StructureData::elem_index(const Permutation& p) const {
    auto it = index_.find(p);
    if (it == index_.end())
        throw InternalInvariantViolation("permutation not in the closed group");
    return it->second;
}

int StructureData::mult(int i, int j) const { return elem_index(elements[i] * elements[j]); }

int StructureData::inverse(int i) const { return elem_index(elements[i].inverse()); }

int StructureData::theta(const std::vector<long long>& vec) const {
    const int n_ = n;
    std::vector<int> tup;
    tup.reserve(a_group.rank());
    for (int j = 0; j < n_; j++) {
        long long acc = 0;
        for (int i = 0; i < n_; i++) acc += vec[i] * quot_v[i][j];
        long long d = invariant_factors[j];
        if (d > 1) {
            long long m = acc % d;
            if (m < 0) m += d;
            tup.push_back((int)m);
        }
    }
    return a_group.index(tup);
}

std::vector<long long> StructureData::lift(int a_idx) const {
    auto tup = a_group.tuple(a_idx);
    std::vector<long long> w(n, 0);
    int k = 0;
    for (int j = 0; j < n; j++)
        if (invariant_factors[j] > 1) w[j] = tup[k++];
    std::vector<long long> v(n, 0);
    for (int j = 0; j < n; j++) {
        long long acc = 0;
        for (int i = 0; i < n; i++) acc += w[i] * quot_v_inv[i][j];
        v[j] = acc;
    }
    return v;
}

int StructureData::act(int g, int a_idx) const {
    return theta(permute_vec(elements[g], lift(a_idx)));
}

StructureData compute_structure(const SolutionTable& s, std::uint64_t budget) {
    if (!validate(s).ok()) throw DomainError("input does not validate");
    const int n = s.n;
    StructureData d;
    d.n = n;

    auto fm = f_map_of(s);
    std::vector<Permutation> gen(n);
    for (int x = 0; x < n; x++) gen[x] = fm.f[x].inverse();

    d.elements.push_back(Permutation::identity(n));
    d.cocycle.push_back(std::vector<long long>(n, 0));
    d.index_[d.elements[0]] = 0;

    LatticeBasis lat(n);
    std::deque<int> queue{0};
    while (!queue.empty()) {
        int i = queue.front();
        queue.pop_front();
        for (int x = 0; x < n; x++) {
            Permutation q = d.elements[i] * gen[x];
            std::vector<long long> pi_new = permute_vec(fm.f[x], d.cocycle[i]);
            pi_new[x] += 1;
            auto it = d.index_.find(q);
            if (it == d.index_.end()) {
                if (d.elements.size() >= budget)
                    throw ResourceError("group closure budget exceeded");
                int j = (int)d.elements.size();
                d.elements.push_back(q);
                d.cocycle.push_back(std::move(pi_new));
                d.index_[q] = j;
                queue.push_back(j);
            } else {
                std::vector<long long> diff(n);
                bool nonzero = false;
                for (int w = 0; w < n; w++) {
                    diff[w] = pi_new[w] - d.cocycle[it->second][w];
                    nonzero |= diff[w] != 0;
                }
                if (nonzero) lat.add(std::move(diff));
            }
        }
    }

    // close the lattice under the coordinate action of the generators
    bool grew = true;
    while (grew) {
        grew = false;
        auto rows = lat.rows;
        for (const auto& row : rows)
            for (int x = 0; x < n; x++) {
                if (lat.add(permute_vec(fm.f[x], row))) grew = true;
                if (lat.add(permute_vec(gen[x], row))) grew = true;
            }
    }
    d.gamma_basis = lat.rows;

    if (lat.rank() != n)
        throw InternalInvariantViolation("cocycle lattice is not full rank");
    auto snf = smith_normal_form(lat.rows, n);
    d.invariant_factors = snf.diag;
    d.quot_v = std::move(snf.v);
    d.quot_v_inv = std::move(snf.v_inv);

    long long prod = 1;
    for (long long f : d.invariant_factors) prod *= f;
    if (prod != d.order())
        throw InternalInvariantViolation("product of invariant factors differs from group order");

    std::vector<int> factors;
    for (long long f : d.invariant_factors)
        if (f > 1) factors.push_back((int)f);
    d.a_group = AbelianGroup(factors);

    d.generator_images.resize(n);
    for (int x = 0; x < n; x++) d.generator_images[x] = d.elem_index(gen[x]);
    return d;
}

namespace {

// multiplicative closure of a finite permutation set (a subgroup, since the
// ambient group is finite)
std::set<Permutation> mult_closure(int n, const std::vector<Permutation>& gens) {
    std::set<Permutation> elems{Permutation::identity(n)};
    std::deque<Permutation> queue{Permutation::identity(n)};
    while (!queue.empty()) {
        Permutation p = queue.front();
        queue.pop_front();
        for (const auto& g : gens) {
            Permutation q = p * g;
            if (elems.insert(q).second) queue.push_back(q);
        }
    }
    return elems;
}

// derived subgroup: normal closure (under conjugation by amb_gens) of the
// commutators of sub_gens; returns its element set and a generating set
std::pair<std::set<Permutation>, std::vector<Permutation>> derived_subgroup(
    int n, const std::vector<Permutation>& sub_gens) {
    std::vector<Permutation> t;
    for (const auto& a : sub_gens)
        for (const auto& b : sub_gens)
            t.push_back(a * b * a.inverse() * b.inverse());
    for (;;) {
        auto h = mult_closure(n, t);
        bool added = false;
        for (const auto& e : h) {
            for (const auto& g : sub_gens) {
                Permutation c = g * e * g.inverse();
                if (!h.count(c)) {
                    t.push_back(c);
                    added = true;
                }
            }
            if (added) break;
        }
        if (!added) return {std::move(h), std::move(t)};
    }
}

}  // namespace

bool is_solvable(const StructureData& d) {
    std::vector<Permutation> gens;
    for (int x : d.generator_images) gens.push_back(d.elements[x]);
    size_t size = d.elements.size();
    for (;;) {
        if (size == 1) return true;
        auto [h, hgens] = derived_subgroup(d.n, gens);
        if (h.size() == size) return false;  // stable nontrivial term
        size = h.size();
        gens = std::move(hgens);
    }
}

long long monoid_count(const SolutionTable& s, int k, std::uint64_t budget) {
    if (k < 0) throw DomainError("degree must be >= 0");
    const int n = s.n;
    auto fm = f_map_of(s);
    std::vector<Permutation> gen(n);
    for (int x = 0; x < n; x++) gen[x] = fm.f[x].inverse();

    using Elem = std::pair<Permutation, std::vector<long long>>;
    std::set<Elem> level;
    level.insert({Permutation::identity(n), std::vector<long long>(n, 0)});
    for (int step = 0; step < k; step++) {
        std::set<Elem> next;
        for (const auto& [p, v] : level)
            for (int x = 0; x < n; x++) {
                Permutation q = p * gen[x];
                std::vector<long long> w = permute_vec(fm.f[x], v);
                w[x] += 1;
                next.insert({std::move(q), std::move(w)});
                if (next.size() > budget) throw ResourceError("monoid budget exceeded");
            }
        level = std::move(next);
    }
    return (long long)level.size();
}

void validate_datum(const CocycleDatum& d) {
    const int m = d.m;
    if ((int)d.mult.size() != m || (int)d.pi.size() != m || (int)d.action.size() != m)
        throw StructureError("datum tables have inconsistent sizes");
    if (d.A.order() != m) throw StructureError("|A| must equal the group order");

    // group axioms
    for (int i = 0; i < m; i++)
        for (int j = 0; j < m; j++) {
            int ij = d.mult[i][j];
            if (ij < 0 || ij >= m) throw StructureError("mult entry out of range");
        }
    int e = -1;
    for (int i = 0; i < m; i++) {
        bool ident = true;
        for (int j = 0; j < m; j++)
            if (d.mult[i][j] != j || d.mult[j][i] != j) {
                ident = false;
                break;
            }
        if (ident) {
            e = i;
            break;
        }
    }
    if (e < 0) throw StructureError("group has no identity");
    for (int i = 0; i < m; i++)
        for (int j = 0; j < m; j++)
            for (int k = 0; k < m; k++)
                if (d.mult[d.mult[i][j]][k] != d.mult[i][d.mult[j][k]])
                    throw StructureError("group multiplication is not associative");
    for (int i = 0; i < m; i++) {
        bool has_inv = false;
        for (int j = 0; j < m; j++)
            if (d.mult[i][j] == e && d.mult[j][i] == e) has_inv = true;
        if (!has_inv) throw StructureError("group element has no inverse");
    }

    // pi bijective
    {
        std::vector<char> seen(m, 0);
        for (int v : d.pi) {
            if (v < 0 || v >= m || seen[v]) throw StructureError("pi is not a bijection");
            seen[v] = 1;
        }
    }

    // action: additive automorphisms forming a homomorphism
    const int r = d.A.rank();
    for (int g = 0; g < m; g++) {
        const auto& a = d.action[g];
        if ((int)a.size() != m) throw StructureError("action row has wrong size");
        std::vector<char> seen(m, 0);
        for (int v : a) {
            if (v < 0 || v >= m || seen[v]) throw StructureError("action is not bijective");
            seen[v] = 1;
        }
        for (int i = 0; i < r; i++) {
            std::vector<int> gen_t(r, 0);
            gen_t[i] = 1;
            int gi = d.A.index(gen_t);
            for (int x = 0; x < m; x++)
                if (a[d.A.add(x, gi)] != d.A.add(a[x], a[gi]))
                    throw StructureError("action element is not additive");
        }
    }
    for (int g = 0; g < m; g++)
        for (int h = 0; h < m; h++) {
            int gh = d.mult[g][h];
            for (int x = 0; x < m; x++)
                if (d.action[gh][x] != d.action[g][d.action[h][x]])
                    throw StructureError("action is not a homomorphism");
        }

    // cocycle law pi(g1 g2) = rho(g2)^{-1} pi(g1) + pi(g2)
    std::vector<std::vector<int>> inv_action(m, std::vector<int>(m));
    for (int g = 0; g < m; g++)
        for (int x = 0; x < m; x++) inv_action[g][d.action[g][x]] = x;
    for (int g = 0; g < m; g++)
        for (int h = 0; h < m; h++)
            if (d.pi[d.mult[g][h]] != d.A.add(inv_action[h][d.pi[g]], d.pi[h]))
                throw StructureError("cocycle law fails");
}

CocycleDatum datum_from_solution(const SolutionTable& s, std::uint64_t budget) {
    StructureData sd = compute_structure(s, budget);
    const long long m = sd.order();
    if (m > 5000) throw ResourceError("datum materialization needs group order <= 5000");
    CocycleDatum d;
    d.m = (int)m;
    d.A = sd.a_group;
    d.mult.assign(d.m, std::vector<int>(d.m));
    d.action.assign(d.m, std::vector<int>(d.m));
    d.pi.resize(d.m);
    for (int i = 0; i < d.m; i++) {
        d.pi[i] = sd.theta(sd.cocycle[i]);
        for (int j = 0; j < d.m; j++) d.mult[i][j] = sd.mult(i, j);
        for (int a = 0; a < d.m; a++) d.action[i][a] = sd.act(i, a);
    }
    validate_datum(d);
    return d;
}

SetStructure tautological_set_structure(const StructureData& d) {
    SetStructure xs;
    xs.x_size = d.n;
    xs.action_on_x = d.elements;
    xs.phi.resize(d.n);
    for (int x = 0; x < d.n; x++) {
        std::vector<long long> e(d.n, 0);
        e[x] = 1;
        xs.phi[x] = d.theta(e);
    }
    return xs;
}

DatumSolution solution_from_datum(const CocycleDatum& d, const SetStructure& xs) {
    const int m = d.m, nx = xs.x_size;
    if ((int)xs.action_on_x.size() != m)
        throw StructureError("set-structure must define the action of every element");
    if ((int)xs.phi.size() != nx) throw StructureError("phi must cover X");
    for (const auto& p : xs.action_on_x)
        if (p.size() != nx) throw StructureError("action permutation has wrong size");

    // rho' must be a homomorphism
    for (int g = 0; g < m; g++)
        for (int h = 0; h < m; h++)
            if (!(xs.action_on_x[d.mult[g][h]] == xs.action_on_x[g] * xs.action_on_x[h]))
                throw StructureError("set action is not a homomorphism");
    // phi carries rho' to rho
    for (int g = 0; g < m; g++)
        for (int x = 0; x < nx; x++)
            if (xs.phi[xs.action_on_x[g](x)] != d.action[g][xs.phi[x]])
                throw StructureError("phi does not intertwine the actions");

    std::vector<int> pi_inv(m);
    for (int g = 0; g < m; g++) pi_inv[d.pi[g]] = g;
    int e = d.mult[0][0];  // locate identity
    for (int i = 0; i < m; i++) {
        bool ident = true;
        for (int j = 0; j < m; j++)
            if (d.mult[i][j] != j) {
                ident = false;
                break;
            }
        if (ident) {
            e = i;
            break;
        }
    }
    auto group_inverse = [&](int g) {
        for (int j = 0; j < m; j++)
            if (d.mult[g][j] == e && d.mult[j][g] == e) return j;
        throw StructureError("group element has no inverse");
    };

    // f_y = rho'(pi^{-1}(phi(y))^{-1})
    std::vector<Permutation> f(nx);
    for (int y = 0; y < nx; y++)
        f[y] = xs.action_on_x[group_inverse(pi_inv[xs.phi[y]])];

    DatumSolution out;
    FMap fm{nx, std::move(f)};
    out.table = from_f_table(fm);

    // generating: the elements pi^{-1}(phi(x)) must generate G
    {
        std::set<int> closure{e};
        std::deque<int> queue{e};
        std::vector<int> gens;
        for (int x = 0; x < nx; x++) gens.push_back(pi_inv[xs.phi[x]]);
        while (!queue.empty()) {
            int g = queue.front();
            queue.pop_front();
            for (int h : gens) {
                int gh = d.mult[g][h];
                if (closure.insert(gh).second) queue.push_back(gh);
                int ginv = group_inverse(h);
                int gh2 = d.mult[g][ginv];
                if (closure.insert(gh2).second) queue.push_back(gh2);
            }
        }
        out.generating = (int)closure.size() == m;
    }
    return out;
}

SolutionTable blow_up(const BundleSpec& b) {
    if (!validate(b.base).ok()) throw DomainError("bundle base does not validate");
    const int nb = b.base.n, nt = b.total_size;
    if ((int)b.projection.size() != nt) throw StructuralError("projection has wrong size");
    if ((int)b.gen_action.size() != nb) throw StructuralError("gen_action has wrong size");
    std::vector<char> hit(nb, 0);
    for (int v : b.projection) {
        if (v < 0 || v >= nb) throw StructuralError("projection value out of range");
        hit[v] = 1;
    }
    for (int x = 0; x < nb; x++)
        if (!hit[x]) throw StructureError("projection is not surjective");
    for (const auto& p : b.gen_action)
        if (p.size() != nt) throw StructuralError("gen_action entry has wrong size");

    auto base_f = f_map_of(b.base);
    // covering: p(rho_x(y)) = f_x^{-1}(p(y))
    for (int x = 0; x < nb; x++) {
        Permutation fx_inv = base_f.f[x].inverse();
        for (int y = 0; y < nt; y++)
            if (b.projection[b.gen_action[x](y)] != fx_inv(b.projection[y]))
                throw StructureError("gen_action does not cover the base action");
    }
    // defining relations: rho_x rho_y = rho_{g_x(y)} rho_{f_y(x)}
    for (int x = 0; x < nb; x++)
        for (int y = 0; y < nb; y++) {
            int gx_y = b.base.S1(x, y), fy_x = b.base.S2(x, y);
            if (!(b.gen_action[x] * b.gen_action[y] ==
                  b.gen_action[gx_y] * b.gen_action[fy_x]))
                throw StructureError("gen_action breaks a defining relation");
        }
    // faithfulness
    for (int x = 0; x < nb; x++)
        for (int y = x + 1; y < nb; y++)
            if (b.gen_action[x] == b.gen_action[y])
                throw FaithfulnessError("bundle generators do not separate base points");

    // f_z^{-1} = rho_{p(z)}
    std::vector<Permutation> f(nt);
    for (int z = 0; z < nt; z++) f[z] = b.gen_action[b.projection[z]].inverse();
    FMap fm{nt, std::move(f)};
    return from_f_table(fm);
}

BundleSpec extract_bundle(const SolutionTable& y) {
    if (!validate(y).ok()) throw DomainError("input does not validate");
    auto [base, proj] = retraction(y);
    if (base.n == y.n && y.n > 1)
        throw DomainError("input is irretractable; no proper bundle exists");
    BundleSpec b;
    b.total_size = y.n;
    b.projection = proj;
    auto fm = f_map_of(y);
    b.gen_action.resize(base.n);
    std::vector<char> have(base.n, 0);
    for (int x = 0; x < y.n; x++) {
        if (have[proj[x]]) continue;
        b.gen_action[proj[x]] = fm.f[x].inverse();
        have[proj[x]] = 1;
    }
    b.base = std::move(base);
    return b;
}

std::vector<SolutionTable> cyclic_blowups(int m, int fiber) {
    if (m < 2) throw DomainError("base size must be >= 2");
    if (fiber < 1) throw DomainError("fiber size must be >= 1");
    if ((long long)m * fiber > 64) throw ResourceError("blow-up enumeration budget exceeded");

    SolutionTable base = cyclic_solution(m);

    // Gamma = {b in Z^m : sum b = 0 mod m}; basis rows: e_i - e_{i+1}, (1,..,1)
    std::vector<std::vector<long long>> B;
    for (int i = 0; i + 1 < m; i++) {
        std::vector<long long> row(m, 0);
        row[i] = 1;
        row[i + 1] = -1;
        B.push_back(std::move(row));
    }
    B.push_back(std::vector<long long>(m, 1));
    long long detB = det_bareiss(B);
    auto adjB = adjugate(B);

    // coordinates of a lattice vector of Gamma in basis B: c = v adj(B)/det
    auto coords = [&](const std::vector<long long>& v) {
        std::vector<long long> c(m, 0);
        for (int j = 0; j < m; j++) {
            long long acc = 0;
            for (int i = 0; i < m; i++) acc += v[i] * adjB[i][j];
            if (acc % detB != 0)
                throw InternalInvariantViolation("vector not in the stabilizer lattice");
            c[j] = acc / detB;
        }
        return c;
    };

    // elements of Aut(X) x Z^X as (shift exponent of c : x -> x-1, vector)
    struct MElem {
        int k;                        // permutation is c^k
        std::vector<long long> t;
    };
    auto mul = [&](const MElem& a, const MElem& b) {
        // (s1,t1)(s2,t2) = (s1 s2, s2^{-1} t1 + t2); s2^{-1} = c^{-k2} moves
        // coordinate i to i + k2
        MElem r;
        r.k = (a.k + b.k) % m;
        r.t.assign(m, 0);
        for (int i = 0; i < m; i++) r.t[(i + b.k) % m] += a.t[i];
        for (int i = 0; i < m; i++) r.t[i] += b.t[i];
        return r;
    };
    auto inv = [&](const MElem& a) {
        // (s,t)^{-1} = (s^{-1}, -s t); s = c^k moves coordinate i to i - k
        MElem r;
        r.k = (m - a.k) % m;
        r.t.assign(m, 0);
        for (int i = 0; i < m; i++) r.t[((i - a.k) % m + m) % m] -= a.t[i];
        return r;
    };
    auto gen = [&](int x) {
        MElem g;
        g.k = 1;
        g.t.assign(m, 0);
        g.t[x] = 1;
        return g;
    };

    // coset representatives r_j = a_0^j
    std::vector<MElem> rep(m, MElem{0, std::vector<long long>(m, 0)});
    for (int j = 1; j < m; j++) rep[j] = mul(rep[j - 1], gen(0));

    // enumerate sublattices of Gamma (in B-coordinates) of index `fiber` via
    // upper-triangular normal forms
    std::vector<std::vector<std::vector<long long>>> lattices;
    std::vector<std::pair<int, int>> above;
    for (int i = 0; i < m; i++)
        for (int j = i + 1; j < m; j++) above.emplace_back(i, j);
    std::vector<int> diag(m, 1);
    std::vector<std::vector<long long>> H(m, std::vector<long long>(m, 0));
    std::function<void(size_t)> fill = [&](size_t t) {
        if (t == above.size()) {
            lattices.push_back(H);
            return;
        }
        auto [i, j] = above[t];
        for (int v = 0; v < diag[j]; v++) {
            H[i][j] = v;
            fill(t + 1);
        }
        H[i][j] = 0;
    };
    std::function<void(int, int)> pick_diag = [&](int pos, int rem) {
        if (pos == m) {
            if (rem != 1) return;
            for (int i = 0; i < m; i++) H[i][i] = diag[i];
            fill(0);
            return;
        }
        for (int d = 1; d <= rem; d++)
            if (rem % d == 0) {
                diag[pos] = d;
                pick_diag(pos + 1, rem / d);
            }
        diag[pos] = 1;
    };
    pick_diag(0, fiber);

    std::set<CanonicalKey> seen;
    std::vector<SolutionTable> out;
    for (const auto& H : lattices) {
        // fiber group Z = Gamma / L with coset coordinates from the normal form
        auto snf = smith_normal_form(H, m);
        std::vector<int> zfac;
        for (long long d : snf.diag)
            if (d > 1) zfac.push_back((int)d);
        AbelianGroup Z(zfac);
        if (Z.order() != fiber)
            throw InternalInvariantViolation("sublattice index mismatch");

        auto coset = [&](const std::vector<long long>& c) {
            std::vector<int> tup;
            for (int j = 0; j < m; j++) {
                long long acc = 0;
                for (int i = 0; i < m; i++) acc += c[i] * snf.v[i][j];
                long long d = snf.diag[j];
                if (d > 1) {
                    long long v = acc % d;
                    if (v < 0) v += d;
                    tup.push_back((int)v);
                }
            }
            return Z.index(tup);
        };

        // total set: (w, z) -> w * fiber + z
        BundleSpec spec;
        spec.base = base;
        spec.total_size = m * fiber;
        spec.projection.resize(spec.total_size);
        for (int w = 0; w < m; w++)
            for (int z = 0; z < fiber; z++) spec.projection[w * fiber + z] = w;
        spec.gen_action.resize(m);
        bool faithful = true;
        for (int x = 0; x < m; x++) {
            std::vector<int> img(spec.total_size);
            for (int w = 0; w < m; w++) {
                int j = ((-w) % m + m) % m;
                int jp = (j + 1) % m;
                MElem gamma = mul(inv(rep[jp]), mul(gen(x), rep[j]));
                if (gamma.k != 0)
                    throw InternalInvariantViolation("coset transport left the stabilizer");
                int shift = coset(coords(gamma.t));
                int wp = (w - 1 + m) % m;
                for (int z = 0; z < fiber; z++)
                    img[w * fiber + z] = wp * fiber + Z.add(z, shift);
            }
            spec.gen_action[x] = Permutation(std::move(img));
        }
        for (int x = 0; x < m && faithful; x++)
            for (int y = x + 1; y < m; y++)
                if (spec.gen_action[x] == spec.gen_action[y]) {
                    faithful = false;
                    break;
                }
        if (!faithful) continue;
        SolutionTable t = blow_up(spec);
        if (seen.insert(canonical_form(t)).second) out.push_back(std::move(t));
    }
    return out;
}

}  // namespace ybset
