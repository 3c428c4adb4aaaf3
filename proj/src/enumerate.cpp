#include "ybset/enumerate.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <iostream>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

namespace ybset {

namespace {

constexpr int kMax = 10;
using Row = std::array<std::uint8_t, kMax>;

// compare psi . f . psi^{-1} against f without materializing it:
// -1 if the conjugate is lex-smaller, +1 if larger, 0 if equal
int conj_cmp(const Row& psi, const Row& f, int n) {
    Row out;
    for (int x = 0; x < n; x++) out[psi[x]] = psi[f[x]];
    for (int i = 0; i < n; i++) {
        if (out[i] != f[i]) return out[i] < f[i] ? -1 : 1;
    }
    return 0;
}

struct PermUniverse {
    int n = 0;
    int count = 0;
    std::vector<Row> perms;     // lex order
    std::vector<Row> inverses;  // aligned with perms

    explicit PermUniverse(int n_) : n(n_) {
        count = 1;
        for (int i = 1; i <= n; i++) count *= i;
        perms.reserve(count);
        inverses.reserve(count);
        std::array<int, kMax> cur{};
        std::iota(cur.begin(), cur.begin() + n, 0);
        do {
            Row r{}, inv{};
            for (int i = 0; i < n; i++) r[i] = (std::uint8_t)cur[i];
            for (int i = 0; i < n; i++) inv[r[i]] = (std::uint8_t)i;
            perms.push_back(r);
            inverses.push_back(inv);
        } while (std::next_permutation(cur.begin(), cur.begin() + n));
    }
};

struct NodeState {
    std::array<Row, kMax> rows{};
    std::array<Row, kMax> inv{};
    std::uint16_t assigned = 0;
    std::uint16_t tused = 0;

    bool has(int w) const { return (assigned >> w) & 1; }
};

bool assign_row(NodeState& st, int w, const Row& p, int n) {
    if (st.has(w)) {
        for (int i = 0; i < n; i++)
            if (st.rows[w][i] != p[i]) return false;
        return true;
    }
    Row inv{};
    for (int i = 0; i < n; i++) inv[p[i]] = (std::uint8_t)i;
    int tau = inv[w];
    if ((st.tused >> tau) & 1) return false;
    st.rows[w] = p;
    st.inv[w] = inv;
    st.assigned |= (std::uint16_t)(1u << w);
    st.tused |= (std::uint16_t)(1u << tau);
    return true;
}

// Fixpoint over the right-action law f_y f_x = f_z f_t with z = f_y(x),
// t = f_z^{-1}(y).  Checks determined instances, forces rows implied by
// three known ones.
bool propagate(NodeState& st, int n) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (int y = 0; y < n; y++) {
            if (!st.has(y)) continue;
            for (int x = 0; x < n; x++) {
                int z = st.rows[y][x];
                if (!st.has(z)) continue;
                int t = st.inv[z][y];
                bool hx = st.has(x), ht = st.has(t);
                if (hx && ht) {
                    for (int w = 0; w < n; w++)
                        if (st.rows[y][st.rows[x][w]] != st.rows[z][st.rows[t][w]])
                            return false;
                } else if (hx) {
                    Row ft{};
                    for (int w = 0; w < n; w++)
                        ft[w] = st.inv[z][st.rows[y][st.rows[x][w]]];
                    if (!assign_row(st, t, ft, n)) return false;
                    changed = true;
                } else if (ht) {
                    Row fx{};
                    for (int w = 0; w < n; w++)
                        fx[w] = st.inv[y][st.rows[z][st.rows[t][w]]];
                    if (!assign_row(st, x, fx, n)) return false;
                    changed = true;
                } else if (t == x) {
                    for (int w = 0; w < n; w++)
                        if (st.rows[y][w] != st.rows[z][w]) return false;
                }
            }
        }
    }
    return true;
}

// Cheap law checks for a candidate row k before the full fixpoint: instances
// f_k f_x = f_z f_t with x assigned, z = c(x) assigned, t assigned or t = k.
bool quick_reject(const NodeState& st, int k, const Row& c, const Row& cinv, int n) {
    for (int x = 0; x < n; x++) {
        if (!st.has(x)) continue;
        int z = c[x];
        bool hz = st.has(z);
        int t;
        if (hz)
            t = st.inv[z][k];
        else if (z == k)
            t = cinv[k];
        else
            continue;
        const Row& fz = hz ? st.rows[z] : c;
        if (st.has(t)) {
            for (int w = 0; w < n; w++)
                if (c[st.rows[x][w]] != fz[st.rows[t][w]]) return true;
        } else if (t == k) {
            for (int w = 0; w < n; w++)
                if (c[st.rows[x][w]] != fz[c[w]]) return true;
        }
    }
    return false;
}

struct Task {
    NodeState st;
    int depth = 0;
    std::vector<Row> aut;  // pointwise prefix stabilizer automorphisms
};

struct Worker {
    const PermUniverse* U = nullptr;
    std::vector<std::vector<std::uint8_t>> results;  // flat canonical f-tables
    std::atomic<bool>* stop = nullptr;
    long long nodes = 0;

    bool stopped() const { return stop && stop->load(std::memory_order_relaxed); }
};

void finalize(Worker& w, const NodeState& st, int n) {
    std::uint8_t flat[kMax * kMax];
    for (int y = 0; y < n; y++)
        for (int x = 0; x < n; x++) flat[y * n + x] = st.rows[y][x];
    if (!detail::rows_are_canonical(n, flat)) return;
    w.results.emplace_back(flat, flat + n * n);
}

void dfs(Worker& w, const NodeState& st, int k, const std::vector<Row>& aut, int n,
         std::vector<Task>* collect, int collect_depth) {
    if (w.stopped()) return;
    if (collect && k == collect_depth) {
        collect->push_back({st, k, aut});
        return;
    }
    if (k == n) {
        finalize(w, st, n);
        return;
    }
    w.nodes++;

    if (st.has(k)) {
        // forced row: keep only orbit-minimal prefixes
        std::vector<Row> child;
        child.reserve(aut.size());
        for (const Row& psi : aut) {
            if (psi[k] != k) continue;
            int cmp = conj_cmp(psi, st.rows[k], n);
            if (cmp < 0) return;
            if (cmp == 0) child.push_back(psi);
        }
        dfs(w, st, k + 1, child, n, collect, collect_depth);
        return;
    }

    std::vector<Row> cand_aut;
    cand_aut.reserve(aut.size());
    for (const Row& psi : aut)
        if (psi[k] == k) cand_aut.push_back(psi);

    std::vector<Row> child_aut;
    for (int pid = 0; pid < w.U->count; pid++) {
        const Row& c = w.U->perms[pid];
        const Row& cinv = w.U->inverses[pid];
        int tau = cinv[k];
        if ((st.tused >> tau) & 1) continue;
        if (quick_reject(st, k, c, cinv, n)) continue;
        bool minimal = true;
        for (const Row& psi : cand_aut)
            if (conj_cmp(psi, c, n) < 0) {
                minimal = false;
                break;
            }
        if (!minimal) continue;
        NodeState child = st;
        if (!assign_row(child, k, c, n)) continue;
        if (!propagate(child, n)) continue;
        child_aut.clear();
        for (const Row& psi : cand_aut)
            if (conj_cmp(psi, c, n) == 0) child_aut.push_back(psi);
        dfs(w, child, k + 1, child_aut, n, collect, collect_depth);
        if (w.stopped()) return;
    }
}

SolutionTable table_from_flat(int n, const std::vector<std::uint8_t>& flat) {
    FMap fm;
    fm.n = n;
    for (int y = 0; y < n; y++) {
        std::vector<int> img(n);
        for (int x = 0; x < n; x++) img[x] = flat[(size_t)y * n + x];
        fm.f.emplace_back(std::move(img));
    }
    return from_f_table(fm);
}

std::string flat_to_string(int n, const std::vector<std::uint8_t>& flat) {
    std::ostringstream os;
    os << n;
    for (auto v : flat) os << ' ' << (int)v;
    return os.str();
}

std::vector<std::uint8_t> flat_from_string(const std::string& line, int n) {
    std::istringstream is(line);
    int m = 0;
    is >> m;
    if (m != n) throw StructuralError("checkpoint size mismatch");
    std::vector<std::uint8_t> flat((size_t)n * n);
    for (auto& v : flat) {
        int t;
        if (!(is >> t)) throw StructuralError("truncated checkpoint row");
        v = (std::uint8_t)t;
    }
    return flat;
}

}  // namespace

long enumerate_solutions(int n, const std::function<void(const SolutionTable&)>& sink,
                         const EnumerateOptions& opts) {
    if (n < 1) throw DomainError("n must be >= 1");
    if (n > kMax) throw ResourceError("enumeration supports n <= 10");
    if (n > 8)
        std::cerr << "ybset: warning: enumeration beyond n = 8 may take very long\n";

    PermUniverse U(n);

    // root automorphisms: all permutations fixing 0
    std::vector<Row> aut0;
    aut0.reserve(U.count / std::max(n, 1));
    for (int pid = 0; pid < U.count; pid++)
        if (U.perms[pid][0] == 0) aut0.push_back(U.perms[pid]);

    const int split_depth = (n >= 6) ? 2 : 1;

    // expand the top of the tree serially into tasks
    std::vector<Task> tasks;
    Worker seed;
    seed.U = &U;
    seed.stop = opts.stop;
    NodeState root;
    dfs(seed, root, 0, aut0, n, &tasks, split_depth);
    if (seed.stop && seed.stop->load()) throw InterruptedError("enumeration interrupted");
    if (std::getenv("YBSET_DEBUG")) {
        size_t aut_rows = 0;
        for (auto& t : tasks) aut_rows += t.aut.size();
        std::cerr << "debug: tasks=" << tasks.size() << " aut_rows=" << aut_rows << "\n";
    }

    // checkpoint restore
    std::vector<char> done(tasks.size(), 0);
    std::vector<std::vector<std::uint8_t>> restored;
    if (!opts.checkpoint.empty()) {
        std::ifstream in(opts.checkpoint);
        std::string line;
        while (in && std::getline(in, line)) {
            if (line.empty()) continue;
            std::istringstream is(line);
            std::string tag;
            is >> tag;
            if (tag == "task") {
                size_t id;
                is >> id;
                if (id < done.size()) done[id] = 1;
            } else if (tag == "sol") {
                std::string rest;
                std::getline(is, rest);
                restored.push_back(flat_from_string(rest, n));
            }
        }
    }

    int jobs = opts.jobs > 0 ? opts.jobs
                             : (int)std::max(1u, std::thread::hardware_concurrency());
    jobs = std::min(jobs, (int)std::max<size_t>(tasks.size(), 1));

    std::mutex ckpt_mutex;
    std::ofstream ckpt;
    if (!opts.checkpoint.empty())
        ckpt.open(opts.checkpoint, std::ios::app);

    std::atomic<size_t> next{0};
    std::atomic<long long> nodes{seed.nodes};
    std::vector<std::vector<std::vector<std::uint8_t>>> found(tasks.size());
    auto run_worker = [&]() {
        Worker w;
        w.U = &U;
        w.stop = opts.stop;
        for (;;) {
            size_t id = next.fetch_add(1);
            if (id >= tasks.size()) break;
            if (done[id]) continue;
            if (w.stopped()) break;
            w.results.clear();
            dfs(w, tasks[id].st, tasks[id].depth, tasks[id].aut, n, nullptr, -1);
            if (w.stopped()) break;
            found[id] = w.results;
            if (ckpt.is_open()) {
                std::lock_guard<std::mutex> lock(ckpt_mutex);
                for (auto& flat : w.results) ckpt << "sol " << flat_to_string(n, flat) << "\n";
                ckpt << "task " << id << "\n";
                ckpt.flush();
            }
        }
        nodes += w.nodes;
    };

    if (jobs <= 1) {
        run_worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < jobs; i++) pool.emplace_back(run_worker);
        for (auto& t : pool) t.join();
    }
    if (opts.stop && opts.stop->load())
        throw InterruptedError("enumeration interrupted; checkpoint holds completed work");
    if (std::getenv("YBSET_DEBUG"))
        std::cerr << "debug: nodes=" << nodes.load() << "\n";

    // deterministic merge: canonical tables sorted by flattened key
    std::vector<std::vector<std::uint8_t>> all = std::move(restored);
    for (auto& per_task : found)
        for (auto& flat : per_task) all.push_back(std::move(flat));
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());

    for (const auto& flat : all) sink(table_from_flat(n, flat));
    return (long)all.size();
}

}  // namespace ybset
