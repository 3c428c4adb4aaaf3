#include <doctest.h>

#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <set>
#include <thread>

#include "oracle_naive.hpp"
#include "ybset/canonical.hpp"
#include "ybset/enumerate.hpp"

using namespace ybset;

TEST_CASE("class counts for small sizes") {
    auto count = [](int n) {
        return enumerate_solutions(n, [](const SolutionTable&) {});
    };
    CHECK(count(1) == 1);
    CHECK(count(2) == 2);
    CHECK(count(3) == 5);
    CHECK(count(4) == 23);
    CHECK(count(5) == 88);
}

TEST_CASE("every emitted solution validates and is its own canonical form") {
    for (int n = 1; n <= 5; n++)
        enumerate_solutions(n, [](const SolutionTable& s) {
            CHECK(validate(s).ok());
            CHECK(is_canonical(s));
        });
}

TEST_CASE("raw-enumeration oracle matches the orderly generator for n <= 3") {
    for (int n = 1; n <= 3; n++) {
        auto want = oracle::classes_by_raw_enumeration(n);
        std::set<std::vector<int>> got;
        enumerate_solutions(n, [&](const SolutionTable& s) { got.insert(oracle::orbit_min(s)); });
        CHECK(got == want);
    }
}

TEST_CASE("raw-enumeration oracle matches for n = 4 as well") {
    auto want = oracle::classes_by_raw_enumeration(4);
    CHECK(want.size() == 23);
    std::set<std::vector<int>> got;
    enumerate_solutions(4, [&](const SolutionTable& s) { got.insert(oracle::orbit_min(s)); });
    CHECK(got == want);
}

TEST_CASE("exactly one indecomposable class of prime size, the cyclic one") {
    for (int p : {2, 3, 5, 7}) {
        std::vector<SolutionTable> indec;
        enumerate_solutions(p, [&](const SolutionTable& s) {
            if (orbits(s).size() == 1) indec.push_back(s);
        });
        REQUIRE(indec.size() == 1);
        CHECK(is_isomorphic(indec[0], cyclic_solution(p)).has_value());
    }
}

TEST_CASE("worker count does not change the result set") {
    for (int jobs : {1, 2, 3}) {
        EnumerateOptions opts;
        opts.jobs = jobs;
        std::set<CanonicalKey> keys;
        long c = enumerate_solutions(
            5, [&](const SolutionTable& s) { keys.insert(canonical_form(s)); }, opts);
        CHECK(c == 88);
        CHECK(keys.size() == 88);
    }
}

TEST_CASE("interrupted runs resume from the checkpoint") {
    std::string path = "ckpt_test.tmp";
    std::remove(path.c_str());
    {
        // run to completion with a checkpoint, then re-run: everything is
        // restored without recomputation and the result set is identical
        EnumerateOptions opts;
        opts.checkpoint = path;
        std::set<CanonicalKey> first;
        enumerate_solutions(4, [&](const SolutionTable& s) { first.insert(canonical_form(s)); },
                            opts);
        std::set<CanonicalKey> second;
        long c = enumerate_solutions(
            4, [&](const SolutionTable& s) { second.insert(canonical_form(s)); }, opts);
        CHECK(c == 23);
        CHECK(first == second);
    }
    std::remove(path.c_str());
}

TEST_CASE("a stop mid-run leaves a usable checkpoint") {
    std::string path = "ckpt_stop.tmp";
    std::remove(path.c_str());
    std::atomic<bool> stop{false};
    EnumerateOptions opts;
    opts.checkpoint = path;
    opts.jobs = 1;
    opts.stop = &stop;
    bool interrupted = false;
    std::thread killer([&] {
        std::this_thread::sleep_for(std::chrono::milliseconds(120));
        stop.store(true);
    });
    try {
        enumerate_solutions(7, [&](const SolutionTable&) {}, opts);
    } catch (const InterruptedError&) {
        interrupted = true;
    }
    killer.join();
    CHECK(interrupted);
    if (interrupted) {
        stop.store(false);
        std::set<CanonicalKey> resumed;
        long c = enumerate_solutions(
            7, [&](const SolutionTable& s) { resumed.insert(canonical_form(s)); }, opts);
        CHECK(c == 3456);
        CHECK(resumed.size() == 3456);
    }
    std::remove(path.c_str());
}

TEST_CASE("orbit structure") {
    CHECK(orbits(cyclic_solution(5)).size() == 1);
    auto o = orbits(trivial_solution(3));
    CHECK(o.size() == 3);
    // permutation solution with cycle type (2,1): orbits {0,1},{2}
    auto s = permutation_solution(Permutation({1, 0, 2}));
    auto o2 = orbits(s);
    REQUIRE(o2.size() == 2);
    CHECK(o2[0] == std::vector<int>{0, 1});
    CHECK(o2[1] == std::vector<int>{2});
}

TEST_CASE("decomposition lists follow the orbit partitions") {
    CHECK(decompositions(trivial_solution(3)).size() == 3);
    CHECK(decompositions(cyclic_solution(5)).empty());
    CHECK(decompositions(trivial_solution(2)).size() == 1);
    for (const auto& [X, Y] : decompositions(trivial_solution(3))) {
        CHECK(!X.empty());
        CHECK(!Y.empty());
        CHECK(X.size() + Y.size() == 3);
    }
}

TEST_CASE("invariant parts stay closed under S") {
    std::vector<SolutionTable> pool;
    enumerate_solutions(4, [&](const SolutionTable& s) { pool.push_back(s); });
    for (const auto& s : pool)
        for (const auto& [X, Y] : decompositions(s)) {
            for (int x : X)
                for (int y : X) {
                    CHECK(std::count(X.begin(), X.end(), s.S1(x, y)) == 1);
                    CHECK(std::count(X.begin(), X.end(), s.S2(x, y)) == 1);
                }
        }
}

TEST_CASE("twisted union flags") {
    CHECK(is_twisted_union(trivial_solution(2)));
    // a permutation solution with >= 2 orbits is a twisted union
    CHECK(is_twisted_union(permutation_solution(Permutation({1, 0, 2}))));
    CHECK_FALSE(is_twisted_union(cyclic_solution(4)));
    long tu = 0;
    enumerate_solutions(4, [&](const SolutionTable& s) {
        if (is_twisted_union(s)) tu++;
    });
    CHECK(tu == 16);
}

TEST_CASE("every twisted union is a generalized twisted union") {
    enumerate_solutions(5, [&](const SolutionTable& s) {
        if (is_twisted_union(s)) CHECK(is_generalized_twisted_union(s));
    });
}

TEST_CASE("retraction of a permutation solution is a point") {
    auto [r, proj] = retraction(permutation_solution(Permutation({1, 2, 3, 0})));
    CHECK(r.n == 1);
    CHECK(proj == std::vector<int>{0, 0, 0, 0});
}

TEST_CASE("retraction is a morphism of solutions") {
    std::vector<SolutionTable> pool;
    enumerate_solutions(4, [&](const SolutionTable& s) { pool.push_back(s); });
    for (const auto& s : pool) {
        auto [r, proj] = retraction(s);
        for (int x = 0; x < s.n; x++)
            for (int y = 0; y < s.n; y++) {
                CHECK(proj[s.S1(x, y)] == r.S1(proj[x], proj[y]));
                CHECK(proj[s.S2(x, y)] == r.S2(proj[x], proj[y]));
            }
    }
}

TEST_CASE("retraction chains stabilize within n steps") {
    std::vector<SolutionTable> pool;
    enumerate_solutions(5, [&](const SolutionTable& s) { pool.push_back(s); });
    for (const auto& s : pool) {
        SolutionTable cur = s;
        int steps = 0;
        while (true) {
            auto [next, proj] = retraction(cur);
            if (next.n == cur.n) break;
            cur = std::move(next);
            steps++;
        }
        CHECK(steps <= s.n);
    }
}

TEST_CASE("multipermutation levels") {
    CHECK(multipermutation_level(trivial_solution(1)) == 0);
    CHECK(multipermutation_level(cyclic_solution(4)) == 1);
    CHECK(multipermutation_level(trivial_solution(4)) == 1);
}

TEST_CASE("classification record consistency on all classes of size 4 and 5") {
    long idir4 = 0, affine4 = 0;
    for (int n : {4, 5}) {
        enumerate_solutions(n, [&](const SolutionTable& s) {
            auto rec = classify(s);
            CHECK(rec.indecomposable == !rec.decomposable);
            if (rec.twisted_union) CHECK(rec.generalized_twisted_union);
            if (rec.generalized_twisted_union) CHECK(rec.decomposable);
            if (rec.irretractable) CHECK(!rec.multipermutation_level.has_value());
            if (n == 4 && rec.indecomposable && rec.irretractable) {
                idir4++;
                if (rec.affine) affine4++;
                CHECK_FALSE(rec.multipermutation_level.has_value());
                // irretractable means the retraction is the whole solution
                auto [r, proj] = retraction(s);
                CHECK(r.n == s.n);
                CHECK(is_isomorphic(r, s).has_value());
            }
        });
    }
    CHECK(idir4 == 2);
    CHECK(affine4 == 2);
}

TEST_CASE("summary rows reproduce the reference table for n <= 5") {
    auto rows = summary_table(5);
    REQUIRE(rows.size() == 5);
    CHECK(rows[3] == TableRow{4, 23, 18, 16, 18, 5, 3, 2, 2});
    CHECK(rows[4] == TableRow{5, 88, 87, 84, 87, 1, 1, 0, 0});
    auto rep = verify_golden(5);
    CHECK(rep.pass);
}

TEST_CASE("verify_golden reports tampered cells") {
    auto rep = verify_golden(3, 0, [](int n_max, int jobs) {
        auto rows = summary_table(n_max, jobs);
        rows[2].tu += 1;  // tamper
        return rows;
    });
    CHECK_FALSE(rep.pass);
    REQUIRE(rep.mismatches.size() == 1);
    CHECK(rep.mismatches[0].n == 3);
    CHECK(rep.mismatches[0].column == "tu");
    CHECK(rep.mismatches[0].got == 5);
    CHECK(rep.mismatches[0].want == 4);
}
