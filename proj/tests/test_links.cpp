#include <doctest.h>

#include <random>

#include "ybset/enumerate.hpp"
#include "ybset/links.hpp"

using namespace ybset;

TEST_CASE("component counting") {
    LinkDiagram d;
    d.free_loops = 1;
    CHECK(component_count(d) == 1);

    // single kink: one strand through its own crossing
    std::mt19937 rng(1);
    MoveSite site;
    site.e1 = -1;
    auto k = apply_move(d, Move::R1a, site, MoveDir::Insert);
    CHECK(k.edges == 2);
    CHECK(k.crossings.size() == 1);
    CHECK(component_count(k) == 1);

    CHECK(component_count(two_component_nonplanar_example()) == 2);
}

TEST_CASE("crossing-less loops color freely") {
    LinkDiagram d;
    d.free_loops = 3;
    CHECK(count_colorings(d, trivial_solution(2)) == 8);
    CHECK(count_colorings(d, cyclic_solution(4)) == 64);
}

TEST_CASE("inconsistent diagrams are rejected") {
    LinkDiagram d;
    d.edges = 2;
    d.crossings.push_back({0, 1, 0, 0});  // edge 0 used twice as output
    CHECK_THROWS_AS(check_diagram(d), DiagramError);
}

TEST_CASE("kink insertion and removal round-trips bit-exactly") {
    LinkDiagram d;
    d.free_loops = 1;
    MoveSite loop_site;
    loop_site.e1 = -1;
    auto k = apply_move(d, Move::R1a, loop_site, MoveDir::Insert);
    MoveSite e0;
    e0.e1 = 0;
    for (Move m : {Move::R1a, Move::R1b}) {
        auto after = apply_move(k, m, e0, MoveDir::Insert);
        MoveSite last;
        last.c1 = (int)after.crossings.size() - 1;
        CHECK(apply_move(after, m, last, MoveDir::Remove) == k);
    }
}

TEST_CASE("R2 insertion and removal round-trips bit-exactly") {
    LinkDiagram d;
    d.free_loops = 2;
    MoveSite loop_site;
    loop_site.e1 = -1;
    auto a = apply_move(d, Move::R1a, loop_site, MoveDir::Insert);
    auto b = apply_move(a, Move::R1a, loop_site, MoveDir::Insert);
    MoveSite pair_site;
    pair_site.e1 = 0;
    pair_site.e2 = 2;
    for (Move m : {Move::R2a, Move::R2b, Move::R2c}) {
        auto after = apply_move(b, m, pair_site, MoveDir::Insert);
        MoveSite cs;
        cs.c1 = (int)after.crossings.size() - 2;
        cs.c2 = (int)after.crossings.size() - 1;
        CHECK(apply_move(after, m, cs, MoveDir::Remove) == b);
    }
}

TEST_CASE("R1 insertions preserve counts in both chiralities") {
    for (auto s : {trivial_solution(3), cyclic_solution(3)}) {
        LinkDiagram d;
        d.free_loops = 1;
        MoveSite site;
        site.e1 = -1;
        for (Move m : {Move::R1a, Move::R1b}) {
            auto k = apply_move(d, m, site, MoveDir::Insert);
            CHECK(count_colorings(k, s) == count_colorings(d, s));
        }
    }
}

TEST_CASE("random move sequences preserve coloring counts") {
    std::vector<SolutionTable> pool;
    for (int n = 2; n <= 4; n++)
        enumerate_solutions(n, [&](const SolutionTable& s) { pool.push_back(s); });
    std::mt19937 rng(42);
    for (int trial = 0; trial < 30; trial++) {
        int loops = 1 + (int)(rng() % 3);
        auto d = random_diagram(loops, 5, rng);
        const auto& s = pool[rng() % pool.size()];
        long long want = 1;
        for (int i = 0; i < loops; i++) want *= s.n;
        CHECK(component_count(d) == loops);
        CHECK(count_colorings(d, s) == want);
    }
}

TEST_CASE("single moves leave the count invariant on randomized sites") {
    std::vector<SolutionTable> pool;
    enumerate_solutions(3, [&](const SolutionTable& s) { pool.push_back(s); });
    std::mt19937 rng(7);
    for (int trial = 0; trial < 40; trial++) {
        auto d = random_diagram(2, 4, rng);
        auto d2 = random_diagram(0, 0, rng);
        // one more random insertion on d
        auto d3 = random_diagram(2, 5, rng);
        for (const auto& s : pool) {
            CHECK(count_colorings(d, s) == (long long)s.n * s.n);
            CHECK(count_colorings(d3, s) == (long long)s.n * s.n);
        }
        (void)d2;
    }
}

TEST_CASE("a degenerate table changes the count under some move") {
    // S(x,y) = (x,y): involutive but degenerate
    SolutionTable s;
    s.n = 2;
    s.s1 = {0, 0, 1, 1};
    s.s2 = {0, 1, 0, 1};
    CHECK_FALSE(validate(s).nondegenerate);
    LinkDiagram d;
    d.free_loops = 1;
    MoveSite site;
    site.e1 = -1;
    auto k = apply_move(d, Move::R1a, site, MoveDir::Insert);
    // free loop: 2 colorings; after the kink the constraint S(a,l) = (a,l)
    // holds for every pair, giving 4
    CHECK(count_colorings(d, s) == 2);
    CHECK(count_colorings(k, s) == 4);
}

TEST_CASE("the two-component example counts fixed points of R") {
    auto d = two_component_nonplanar_example();
    for (auto s : {trivial_solution(2), trivial_solution(3), cyclic_solution(2),
                   cyclic_solution(3), permutation_solution(Permutation({1, 0, 2}))}) {
        CHECK(count_colorings(d, s) == r_fixed_points(s));
    }
}

TEST_CASE("planarity obstruction on the example diagram") {
    auto d = two_component_nonplanar_example();
    auto rep0 = planarity_obstruction(d, trivial_solution(2));
    CHECK(rep0.colorings == 4);
    CHECK(rep0.expected == 4);
    CHECK_FALSE(rep0.obstructed);

    auto rep1 = planarity_obstruction(d, cyclic_solution(2));
    CHECK(rep1.colorings == 0);
    CHECK(rep1.expected == 4);
    CHECK(rep1.obstructed);
}

TEST_CASE("planar-realizable diagrams are never obstructed for valid solutions") {
    std::mt19937 rng(19);
    std::vector<SolutionTable> pool;
    enumerate_solutions(3, [&](const SolutionTable& s) { pool.push_back(s); });
    for (int trial = 0; trial < 10; trial++) {
        auto d = random_diagram(2, 5, rng);
        for (const auto& s : pool) CHECK_FALSE(planarity_obstruction(d, s).obstructed);
    }
}

namespace {

// close each of three boundary strands through a kink: strand in-edge `in`
// continues from out-edge `out` through crossing (out, loop, in, loop)
void close_strand(LinkDiagram& d, int out, int in, int loop) {
    d.crossings.push_back({out, loop, in, loop});
}

// a closed diagram containing the R3a forward pattern
// C1=(e1,e2,f1,f2) C2=(f2,e3,g2,g3) C3=(f1,g2,h1,h2)
LinkDiagram r3a_fixture() {
    LinkDiagram d;
    d.edges = 12;
    enum { e1, e2, e3, f1, f2, g2, g3, h1, h2, la, lb, lc };
    d.crossings.push_back({e1, e2, f1, f2});
    d.crossings.push_back({f2, e3, g2, g3});
    d.crossings.push_back({f1, g2, h1, h2});
    // strands: A: e1 -> f2 -> g3, B: e2 -> f1 -> h2, C: e3 -> g2 -> h1
    close_strand(d, g3, e1, la);
    close_strand(d, h2, e2, lb);
    close_strand(d, h1, e3, lc);
    check_diagram(d);
    return d;
}

// a closed diagram containing the R3b forward pattern
// X1=(b1,a0,a1,b2) X2=(a1,c0,c1,a2) X3=(c1,b0,b1,c2)
LinkDiagram r3b_fixture() {
    LinkDiagram d;
    d.edges = 12;
    enum { a0, a1, a2, b0, b1, b2, c0, c1, c2, la, lb, lc };
    d.crossings.push_back({b1, a0, a1, b2});
    d.crossings.push_back({a1, c0, c1, a2});
    d.crossings.push_back({c1, b0, b1, c2});
    // strands: A: a0 -> a1 -> a2, B: b0 -> b1 -> b2, C: c0 -> c1 -> c2
    close_strand(d, a2, a0, la);
    close_strand(d, b2, b0, lb);
    close_strand(d, c2, c0, lc);
    check_diagram(d);
    return d;
}

}  // namespace

TEST_CASE("R3 rewrites preserve counts on direct fixtures") {
    std::vector<SolutionTable> pool;
    for (int n = 2; n <= 3; n++)
        enumerate_solutions(n, [&](const SolutionTable& s) { pool.push_back(s); });

    MoveSite site;
    site.c1 = 0;
    site.c2 = 1;
    site.c3 = 2;

    auto da = r3a_fixture();
    auto ra = apply_move(da, Move::R3a, site, MoveDir::Insert);
    CHECK(component_count(ra) == component_count(da));
    for (const auto& s : pool) CHECK(count_colorings(ra, s) == count_colorings(da, s));
    CHECK(apply_move(ra, Move::R3a, site, MoveDir::Remove) == da);

    auto db = r3b_fixture();
    auto rb = apply_move(db, Move::R3b, site, MoveDir::Insert);
    CHECK(component_count(rb) == component_count(db));
    for (const auto& s : pool) CHECK(count_colorings(rb, s) == count_colorings(db, s));
    CHECK(apply_move(rb, Move::R3b, site, MoveDir::Remove) == db);
}

TEST_CASE("R3 rewrites found in random diagrams preserve counts") {
    std::mt19937 rng(3);
    bool exercised_a = false;
    for (int trial = 0; trial < 200; trial++) {
        auto d = random_diagram(2, 6, rng);
        int nc = (int)d.crossings.size();
        for (int i = 0; i < nc; i++)
            for (int j = 0; j < nc; j++)
                for (int k = 0; k < nc; k++) {
                    if (i == j || i == k || j == k) continue;
                    const Crossing &A = d.crossings[i], &B = d.crossings[j],
                                   &C = d.crossings[k];
                    MoveSite site;
                    site.c1 = i;
                    site.c2 = j;
                    site.c3 = k;
                    if (B.inL == A.outR && C.inL == A.outL && C.inR == B.outL) {
                        try {
                            auto r = apply_move(d, Move::R3a, site, MoveDir::Insert);
                            exercised_a = true;
                            for (auto s : {trivial_solution(2), cyclic_solution(2)})
                                CHECK(count_colorings(r, s) == count_colorings(d, s));
                            CHECK(apply_move(r, Move::R3a, site, MoveDir::Remove) == d);
                        } catch (const DiagramError&) {
                        }
                    }
                }
    }
    CHECK(exercised_a);
}
