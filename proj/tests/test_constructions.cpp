#include <doctest.h>

#include <set>

#include "ybset/canonical.hpp"
#include "ybset/constructions.hpp"
#include "ybset/enumerate.hpp"
#include "ybset/structure.hpp"

using namespace ybset;

TEST_CASE("abelian group arithmetic in mixed radix") {
    AbelianGroup g({2, 4});
    CHECK(g.order() == 8);
    CHECK(g.index(g.tuple(5)) == 5);
    CHECK(g.add(g.index({1, 3}), g.index({1, 2})) == g.index({0, 1}));
    CHECK(g.neg(g.index({1, 1})) == g.index({1, 3}));
    CHECK(g.scal(3, g.index({1, 2})) == g.index({1, 2}));
}

TEST_CASE("endomorphism ring sizes") {
    CHECK(EndRing(AbelianGroup({4})).elems.size() == 4);
    CHECK(EndRing(AbelianGroup({2, 2})).elems.size() == 16);
    CHECK(EndRing(AbelianGroup({2, 4})).elems.size() == 32);
    CHECK(EndRing(AbelianGroup({2, 2, 2})).elems.size() == 512);
}

TEST_CASE("linear pairs over cyclic groups are square-zero times units") {
    for (int n = 2; n <= 8; n++) {
        AbelianGroup g({n});
        EndRing ring(g);
        auto pairs = solve_linear_pairs(g);
        // direct filter: a^2 = 0 and b a unit
        std::set<std::pair<int, int>> want;
        for (int a = 0; a < n; a++) {
            if (a * a % n != 0) continue;
            for (int b = 1; b < n; b++) {
                if (std::gcd(b, n) != 1) continue;
                want.insert({a, b});
            }
        }
        std::set<std::pair<int, int>> got;
        for (const auto& p : pairs) got.insert({p.a.mat[0], p.b.mat[0]});
        CHECK(got == want);
    }
}

TEST_CASE("Z/4 has exactly four linear pairs") {
    auto pairs = solve_linear_pairs(AbelianGroup({4}));
    CHECK(pairs.size() == 4);
    for (const auto& p : pairs) {
        CHECK((p.a.mat[0] == 0 || p.a.mat[0] == 2));
        CHECK((p.b.mat[0] == 1 || p.b.mat[0] == 3));
    }
}

TEST_CASE("the rank-2 example pair over (Z/2)^2 is accepted") {
    AbelianGroup g({2, 2});
    Endomorphism a{g, {1, 1, 1, 0}};
    Endomorphism b{g, {0, 1, 1, 0}};
    auto pairs = solve_linear_pairs(g);
    bool found = false;
    for (const auto& p : pairs)
        if (p.a == a && p.b == b) found = true;
    CHECK(found);

    auto s = affine_solution(g, a, b, 0);
    CHECK(validate(s).ok());
    auto rec = classify(s);
    CHECK(rec.indecomposable);
    CHECK(rec.irretractable);
    CHECK(rec.affine);
}

TEST_CASE("nilpotency over (Z/p)^N with N < p") {
    // all accepted pairs over (Z/3)^2 have a^2 = 0 ... a nilpotent of index <= N
    AbelianGroup g({3, 3});
    EndRing ring(g);
    for (const auto& p : solve_linear_pairs(g)) {
        Endomorphism power = p.a;
        for (int i = 1; i < g.rank(); i++) power = ring.mul(power, p.a);
        CHECK(power == ring.zero());
    }
}

TEST_CASE("affine solutions: special cases") {
    AbelianGroup g({5});
    EndRing ring(g);
    Endomorphism zero = ring.zero(), one = ring.identity();
    // a = 0, b = 1, z = 0 is the trivial solution
    CHECK(affine_solution(g, zero, one, 0) == trivial_solution(5));
    // a = 0, b a unit is the permutation solution by that unit
    Endomorphism b{g, {2}};
    auto s = affine_solution(g, zero, b, 0);
    std::vector<int> img(5);
    for (int i = 0; i < 5; i++) img[i] = 2 * i % 5;
    CHECK(s == permutation_solution(Permutation(img)));
}

TEST_CASE("affine solution with z = 0 is linear and z translates") {
    AbelianGroup g({4});
    Endomorphism a{g, {2}}, b{g, {1}};
    auto s0 = affine_solution(g, a, b, 0);
    CHECK(s0.S(0, 0) == std::pair{0, 0});
    auto s1 = affine_solution(g, a, b, 1);
    CHECK(validate(s1).ok());
    CHECK(s1.S1(0, 0) == 1);
}

TEST_CASE("affine solutions over cyclic groups are multipermutation") {
    AbelianGroup g({8});
    for (const auto& p : solve_linear_pairs(g)) {
        auto s = affine_solution(g, p.a, p.b, 0);
        CHECK(multipermutation_level(s).has_value());
    }
}

TEST_CASE("affine rejects pairs violating the conjugation relation") {
    AbelianGroup g({4});
    Endomorphism a{g, {1}}, b{g, {1}};  // a = 1: 1 + a = 2 not invertible
    CHECK_THROWS_AS(affine_solution(g, a, b, 0), StructureError);
}

TEST_CASE("Jordan and binomial matrices") {
    auto [J, B] = jordan_binomial(2);
    CHECK(J == std::vector<std::vector<long long>>{{0, 1}, {0, 0}});
    CHECK(B == std::vector<std::vector<long long>>{{1, 2}, {0, 1}});
    auto [J1, B1] = jordan_binomial(1);
    CHECK(J1[0][0] == 0);
    CHECK(B1[0][0] == 1);
    CHECK_NOTHROW(jordan_binomial(3));  // identity ab = ba + aba verified inside
    CHECK_NOTHROW(jordan_binomial(6));
}

TEST_CASE("twisted union with identities is the trivial union") {
    auto x = trivial_solution(2), y = cyclic_solution(2);
    auto z = twisted_union(x, y, Permutation::identity(2), Permutation::identity(2));
    CHECK(validate(z).ok());
    CHECK(is_twisted_union(z));
    // cross blocks swap components
    CHECK(z.S(0, 2) == std::pair{2, 0});
}

TEST_CASE("twisted union of two cyclic parts with the cycle is a permutation solution") {
    auto c = cyclic_solution(2);
    Permutation cyc({1, 0});
    auto z = twisted_union(c, c, cyc, cyc);
    CHECK(validate(z).ok());
    auto d = derived_maps(z);
    for (int y = 1; y < 4; y++) CHECK(d.f[y] == d.f[0]);
    auto rec = classify(z);
    CHECK(rec.multipermutation_level == 1);
}

TEST_CASE("twisted union rejects non-automorphisms") {
    auto x = cyclic_solution(3);
    // swap(0,1) does not preserve the cyclic structure... it does (conjugation)
    // use a 4-element part with a genuine non-automorphism instead
    SolutionTable bad;
    enumerate_solutions(4, [&](const SolutionTable& s) {
        if (bad.n == 0 && orbits(s).size() == 1 && is_irretractable(s)) bad = s;
    });
    REQUIRE(bad.n == 4);
    bool threw = false;
    for (int i = 0; i < 24; i++) {
        // find some permutation that is not an automorphism of `bad`
        std::vector<int> img{i % 4, (i / 4) % 4, 0, 0};
        // build a simple swap candidate instead
        break;
    }
    try {
        twisted_union(bad, x, Permutation({1, 0, 2, 3}), Permutation::identity(3));
    } catch (const StructureError&) {
        threw = true;
    }
    // if swap(0,1) happened to preserve it, try another transposition
    if (!threw) {
        try {
            twisted_union(bad, x, Permutation({0, 2, 1, 3}), Permutation::identity(3));
        } catch (const StructureError&) {
            threw = true;
        }
    }
    CHECK(threw);
}

TEST_CASE("assemble_union with the swap cross map is the trivial union") {
    auto x = trivial_solution(2), y = trivial_solution(2);
    std::vector<std::vector<std::pair<int, int>>> cross(2);
    for (int a = 0; a < 2; a++)
        for (int b = 0; b < 2; b++) cross[a].push_back({b, a});
    auto z = assemble_union(x, y, cross);
    CHECK(validate(z).ok());
    CHECK(z == trivial_solution(4));
}

TEST_CASE("assemble_union accepts lawful cross maps and reports bad ones") {
    // sweep all 24 cross bijections for two part choices; every outcome is
    // either a validated union or a UnionError carrying the failed flag
    auto sweep = [](const SolutionTable& x, const SolutionTable& y) {
        int valid = 0, braid_fail = 0, other_fail = 0;
        std::vector<int> target = {0, 1, 2, 3};  // encodes (y', x') = (t/2, t%2)
        std::sort(target.begin(), target.end());
        do {
            std::vector<std::vector<std::pair<int, int>>> cross(2);
            for (int a = 0; a < 2; a++)
                for (int b = 0; b < 2; b++) {
                    int t = target[a * 2 + b];
                    cross[a].push_back({t / 2, t % 2});
                }
            try {
                auto z = assemble_union(x, y, cross);
                CHECK(validate(z).ok());
                valid++;
            } catch (const UnionError& e) {
                if (e.flag == "braided") {
                    braid_fail++;
                    CHECK(e.witness[0] >= 0);
                } else {
                    other_fail++;
                }
            }
        } while (std::next_permutation(target.begin(), target.end()));
        return std::tuple{valid, braid_fail, other_fail};
    };

    auto [v1, b1, o1] = sweep(trivial_solution(2), trivial_solution(2));
    CHECK(v1 > 0);
    auto [v2, b2, o2] = sweep(trivial_solution(2), cyclic_solution(2));
    CHECK(v2 > 0);
    // some cross map must break the braid relation somewhere in the sweep
    CHECK(b1 + b2 > 0);
}

TEST_CASE("right extension with identity maps is the trivial union") {
    auto x = cyclic_solution(2), y = trivial_solution(2);
    auto z = right_extension(x, y, {Permutation::identity(2), Permutation::identity(2)});
    CHECK(validate(z).ok());
    // S(x, y) = (y, x) across the parts
    CHECK(z.S(0, 2) == std::pair{2, 0});
    CHECK(classify(z).decomposable);
}

TEST_CASE("right extension enforces automorphism and relation preconditions") {
    auto x = cyclic_solution(3), y = trivial_solution(2);
    // f that does not preserve the cyclic solution: a transposition is an
    // automorphism of c3 iff it conjugates the cycle to itself -- it does not
    // preserve f-rows... verify via the library error
    bool threw = false;
    try {
        right_extension(x, y, {Permutation({1, 0, 2}), Permutation::identity(3)});
    } catch (const StructuralError&) {
        threw = true;  // wrong sizes
    } catch (const StructureError&) {
        threw = true;
    }
    CHECK(threw);

    // relation check: y = trivial(2) forces fmap[0] and fmap[1] to commute
    auto x4 = trivial_solution(4);
    Permutation a({1, 0, 2, 3}), b({0, 2, 1, 3});  // non-commuting automorphisms
    CHECK_THROWS_AS(right_extension(x4, y, {a, b}), StructureError);
    // commuting automorphisms pass
    Permutation c({1, 0, 2, 3}), d({0, 1, 3, 2});
    auto z = right_extension(x4, y, {c, d});
    CHECK(validate(z).ok());
}

TEST_CASE("is_affine recognizes the affine classes at n = 4") {
    long affine_count = 0;
    enumerate_solutions(4, [&](const SolutionTable& s) {
        if (is_affine(s)) affine_count++;
    });
    // every affine class is reproduced by the generator: compare with the
    // cached key set
    CHECK(affine_count == (long)affine_canonical_keys(4).size());
    CHECK(is_affine(trivial_solution(4)));
    CHECK(is_affine(cyclic_solution(4)));
}

TEST_CASE("construction outputs always validate") {
    for (const auto& g : abelian_groups_of_order(4))
        for (const auto& p : solve_linear_pairs(g))
            for (int z = 0; z < 4; z++)
                CHECK(validate(affine_solution(g, p.a, p.b, z)).ok());
}
