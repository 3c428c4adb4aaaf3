#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ybset/permutation.hpp"

namespace ybset {

// A finite set {0..n-1} with a map S of its square, stored as two n x n
// tables: S(x,y) = (s1[x][y], s2[x][y]).  Components follow the convention
// S(x,y) = (g_x(y), f_y(x)), so f_y(x) = s2[x][y] and g_x(y) = s1[x][y].
struct SolutionTable {
    int n = 0;
    std::vector<int> s1, s2;  // row-major [x*n + y]

    int S1(int x, int y) const { return s1[x * n + y]; }
    int S2(int x, int y) const { return s2[x * n + y]; }
    std::pair<int, int> S(int x, int y) const { return {S1(x, y), S2(x, y)}; }

    int& at1(int x, int y) { return s1[x * n + y]; }
    int& at2(int x, int y) { return s2[x * n + y]; }

    bool operator==(const SolutionTable&) const = default;
    auto operator<=>(const SolutionTable&) const = default;
};

struct ValidationReport {
    bool bijective = false;
    bool involutive = false;
    bool braided = false;
    bool nondegenerate = false;
    bool ok() const { return bijective && involutive && braided && nondegenerate; }
};

// A family of n permutations f_y generating a solution via
// S(x,y) = (g_x(y), f_y(x)), g_x(y) = f_{f_y(x)}^{-1}(y).
struct FMap {
    int n = 0;
    std::vector<Permutation> f;
};

struct DerivedMaps {
    std::vector<Permutation> f, g;
    Permutation T;
};

// Exhaustive check of the four defining conditions.
// Throws StructuralError on malformed tables; failed conditions are flags.
ValidationReport validate(const SolutionTable& s);

// Throws NondegeneracyError if T is not bijective, BraidError (with witness
// pair) if the right-action law fails.  The returned table always validates.
SolutionTable from_f_table(const FMap& fm);

DerivedMaps derived_maps(const SolutionTable& s);
FMap f_map_of(const SolutionTable& s);

// |{(x,y) : R(x,y) = (x,y)}| for R = sigma . S.
long long r_fixed_points(const SolutionTable& s);

// The full table of J_m : X^m -> X^m.  Tuples are indexed with x_1 as the
// lowest digit: idx = sum x_i * n^(i-1).  Throws ResourceError when n^m
// exceeds the budget.
std::vector<std::uint32_t> j_map(const SolutionTable& s, int m,
                                 std::uint64_t budget = 1000000);

// True iff |{(k,l) : S(l,j)=(k,i), S(k,i')=(l,j')}| = delta_{ii'} delta_{jj'}
// for all i,i',j,j'.
bool check_crossing_symmetry(const SolutionTable& s);

SolutionTable cartesian_product(const SolutionTable& a, const SolutionTable& b);

SolutionTable trivial_solution(int n);
SolutionTable permutation_solution(const Permutation& f);
// The cyclic solution S0(x,y) = (y-1, x+1) on Z/m.
SolutionTable cyclic_solution(int m);

}  // namespace ybset
