#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "ybset/constructions.hpp"
#include "ybset/permutation.hpp"
#include "ybset/smith.hpp"
#include "ybset/solution.hpp"

namespace ybset {

// The finite quotient of the structure group acting on X, with the cocycle
// into Z^X, the lattice it cuts out, and the invariant factors of the
// quotient A = Z^X / L.
struct StructureData {
    int n = 0;
    std::vector<Permutation> elements;                // [0] = identity
    std::vector<int> generator_images;                // x -> index of f_x^{-1}
    std::vector<std::vector<long long>> cocycle;      // per element, in Z^n
    std::vector<std::vector<long long>> gamma_basis;  // rows spanning L
    std::vector<long long> invariant_factors;         // d1 | ... | dn
    std::vector<std::vector<long long>> quot_v;       // column transform of L
    std::vector<std::vector<long long>> quot_v_inv;
    AbelianGroup a_group;                             // factors > 1 only

    long long order() const { return (long long)elements.size(); }

    int elem_index(const Permutation& p) const;
    int mult(int i, int j) const;
    int inverse(int i) const;

    // Z^n -> A (element index of a_group)
    int theta(const std::vector<long long>& vec) const;
    // a section A -> Z^n
    std::vector<long long> lift(int a_idx) const;
    // the action of element g on A
    int act(int g, int a_idx) const;

    std::map<Permutation, int> index_;  // filled by compute_structure
};

StructureData compute_structure(const SolutionTable& s, std::uint64_t budget = 100000);

// Derived series of the finite quotient reaches the trivial group.
bool is_solvable(const StructureData& d);

// Distinct elements of Aut(X) x Z^X expressible as products of exactly k
// generator images f_x^{-1} t_x; equals C(k+n-1, k) for valid solutions.
long long monoid_count(const SolutionTable& s, int k, std::uint64_t budget = 2000000);

// Abstract packaging of the finite quotient: group table, a finite abelian
// coefficient group, the action, and the bijective cocycle.
struct CocycleDatum {
    int m = 0;                                 // group order
    std::vector<std::vector<int>> mult;        // m x m
    AbelianGroup A;                            // |A| == m
    std::vector<std::vector<int>> action;      // per element: permutation of A
    std::vector<int> pi;                       // element -> A
};

// Throws StructureError if any datum axiom fails.
void validate_datum(const CocycleDatum& d);

CocycleDatum datum_from_solution(const SolutionTable& s, std::uint64_t budget = 100000);

// A set-structure on a datum: X with a G-action and a compatible map to A.
struct SetStructure {
    int x_size = 0;
    std::vector<Permutation> action_on_x;  // per group element
    std::vector<int> phi;                  // X -> A element index
};

SetStructure tautological_set_structure(const StructureData& d);

struct DatumSolution {
    SolutionTable table;
    bool generating = true;
};

DatumSolution solution_from_datum(const CocycleDatum& d, const SetStructure& xs);

// A group action on a total set covering the standard action on the base.
struct BundleSpec {
    SolutionTable base;
    int total_size = 0;
    std::vector<int> projection;           // total -> base
    std::vector<Permutation> gen_action;   // per base point
};

SolutionTable blow_up(const BundleSpec& b);
BundleSpec extract_bundle(const SolutionTable& y);

// All faithful quotient bundles over the cyclic solution on Z/m with a
// transitive fiber of the given size, deduplicated up to isomorphism.
std::vector<SolutionTable> cyclic_blowups(int m, int fiber);

}  // namespace ybset
