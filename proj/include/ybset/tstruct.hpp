#pragma once

#include <utility>
#include <vector>

#include "ybset/constructions.hpp"
#include "ybset/permutation.hpp"
#include "ybset/structure.hpp"

namespace ybset {

// A bijection T of a finite abelian group with T(kx) = k T^k(x) for all k.
struct TStructure {
    AbelianGroup group;
    Permutation T;
};

bool is_t_structure(const AbelianGroup& a, const Permutation& t);

// T(x) = rho(pi^{-1}(x))(x); always a T-structure on the datum's coefficient
// group.  The composition identity behind it is verified on all pairs.
TStructure t_from_datum(const CocycleDatum& d);

// The unique datum on the cyclic group Z/n with the given T-structure:
// rho(y) z = z T^y(1) and y * z = z + y T^{-T(z)}(1), pi = id.
CocycleDatum datum_from_t_cyclic(int n, const Permutation& t);

// All T-structures on Z/n, identity always included.
std::vector<Permutation> enumerate_t_structures(int n);

// The datum inducing T^k (same coefficient group).
CocycleDatum t_power_datum(const CocycleDatum& d, long long k);

// T(x) = x (1+cx)^{-1} on Z/n and the associated solution
// S(x,y) = (y (1+cx+cxcy)^{-1}, x (1+cy)); requires every 1+cx invertible.
std::pair<Permutation, SolutionTable> ring_solution(int n, int c);

}  // namespace ybset
