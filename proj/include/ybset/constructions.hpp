#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "ybset/canonical.hpp"
#include "ybset/solution.hpp"

namespace ybset {

// A finite abelian group given by invariant factors d1 | d2 | ... | dr.
// Elements are r-tuples with component i in Z/d_i, indexed in mixed radix
// with the first factor as the lowest digit.
struct AbelianGroup {
    std::vector<int> factors;

    AbelianGroup() = default;
    explicit AbelianGroup(std::vector<int> f);

    int rank() const { return (int)factors.size(); }
    int order() const;

    std::vector<int> tuple(int idx) const;
    int index(const std::vector<int>& t) const;

    int add(int a, int b) const;
    int neg(int a) const;
    int sub(int a, int b) const { return add(a, neg(b)); }
    int scal(long long k, int a) const;

    bool operator==(const AbelianGroup&) const = default;
};

// An endomorphism as an r x r integer matrix acting on tuples,
// (Ev)_i = sum_j E[i][j] v_j mod d_i.  Entry (i,j) must be a multiple of
// d_i / gcd(d_i, d_j) for the map to be well defined.
struct Endomorphism {
    AbelianGroup group;
    std::vector<int> mat;  // row-major r x r, entry (i,j) reduced mod d_i

    int apply(int elemIdx) const;
    bool operator==(const Endomorphism&) const = default;
};

// The full endomorphism ring, enumerated once per group.
struct EndRing {
    AbelianGroup group;
    std::vector<Endomorphism> elems;

    explicit EndRing(const AbelianGroup& g, std::uint64_t budget = 1 << 20);

    Endomorphism zero() const;
    Endomorphism identity() const;
    Endomorphism add(const Endomorphism& a, const Endomorphism& b) const;
    Endomorphism sub(const Endomorphism& a, const Endomorphism& b) const;
    Endomorphism mul(const Endomorphism& a, const Endomorphism& b) const;
    // Two-sided inverse by exhaustive search; empty result if none.
    std::optional<Endomorphism> inverse(const Endomorphism& a) const;
};

struct LinearPair {
    Endomorphism a, b, c, d;
};

// All pairs (a,b) with b, 1+a, and c = b^{-1}(1-a^2) invertible satisfying
// b a b^{-1} = a (1+a)^{-1}; includes the derived c and d = a (a-1)^{-1}.
std::vector<LinearPair> solve_linear_pairs(const AbelianGroup& g,
                                           std::uint64_t budget = 1 << 20);

// S(x,y) = (a x + b y + z, c x + d y + t) with t = -b^{-1}(1+a) z.
SolutionTable affine_solution(const AbelianGroup& g, const Endomorphism& a,
                              const Endomorphism& b, int z);

// Nilpotent Jordan block J_N and the unipotent binomial matrix B_N
// (1-based entries J[i][j] = [i+1 == j], B[i][j] = C(j, i)); they satisfy
// ab = ba + aba, which is verified before returning.
std::pair<std::vector<std::vector<long long>>, std::vector<std::vector<long long>>>
jordan_binomial(int N);

// Union with constant cross maps S(x,y) = (g(y), f(x)); f must preserve S_X
// and g must preserve S_Y.
SolutionTable twisted_union(const SolutionTable& x, const SolutionTable& y,
                            const Permutation& f, const Permutation& g);

// General union: the X x Y block is the given bijection X x Y -> Y x X as
// cross[x][y] = (y', x'); the opposite block is forced by involutivity.
// Throws UnionError carrying the first failed validation flag.
SolutionTable assemble_union(const SolutionTable& x, const SolutionTable& y,
                             const std::vector<std::vector<std::pair<int, int>>>& cross);

// One-sided extension S(x,y) = (y, f_y(x)); each f_y must preserve S_X and
// the family must respect the defining relations of the right factor.
SolutionTable right_extension(const SolutionTable& x, const SolutionTable& y,
                              const std::vector<Permutation>& fmap);

// Invariant-factor lists of all abelian groups of order n (n <= 8).
std::vector<AbelianGroup> abelian_groups_of_order(int n);

// Canonical keys of every affine solution on n points; cached per n.
const std::set<CanonicalKey>& affine_canonical_keys(int n);

}  // namespace ybset
