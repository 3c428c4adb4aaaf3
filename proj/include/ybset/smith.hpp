#pragma once

#include <vector>

namespace ybset {

// U M V = diag(d) with d a divisor chain; only the column transform V and
// its inverse are tracked (enough to compute quotient coordinates).
struct SmithResult {
    std::vector<long long> diag;                // size = columns of M
    std::vector<std::vector<long long>> v;      // n x n unimodular
    std::vector<std::vector<long long>> v_inv;  // v^{-1}
};

SmithResult smith_normal_form(std::vector<std::vector<long long>> m, int cols);

// Incremental row-echelon accumulator for an integer lattice given by
// generating vectors; keeps at most `cols` rows.
struct LatticeBasis {
    int cols = 0;
    std::vector<std::vector<long long>> rows;  // echelon, pivot per row

    explicit LatticeBasis(int cols_) : cols(cols_) {}
    // Returns true if the lattice grew.
    bool add(std::vector<long long> v);
    int rank() const { return (int)rows.size(); }
};

long long det_bareiss(std::vector<std::vector<long long>> m);

// adj(B) with B * adj(B) = det(B) * I.
std::vector<std::vector<long long>> adjugate(const std::vector<std::vector<long long>>& m);

}  // namespace ybset
