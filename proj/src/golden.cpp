#include "ybset/enumerate.hpp"

namespace ybset {

// Reference classification counts, one row per set size:
// n, classes, decomposable, twisted unions, generalized twisted unions,
// indecomposable, indecomposable multipermutation, indecomposable
// irretractable, indecomposable irretractable affine.
const std::vector<TableRow>& golden_table() {
    static const std::vector<TableRow> rows = {
        {1, 1, 0, 0, 0, 1, 1, 0, 0},
        {2, 2, 1, 1, 1, 1, 1, 0, 0},
        {3, 5, 4, 4, 4, 1, 1, 0, 0},
        {4, 23, 18, 16, 18, 5, 3, 2, 2},
        {5, 88, 87, 84, 87, 1, 1, 0, 0},
        {6, 595, 585, 425, 585, 10, 10, 0, 0},
        {7, 3456, 3455, 3270, 3455, 1, 1, 0, 0},
        {8, 34528, 34430, 23856, 34350, 98, 37, 47, 0},
    };
    return rows;
}

GoldenReport verify_golden(int n_max,
                           int jobs,
                           const std::function<std::vector<TableRow>(int, int)>& provider) {
    if (n_max < 1 || n_max > (int)golden_table().size())
        throw DomainError("golden table covers n = 1..8");
    GoldenReport rep;
    rep.rows = provider ? provider(n_max, jobs) : summary_table(n_max, jobs);
    auto cell = [&](int n, const char* name, long got, long want) {
        if (got != want) {
            rep.pass = false;
            rep.mismatches.push_back({n, name, got, want});
        }
    };
    for (int n = 1; n <= n_max; n++) {
        const TableRow& got = rep.rows.at(n - 1);
        const TableRow& want = golden_table()[n - 1];
        cell(n, "n", got.n, want.n);
        cell(n, "s", got.s, want.s);
        cell(n, "ds", got.ds, want.ds);
        cell(n, "tu", got.tu, want.tu);
        cell(n, "gtu", got.gtu, want.gtu);
        cell(n, "id", got.id, want.id);
        cell(n, "idmp", got.idmp, want.idmp);
        cell(n, "idir", got.idir, want.idir);
        cell(n, "idira", got.idira, want.idira);
    }
    return rep;
}

}  // namespace ybset
