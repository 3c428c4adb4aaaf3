#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ybset/canonical.hpp"
#include "ybset/solution.hpp"

namespace ybset {

struct EnumerateOptions {
    int jobs = 0;                        // 0 = hardware concurrency
    std::string checkpoint;              // resumable checkpoint file, optional
    std::atomic<bool>* stop = nullptr;   // cooperative interruption
};

// Search was interrupted via EnumerateOptions::stop; completed work is in the
// checkpoint file when one was configured.
struct InterruptedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Emits exactly one canonical table per isomorphism class of nondegenerate
// symmetric sets on n points, in canonical-key order, and returns the count.
long enumerate_solutions(int n, const std::function<void(const SolutionTable&)>& sink,
                         const EnumerateOptions& opts = {});

// --- classification -------------------------------------------------------

struct ClassificationRecord {
    bool decomposable = false;
    bool twisted_union = false;
    bool generalized_twisted_union = false;
    bool indecomposable = false;
    std::optional<int> multipermutation_level;
    bool irretractable = false;
    bool affine = false;
};

// Orbits of the group generated by the maps f_x; sorted by smallest member.
std::vector<std::vector<int>> orbits(const SolutionTable& s);

// All unordered 2-partitions of X into nonempty invariant subsets; each part
// is a union of orbits.
std::vector<std::pair<std::vector<int>, std::vector<int>>> decompositions(
    const SolutionTable& s);

bool is_twisted_union(const SolutionTable& s);
bool is_generalized_twisted_union(const SolutionTable& s);

// Quotient by x ~ y iff f_x = f_y, with the class projection.
std::pair<SolutionTable, std::vector<int>> retraction(const SolutionTable& s);

std::optional<int> multipermutation_level(const SolutionTable& s);

bool is_irretractable(const SolutionTable& s);

// True iff s is isomorphic to an affine solution over some abelian group of
// order n (n <= 8).
bool is_affine(const SolutionTable& s);

ClassificationRecord classify(const SolutionTable& s);

struct TableRow {
    int n = 0;
    long s = 0, ds = 0, tu = 0, gtu = 0, id = 0, idmp = 0, idir = 0, idira = 0;
    bool operator==(const TableRow&) const = default;
};

TableRow summary_row(int n, int jobs = 0);
std::vector<TableRow> summary_table(int n_max, int jobs = 0);

// --- golden data -----------------------------------------------------------

const std::vector<TableRow>& golden_table();

struct CellMismatch {
    int n = 0;
    std::string column;
    long got = 0, want = 0;
};

struct GoldenReport {
    bool pass = true;
    std::vector<CellMismatch> mismatches;
    std::vector<TableRow> rows;
};

GoldenReport verify_golden(
    int n_max, int jobs = 0,
    const std::function<std::vector<TableRow>(int, int)>& provider = {});

}  // namespace ybset
