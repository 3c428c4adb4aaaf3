#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

#include "ybset/solution.hpp"

namespace ybset {

// Total-order encoding of the distinguished representative of an isomorphism
// class: byte 0 is n, the rest is the lex-minimal flattened f-table over all
// relabelings.
struct CanonicalKey {
    std::vector<std::uint8_t> bytes;
    auto operator<=>(const CanonicalKey&) const = default;
};

CanonicalKey canonical_form(const SolutionTable& s);

// The relabeled table whose f-table equals the canonical key.
SolutionTable canonical_representative(const SolutionTable& s);

SolutionTable table_of_key(const CanonicalKey& key);

// True iff the table already equals its canonical representative.
bool is_canonical(const SolutionTable& s);

// Witness phi with (phi x phi) . S_a = S_b . (phi x phi), if any.
std::optional<Permutation> is_isomorphic(const SolutionTable& a,
                                         const SolutionTable& b);

namespace detail {
// f-rows as images, rows[y][x] = f_y(x).  Exposed for the enumerator.
bool rows_are_canonical(int n, const std::uint8_t* rows /* n*n */);
void rows_canonical_min(int n, const std::uint8_t* rows, std::uint8_t* out);
}  // namespace detail

}  // namespace ybset
