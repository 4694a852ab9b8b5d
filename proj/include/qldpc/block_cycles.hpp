#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qldpc/apm.hpp"

namespace qldpc {

enum class CycleClass { Open, Closed, TotallyClosed };

// A block cycle in a 2-row permutation array, identified by the sequence of
// column-block indices it visits. The traversal starts in the upper row and
// the first move is horizontal, so for row weight 2 the column sequence
// determines the whole path. The column count is even and adjacent entries
// (cyclically) differ; the cycle length is twice the column count.
struct BlockCycle {
    std::vector<int> columns;
    int start_row = 0;
    int length() const { return 2 * static_cast<int>(columns.size()); }
};

// Grid of permutation blocks; empty cells model partially built arrays.
struct PermGrid {
    int rows = 0;
    int cols = 0;
    std::vector<std::optional<AffinePerm>> cells;

    PermGrid() = default;
    PermGrid(int r, int c) : rows(r), cols(c), cells(static_cast<size_t>(r) * c) {}
    const std::optional<AffinePerm>& at(int r, int c) const {
        return cells[static_cast<size_t>(r) * cols + c];
    }
    std::optional<AffinePerm>& at(int r, int c) {
        return cells[static_cast<size_t>(r) * cols + c];
    }
};

// TotallyClosed: identity. Closed: some fixed point, i.e. (1-a)x = b (mod P)
// is solvable. Open otherwise.
CycleClass classify(const AffinePerm& composite);

// Fixed points of an affine map, ascending.
std::vector<std::int64_t> fixed_points(const AffinePerm& f);

// Alternating forward/inverse composition along the expanded path of the
// cycle: upper(c0), upper(c1)^-1, lower(c1), lower(c2)^-1, ... lower(c0)^-1.
// InvalidCycle if the sequence is malformed or a needed block is missing.
AffinePerm composite_function(const PermGrid& grid, const BlockCycle& cycle);

// Canonical representative: lexicographically minimal among all rotations of
// the sequence and of its reversal.
std::vector<int> canonical_columns(const std::vector<int>& columns);

// All canonical column sequences of the given column count over [L]
// (cyclically adjacent-distinct). Cached per (L, m).
const std::vector<std::vector<int>>& canonical_column_sequences(int L, int m);

// Every block cycle of length <= max_len (multiple of 4) up to canonical
// equivalence, with its class. Deterministic order: by length, then
// lexicographically. Cycles touching missing blocks are skipped.
std::vector<std::pair<BlockCycle, CycleClass>> enumerate_block_cycles(const PermGrid& grid,
                                                                      int max_len);

// Length of the shortest closed block cycle over both grids, scanning
// lengths 4, 8, ..., scan_limit; nullopt if none within the limit.
std::optional<int> girth(const PermGrid& x, const PermGrid& z, int scan_limit = 16);

}  // namespace qldpc
