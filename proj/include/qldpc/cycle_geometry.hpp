#pragma once

#include <cstdint>
#include <vector>

#include "qldpc/arrays.hpp"

namespace qldpc {

enum class MatrixSide { Gamma, Delta };

// One entry of a Tanner cycle: row block, row within the block and global
// column of the nonzero position.
struct CyclePos {
    int block;
    std::int64_t row;
    std::int64_t col;
    std::int64_t global_row(std::int64_t P) const { return block * P + row; }
};

// The length-2L Tanner cycle of the unavoidable class u(k) anchored at row r:
// entries in traversal order, four per round, winding clockwise through the
// four quadrants. For side Gamma the cycle lives in the X-support matrix and
// its columns are the support of row r of the (cyclically extended) row block
// k of the Z array; for side Delta the roles are swapped.
std::vector<CyclePos> unavoidable_cycle_positions(const GeneratorPair& gen, MatrixSide side,
                                                  int k, std::int64_t r);

}  // namespace qldpc
