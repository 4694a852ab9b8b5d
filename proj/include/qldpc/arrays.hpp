#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "qldpc/apm.hpp"
#include "qldpc/block_cycles.hpp"

namespace qldpc {

// The two generator sequences of length L/2 that determine both parity arrays.
struct GeneratorPair {
    std::int64_t P = 0;
    int L = 0;
    std::vector<AffinePerm> f;
    std::vector<AffinePerm> g;

    int half() const { return L / 2; }
};

// 2 x L grid of affine permutations, also viewable as a JP x LP binary matrix.
struct PermArray {
    int J = 2;
    int L = 0;
    std::int64_t P = 0;
    std::vector<AffinePerm> blocks;  // row-major J x L

    const AffinePerm& at(int j, int l) const { return blocks[static_cast<size_t>(j) * L + l]; }
    PermGrid grid() const;
};

// Commutativity band: fl must commute with g_{-l+j} for j in {0, +-1, ...,
// +-(J-1)}. For L = 6 this is every (f, g) pair.
bool check_requirement1(const GeneratorPair& gen);

// Some pair inside the sequence must fail to commute.
bool has_noncommuting_pair(std::span<const AffinePerm> seq);

// Row j of the X array is (f_{l-j})_l || (g_{l-j})_l; row j of the Z array is
// (g_{-(l-j)}^-1)_l || (f_{-(l-j)}^-1)_l, indices mod L/2.
std::pair<PermArray, PermArray> build_arrays(const GeneratorPair& gen);

// Row block j of either array under the cyclically extended index range
// (j may exceed J-1; used for the j = 2 label constraints when L = 6).
std::vector<AffinePerm> x_row_block(const GeneratorPair& gen, int j);
std::vector<AffinePerm> z_row_block(const GeneratorPair& gen, int j);

// Column sequence of the unavoidable length-2L cycle u(j), before
// canonicalization: (0, L/2+j, 1, L/2+j-1, ...).
std::vector<int> unavoidable_cycle_columns(int L, int j);
// Canonical forms of the cycle classes a valid construction is allowed to
// close: u(0), u(1), u(2) for L = 6 and u(0), u(1) otherwise.
const std::vector<std::vector<int>>& allowed_closed_classes(int L);

struct SampleOptions {
    std::int64_t max_attempts = 100000;  // per sequence position
};

// Incremental randomized search: draw f_i then g_i uniformly from the affine
// permutations of Z_P, accepting a candidate only if the partial sequences
// keep the commutativity requirement, can still reach incomplete
// commutativity, and close no block cycle of length <= 2L outside the
// unavoidable classes in either partial array. Deterministic under seed.
GeneratorPair sample_generators(std::int64_t P, int L, std::uint64_t seed,
                                const SampleOptions& opts = {});

}  // namespace qldpc
