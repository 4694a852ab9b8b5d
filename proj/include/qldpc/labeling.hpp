#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qldpc/arrays.hpp"
#include "qldpc/cycle_geometry.hpp"
#include "qldpc/gf.hpp"

namespace qldpc {

// Linear constraints over Z_{q-1} on the discrete logs of the nonzero labels.
// The label vector has 2N entries: the upper row block's labels by global
// column, then the lower row block's.
struct ConstraintSystem {
    enum class RhsMode { MustBeZero, MustBeNonzero };

    std::int64_t modulus = 0;
    std::int64_t num_cols = 0;
    RhsMode rhs_mode = RhsMode::MustBeZero;

    struct Entry {
        std::int64_t col;
        int sign;  // +1 or -1
    };
    std::vector<std::vector<Entry>> rows;

    std::int64_t eval_row(size_t r, std::span<const std::int32_t> exps) const;
    // number of rows evaluating to zero
    int count_zero_rows(std::span<const std::int32_t> exps) const;
};

// Sign pattern (-, +, +, -) over the four (row block, half) quarters of the
// label vector, with the support taken from the given array's row blocks
// 0..J-1. Solutions make every unavoidable-cycle submatrix of the labeled
// matrix rank deficient.
ConstraintSystem build_zero_system(const PermArray& array, std::int64_t modulus);

// Same pattern over the cyclically extended row block j = 2 (requires L = 6);
// a nonzero value at row r makes the u(2) cycle anchored at r full rank.
ConstraintSystem build_nonzero_system(const GeneratorPair& gen, bool from_z_array,
                                      std::int64_t modulus);

// Free/bound split of the zero system with the bound part expressed as a
// linear image of the free part.
struct FreeBoundMap {
    std::int64_t modulus = 0;
    std::int64_t num_cols = 0;
    std::vector<std::int64_t> bound_cols;
    std::vector<std::int64_t> free_cols;
    std::vector<std::int32_t> transform;  // row-major |bound| x |free|

    std::int64_t num_bound() const { return static_cast<std::int64_t>(bound_cols.size()); }
    std::int64_t num_free() const { return static_cast<std::int64_t>(free_cols.size()); }

    // full[col] for every col, from the free assignment
    void expand(std::span<const std::int32_t> free_vals, std::span<std::int32_t> full) const;
    // incremental update of the bound part after free variable fpos changes by delta
    void apply_free_delta(std::span<std::int32_t> full, std::int64_t fpos,
                          std::int32_t delta) const;
};

// Gauss-Jordan over Z_{q-1}, pivoting only on unit entries. NoUnitPivot if a
// nonzero row has no unit entry left (caller resamples the generators).
FreeBoundMap solve_zero_system(const ConstraintSystem& sys);

struct GammaLabeling {
    std::vector<std::int32_t> exps;       // 2N exponents
    std::vector<std::int32_t> free_vals;  // current free assignment
    int perturbations = 0;
    int initial_zero_rows = 0;
};

// Random free part plus bound completion, then single-variable perturbations
// accepted only when the number of zero rows of the nonzero-system value
// strictly decreases, until none remain. Perturbed variables are drawn from
// those with nonzero effective coefficient in a currently-zero row, falling
// back to a uniform draw.
GammaLabeling label_gamma(const FreeBoundMap& fb, const ConstraintSystem& a2, std::uint64_t seed,
                          int max_perturbations = 10000);

struct DeltaLabeling {
    std::vector<std::int32_t> delta_exps;  // 2N exponents
    std::vector<std::int32_t> gamma_exps;  // final gamma exponents (may differ from input)
    int perturbations = 0;
};

// Each row of the second matrix is a random nonzero scalar multiple of the
// one-dimensional null space of its length-2L cycle submatrix in the first
// matrix; gamma free variables are perturbed until the second nonzero system
// is clean while the first stays clean. With enforce_nonzero = false the
// first solution is returned as-is (no full-rank conditioning).
DeltaLabeling label_delta(const FieldContext& field, const GeneratorPair& gen,
                          const FreeBoundMap& fb, const ConstraintSystem& a2,
                          const ConstraintSystem& b2, const GammaLabeling& gamma,
                          std::uint64_t seed, int max_perturbations = 10000,
                          bool enforce_nonzero = true);

// Exponents of one nonzero null-space solution on the support of row (j, r)
// of the Delta-side matrix, as (label index, exponent) pairs; RankAnomaly if
// the cycle submatrix is full rank.
std::vector<std::pair<std::int64_t, std::int32_t>> cycle_null_exponents(
    const FieldContext& field, const GeneratorPair& gen, int j, std::int64_t r,
    std::span<const std::int32_t> gamma_exps, std::int32_t scalar_exp);

}  // namespace qldpc
