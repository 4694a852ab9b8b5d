#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qldpc/arrays.hpp"
#include "qldpc/bitmat.hpp"
#include "qldpc/cycle_geometry.hpp"
#include "qldpc/gf.hpp"

namespace qldpc {

// Sparse matrix over F_q with L nonzero entries per row, sharing the support
// of a permutation array. Entries are never zero.
struct NbMatrix {
    std::int64_t M = 0, N = 0, P = 0;
    int J = 2, L = 0;
    std::vector<std::int64_t> cols;  // row-major M x L, ascending per row
    std::vector<Gf> vals;

    std::int64_t col(std::int64_t row, int t) const { return cols[row * L + t]; }
    Gf val(std::int64_t row, int t) const { return vals[row * L + t]; }
    std::optional<Gf> at(std::int64_t row, std::int64_t c) const;

    // y = H * x over F_q
    std::vector<Gf> apply(const FieldContext& field, std::span<const Gf> x) const;
};

// One Tanner cycle: columns/rows in traversal order plus the labels read off
// the matrix, four entries per round. utcbc_j is the unavoidable-class index,
// or -1 for cycles found by longer-length enumeration.
struct CycleRecord {
    int utcbc_j = -1;
    std::int64_t anchor = 0;
    std::vector<std::int64_t> cols;  // half cycle length
    std::vector<std::int64_t> rows;  // half cycle length (global row ids)
    std::vector<Gf> labels;          // full cycle length, traversal order
    Gf det = 0;
};

struct OrthogonalityReport {
    bool ok = true;
    std::int64_t pairs_checked = 0;
    std::int64_t gamma_row = -1, delta_row = -1;  // first violating pair
    int binary_samples = 0;
    bool binary_ok = true;
    std::string detail;
};

struct CssCode {
    explicit CssCode(FieldContext f) : field(std::move(f)) {}

    FieldContext field;
    GeneratorPair gen;
    PermArray hx_array, hz_array;
    NbMatrix hgamma, hdelta;
    std::vector<std::int32_t> gamma_exps, delta_exps;  // 2N label exponents each

    std::int64_t n = 0, m = 0, k = 0;
    std::int64_t rank_x = 0, rank_z = 0;

    BitEchelon dual_x;  // row space of the binary X-check matrix
    BitEchelon dual_z;  // row space of the binary Z-check matrix

    std::vector<CycleRecord> catalog_gamma, catalog_delta;  // 3P records each

    std::string seed_info;  // free-form provenance (JSON text)

    std::int64_t N() const { return hgamma.N; }
    std::int64_t M() const { return hgamma.M; }
};

enum class BinarySide { Gamma, Delta };

// Binary parity-check action without materializing the matrices: the X-check
// matrix acts blockwise as companion(gamma) on v-segments, the Z-check matrix
// as companion_transpose(delta) on w-segments.
BitVec binary_check_action(const FieldContext& field, const NbMatrix& H, BinarySide side,
                           const BitVec& x);
// Transpose action (n-bit output from an m-bit input).
BitVec binary_check_transpose_action(const FieldContext& field, const NbMatrix& H,
                                     BinarySide side, const BitVec& y);

// v-expansion (Gamma side objects) / w-expansion (Delta side objects) of a
// symbol vector into e-bit segments.
BitVec expand_v(const FieldContext& field, std::span<const Gf> symbols);
BitVec expand_w(const FieldContext& field, std::span<const Gf> symbols);

NbMatrix nb_from_exponents(const FieldContext& field, const PermArray& array,
                           std::span<const std::int32_t> exps);

// Builds matrices, dimension, dual bases and the unavoidable-cycle catalogs;
// verifies all invariants unless verify = false.
CssCode assemble_code(FieldContext field, GeneratorPair gen,
                      std::vector<std::int32_t> gamma_exps, std::vector<std::int32_t> delta_exps,
                      std::string seed_info, bool verify = true);

OrthogonalityReport verify_orthogonality(const CssCode& code, int binary_samples = 16,
                                         std::uint64_t sample_seed = 1);

struct DimensionReport {
    std::int64_t k, rank_x, rank_z;
};
DimensionReport compute_dimension(const CssCode& code);

enum class DualSide { X, Z };

// vec in rowspace(H_X) (side X) or rowspace(H_Z) (side Z). The X row space is
// the w-expansion image of the F_q row space of the Gamma matrix, the Z row
// space the v-expansion image of the Delta one.
bool dual_membership(const CssCode& code, DualSide side, const BitVec& vec);

std::string serialize(const CssCode& code);
CssCode deserialize(const std::string& bytes);
CssCode load_code_file(const std::string& path);
void save_code_file(const CssCode& code, const std::string& path);

}  // namespace qldpc
