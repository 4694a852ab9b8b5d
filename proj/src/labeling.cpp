#include "qldpc/labeling.hpp"

#include <algorithm>
#include <numeric>

#include "qldpc/rng.hpp"

namespace qldpc {

namespace {

std::int64_t norm(std::int64_t x, std::int64_t m) {
    std::int64_t r = x % m;
    return r < 0 ? r + m : r;
}

void append_quarter_row(ConstraintSystem& sys, const std::vector<AffinePerm>& row_blocks,
                        std::int64_t r, std::int64_t P, int L) {
    const int h = L / 2;
    const std::int64_t N = static_cast<std::int64_t>(L) * P;
    std::vector<ConstraintSystem::Entry> row;
    row.reserve(2 * L);
    for (int l = 0; l < h; ++l) {
        const std::int64_t cl = invert(row_blocks[l])(r);
        const std::int64_t cr = invert(row_blocks[h + l])(r);
        row.push_back({static_cast<std::int64_t>(l) * P + cl, -1});
        row.push_back({static_cast<std::int64_t>(h + l) * P + cr, +1});
        row.push_back({N + static_cast<std::int64_t>(l) * P + cl, +1});
        row.push_back({N + static_cast<std::int64_t>(h + l) * P + cr, -1});
    }
    sys.rows.push_back(std::move(row));
}

}  // namespace

std::int64_t ConstraintSystem::eval_row(size_t r, std::span<const std::int32_t> exps) const {
    std::int64_t acc = 0;
    for (const auto& en : rows[r]) acc += en.sign * static_cast<std::int64_t>(exps[en.col]);
    return norm(acc, modulus);
}

int ConstraintSystem::count_zero_rows(std::span<const std::int32_t> exps) const {
    int zeros = 0;
    for (size_t r = 0; r < rows.size(); ++r)
        if (eval_row(r, exps) == 0) ++zeros;
    return zeros;
}

ConstraintSystem build_zero_system(const PermArray& array, std::int64_t modulus) {
    ConstraintSystem sys;
    sys.modulus = modulus;
    sys.num_cols = 2 * static_cast<std::int64_t>(array.L) * array.P;
    sys.rhs_mode = ConstraintSystem::RhsMode::MustBeZero;
    for (int j = 0; j < array.J; ++j) {
        std::vector<AffinePerm> row_blocks(array.blocks.begin() + static_cast<size_t>(j) * array.L,
                                           array.blocks.begin() + static_cast<size_t>(j + 1) * array.L);
        for (std::int64_t r = 0; r < array.P; ++r)
            append_quarter_row(sys, row_blocks, r, array.P, array.L);
    }
    return sys;
}

ConstraintSystem build_nonzero_system(const GeneratorPair& gen, bool from_z_array,
                                      std::int64_t modulus) {
    if (gen.L != 6) throw DimensionMismatch("the extended row block j = 2 requires L = 6");
    ConstraintSystem sys;
    sys.modulus = modulus;
    sys.num_cols = 2 * static_cast<std::int64_t>(gen.L) * gen.P;
    sys.rhs_mode = ConstraintSystem::RhsMode::MustBeNonzero;
    auto row_blocks = from_z_array ? z_row_block(gen, 2) : x_row_block(gen, 2);
    for (std::int64_t r = 0; r < gen.P; ++r)
        append_quarter_row(sys, row_blocks, r, gen.P, gen.L);
    return sys;
}

void FreeBoundMap::expand(std::span<const std::int32_t> free_vals,
                          std::span<std::int32_t> full) const {
    const std::int64_t B = num_bound(), F = num_free();
    for (std::int64_t i = 0; i < F; ++i) full[free_cols[i]] = free_vals[i];
    for (std::int64_t b = 0; b < B; ++b) {
        std::int64_t acc = 0;
        const std::int32_t* row = transform.data() + b * F;
        for (std::int64_t i = 0; i < F; ++i) acc += static_cast<std::int64_t>(row[i]) * free_vals[i];
        full[bound_cols[b]] = static_cast<std::int32_t>(norm(acc, modulus));
    }
}

void FreeBoundMap::apply_free_delta(std::span<std::int32_t> full, std::int64_t fpos,
                                    std::int32_t delta) const {
    const std::int64_t B = num_bound(), F = num_free();
    full[free_cols[fpos]] =
        static_cast<std::int32_t>(norm(full[free_cols[fpos]] + delta, modulus));
    for (std::int64_t b = 0; b < B; ++b) {
        const std::int32_t coef = transform[b * F + fpos];
        if (coef == 0) continue;
        full[bound_cols[b]] = static_cast<std::int32_t>(
            norm(full[bound_cols[b]] + static_cast<std::int64_t>(coef) * delta, modulus));
    }
}

FreeBoundMap solve_zero_system(const ConstraintSystem& sys) {
    const std::int64_t m = sys.modulus;
    const std::int64_t C = sys.num_cols;
    const std::int64_t R = static_cast<std::int64_t>(sys.rows.size());

    std::vector<std::int32_t> mat(static_cast<size_t>(R) * C, 0);
    for (std::int64_t r = 0; r < R; ++r)
        for (const auto& en : sys.rows[r]) {
            auto& cell = mat[static_cast<size_t>(r) * C + en.col];
            cell = static_cast<std::int32_t>(norm(cell + en.sign, m));
        }

    std::vector<std::int64_t> pivot_col_of_row(R, -1);
    std::vector<bool> is_pivot_col(C, false);

    for (std::int64_t r = 0; r < R; ++r) {
        std::int32_t* row = mat.data() + static_cast<size_t>(r) * C;
        std::int64_t pc = -1;
        bool nonzero = false;
        for (std::int64_t c = 0; c < C; ++c) {
            if (row[c] == 0) continue;
            nonzero = true;
            if (!is_pivot_col[c] && std::gcd<std::int64_t>(row[c], m) == 1) {
                pc = c;
                break;
            }
        }
        if (!nonzero) continue;
        if (pc < 0) throw NoUnitPivot("a nonzero row has no unit entry modulo " + std::to_string(m));

        const std::int64_t piv_inv = mod_inverse(row[pc], m);
        for (std::int64_t c = 0; c < C; ++c)
            row[c] = static_cast<std::int32_t>(row[c] * piv_inv % m);
        for (std::int64_t r2 = 0; r2 < R; ++r2) {
            if (r2 == r) continue;
            std::int32_t* other = mat.data() + static_cast<size_t>(r2) * C;
            const std::int64_t mult = other[pc];
            if (mult == 0) continue;
            for (std::int64_t c = 0; c < C; ++c)
                other[c] = static_cast<std::int32_t>(
                    norm(other[c] - mult * row[c], m));
        }
        pivot_col_of_row[r] = pc;
        is_pivot_col[pc] = true;
    }

    FreeBoundMap fb;
    fb.modulus = m;
    fb.num_cols = C;
    std::vector<std::int64_t> fidx_of_col(C, -1);
    for (std::int64_t c = 0; c < C; ++c)
        if (!is_pivot_col[c]) {
            fidx_of_col[c] = static_cast<std::int64_t>(fb.free_cols.size());
            fb.free_cols.push_back(c);
        }

    std::vector<std::pair<std::int64_t, std::int64_t>> pivots;  // (col, row)
    for (std::int64_t r = 0; r < R; ++r)
        if (pivot_col_of_row[r] >= 0) pivots.emplace_back(pivot_col_of_row[r], r);
    std::sort(pivots.begin(), pivots.end());

    const std::int64_t F = static_cast<std::int64_t>(fb.free_cols.size());
    fb.transform.assign(pivots.size() * F, 0);
    for (size_t b = 0; b < pivots.size(); ++b) {
        fb.bound_cols.push_back(pivots[b].first);
        const std::int32_t* row = mat.data() + static_cast<size_t>(pivots[b].second) * C;
        for (std::int64_t c = 0; c < C; ++c)
            if (row[c] != 0 && fidx_of_col[c] >= 0)
                fb.transform[b * F + fidx_of_col[c]] =
                    static_cast<std::int32_t>(norm(-row[c], m));
    }
    return fb;
}

namespace {

// effective coefficients of the free variables in one constraint row, after
// substituting the bound part
std::vector<std::int64_t> effective_row(const ConstraintSystem& sys, const FreeBoundMap& fb,
                                        size_t r, const std::vector<std::int64_t>& role) {
    const std::int64_t F = fb.num_free();
    std::vector<std::int64_t> eff(F, 0);
    for (const auto& en : sys.rows[r]) {
        const std::int64_t id = role[en.col];
        if (id >= 0) {
            eff[id] += en.sign;
        } else {
            const std::int64_t b = -id - 1;
            const std::int32_t* trow = fb.transform.data() + b * F;
            for (std::int64_t i = 0; i < F; ++i) eff[i] += en.sign * static_cast<std::int64_t>(trow[i]);
        }
    }
    for (auto& v : eff) v = norm(v, fb.modulus);
    return eff;
}

std::vector<std::int64_t> column_roles(const FreeBoundMap& fb) {
    // role[col] = free index, or -(bound index + 1)
    std::vector<std::int64_t> role(fb.num_cols, 0);
    for (std::int64_t i = 0; i < fb.num_free(); ++i) role[fb.free_cols[i]] = i;
    for (std::int64_t b = 0; b < fb.num_bound(); ++b) role[fb.bound_cols[b]] = -b - 1;
    return role;
}

std::int32_t redraw_distinct(Rng& rng, std::int64_t m, std::int32_t current) {
    auto v = static_cast<std::int32_t>(rng.below(static_cast<std::uint64_t>(m - 1)));
    return v >= current ? v + 1 : v;
}

}  // namespace

GammaLabeling label_gamma(const FreeBoundMap& fb, const ConstraintSystem& a2, std::uint64_t seed,
                          int max_perturbations) {
    const std::int64_t m = fb.modulus;
    Rng rng(seed);

    GammaLabeling out;
    out.free_vals.resize(fb.num_free());
    for (auto& v : out.free_vals)
        v = static_cast<std::int32_t>(rng.below(static_cast<std::uint64_t>(m)));
    out.exps.resize(fb.num_cols);
    fb.expand(out.free_vals, out.exps);

    int zeros = a2.count_zero_rows(out.exps);
    out.initial_zero_rows = zeros;
    if (zeros == 0) return out;

    const auto role = column_roles(fb);
    for (int iter = 0; iter < max_perturbations; ++iter) {
        std::vector<std::int64_t> candidates;
        for (size_t r = 0; r < a2.rows.size(); ++r) {
            if (a2.eval_row(r, out.exps) != 0) continue;
            auto eff = effective_row(a2, fb, r, role);
            for (std::int64_t i = 0; i < fb.num_free(); ++i)
                if (eff[i] != 0) candidates.push_back(i);
        }
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

        std::int64_t fpos;
        if (candidates.empty())
            fpos = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(fb.num_free())));
        else
            fpos = candidates[rng.below(candidates.size())];

        const std::int32_t old_val = out.free_vals[fpos];
        const std::int32_t new_val = redraw_distinct(rng, m, old_val);
        const auto delta = static_cast<std::int32_t>(norm(new_val - old_val, m));
        fb.apply_free_delta(out.exps, fpos, delta);
        out.free_vals[fpos] = new_val;
        ++out.perturbations;

        const int new_zeros = a2.count_zero_rows(out.exps);
        if (new_zeros == 0) return out;
        if (new_zeros >= zeros) {
            fb.apply_free_delta(out.exps, fpos, static_cast<std::int32_t>(norm(-delta, m)));
            out.free_vals[fpos] = old_val;
        } else {
            zeros = new_zeros;
        }
    }
    throw IterationLimitExceeded("label perturbation cap exceeded; resample the generators");
}

std::vector<std::pair<std::int64_t, std::int32_t>> cycle_null_exponents(
    const FieldContext& field, const GeneratorPair& gen, int j, std::int64_t r,
    std::span<const std::int32_t> gamma_exps, std::int32_t scalar_exp) {
    const std::int64_t m = field.order();
    const std::int64_t N = static_cast<std::int64_t>(gen.L) * gen.P;
    const auto pos = unavoidable_cycle_positions(gen, MatrixSide::Gamma, j, r);
    const int L = gen.L;

    std::vector<std::pair<std::int64_t, std::int32_t>> out;
    out.reserve(L);
    std::int64_t x = scalar_exp;
    for (int i = 0; i < L; ++i) {
        const auto& e0 = pos[2 * i];
        const auto& e1 = pos[(2 * i + 1) % (2 * L)];
        out.emplace_back(e0.col, static_cast<std::int32_t>(x));
        x = norm(x + gamma_exps[e0.block * N + e0.col] - gamma_exps[e1.block * N + e1.col], m);
    }
    if (x != norm(scalar_exp, m))
        throw RankAnomaly("cycle submatrix is full rank; no null-space labeling exists");
    return out;
}

namespace {

std::vector<std::int32_t> build_delta_exps(const FieldContext& field, const GeneratorPair& gen,
                                           std::span<const std::int32_t> gamma_exps, Rng& rng) {
    const std::int64_t N = static_cast<std::int64_t>(gen.L) * gen.P;
    std::vector<std::int32_t> delta(2 * N, 0);
    for (int j = 0; j < 2; ++j)
        for (std::int64_t r = 0; r < gen.P; ++r) {
            const auto scalar =
                static_cast<std::int32_t>(rng.below(static_cast<std::uint64_t>(field.order())));
            for (const auto& [col, exp] : cycle_null_exponents(field, gen, j, r, gamma_exps, scalar))
                delta[j * N + col] = exp;
        }
    return delta;
}

}  // namespace

DeltaLabeling label_delta(const FieldContext& field, const GeneratorPair& gen,
                          const FreeBoundMap& fb, const ConstraintSystem& a2,
                          const ConstraintSystem& b2, const GammaLabeling& gamma,
                          std::uint64_t seed, int max_perturbations, bool enforce_nonzero) {
    const std::int64_t m = field.order();
    Rng rng(seed);

    DeltaLabeling out;
    out.gamma_exps = gamma.exps;
    std::vector<std::int32_t> free_vals = gamma.free_vals;

    out.delta_exps = build_delta_exps(field, gen, out.gamma_exps, rng);
    if (!enforce_nonzero) return out;

    int zeros = b2.count_zero_rows(out.delta_exps);
    if (zeros == 0) return out;

    for (int iter = 0; iter < max_perturbations; ++iter) {
        const auto fpos =
            static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(fb.num_free())));
        const std::int32_t old_val = free_vals[fpos];
        const std::int32_t new_val = redraw_distinct(rng, m, old_val);
        const auto delta = static_cast<std::int32_t>(norm(new_val - old_val, m));
        fb.apply_free_delta(out.gamma_exps, fpos, delta);
        free_vals[fpos] = new_val;
        ++out.perturbations;

        auto new_delta_exps = build_delta_exps(field, gen, out.gamma_exps, rng);
        const bool gamma_clean = a2.count_zero_rows(out.gamma_exps) == 0;
        const int new_zeros = b2.count_zero_rows(new_delta_exps);

        if (!gamma_clean || new_zeros >= zeros) {
            fb.apply_free_delta(out.gamma_exps, fpos, static_cast<std::int32_t>(norm(-delta, m)));
            free_vals[fpos] = old_val;
        } else {
            out.delta_exps = std::move(new_delta_exps);
            zeros = new_zeros;
            if (zeros == 0) return out;
        }
    }
    throw IterationLimitExceeded("label perturbation cap exceeded; resample the generators");
}

}  // namespace qldpc
