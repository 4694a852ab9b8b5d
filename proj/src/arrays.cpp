#include "qldpc/arrays.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "qldpc/rng.hpp"

namespace qldpc {

namespace {

int imod(int x, int m) {
    int r = x % m;
    return r < 0 ? r + m : r;
}

}  // namespace

PermGrid PermArray::grid() const {
    PermGrid g(J, L);
    for (int j = 0; j < J; ++j)
        for (int l = 0; l < L; ++l) g.at(j, l) = at(j, l);
    return g;
}

bool check_requirement1(const GeneratorPair& gen) {
    const int h = gen.half();
    const int J = 2;
    for (int l = 0; l < h; ++l)
        for (int j = -(J - 1); j <= J - 1; ++j)
            if (!commutes(gen.f[l], gen.g[imod(-l + j, h)])) return false;
    return true;
}

bool has_noncommuting_pair(std::span<const AffinePerm> seq) {
    for (size_t i = 0; i < seq.size(); ++i)
        for (size_t j = i + 1; j < seq.size(); ++j)
            if (!commutes(seq[i], seq[j])) return true;
    return false;
}

std::vector<AffinePerm> x_row_block(const GeneratorPair& gen, int j) {
    const int h = gen.half();
    std::vector<AffinePerm> row;
    row.reserve(gen.L);
    for (int l = 0; l < h; ++l) row.push_back(gen.f[imod(l - j, h)]);
    for (int l = 0; l < h; ++l) row.push_back(gen.g[imod(l - j, h)]);
    return row;
}

std::vector<AffinePerm> z_row_block(const GeneratorPair& gen, int j) {
    const int h = gen.half();
    std::vector<AffinePerm> row;
    row.reserve(gen.L);
    for (int l = 0; l < h; ++l) row.push_back(invert(gen.g[imod(-(l - j), h)]));
    for (int l = 0; l < h; ++l) row.push_back(invert(gen.f[imod(-(l - j), h)]));
    return row;
}

std::pair<PermArray, PermArray> build_arrays(const GeneratorPair& gen) {
    if (!check_requirement1(gen))
        throw RequirementViolation("generator pair violates the commutativity requirement");
    PermArray hx{2, gen.L, gen.P, {}};
    PermArray hz{2, gen.L, gen.P, {}};
    for (int j = 0; j < 2; ++j) {
        auto xr = x_row_block(gen, j);
        auto zr = z_row_block(gen, j);
        hx.blocks.insert(hx.blocks.end(), xr.begin(), xr.end());
        hz.blocks.insert(hz.blocks.end(), zr.begin(), zr.end());
    }
    return {std::move(hx), std::move(hz)};
}

std::vector<int> unavoidable_cycle_columns(int L, int j) {
    const int h = L / 2;
    std::vector<int> cols;
    cols.reserve(L);
    for (int l = 0; l < h; ++l) {
        cols.push_back(l);
        cols.push_back(h + imod(j - l, h));
    }
    return cols;
}

const std::vector<std::vector<int>>& allowed_closed_classes(int L) {
    static std::mutex mu;
    static std::map<int, std::vector<std::vector<int>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(L);
    if (it == cache.end()) {
        std::vector<std::vector<int>> classes;
        const int jmax = (L == 6) ? 2 : 1;
        for (int j = 0; j <= jmax; ++j)
            classes.push_back(canonical_columns(unavoidable_cycle_columns(L, j)));
        std::sort(classes.begin(), classes.end());
        it = cache.emplace(L, std::move(classes)).first;
    }
    return it->second;
}

namespace {

// Sequence positions are filled in the fixed order f0, g0, f1, g1, ...; each
// candidate placement fills two blocks per array.
struct StagePlacement {
    struct Block {
        int array;  // 0 = X, 1 = Z
        int row, col;
        bool inverted;
    };
    std::vector<Block> blocks;
};

StagePlacement placement_for(bool is_g, int idx, int h) {
    StagePlacement p;
    for (int j = 0; j < 2; ++j) {
        if (!is_g) {
            p.blocks.push_back({0, j, imod(idx + j, h), false});
            p.blocks.push_back({1, j, h + imod(j - idx, h), true});
        } else {
            p.blocks.push_back({0, j, h + imod(idx + j, h), false});
            p.blocks.push_back({1, j, imod(j - idx, h), true});
        }
    }
    return p;
}

// Cycle checks are scheduled at the first stage where every block the cycle
// touches is available, so each canonical sequence is tested exactly once per
// candidate at one stage.
struct CheckSchedule {
    // per stage: list of (array, sequence) to test
    std::vector<std::vector<std::pair<int, const std::vector<int>*>>> stages;
};

CheckSchedule build_schedule(int L) {
    const int h = L / 2;
    const int num_stages = 2 * h;
    CheckSchedule sched;
    sched.stages.resize(num_stages);

    // stage at which each block becomes available
    std::vector<std::vector<int>> stage_of(2, std::vector<int>(2 * L, -1));
    for (int s = 0; s < num_stages; ++s) {
        bool is_g = s % 2 == 1;
        int idx = s / 2;
        for (const auto& b : placement_for(is_g, idx, h).blocks)
            stage_of[b.array][b.row * L + b.col] = s;
    }

    for (int m = 2; m <= L; m += 2) {
        for (const auto& seq : canonical_column_sequences(L, m)) {
            for (int array = 0; array < 2; ++array) {
                int need = 0;
                for (int c : seq) {
                    need = std::max(need, stage_of[array][0 * L + c]);
                    need = std::max(need, stage_of[array][1 * L + c]);
                }
                sched.stages[need].emplace_back(array, &seq);
            }
        }
    }
    return sched;
}

// Intersection of congruences b*u_p = r_p (mod P), kept as a residue class
// b = res (mod mod). Returns false when the class is empty.
struct ResidueClass {
    std::int64_t res = 0;
    std::int64_t mod = 1;

    bool merge(std::int64_t u, std::int64_t r, std::int64_t P) {
        u = ((u % P) + P) % P;
        r = ((r % P) + P) % P;
        const std::int64_t d = std::gcd(u, P);
        if (r % d != 0) return false;
        const std::int64_t m2 = P / d;
        const std::int64_t r2 = (r / d) % m2 * mod_inverse(u / d, m2) % m2;
        const std::int64_t g = std::gcd(mod, m2);
        if ((r2 - res) % g != 0) return false;
        const std::int64_t lcm = mod / g * m2;
        const std::int64_t step = mod;
        // res + step*t = r2 (mod m2)
        const std::int64_t t =
            ((r2 - res) / g % (m2 / g) + m2 / g) % (m2 / g) * mod_inverse(step / g, m2 / g) % (m2 / g);
        res = (res + step * t) % lcm;
        mod = lcm;
        return true;
    }
};

}  // namespace

GeneratorPair sample_generators(std::int64_t P, int L, std::uint64_t seed,
                                const SampleOptions& opts) {
    if (P < 2 || L < 4 || L % 2 != 0)
        throw RequirementViolation("need P >= 2 and even L >= 4");
    const int h = L / 2;

    std::vector<std::int64_t> units;
    for (std::int64_t a = 1; a < P; ++a)
        if (std::gcd(a, P) == 1) units.push_back(a);

    const CheckSchedule sched = build_schedule(L);
    const auto& allowed = allowed_closed_classes(L);
    const auto is_allowed = [&](const std::vector<int>& canon) {
        return std::binary_search(allowed.begin(), allowed.end(), canon);
    };

    Rng rng(seed);
    GeneratorPair gen{P, L, {}, {}};
    PermGrid gx(2, L), gz(2, L);

    for (int stage = 0; stage < 2 * h; ++stage) {
        const bool is_g = stage % 2 == 1;
        const int idx = stage / 2;
        const auto place = placement_for(is_g, idx, h);
        bool found = false;

        // required commuting partners among the already chosen other-kind elements
        const auto& others = is_g ? gen.f : gen.g;
        std::vector<const AffinePerm*> partners;
        for (int l = 0; l < static_cast<int>(others.size()); ++l)
            for (int j = -(2 - 1); j <= 2 - 1; ++j)
                if (imod(-l + j, h) == idx) {
                    partners.push_back(&others[l]);
                    break;
                }

        for (std::int64_t attempt = 0; attempt < opts.max_attempts; ++attempt) {
            // Draw the multiplier uniformly from the units, then the offset
            // uniformly from the coset solving the commutativity congruences
            // b*(1 - a_p) = b_p*(1 - a) (mod P). Blind rejection over all of
            // A_P has vanishing acceptance once two or more partners are
            // fixed.
            const std::int64_t a = units[rng.below(units.size())];
            ResidueClass cls;
            bool ok = true;
            for (const AffinePerm* p : partners)
                if (!cls.merge(1 - p->a, p->b * (1 - a), P)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            const std::int64_t count = P / cls.mod;
            const std::int64_t b =
                cls.res + cls.mod * static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(count)));
            const AffinePerm cand{a, b, P};

            // (b) once a sequence is complete it must contain a
            // non-commuting pair
            if (ok && idx == h - 1) {
                std::vector<AffinePerm> full = is_g ? gen.g : gen.f;
                full.push_back(cand);
                if (!has_noncommuting_pair(full)) ok = false;
            }

            // (c) no new closed cycle outside the unavoidable classes
            if (ok) {
                const AffinePerm inv_cand = invert(cand);
                for (const auto& b : place.blocks)
                    (b.array == 0 ? gx : gz).at(b.row, b.col) = b.inverted ? inv_cand : cand;
                for (const auto& [array, seq] : sched.stages[stage]) {
                    const PermGrid& grid = array == 0 ? gx : gz;
                    if (classify(composite_function(grid, BlockCycle{*seq, 0})) != CycleClass::Open &&
                        !is_allowed(*seq)) {
                        ok = false;
                        break;
                    }
                }
                if (!ok)
                    for (const auto& b : place.blocks) (b.array == 0 ? gx : gz).at(b.row, b.col).reset();
            }

            if (ok) {
                (is_g ? gen.g : gen.f).push_back(cand);
                found = true;
                break;
            }
        }
        if (!found)
            throw SearchExhausted("no valid " + std::string(is_g ? "g" : "f") + "_" +
                                  std::to_string(idx) + " found within " +
                                  std::to_string(opts.max_attempts) + " attempts");
    }
    return gen;
}

}  // namespace qldpc
