#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <qldpc/apm.hpp>
#include <qldpc/arrays.hpp>
#include <qldpc/block_cycles.hpp>
#include <qldpc/rng.hpp>

#include <algorithm>
#include <set>

using namespace qldpc;

namespace {

std::vector<std::vector<int>> dense(const AffinePerm& f) {
    std::vector<std::vector<int>> m(f.modulus, std::vector<int>(f.modulus, 0));
    for (std::int64_t j = 0; j < f.modulus; ++j) m[f(j)][j] = 1;
    return m;
}

AffinePerm random_affine(Rng& rng, std::int64_t P) {
    for (;;) {
        const auto a = static_cast<std::int64_t>(rng.below(P));
        if (std::gcd(a, P) != 1) continue;
        return {a, static_cast<std::int64_t>(rng.below(P)), P};
    }
}

bool pointwise_commute(const AffinePerm& f, const AffinePerm& g) {
    for (std::int64_t x = 0; x < f.modulus; ++x)
        if (compose(f, g)(x) != compose(g, f)(x)) return false;
    return true;
}

// Example arrays: f = (5X+7, 5X+3, X+6), g = (5X+7, 5X+5, 5X+7) over Z_8
GeneratorPair example_generators() {
    GeneratorPair gen{8, 6, {}, {}};
    gen.f = {make_affine(5, 7, 8), make_affine(5, 3, 8), make_affine(1, 6, 8)};
    gen.g = {make_affine(5, 7, 8), make_affine(5, 5, 8), make_affine(5, 7, 8)};
    return gen;
}

}  // namespace

TEST_CASE("affine permutation matrix, transpose and inverse over Z_5") {
    const AffinePerm f = make_affine(2, 1, 5);
    const std::vector<std::vector<int>> F_expect = {
        {0, 0, 1, 0, 0}, {1, 0, 0, 0, 0}, {0, 0, 0, 1, 0}, {0, 1, 0, 0, 0}, {0, 0, 0, 0, 1},
    };
    CHECK(dense(f) == F_expect);

    const AffinePerm fi = invert(f);
    CHECK(fi.a == 3);
    CHECK(fi.b == 2);
    // inverse permutation corresponds to the transposed matrix
    std::vector<std::vector<int>> Ft(5, std::vector<int>(5, 0));
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) Ft[i][j] = F_expect[j][i];
    CHECK(dense(fi) == Ft);
    CHECK(compose(f, fi).is_identity());
    CHECK(compose(fi, f).is_identity());
}

TEST_CASE("compose and invert match dense matrix algebra") {
    Rng rng(21);
    for (int trial = 0; trial < 60; ++trial) {
        const std::int64_t P = 2 + static_cast<std::int64_t>(rng.below(63));
        const AffinePerm f = random_affine(rng, P), g = random_affine(rng, P);
        const AffinePerm fg = compose(f, g);
        for (std::int64_t x = 0; x < P; ++x) CHECK(fg(x) == f(g(x)));
        const AffinePerm fi = invert(f);
        for (std::int64_t x = 0; x < P; ++x) CHECK(fi(f(x)) == x);
    }
    CHECK_THROWS_AS(compose(make_affine(1, 0, 5), make_affine(1, 0, 7)), ModulusMismatch);
    CHECK_THROWS_AS(make_affine(2, 0, 8), RequirementViolation);
}

TEST_CASE("closed-form commutation test") {
    const AffinePerm a = make_affine(5, 7, 8), b = make_affine(5, 5, 8);
    CHECK(commutes(a, b));
    CHECK(commutes(a, a));
    CHECK(commuting_lemma_check(a, b));

    Rng rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const std::int64_t P = 2 + static_cast<std::int64_t>(rng.below(40));
        const AffinePerm f = random_affine(rng, P), g = random_affine(rng, P);
        CHECK(commutes(f, g) == pointwise_commute(f, g));
        if (commutes(f, g)) CHECK(commuting_lemma_check(f, g));
    }

    const auto gen = example_generators();
    for (const auto& f : gen.f)
        for (const auto& g : gen.g) CHECK(commutes(f, g));
}

TEST_CASE("composite of id with anything is itself") {
    const AffinePerm f = make_affine(3, 4, 7);
    CHECK(compose(f, AffinePerm::identity(7)) == f);
    CHECK(compose(AffinePerm::identity(7), f) == f);
    CHECK(commutes(f, AffinePerm::identity(7)));
}

TEST_CASE("classification against exhaustive fixed-point scan") {
    CHECK(classify(AffinePerm{1, 0, 97}) == CycleClass::TotallyClosed);
    CHECK(classify(AffinePerm{1, 5, 97}) == CycleClass::Open);
    CHECK(classify(AffinePerm{5, 2, 8}) == CycleClass::Open);  // gcd(1-5, 8) = 4 does not divide 2

    Rng rng(9);
    for (int trial = 0; trial < 400; ++trial) {
        const std::int64_t P = 2 + static_cast<std::int64_t>(rng.below(9998));
        const AffinePerm f = random_affine(rng, P);
        std::int64_t fixed = 0;
        for (std::int64_t x = 0; x < P; ++x)
            if (f(x) == x) ++fixed;
        const CycleClass c = classify(f);
        if (fixed == P)
            CHECK(c == CycleClass::TotallyClosed);
        else if (fixed > 0)
            CHECK(c == CycleClass::Closed);
        else
            CHECK(c == CycleClass::Open);
        auto pts = fixed_points(f);
        CHECK(static_cast<std::int64_t>(pts.size()) == fixed);
        for (auto x : pts) CHECK(f(x) == x);
    }
}

TEST_CASE("composite function of the reference length-12 cycle is the identity") {
    const auto [hx, hz] = build_arrays(example_generators());
    const PermGrid grid = hx.grid();
    // f0 => g0 => f1 => g2 => f2 => g1 => f0, written as upper-row columns
    const BlockCycle cyc{{0, 3, 1, 5, 2, 4}, 0};
    CHECK(composite_function(grid, cyc).is_identity());
}

TEST_CASE("length-4 cycle on identical rows cancels") {
    PermGrid grid(2, 3);
    Rng rng(13);
    for (int c = 0; c < 3; ++c) {
        const AffinePerm p = random_affine(rng, 16);
        grid.at(0, c) = p;
        grid.at(1, c) = p;
    }
    for (int c1 = 0; c1 < 3; ++c1)
        for (int c2 = c1 + 1; c2 < 3; ++c2)
            CHECK(composite_function(grid, BlockCycle{{c1, c2}, 0}).is_identity());
}

TEST_CASE("composite function matches brute-force permutation composition") {
    Rng rng(31);
    const std::int64_t P = 12;
    PermGrid grid(2, 6);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 6; ++c) grid.at(r, c) = random_affine(rng, P);

    for (int trial = 0; trial < 50; ++trial) {
        // random length-8 cycle
        std::vector<int> cols;
        while (cols.size() < 4) {
            const int c = static_cast<int>(rng.below(6));
            if (!cols.empty() && cols.back() == c) continue;
            if (cols.size() == 3 && c == cols[0]) continue;
            cols.push_back(c);
        }
        const AffinePerm comp = composite_function(grid, BlockCycle{cols, 0});

        // walk every start index through the expanded path
        for (std::int64_t x = 0; x < P; ++x) {
            std::int64_t cur = x;
            for (size_t t = 0; t < cols.size(); ++t) {
                const int row = static_cast<int>(t) % 2;
                cur = (*grid.at(row, cols[t]))(cur);
                cur = invert(*grid.at(row, cols[(t + 1) % cols.size()]))(cur);
            }
            CHECK(comp(x) == cur);
        }
    }
}

TEST_CASE("canonical sequences deduplicate rotations, reflections and row swaps") {
    CHECK(canonical_columns({0, 3, 1, 5, 2, 4}) == std::vector<int>{0, 3, 1, 5, 2, 4});
    CHECK(canonical_columns({3, 1, 5, 2, 4, 0}) == std::vector<int>{0, 3, 1, 5, 2, 4});
    CHECK(canonical_columns({4, 2, 5, 1, 3, 0}) == std::vector<int>{0, 3, 1, 5, 2, 4});

    const auto& len4 = canonical_column_sequences(6, 2);
    CHECK(len4.size() == 15);  // unordered column pairs
    const auto& len8 = canonical_column_sequences(6, 4);
    for (const auto& s : len8) {
        CHECK(canonical_columns(s) == s);
        for (size_t t = 0; t < s.size(); ++t) CHECK(s[t] != s[(t + 1) % s.size()]);
    }
    std::set<std::vector<int>> uniq(len8.begin(), len8.end());
    CHECK(uniq.size() == len8.size());
}

TEST_CASE("mutually commuting 2x3 subarrays close a length-12 cycle") {
    Rng rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        const std::int64_t P = 3 + static_cast<std::int64_t>(rng.below(200));
        PermGrid grid(2, 3);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 3; ++c)
                grid.at(r, c) = AffinePerm{1, static_cast<std::int64_t>(rng.below(P)), P};  // CPMs
        const BlockCycle tc{{0, 1, 2, 0, 1, 2}, 0};
        CHECK(classify(composite_function(grid, tc)) == CycleClass::TotallyClosed);

        const auto found = enumerate_block_cycles(grid, 12);
        bool has_tc = false;
        for (const auto& [cyc, cls] : found)
            if (cls == CycleClass::TotallyClosed && cyc.columns == canonical_columns({0, 1, 2, 0, 1, 2}))
                has_tc = true;
        CHECK(has_tc);
        CHECK(girth(grid, grid).value_or(99) <= 12);
    }
}

TEST_CASE("reference arrays have girth 8 and the three unavoidable closed classes") {
    const auto [hx, hz] = build_arrays(example_generators());
    const PermGrid gx = hx.grid(), gz = hz.grid();

    for (const auto& [cyc, cls] : enumerate_block_cycles(gx, 4)) CHECK(cls == CycleClass::Open);
    for (const auto& [cyc, cls] : enumerate_block_cycles(gz, 4)) CHECK(cls == CycleClass::Open);
    CHECK(girth(gx, gz) == 8);

    const auto& allowed = allowed_closed_classes(6);
    CHECK(allowed.size() == 3);
    std::set<std::vector<int>> closed12;
    for (const auto& [cyc, cls] : enumerate_block_cycles(gx, 12))
        if (cls != CycleClass::Open && cyc.columns.size() == 6) closed12.insert(cyc.columns);
    for (const auto& a : allowed) CHECK(closed12.count(a) == 1);

    // every unavoidable class is totally closed in both arrays
    for (int j = 0; j <= 2; ++j) {
        const BlockCycle u{unavoidable_cycle_columns(6, j), 0};
        CHECK(classify(composite_function(gx, u)) == CycleClass::TotallyClosed);
        CHECK(classify(composite_function(gz, u)) == CycleClass::TotallyClosed);
    }
}

TEST_CASE("definition of the arrays matches the reference example") {
    const auto gen = example_generators();
    const auto [hx, hz] = build_arrays(gen);

    // second row of the X array: (f2, f0, f1 | g2, g0, g1)
    CHECK(hx.at(1, 0) == gen.f[2]);
    CHECK(hx.at(1, 1) == gen.f[0]);
    CHECK(hx.at(1, 2) == gen.f[1]);
    CHECK(hx.at(1, 3) == gen.g[2]);
    CHECK(hx.at(1, 4) == gen.g[0]);
    CHECK(hx.at(1, 5) == gen.g[1]);

    // first row of the Z array: (5X+5, 5X+5, 5X+7, 5X+5, 1X+2, 5X+1)
    const AffinePerm z_expect[6] = {{5, 5, 8}, {5, 5, 8}, {5, 7, 8}, {5, 5, 8}, {1, 2, 8}, {5, 1, 8}};
    for (int l = 0; l < 6; ++l) {
        CAPTURE(l);
        CHECK(hz.at(0, l) == z_expect[l]);
    }

    // inverses quoted alongside the example
    CHECK(invert(gen.f[0]) == AffinePerm{5, 5, 8});
    CHECK(invert(gen.f[1]) == AffinePerm{5, 1, 8});
    CHECK(invert(gen.f[2]) == AffinePerm{1, 2, 8});
    CHECK(invert(gen.g[1]) == AffinePerm{5, 7, 8});
}

TEST_CASE("all-identity generators give all-identity arrays") {
    GeneratorPair gen{5, 6, {}, {}};
    for (int i = 0; i < 3; ++i) {
        gen.f.push_back(AffinePerm::identity(5));
        gen.g.push_back(AffinePerm::identity(5));
    }
    const auto [hx, hz] = build_arrays(gen);
    for (int j = 0; j < 2; ++j)
        for (int l = 0; l < 6; ++l) {
            CHECK(hx.at(j, l).is_identity());
            CHECK(hz.at(j, l).is_identity());
        }
}
