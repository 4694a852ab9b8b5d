#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <qldpc/arrays.hpp>
#include <qldpc/rng.hpp>

#include <set>

using namespace qldpc;

namespace {

GeneratorPair example_generators() {
    GeneratorPair gen{8, 6, {}, {}};
    gen.f = {make_affine(5, 7, 8), make_affine(5, 3, 8), make_affine(1, 6, 8)};
    gen.g = {make_affine(5, 7, 8), make_affine(5, 5, 8), make_affine(5, 7, 8)};
    return gen;
}

GeneratorPair published_p384() {
    GeneratorPair gen{384, 6, {}, {}};
    gen.f = {make_affine(221, 358, 384), make_affine(101, 314, 384), make_affine(217, 92, 384)};
    gen.g = {make_affine(199, 303, 384), make_affine(169, 324, 384), make_affine(343, 375, 384)};
    return gen;
}

}  // namespace

TEST_CASE("commutativity requirement") {
    CHECK(check_requirement1(example_generators()));
    CHECK(check_requirement1(published_p384()));

    GeneratorPair bad{5, 6, {}, {}};
    bad.f = {make_affine(1, 1, 5), AffinePerm::identity(5), AffinePerm::identity(5)};
    bad.g = {make_affine(2, 0, 5), AffinePerm::identity(5), AffinePerm::identity(5)};
    CHECK(!check_requirement1(bad));
    CHECK_THROWS_AS(build_arrays(bad), RequirementViolation);
}

TEST_CASE("published generators satisfy the closed-cycle criterion") {
    const auto gen = published_p384();
    for (const auto& p : gen.f) CHECK(std::gcd(p.a, p.modulus) == 1);
    for (const auto& p : gen.g) CHECK(std::gcd(p.a, p.modulus) == 1);
    CHECK(has_noncommuting_pair(gen.f));
    CHECK(has_noncommuting_pair(gen.g));

    const auto [hx, hz] = build_arrays(gen);
    const auto& allowed = allowed_closed_classes(6);
    for (const PermArray* arr : {&hx, &hz}) {
        const PermGrid grid = arr->grid();
        for (const auto& [cyc, cls] : enumerate_block_cycles(grid, 12)) {
            if (cls == CycleClass::Open) continue;
            CHECK(std::binary_search(allowed.begin(), allowed.end(), cyc.columns));
            CHECK(cls == CycleClass::TotallyClosed);
        }
    }
    CHECK(girth(hx.grid(), hz.grid()) == 12);
}

TEST_CASE("extended row blocks follow the cyclic index pattern") {
    const auto gen = example_generators();
    const auto x2 = x_row_block(gen, 2);
    // (f_{l-2})_l || (g_{l-2})_l = (f1, f2, f0 | g1, g2, g0)
    CHECK(x2[0] == gen.f[1]);
    CHECK(x2[1] == gen.f[2]);
    CHECK(x2[2] == gen.f[0]);
    CHECK(x2[3] == gen.g[1]);
    CHECK(x2[4] == gen.g[2]);
    CHECK(x2[5] == gen.g[0]);
    const auto z2 = z_row_block(gen, 2);
    CHECK(z2[0] == invert(gen.g[2]));
    CHECK(z2[1] == invert(gen.g[1]));
    CHECK(z2[2] == invert(gen.g[0]));
    CHECK(z2[3] == invert(gen.f[2]));
    CHECK(z2[4] == invert(gen.f[1]));
    CHECK(z2[5] == invert(gen.f[0]));
}

TEST_CASE("sampled generators satisfy every acceptance predicate") {
    const std::int64_t P = 48;
    GeneratorPair gen = sample_generators(P, 6, 12345);
    CHECK(gen.P == P);
    CHECK(static_cast<int>(gen.f.size()) == 3);
    CHECK(static_cast<int>(gen.g.size()) == 3);
    CHECK(check_requirement1(gen));
    CHECK(has_noncommuting_pair(gen.f));
    CHECK(has_noncommuting_pair(gen.g));

    const auto [hx, hz] = build_arrays(gen);
    const auto& allowed = allowed_closed_classes(6);
    for (const PermArray* arr : {&hx, &hz}) {
        for (const auto& [cyc, cls] : enumerate_block_cycles(arr->grid(), 12)) {
            if (cls == CycleClass::Open) continue;
            CHECK(std::binary_search(allowed.begin(), allowed.end(), cyc.columns));
        }
    }
    CHECK(girth(hx.grid(), hz.grid()) == 12);

    // determinism
    GeneratorPair again = sample_generators(P, 6, 12345);
    for (int i = 0; i < 3; ++i) {
        CHECK(gen.f[i] == again.f[i]);
        CHECK(gen.g[i] == again.g[i]);
    }
}

TEST_CASE("sampling a hostile modulus reports exhaustion") {
    // P = 2: only one unit, so incomplete commutativity can never be reached
    CHECK_THROWS_AS(sample_generators(2, 6, 1, SampleOptions{200}), SearchExhausted);
}
