#include "qldpc/cycle_geometry.hpp"

namespace qldpc {

namespace {

int imod(int x, int m) {
    int r = x % m;
    return r < 0 ? r + m : r;
}

}  // namespace

std::vector<CyclePos> unavoidable_cycle_positions(const GeneratorPair& gen, MatrixSide side,
                                                  int k, std::int64_t r) {
    const int h = gen.half();
    const std::int64_t P = gen.P;

    // Support columns of the anchor row, then the rows of the opposite array
    // meeting those columns. Everything reduces to forward/inverse
    // applications of the generators.
    std::vector<std::int64_t> cl(h), cr(h);
    // rows[j][l] pairs with cl, srows[j][l] with cr
    std::vector<std::vector<std::int64_t>> rl(2, std::vector<std::int64_t>(h));
    std::vector<std::vector<std::int64_t>> sr(2, std::vector<std::int64_t>(h));

    if (side == MatrixSide::Delta) {
        // cycle in the Z-support matrix, anchor row r of X row block k
        for (int l = 0; l < h; ++l) {
            cl[l] = invert(gen.f[imod(l - k, h)])(r);
            cr[l] = invert(gen.g[imod(l - k, h)])(r);
        }
        for (int j = 0; j < 2; ++j)
            for (int l = 0; l < h; ++l) {
                rl[j][l] = invert(gen.g[imod(-(l - j), h)])(cl[l]);
                sr[j][l] = invert(gen.f[imod(-(l - j), h)])(cr[l]);
            }
    } else {
        // cycle in the X-support matrix, anchor row r of Z row block k
        for (int l = 0; l < h; ++l) {
            cl[l] = gen.g[imod(-(l - k), h)](r);
            cr[l] = gen.f[imod(-(l - k), h)](r);
        }
        for (int j = 0; j < 2; ++j)
            for (int l = 0; l < h; ++l) {
                rl[j][l] = gen.f[imod(l - j, h)](cl[l]);
                sr[j][l] = gen.g[imod(l - j, h)](cr[l]);
            }
    }

    std::vector<CyclePos> out;
    out.reserve(2 * gen.L);
    for (int l = 0; l < h; ++l) {
        const int kr = imod(k - l, h);
        const int ln = imod(l + 1, h);
        if (rl[0][l] != sr[0][kr] || sr[1][kr] != rl[1][ln])
            throw RankAnomaly("cycle rows do not close; commutativity requirement violated");
        out.push_back({0, rl[0][l], static_cast<std::int64_t>(l) * P + cl[l]});
        out.push_back({0, rl[0][l], static_cast<std::int64_t>(h + kr) * P + cr[kr]});
        out.push_back({1, sr[1][kr], static_cast<std::int64_t>(h + kr) * P + cr[kr]});
        out.push_back({1, sr[1][kr], static_cast<std::int64_t>(ln) * P + cl[ln]});
    }
    return out;
}

}  // namespace qldpc
