#include "qldpc/block_cycles.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

namespace qldpc {

CycleClass classify(const AffinePerm& f) {
    const std::int64_t P = f.modulus;
    std::int64_t a = f.a % P, b = f.b % P;
    if (a == 1 && b == 0) return CycleClass::TotallyClosed;
    std::int64_t g = std::gcd(((1 - a) % P + P) % P, P);
    return b % g == 0 ? CycleClass::Closed : CycleClass::Open;
}

std::vector<std::int64_t> fixed_points(const AffinePerm& f) {
    const std::int64_t P = f.modulus;
    std::int64_t c = ((1 - f.a) % P + P) % P;  // c*x = b (mod P)
    std::int64_t b = f.b % P;
    std::int64_t g = std::gcd(c, P);
    if (b % g != 0) return {};
    std::vector<std::int64_t> out;
    if (c == 0) {  // identity map: every point is fixed
        out.resize(P);
        std::iota(out.begin(), out.end(), 0);
        return out;
    }
    const std::int64_t Pg = P / g;
    std::int64_t x0 = (b / g) % Pg * mod_inverse(c / g, Pg) % Pg;
    for (std::int64_t t = 0; t < g; ++t) out.push_back(x0 + t * Pg);
    std::sort(out.begin(), out.end());
    return out;
}

AffinePerm composite_function(const PermGrid& grid, const BlockCycle& cycle) {
    const auto& cols = cycle.columns;
    const size_t m = cols.size();
    if (m < 2 || m % 2 != 0) throw InvalidCycle("column count must be even and >= 2");
    for (size_t t = 0; t < m; ++t) {
        if (cols[t] < 0 || cols[t] >= grid.cols) throw InvalidCycle("column index out of range");
        if (cols[t] == cols[(t + 1) % m]) throw InvalidCycle("adjacent columns must differ");
    }
    if (grid.rows != 2) throw InvalidCycle("composite_function requires 2 row blocks");

    const auto block = [&](int row, int col) -> const AffinePerm& {
        const auto& cell = grid.at(row, col);
        if (!cell) throw InvalidCycle("cycle passes through an undefined block");
        return *cell;
    };

    AffinePerm acc = AffinePerm::identity(block(0, cols[0]).modulus);
    for (size_t t = 0; t < m; ++t) {
        int row = static_cast<int>(t) % 2;
        acc = compose(block(row, cols[t]), acc);
        acc = compose(invert(block(row, cols[(t + 1) % m])), acc);
    }
    return acc;
}

std::vector<int> canonical_columns(const std::vector<int>& columns) {
    const size_t m = columns.size();
    std::vector<int> best = columns;
    std::vector<int> cand(m);
    for (int rev = 0; rev < 2; ++rev) {
        std::vector<int> base = columns;
        if (rev) std::reverse(base.begin(), base.end());
        for (size_t s = 0; s < m; ++s) {
            for (size_t t = 0; t < m; ++t) cand[t] = base[(s + t) % m];
            if (cand < best) best = cand;
        }
    }
    return best;
}

namespace {

bool is_canonical(const std::vector<int>& seq) {
    return canonical_columns(seq) == seq;
}

std::vector<std::vector<int>> generate_sequences(int L, int m) {
    std::vector<std::vector<int>> out;
    std::vector<int> seq(m);
    // DFS over sequences; canonical ones start at their minimum, which a
    // rotation can always place first, so fix seq[0] = min and seq[0] = 0..L-1
    // only where the minimum could be.
    auto rec = [&](auto&& self, int pos) -> void {
        if (pos == m) {
            if (seq[m - 1] != seq[0] && is_canonical(seq)) out.push_back(seq);
            return;
        }
        for (int c = seq[0]; c < L; ++c) {
            if (c == seq[pos - 1]) continue;
            seq[pos] = c;
            self(self, pos + 1);
        }
    };
    for (int c0 = 0; c0 + 1 < L; ++c0) {
        seq[0] = c0;
        rec(rec, 1);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

const std::vector<std::vector<int>>& canonical_column_sequences(int L, int m) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::vector<std::vector<int>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(L, m);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, generate_sequences(L, m)).first;
    return it->second;
}

std::vector<std::pair<BlockCycle, CycleClass>> enumerate_block_cycles(const PermGrid& grid,
                                                                      int max_len) {
    if (max_len % 4 != 0) throw InvalidCycle("max_len must be a multiple of 4");
    std::vector<std::pair<BlockCycle, CycleClass>> out;
    for (int m = 2; 2 * m <= max_len; m += 2) {
        for (const auto& seq : canonical_column_sequences(grid.cols, m)) {
            bool defined = true;
            for (int c : seq) {
                if (!grid.at(0, c) || !grid.at(1, c)) {
                    defined = false;
                    break;
                }
            }
            if (!defined) continue;
            BlockCycle cyc{seq, 0};
            CycleClass cls = classify(composite_function(grid, cyc));
            out.emplace_back(std::move(cyc), cls);
        }
    }
    return out;
}

std::optional<int> girth(const PermGrid& x, const PermGrid& z, int scan_limit) {
    for (int len = 4; len <= scan_limit; len += 4) {
        for (const PermGrid* g : {&x, &z}) {
            for (const auto& seq : canonical_column_sequences(g->cols, len / 2)) {
                bool defined = true;
                for (int c : seq)
                    if (!g->at(0, c) || !g->at(1, c)) { defined = false; break; }
                if (!defined) continue;
                if (classify(composite_function(*g, BlockCycle{seq, 0})) != CycleClass::Open)
                    return len;
            }
        }
    }
    return std::nullopt;
}

}  // namespace qldpc
