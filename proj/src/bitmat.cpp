#include "qldpc/bitmat.hpp"

#include <bit>

namespace qldpc {

std::int64_t BitVec::popcount() const {
    std::int64_t n = 0;
    for (auto x : w_) n += std::popcount(x);
    return n;
}

std::int64_t BitVec::lowest_set() const {
    for (size_t k = 0; k < w_.size(); ++k)
        if (w_[k]) return static_cast<std::int64_t>(k) * 64 + std::countr_zero(w_[k]);
    return -1;
}

std::int64_t BitVec::next_set_after(std::int64_t i) const {
    std::int64_t k = (i + 1) >> 6;
    if (k >= static_cast<std::int64_t>(w_.size())) return -1;
    const std::uint64_t first = w_[k] & ~((1ULL << ((i + 1) & 63)) - 1ULL);
    if (first) return k * 64 + std::countr_zero(first);
    for (++k; k < static_cast<std::int64_t>(w_.size()); ++k)
        if (w_[k]) return k * 64 + std::countr_zero(w_[k]);
    return -1;
}

std::uint16_t BitVec::get_segment(std::int64_t j, int e) const {
    const std::int64_t bit = j * e;
    const std::int64_t word = bit >> 6;
    const int off = static_cast<int>(bit & 63);
    std::uint64_t chunk = w_[word] >> off;
    if (off + e > 64 && static_cast<size_t>(word + 1) < w_.size())
        chunk |= w_[word + 1] << (64 - off);
    return static_cast<std::uint16_t>(chunk & ((1u << e) - 1u));
}

void BitVec::xor_segment(std::int64_t j, int e, std::uint16_t bits) {
    const std::int64_t bit = j * e;
    const std::int64_t word = bit >> 6;
    const int off = static_cast<int>(bit & 63);
    w_[word] ^= static_cast<std::uint64_t>(bits) << off;
    if (off + e > 64 && static_cast<size_t>(word + 1) < w_.size())
        w_[word + 1] ^= static_cast<std::uint64_t>(bits) >> (64 - off);
}

bool BitEchelon::insert(BitVec row) {
    reduce(row);
    const std::int64_t p = row.lowest_set();
    if (p < 0) return false;
    pivot_slot_[p] = static_cast<std::int32_t>(rows_.size());
    rows_.push_back(std::move(row));
    return true;
}

// Stored rows have no set bit below their pivot, so a single ascending scan
// clears every pivot position reachable in v.
void BitEchelon::reduce(BitVec& v) const {
    std::int64_t p = v.lowest_set();
    while (p >= 0) {
        if (pivot_slot_[p] >= 0) {
            v.xor_in(rows_[pivot_slot_[p]]);
            const std::int64_t q = v.lowest_set();
            p = (q > p || q < 0) ? q : v.next_set_after(p);
        } else {
            p = v.next_set_after(p);
        }
    }
}

bool BitEchelon::contains(BitVec v) const {
    reduce(v);
    return !v.any();
}

}  // namespace qldpc
