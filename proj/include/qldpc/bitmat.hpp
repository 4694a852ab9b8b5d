#pragma once

#include <cstdint>
#include <vector>

namespace qldpc {

class BitVec {
  public:
    BitVec() = default;
    explicit BitVec(std::int64_t nbits) : nbits_(nbits), w_((nbits + 63) / 64, 0) {}

    std::int64_t size() const { return nbits_; }
    bool get(std::int64_t i) const { return w_[i >> 6] >> (i & 63) & 1; }
    void set(std::int64_t i, bool v) {
        if (v)
            w_[i >> 6] |= 1ULL << (i & 63);
        else
            w_[i >> 6] &= ~(1ULL << (i & 63));
    }
    void flip(std::int64_t i) { w_[i >> 6] ^= 1ULL << (i & 63); }

    void xor_in(const BitVec& o) {
        for (size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
    }
    bool any() const {
        for (auto x : w_)
            if (x) return true;
        return false;
    }
    std::int64_t popcount() const;
    std::int64_t lowest_set() const;                 // -1 if none
    std::int64_t next_set_after(std::int64_t) const; // -1 if none

    // e-bit segment starting at bit j*e (e <= 16)
    std::uint16_t get_segment(std::int64_t j, int e) const;
    void xor_segment(std::int64_t j, int e, std::uint16_t bits);

    bool operator==(const BitVec& o) const { return nbits_ == o.nbits_ && w_ == o.w_; }

  private:
    std::int64_t nbits_ = 0;
    std::vector<std::uint64_t> w_;
};

// Incrementally built row-echelon basis of a binary row space.
class BitEchelon {
  public:
    BitEchelon() = default;
    explicit BitEchelon(std::int64_t nbits) : nbits_(nbits), pivot_slot_(nbits, -1) {}

    // returns true if the row extended the basis
    bool insert(BitVec row);
    // v is in the span iff it reduces to zero
    bool contains(BitVec v) const;
    void reduce(BitVec& v) const;

    int rank() const { return static_cast<int>(rows_.size()); }
    std::int64_t nbits() const { return nbits_; }

  private:
    std::int64_t nbits_ = 0;
    std::vector<BitVec> rows_;
    std::vector<std::int32_t> pivot_slot_;
};

}  // namespace qldpc
