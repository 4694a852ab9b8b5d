#include "qldpc/gf.hpp"

#include <bit>

namespace qldpc {

CompanionMatrix CompanionMatrix::identity(int e) {
    CompanionMatrix m{e, {}};
    for (int i = 0; i < e; ++i) m.rows[i] = static_cast<std::uint16_t>(1u << i);
    return m;
}

std::uint16_t CompanionMatrix::apply(std::uint16_t v) const {
    std::uint16_t out = 0;
    for (int i = 0; i < e; ++i)
        out |= static_cast<std::uint16_t>((std::popcount(static_cast<unsigned>(rows[i] & v)) & 1) << i);
    return out;
}

CompanionMatrix CompanionMatrix::transposed() const {
    CompanionMatrix t{e, {}};
    for (int i = 0; i < e; ++i)
        for (int j = 0; j < e; ++j)
            if (rows[i] >> j & 1) t.rows[j] |= static_cast<std::uint16_t>(1u << i);
    return t;
}

CompanionMatrix CompanionMatrix::operator*(const CompanionMatrix& o) const {
    CompanionMatrix ot = o.transposed();
    CompanionMatrix r{e, {}};
    for (int i = 0; i < e; ++i)
        for (int j = 0; j < e; ++j)
            if (std::popcount(static_cast<unsigned>(rows[i] & ot.rows[j])) & 1)
                r.rows[i] |= static_cast<std::uint16_t>(1u << j);
    return r;
}

CompanionMatrix CompanionMatrix::operator+(const CompanionMatrix& o) const {
    CompanionMatrix r{e, {}};
    for (int i = 0; i < e; ++i) r.rows[i] = rows[i] ^ o.rows[i];
    return r;
}

bool CompanionMatrix::operator==(const CompanionMatrix& o) const {
    if (e != o.e) return false;
    for (int i = 0; i < e; ++i)
        if (rows[i] != o.rows[i]) return false;
    return true;
}

std::uint32_t FieldContext::default_poly(int e) {
    switch (e) {
        case 3: return 0b1011;       // 1 + x + x^3
        case 8: return 0b100011101;  // 1 + x^2 + x^3 + x^4 + x^8
        default:
            throw NonPrimitivePolynomial("no default primitive polynomial for e=" + std::to_string(e) +
                                         "; pass one explicitly");
    }
}

FieldContext::FieldContext(int e, std::uint32_t prim_poly) : e_(e), poly_(prim_poly) {
    if (e < 2 || e > 16) throw NonPrimitivePolynomial("extension degree must be in [2, 16]");
    q_ = 1u << e;
    if ((prim_poly & 1u) == 0 || (prim_poly >> e) != 1u)
        throw NonPrimitivePolynomial("polynomial must have degree e and constant term 1");

    antilog_.assign(2 * order(), 0);
    log_.assign(q_, -1);
    std::uint32_t cur = 1;
    for (std::uint32_t i = 0; i < order(); ++i) {
        if (log_[cur] >= 0) throw NonPrimitivePolynomial("x has multiplicative order < q-1");
        antilog_[i] = static_cast<Gf>(cur);
        antilog_[i + order()] = static_cast<Gf>(cur);
        log_[cur] = static_cast<std::int32_t>(i);
        cur <<= 1;
        if (cur & q_) cur ^= prim_poly;
    }
    if (cur != 1) throw NonPrimitivePolynomial("x has multiplicative order < q-1");

    // w(g): bit j is the constant coefficient of g * alpha^j.
    w_.assign(q_, 0);
    w_inv_.assign(q_, 0);
    for (std::uint32_t g = 1; g < q_; ++g) {
        std::uint16_t bits = 0;
        for (int j = 0; j < e_; ++j)
            bits |= static_cast<std::uint16_t>((mul(static_cast<Gf>(g), antilog_[j]) & 1u) << j);
        w_[g] = bits;
        w_inv_[bits] = static_cast<Gf>(g);
    }
}

CompanionMatrix FieldContext::companion(Gf g) const {
    CompanionMatrix m{e_, {}};
    if (g == 0) return m;
    // column j is v(g * alpha^j)
    for (int j = 0; j < e_; ++j) {
        std::uint16_t col = mul(g, antilog_[j]);
        for (int i = 0; i < e_; ++i)
            if (col >> i & 1) m.rows[i] |= static_cast<std::uint16_t>(1u << j);
    }
    return m;
}

}  // namespace qldpc
