#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "qldpc/errors.hpp"

namespace qldpc {

// Field element of F_{2^e}, stored as the e-bit coefficient vector of the
// polynomial basis (bit k = coefficient of alpha^k). Addition is XOR.
using Gf = std::uint16_t;

// e x e binary matrix with rows stored as bit masks (bit j = column j).
struct CompanionMatrix {
    int e = 0;
    std::array<std::uint16_t, 16> rows{};

    static CompanionMatrix zero(int e) { return CompanionMatrix{e, {}}; }
    static CompanionMatrix identity(int e);

    std::uint16_t apply(std::uint16_t v) const;  // matrix * column vector
    CompanionMatrix transposed() const;
    CompanionMatrix operator*(const CompanionMatrix& o) const;
    CompanionMatrix operator+(const CompanionMatrix& o) const;
    bool operator==(const CompanionMatrix& o) const;
};

class FieldContext {
  public:
    // prim_poly: coefficient bit mask, bit i = coefficient of x^i. Must have
    // degree e and constant term 1, and x must generate the full group of
    // order 2^e - 1; otherwise NonPrimitivePolynomial.
    FieldContext(int e, std::uint32_t prim_poly);

    // x^8+x^4+x^3+x^2+1 for e=8 and 1+x+x^3 for e=3; other degrees need an
    // explicit polynomial.
    static std::uint32_t default_poly(int e);
    static FieldContext make_default(int e) { return FieldContext(e, default_poly(e)); }

    int e() const { return e_; }
    std::uint32_t q() const { return q_; }
    std::uint32_t order() const { return q_ - 1; }
    std::uint32_t poly() const { return poly_; }

    Gf add(Gf a, Gf b) const { return a ^ b; }
    Gf mul(Gf a, Gf b) const {
        if (a == 0 || b == 0) return 0;
        return antilog_[static_cast<std::uint32_t>(log_[a]) + log_[b]];
    }
    Gf inv(Gf a) const {
        if (a == 0) throw DivisionByZero("gf_inv(0)");
        return antilog_[order() - log_[a]];
    }
    Gf div(Gf a, Gf b) const { return mul(a, inv(b)); }

    // alpha^i with the exponent reduced mod q-1 (any sign).
    Gf alpha_pow(std::int64_t i) const {
        std::int64_t r = i % order();
        if (r < 0) r += order();
        return antilog_[r];
    }
    int log(Gf a) const {
        if (a == 0) throw DivisionByZero("log(0) undefined");
        return log_[a];
    }

    // Coefficient-vector map and its transpose-side companion: w(g) is the
    // first column of companion_transpose(g). Both are additive bijections.
    std::uint16_t v_map(Gf g) const { return g; }
    std::uint16_t w_map(Gf g) const { return w_[g]; }
    Gf v_inv(std::uint16_t bits) const { return bits; }
    Gf w_inv(std::uint16_t bits) const { return w_inv_[bits]; }

    CompanionMatrix companion(Gf g) const;
    CompanionMatrix companion_transpose(Gf g) const { return companion(g).transposed(); }

  private:
    int e_ = 0;
    std::uint32_t q_ = 0;
    std::uint32_t poly_ = 0;
    std::vector<Gf> antilog_;       // size 2(q-1), doubled to skip the mod in mul
    std::vector<std::int32_t> log_; // size q, log_[0] = -1
    std::vector<std::uint16_t> w_;
    std::vector<Gf> w_inv_;
};

}  // namespace qldpc
