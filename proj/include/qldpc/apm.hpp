#pragma once

#include <cstdint>
#include <numeric>

#include "qldpc/errors.hpp"

namespace qldpc {

// Permutation x -> a*x + b (mod modulus) with gcd(a, modulus) = 1.
struct AffinePerm {
    std::int64_t a = 1;
    std::int64_t b = 0;
    std::int64_t modulus = 1;

    static AffinePerm identity(std::int64_t P) { return {1, 0, P}; }

    std::int64_t operator()(std::int64_t x) const {
        std::int64_t r = (a * x + b) % modulus;
        return r < 0 ? r + modulus : r;
    }
    bool is_identity() const { return a % modulus == 1 && b % modulus == 0; }
    bool operator==(const AffinePerm& o) const {
        return modulus == o.modulus && a == o.a && b == o.b;
    }
};

std::int64_t mod_inverse(std::int64_t a, std::int64_t m);  // DivisionByZero if not a unit

AffinePerm make_affine(std::int64_t a, std::int64_t b, std::int64_t P);  // validates gcd(a,P)=1

// compose(f, g)(x) = f(g(x))
AffinePerm compose(const AffinePerm& f, const AffinePerm& g);
AffinePerm invert(const AffinePerm& f);

// Closed form: f and g commute iff a_f*b_g + b_f == a_g*b_f + b_g (mod P).
bool commutes(const AffinePerm& f, const AffinePerm& g);

// For a commuting pair, the inverse-pairs commute as well; returns whether
// (f^-1, g^-1), (f, g^-1) and (f^-1, g) all commute.
bool commuting_lemma_check(const AffinePerm& f, const AffinePerm& g);

}  // namespace qldpc
