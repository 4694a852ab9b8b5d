#include "qldpc/apm.hpp"

#include <utility>

namespace qldpc {

namespace {

std::int64_t norm(std::int64_t x, std::int64_t m) {
    std::int64_t r = x % m;
    return r < 0 ? r + m : r;
}

}  // namespace

std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
    a = norm(a, m);
    std::int64_t t = 0, new_t = 1, r = m, new_r = a;
    while (new_r != 0) {
        std::int64_t qt = r / new_r;
        t = std::exchange(new_t, t - qt * new_t);
        r = std::exchange(new_r, r - qt * new_r);
    }
    if (r != 1) throw DivisionByZero("element is not a unit modulo " + std::to_string(m));
    return norm(t, m);
}

AffinePerm make_affine(std::int64_t a, std::int64_t b, std::int64_t P) {
    if (P < 1) throw ModulusMismatch("modulus must be positive");
    a = norm(a, P);
    b = norm(b, P);
    if (std::gcd(a, P) != 1)
        throw RequirementViolation("gcd(a, P) != 1: x -> " + std::to_string(a) + "x+" + std::to_string(b) +
                                   " is not a permutation of Z_" + std::to_string(P));
    return {a, b, P};
}

AffinePerm compose(const AffinePerm& f, const AffinePerm& g) {
    if (f.modulus != g.modulus) throw ModulusMismatch("compose: different moduli");
    const std::int64_t P = f.modulus;
    return {norm(f.a * g.a, P), norm(f.a * g.b + f.b, P), P};
}

AffinePerm invert(const AffinePerm& f) {
    const std::int64_t P = f.modulus;
    std::int64_t ai = mod_inverse(f.a, P);
    return {ai, norm(-ai * f.b, P), P};
}

bool commutes(const AffinePerm& f, const AffinePerm& g) {
    if (f.modulus != g.modulus) throw ModulusMismatch("commutes: different moduli");
    const std::int64_t P = f.modulus;
    return norm(f.a * g.b + f.b, P) == norm(g.a * f.b + g.b, P);
}

bool commuting_lemma_check(const AffinePerm& f, const AffinePerm& g) {
    const AffinePerm fi = invert(f), gi = invert(g);
    return commutes(fi, gi) && commutes(f, gi) && commutes(fi, g);
}

}  // namespace qldpc
