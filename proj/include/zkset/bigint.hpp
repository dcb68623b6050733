#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <optional>

#include "zkset/bytes.hpp"
#include "zkset/rng.hpp"

namespace zkset {

using BigInt = boost::multiprecision::mpz_int;

inline size_t bit_length(const BigInt& v) {
    if (v == 0) return 0;
    return mpz_sizeinbase(v.backend().data(), 2);
}

// Canonical representative in [0, m).
inline BigInt mod(const BigInt& a, const BigInt& m) {
    BigInt r = a % m;
    if (r < 0) r += m;
    return r;
}

inline BigInt mod_pow(const BigInt& base, const BigInt& exponent, const BigInt& modulus) {
    return boost::multiprecision::powm(mod(base, modulus), exponent, modulus);
}

inline std::optional<BigInt> mod_inverse(const BigInt& a, const BigInt& m) {
    BigInt r;
    if (mpz_invert(r.backend().data(), mod(a, m).backend().data(), m.backend().data()) == 0)
        return std::nullopt;
    return r;
}

inline BigInt gcd(const BigInt& a, const BigInt& b) { return boost::multiprecision::gcd(a, b); }

inline bool is_probable_prime(const BigInt& n, int reps = 30) {
    return mpz_probab_prime_p(n.backend().data(), reps) != 0;
}

// Fixed-width big-endian encoding; fails if the value does not fit.
inline Bytes be_bytes(const BigInt& v, size_t width) {
    if (v < 0) fail(ErrorKind::parameter, "cannot encode negative integer");
    Bytes out(width, 0);
    BigInt x = v;
    for (size_t i = 0; i < width; i++) {
        out[width - 1 - i] = static_cast<uint8_t>(x & 0xff);
        x >>= 8;
    }
    if (x != 0) fail(ErrorKind::parameter, "integer too wide for encoding");
    return out;
}

inline BigInt from_be_bytes(BytesView data) {
    BigInt v = 0;
    for (uint8_t b : data) v = (v << 8) | b;
    return v;
}

// Exactly uniform over [0, bound) by rejection sampling.
inline BigInt uniform_below(RandomSource& rng, const BigInt& bound) {
    if (bound <= 0) fail(ErrorKind::parameter, "uniform_below requires a positive bound");
    size_t bits = bit_length(bound);
    size_t width = (bits + 7) / 8;
    uint8_t top_mask = bits % 8 == 0 ? 0xff : static_cast<uint8_t>((1u << (bits % 8)) - 1);
    Bytes buf(width);
    while (true) {
        rng.fill(buf);
        buf[0] &= top_mask;
        BigInt v = from_be_bytes(buf);
        if (v < bound) return v;
    }
}

}  // namespace zkset
