#pragma once

#include <array>
#include <optional>

#include "zkset/group.hpp"

namespace zkset {

// 128-bit challenge space embedded in the scalar field; tests may narrow the
// width to make exhaustive enumeration feasible on the toy backend.
inline constexpr unsigned kChallengeBytes = 16;
inline constexpr unsigned kDefaultChallengeBits = 128;

struct Challenge {
    std::array<uint8_t, kChallengeBytes> bytes{};

    bool operator==(const Challenge&) const = default;

    BigInt as_int() const { return from_be_bytes(BytesView(bytes.data(), bytes.size())); }

    // scalar interpretation: reduced into the exponent group
    Scalar as_scalar(const BigInt& exponent_modulus) const {
        return {mod(as_int(), exponent_modulus)};
    }

    Challenge xored(const Challenge& other) const {
        Challenge out;
        for (size_t i = 0; i < kChallengeBytes; i++) out.bytes[i] = bytes[i] ^ other.bytes[i];
        return out;
    }

    static Challenge from_int(const BigInt& v) {
        Challenge c;
        Bytes b = be_bytes(v, kChallengeBytes);
        std::copy(b.begin(), b.end(), c.bytes.begin());
        return c;
    }

    static Challenge random(RandomSource& rng, unsigned bits = kDefaultChallengeBits) {
        if (bits == 0 || bits > 8 * kChallengeBytes)
            fail(ErrorKind::parameter, "challenge width out of range");
        return from_int(uniform_below(rng, BigInt(1) << bits));
    }
};

namespace sigma {

// Statement: knowledge of x with base^x = y in the given group.
struct Statement {
    Group group;
    GroupElement base;
    GroupElement y;
};

struct Witness {
    Scalar x;
};

// Single-use prover state; the nonce never leaves the prover.
struct ProverState {
    Scalar nonce;
    GroupElement announced;
};

struct Transcript {
    GroupElement a;
    Challenge c;
    Scalar t;

    bool operator==(const Transcript&) const = default;
};

inline bool witness_consistent(const Statement& stmt, const Witness& w) {
    return exp(stmt.group, stmt.base, w.x) == stmt.y;
}

inline ProverState commit_with_nonce(const Statement& stmt, const Scalar& r) {
    return {r, exp(stmt.group, stmt.base, r)};
}

inline ProverState commit(const Statement& stmt, RandomSource& rng,
                          const std::optional<BigInt>& prover_modulus = {}) {
    return commit_with_nonce(stmt, random_scalar(stmt.group, rng, prover_modulus));
}

// t = r + c*x (mod q for ec/toy, mod phi(N) for rsa)
inline Scalar respond(const Statement& stmt, const ProverState& state, const Witness& witness,
                      const Challenge& c, const std::optional<BigInt>& prover_modulus = {}) {
    BigInt m = resolve_exponent_modulus(stmt.group, prover_modulus);
    return {mod(state.nonce.value + c.as_scalar(m).value * witness.x.value, m)};
}

// accept iff base^t == a * y^c
inline bool verify(const Statement& stmt, const Transcript& tr) {
    GroupElement lhs = exp(stmt.group, stmt.base, tr.t);
    GroupElement rhs = op(stmt.group, tr.a, exp(stmt.group, stmt.y, {tr.c.as_int()}));
    return lhs == rhs;
}

// HVZK simulator: pick t, set a = base^t * y^(-c); verifies by construction
inline Transcript simulate_with_response(const Statement& stmt, const Challenge& c,
                                         const Scalar& t) {
    GroupElement yc = exp(stmt.group, stmt.y, {c.as_int()});
    GroupElement a = op(stmt.group, exp(stmt.group, stmt.base, t), inverse(stmt.group, yc));
    return {a, c, t};
}

inline Transcript simulate(const Statement& stmt, const Challenge& c, RandomSource& rng,
                           const std::optional<BigInt>& prover_modulus = {}) {
    return simulate_with_response(stmt, c, random_scalar(stmt.group, rng, prover_modulus));
}

// Special-soundness extractor: x = (t - t') * (c - c')^(-1) mod exponent
// modulus, from two accepting transcripts sharing the commitment.
inline Scalar extract(const Statement& stmt, const Transcript& tr1, const Transcript& tr2,
                      const std::optional<BigInt>& prover_modulus = {}) {
    if (tr1.a != tr2.a) fail(ErrorKind::parameter, "transcripts do not share a commitment");
    if (tr1.c == tr2.c) fail(ErrorKind::extraction_impossible, "identical challenges");
    BigInt m = resolve_exponent_modulus(stmt.group, prover_modulus);
    BigInt dc = mod(tr1.c.as_int() - tr2.c.as_int(), m);
    auto inv = mod_inverse(dc, m);
    if (!inv)
        fail(ErrorKind::gcd_failure,
             "challenge difference not invertible modulo the exponent modulus");
    return {mod((tr1.t.value - tr2.t.value) * *inv, m)};
}

// wire layout: a (element width) || c (16 bytes BE) || t (scalar width)
inline size_t transcript_byte_len(const Group& g) {
    return g.element_byte_len() + kChallengeBytes + g.scalar_byte_len();
}

inline void serialize_transcript(const Group& g, const Transcript& tr, Bytes& out) {
    append(out, BytesView(encode_element(g, tr.a)));
    append(out, BytesView(tr.c.bytes.data(), tr.c.bytes.size()));
    append(out, BytesView(encode_scalar(g, tr.t)));
}

inline Bytes serialize_transcript(const Group& g, const Transcript& tr) {
    Bytes out;
    serialize_transcript(g, tr, out);
    return out;
}

inline Transcript parse_transcript(const Group& g, ByteReader& in) {
    Transcript tr;
    tr.a = decode_element(g, in.take(g.element_byte_len()));
    auto cb = in.take(kChallengeBytes);
    std::copy(cb.begin(), cb.end(), tr.c.bytes.begin());
    tr.t = decode_scalar(g, in.take(g.scalar_byte_len()));
    return tr;
}

inline Transcript parse_transcript(const Group& g, BytesView bytes) {
    ByteReader r(bytes);
    Transcript tr = parse_transcript(g, r);
    r.expect_end();
    return tr;
}

}  // namespace sigma
}  // namespace zkset
