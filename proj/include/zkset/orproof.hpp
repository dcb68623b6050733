#pragma once

#include <functional>
#include <vector>

#include "zkset/sigma.hpp"

namespace zkset {

// Produces the verifier challenge once all announcements are fixed. The
// argument is the serialized announcement block, so a Fiat-Shamir source can
// bind it into the hash; interactive sources may ignore it.
using ChallengeSource = std::function<Challenge(BytesView announcements)>;

inline ChallengeSource fixed_challenge(Challenge c) {
    return [c](BytesView) { return c; };
}

inline ChallengeSource random_challenge(RandomSource& rng,
                                        unsigned bits = kDefaultChallengeBits) {
    return [&rng, bits](BytesView) { return Challenge::random(rng, bits); };
}

namespace orproof {

// Prove knowledge of a discrete log for at least one of n branch values,
// without revealing which branch. All branches share one group and base.
struct Statement {
    Group group;
    GroupElement base;
    std::vector<GroupElement> branches;
};

struct Witness {
    size_t index = 0;  // which branch the prover actually knows
    Scalar x;
};

// Per-branch sigma transcripts plus the overall challenge; the branch
// challenges XOR to the overall one.
struct Transcript {
    Challenge c;
    std::vector<sigma::Transcript> branches;

    bool operator==(const Transcript&) const = default;
};

inline sigma::Statement branch_statement(const Statement& stmt, size_t i) {
    return {stmt.group, stmt.base, stmt.branches[i]};
}

inline Bytes announcement_bytes(const Statement& stmt, const std::vector<GroupElement>& as) {
    Bytes out;
    for (const auto& a : as) append(out, BytesView(encode_element(stmt.group, a)));
    return out;
}

inline Transcript prove(const Statement& stmt, const Witness& witness,
                        const ChallengeSource& challenge_source, RandomSource& rng,
                        const std::optional<BigInt>& prover_modulus = {},
                        unsigned challenge_bits = kDefaultChallengeBits) {
    size_t n = stmt.branches.size();
    if (n == 0) fail(ErrorKind::parameter, "no branches");
    if (witness.index >= n) fail(ErrorKind::parameter, "witness branch out of range");

    // simulate every non-witness branch with its own uniform challenge share,
    // before the overall challenge exists (interactive order)
    std::vector<sigma::Transcript> branches(n);
    for (size_t i = 0; i < n; i++) {
        if (i == witness.index) continue;
        Challenge ci = Challenge::random(rng, challenge_bits);
        branches[i] = sigma::simulate(branch_statement(stmt, i), ci, rng, prover_modulus);
    }

    // honest commitment on the witness branch
    sigma::Statement bstmt = branch_statement(stmt, witness.index);
    sigma::ProverState state = sigma::commit(bstmt, rng, prover_modulus);
    branches[witness.index].a = state.announced;

    std::vector<GroupElement> announcements;
    announcements.reserve(n);
    for (const auto& b : branches) announcements.push_back(b.a);
    Challenge c = challenge_source(BytesView(announcement_bytes(stmt, announcements)));

    // the witness branch absorbs whatever share makes the XOR close
    Challenge cb = c;
    for (size_t i = 0; i < n; i++)
        if (i != witness.index) cb = cb.xored(branches[i].c);
    branches[witness.index].c = cb;
    branches[witness.index].t =
        sigma::respond(bstmt, state, {witness.x}, cb, prover_modulus);

    return {c, std::move(branches)};
}

// accept iff the branch challenges XOR to the overall challenge and every
// branch transcript verifies against its branch value
inline bool verify(const Statement& stmt, const Transcript& tr) {
    size_t n = stmt.branches.size();
    if (n == 0 || tr.branches.size() != n)
        fail(ErrorKind::malformed_proof, "branch count mismatch");
    Challenge combined{};
    for (const auto& b : tr.branches) combined = combined.xored(b.c);
    if (!(combined == tr.c)) return false;
    for (size_t i = 0; i < n; i++)
        if (!sigma::verify(branch_statement(stmt, i), tr.branches[i])) return false;
    return true;
}

// wire layout: n (4 bytes BE) || c (16 bytes) || n * (a || c_i || t_i)
inline size_t transcript_byte_len(const Group& g, size_t n) {
    return 4 + kChallengeBytes + n * sigma::transcript_byte_len(g);
}

inline void serialize_transcript(const Group& g, const Transcript& tr, Bytes& out) {
    append_u32_be(out, static_cast<uint32_t>(tr.branches.size()));
    append(out, BytesView(tr.c.bytes.data(), tr.c.bytes.size()));
    for (const auto& b : tr.branches) sigma::serialize_transcript(g, b, out);
}

inline Bytes serialize_transcript(const Group& g, const Transcript& tr) {
    Bytes out;
    serialize_transcript(g, tr, out);
    return out;
}

inline Transcript parse_transcript(const Group& g, ByteReader& in) {
    Transcript tr;
    uint32_t n = in.u32_be();
    if (n == 0) fail(ErrorKind::decode, "empty or-transcript");
    auto cb = in.take(kChallengeBytes);
    std::copy(cb.begin(), cb.end(), tr.c.bytes.begin());
    tr.branches.reserve(n);
    for (uint32_t i = 0; i < n; i++) tr.branches.push_back(sigma::parse_transcript(g, in));
    return tr;
}

inline Transcript parse_transcript(const Group& g, BytesView bytes) {
    ByteReader r(bytes);
    Transcript tr = parse_transcript(g, r);
    r.expect_end();
    return tr;
}

}  // namespace orproof
}  // namespace zkset
