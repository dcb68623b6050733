#pragma once

#include <algorithm>
#include <set>
#include <variant>
#include <vector>

#include "zkset/detail/multiexp.hpp"
#include "zkset/detail/parallel.hpp"
#include "zkset/orproof.hpp"
#include "zkset/sigma.hpp"

namespace zkset::setmember {

// Per-element commitments y_i = g^{x_i} plus their group-op fold y. The
// element list may be absent on commitments parsed from an aggregate-only
// file; everything but or-mode verification works without it.
struct SetCommitment {
    Group group;
    uint64_t n = 0;
    std::vector<GroupElement> element_commitments;
    GroupElement aggregate;

    bool has_elements() const { return !element_commitments.empty() || n == 0; }
};

// Prover-side secrets: the set elements, the aggregate witness (sum of the
// elements mod the exponent modulus) and, in the RSA trusted-setup mode, the
// exponent modulus phi(N) itself.
struct ProverKey {
    std::vector<Scalar> elements;
    Scalar aggregate_witness;
    BigInt exponent_modulus;
    bool rsa_mode = false;
};

enum class ProofMode : uint8_t { aggregate = 0, or_branch = 1 };
enum class ChallengeKind : uint8_t { interactive_recorded = 0, fiat_shamir = 1 };

struct MembershipProof {
    ProofMode mode;
    ChallengeKind challenge_kind;
    Group group;
    std::variant<sigma::Transcript, orproof::Transcript> payload;

    const sigma::Transcript& aggregate_payload() const {
        return std::get<sigma::Transcript>(payload);
    }
    const orproof::Transcript& or_payload() const {
        return std::get<orproof::Transcript>(payload);
    }
};

// ---------------------------------------------------------------------------
// setup and incremental updates

inline std::pair<SetCommitment, ProverKey> setup(const Group& group,
                                                 const std::vector<Scalar>& elements,
                                                 const SetupSecret* secret = nullptr,
                                                 unsigned parallelism = 1) {
    if (elements.empty()) fail(ErrorKind::empty_set, "setup requires a non-empty set");
    bool rsa = group.kind() == GroupKind::rsa;
    if (rsa && secret == nullptr)
        fail(ErrorKind::missing_setup_secret, "rsa setup requires the setup secret");
    BigInt m = rsa ? secret->phi : *group.public_order();

    std::vector<Scalar> reduced(elements.size());
    for (size_t i = 0; i < elements.size(); i++) reduced[i] = {mod(elements[i].value, m)};
    std::set<BigInt> seen;
    for (const auto& x : reduced)
        if (!seen.insert(x.value).second)
            fail(ErrorKind::duplicate_element, "duplicate set element");

    SetCommitment com;
    com.group = group;
    com.n = reduced.size();
    com.element_commitments.resize(reduced.size());
    detail::parallel_for(reduced.size(), parallelism, [&](size_t i) {
        com.element_commitments[i] = exp(group, group.generator(), reduced[i]);
    });
    GroupElement agg = identity(group);
    BigInt witness = 0;
    for (size_t i = 0; i < reduced.size(); i++) {
        agg = op(group, agg, com.element_commitments[i]);
        witness = mod(witness + reduced[i].value, m);
    }
    com.aggregate = agg;

    ProverKey key{std::move(reduced), {witness}, m, rsa};
    return {std::move(com), std::move(key)};
}

// aggregate must equal the fold of the element commitments (when present)
inline bool commitment_consistent(const SetCommitment& com) {
    if (com.element_commitments.empty()) return com.n == 0;
    if (com.n != com.element_commitments.size()) return false;
    GroupElement agg = identity(com.group);
    for (const auto& y : com.element_commitments) agg = op(com.group, agg, y);
    return agg == com.aggregate;
}

inline bool key_contains(const ProverKey& key, const Scalar& x) {
    BigInt v = mod(x.value, key.exponent_modulus);
    return std::any_of(key.elements.begin(), key.elements.end(),
                       [&](const Scalar& e) { return e.value == v; });
}

inline std::pair<SetCommitment, ProverKey> add_element(const SetCommitment& com,
                                                       const ProverKey& key,
                                                       const Scalar& x_new) {
    if (!com.has_elements())
        fail(ErrorKind::parameter, "incremental update requires element commitments");
    Scalar x{mod(x_new.value, key.exponent_modulus)};
    if (key_contains(key, x)) fail(ErrorKind::element_membership, "element already present");
    SetCommitment out = com;
    ProverKey key_out = key;
    GroupElement y = exp(com.group, com.group.generator(), x);
    out.element_commitments.push_back(y);
    out.aggregate = op(com.group, out.aggregate, y);
    out.n++;
    key_out.elements.push_back(x);
    key_out.aggregate_witness = {
        mod(key.aggregate_witness.value + x.value, key.exponent_modulus)};
    return {std::move(out), std::move(key_out)};
}

inline std::pair<SetCommitment, ProverKey> remove_element(const SetCommitment& com,
                                                          const ProverKey& key,
                                                          const Scalar& x_rm) {
    if (!com.has_elements())
        fail(ErrorKind::parameter, "incremental update requires element commitments");
    if (com.n <= 1) fail(ErrorKind::empty_set, "cannot remove the last element");
    Scalar x{mod(x_rm.value, key.exponent_modulus)};
    auto it = std::find_if(key.elements.begin(), key.elements.end(),
                           [&](const Scalar& e) { return e.value == x.value; });
    if (it == key.elements.end())
        fail(ErrorKind::element_membership, "element not present");
    size_t idx = static_cast<size_t>(it - key.elements.begin());
    SetCommitment out = com;
    ProverKey key_out = key;
    GroupElement y = out.element_commitments[idx];
    out.element_commitments.erase(out.element_commitments.begin() + idx);
    out.aggregate = op(com.group, out.aggregate, inverse(com.group, y));
    out.n--;
    key_out.elements.erase(key_out.elements.begin() + idx);
    key_out.aggregate_witness = {
        mod(key.aggregate_witness.value - x.value, key.exponent_modulus)};
    return {std::move(out), std::move(key_out)};
}

// ---------------------------------------------------------------------------
// Fiat-Shamir challenge derivation

inline constexpr const char* kAggregateLabel = "zkset/setmember/aggregate/v1";
inline constexpr const char* kOrLabel = "zkset/setmember/or/v1";

// c = low bits of SHA-256(label || group header || statement || announcements)
inline Challenge fiat_shamir_challenge(const Group& group, const std::string& label,
                                       BytesView statement, BytesView announcements,
                                       unsigned bits = kDefaultChallengeBits) {
    if (bits == 0 || bits > 8 * kChallengeBytes)
        fail(ErrorKind::parameter, "challenge width out of range");
    Sha256 h;
    h.update(std::string("zkset/fiat-shamir/v1"));
    Bytes lab;
    append_u32_be(lab, static_cast<uint32_t>(label.size()));
    h.update(lab);
    h.update(label);
    h.update(BytesView(write_group_header(group)));
    h.update(statement);
    h.update(announcements);
    auto digest = h.finalize();
    // low 128 bits of the 256-bit digest, narrowed further in test mode
    Challenge c;
    std::copy(digest.begin() + 16, digest.end(), c.bytes.begin());
    if (bits < 8 * kChallengeBytes) c = Challenge::from_int(c.as_int() & ((BigInt(1) << bits) - 1));
    return c;
}

inline Bytes aggregate_statement_bytes(const SetCommitment& com) {
    return encode_element(com.group, com.aggregate);
}

inline Bytes or_statement_bytes(const SetCommitment& com) {
    Bytes out;
    append_u64_be(out, com.n);
    for (const auto& y : com.element_commitments)
        append(out, BytesView(encode_element(com.group, y)));
    return out;
}

// ---------------------------------------------------------------------------
// proving

inline MembershipProof prove_aggregate(const SetCommitment& com, const ProverKey& key,
                                       RandomSource& rng,
                                       ChallengeKind kind = ChallengeKind::fiat_shamir,
                                       const std::optional<Challenge>& injected = {},
                                       unsigned challenge_bits = kDefaultChallengeBits) {
    sigma::Statement stmt{com.group, com.group.generator(), com.aggregate};
    std::optional<BigInt> pm;
    if (key.rsa_mode) pm = key.exponent_modulus;
    sigma::ProverState state = sigma::commit(stmt, rng, pm);
    Challenge c;
    if (kind == ChallengeKind::fiat_shamir) {
        c = fiat_shamir_challenge(com.group, kAggregateLabel,
                                  BytesView(aggregate_statement_bytes(com)),
                                  BytesView(encode_element(com.group, state.announced)),
                                  challenge_bits);
    } else {
        c = injected ? *injected : Challenge::random(rng, challenge_bits);
    }
    Scalar t = sigma::respond(stmt, state, {key.aggregate_witness}, c, pm);
    return {ProofMode::aggregate, kind, com.group, sigma::Transcript{state.announced, c, t}};
}

inline MembershipProof prove_or(const SetCommitment& com, size_t member_index,
                                const Scalar& member_value, RandomSource& rng,
                                ChallengeKind kind = ChallengeKind::fiat_shamir,
                                const std::optional<BigInt>& prover_modulus = {},
                                const std::optional<Challenge>& injected = {},
                                unsigned challenge_bits = kDefaultChallengeBits) {
    if (!com.has_elements())
        fail(ErrorKind::parameter, "or-mode proving requires element commitments");
    if (member_index >= com.element_commitments.size())
        fail(ErrorKind::parameter, "member index out of range");
    orproof::Statement stmt{com.group, com.group.generator(), com.element_commitments};
    Bytes statement = or_statement_bytes(com);
    ChallengeSource source;
    if (kind == ChallengeKind::fiat_shamir) {
        source = [&](BytesView announcements) {
            return fiat_shamir_challenge(com.group, kOrLabel, BytesView(statement),
                                         announcements, challenge_bits);
        };
    } else if (injected) {
        source = fixed_challenge(*injected);
    } else {
        source = random_challenge(rng, challenge_bits);
    }
    orproof::Transcript tr = orproof::prove(stmt, {member_index, member_value}, source, rng,
                                            prover_modulus, challenge_bits);
    return {ProofMode::or_branch, kind, com.group, std::move(tr)};
}

// ---------------------------------------------------------------------------
// verification

inline bool verify(const SetCommitment& com, const MembershipProof& proof,
                   unsigned challenge_bits = kDefaultChallengeBits) {
    if (!same_group(com.group, proof.group))
        fail(ErrorKind::params_mismatch, "proof was made for different group parameters");
    if (proof.mode == ProofMode::aggregate) {
        const auto& tr = proof.aggregate_payload();
        if (proof.challenge_kind == ChallengeKind::fiat_shamir) {
            Challenge expect = fiat_shamir_challenge(
                com.group, kAggregateLabel, BytesView(aggregate_statement_bytes(com)),
                BytesView(encode_element(com.group, tr.a)), challenge_bits);
            if (!(expect == tr.c)) return false;
        }
        sigma::Statement stmt{com.group, com.group.generator(), com.aggregate};
        return sigma::verify(stmt, tr);
    }
    if (!com.has_elements() || com.element_commitments.size() != com.n)
        fail(ErrorKind::parameter, "or-mode verification requires element commitments");
    const auto& tr = proof.or_payload();
    if (tr.branches.size() != com.n)
        fail(ErrorKind::malformed_proof, "branch count does not match the set size");
    if (proof.challenge_kind == ChallengeKind::fiat_shamir) {
        orproof::Statement stmt{com.group, com.group.generator(), com.element_commitments};
        std::vector<GroupElement> as;
        as.reserve(tr.branches.size());
        for (const auto& b : tr.branches) as.push_back(b.a);
        Challenge expect = fiat_shamir_challenge(
            com.group, kOrLabel, BytesView(or_statement_bytes(com)),
            BytesView(orproof::announcement_bytes(stmt, as)), challenge_bits);
        if (!(expect == tr.c)) return false;
    }
    orproof::Statement stmt{com.group, com.group.generator(), com.element_commitments};
    return orproof::verify(stmt, tr);
}

// ---------------------------------------------------------------------------
// batch verification (random linear combination, aggregate mode only)

struct BatchJob {
    struct Entry {
        const SetCommitment* commitment;
        const MembershipProof* proof;
    };
    std::vector<Entry> entries;
};

inline bool batch_verify(const BatchJob& job, RandomSource& rng, unsigned parallelism = 1,
                         unsigned challenge_bits = kDefaultChallengeBits) {
    if (job.entries.empty()) fail(ErrorKind::parameter, "empty batch");
    const Group& g = job.entries.front().commitment->group;
    for (const auto& e : job.entries) {
        if (!same_group(e.commitment->group, g) || !same_group(e.proof->group, g))
            fail(ErrorKind::params_mismatch, "batch entries use mixed group parameters");
        if (e.proof->mode != ProofMode::aggregate)
            fail(ErrorKind::parameter, "batch verification covers aggregate-mode proofs only");
    }

    size_t m = job.entries.size();
    // Fiat-Shamir challenges must still match their statements
    std::vector<bool> fs_ok(m, true);
    detail::parallel_for(m, parallelism, [&](size_t j) {
        const auto& e = job.entries[j];
        const auto& tr = e.proof->aggregate_payload();
        if (e.proof->challenge_kind == ChallengeKind::fiat_shamir) {
            Challenge expect = fiat_shamir_challenge(
                g, kAggregateLabel, BytesView(aggregate_statement_bytes(*e.commitment)),
                BytesView(encode_element(g, tr.a)), challenge_bits);
            fs_ok[j] = expect == tr.c;
        }
    });
    for (bool ok : fs_ok)
        if (!ok) return false;

    // random linear combination: g^(sum rho_j t_j) == prod a_j^rho_j y_j^(rho_j c_j)
    BigInt two128 = BigInt(1) << 128;
    std::vector<BigInt> rho(m);
    for (auto& r : rho) r = uniform_below(rng, two128 - 1) + 1;

    auto order = g.public_order();
    BigInt lhs_exp = 0;
    std::vector<std::pair<GroupElement, BigInt>> terms;
    terms.reserve(2 * m);
    for (size_t j = 0; j < m; j++) {
        const auto& tr = job.entries[j].proof->aggregate_payload();
        lhs_exp += rho[j] * tr.t.value;
        BigInt rc = rho[j] * tr.c.as_int();
        if (order) rc = mod(rc, *order);
        terms.emplace_back(tr.a, order ? mod(rho[j], *order) : rho[j]);
        terms.emplace_back(job.entries[j].commitment->aggregate, rc);
    }
    if (order) lhs_exp = mod(lhs_exp, *order);

    GroupElement lhs = detail::exp_integer(g.data(), g.generator(), lhs_exp);
    GroupElement rhs = detail::multi_exp(g.data(), terms);
    return lhs == rhs;
}

// ---------------------------------------------------------------------------
// file formats (bit-exact, golden-file tested)

// commitment: group header || n (8 BE) || aggregate || element list (optional)
inline Bytes serialize_commitment(const SetCommitment& com, bool include_elements = true) {
    Bytes out = write_group_header(com.group);
    append_u64_be(out, com.n);
    append(out, BytesView(encode_element(com.group, com.aggregate)));
    if (include_elements)
        for (const auto& y : com.element_commitments)
            append(out, BytesView(encode_element(com.group, y)));
    return out;
}

inline SetCommitment parse_commitment(BytesView bytes) {
    ByteReader in(bytes);
    SetCommitment com;
    com.group = read_group_header(in);
    com.n = in.u64_be();
    if (com.n == 0) fail(ErrorKind::decode, "commitment to an empty set");
    com.aggregate = decode_element(com.group, in.take(com.group.element_byte_len()));
    if (!in.exhausted()) {
        com.element_commitments.reserve(com.n);
        for (uint64_t i = 0; i < com.n; i++)
            com.element_commitments.push_back(
                decode_element(com.group, in.take(com.group.element_byte_len())));
        in.expect_end();
    }
    return com;
}

// proof: mode (1) || challenge kind (1) || group header || payload
inline Bytes serialize_proof(const MembershipProof& proof) {
    Bytes out;
    append_u8(out, static_cast<uint8_t>(proof.mode));
    append_u8(out, static_cast<uint8_t>(proof.challenge_kind));
    append(out, BytesView(write_group_header(proof.group)));
    if (proof.mode == ProofMode::aggregate)
        sigma::serialize_transcript(proof.group, proof.aggregate_payload(), out);
    else
        orproof::serialize_transcript(proof.group, proof.or_payload(), out);
    return out;
}

inline MembershipProof parse_proof(BytesView bytes) {
    ByteReader in(bytes);
    uint8_t mode = in.u8();
    uint8_t kind = in.u8();
    if (mode > 1 || kind > 1) fail(ErrorKind::decode, "bad proof tags");
    Group g = read_group_header(in);
    MembershipProof proof{static_cast<ProofMode>(mode), static_cast<ChallengeKind>(kind), g,
                          sigma::Transcript{}};
    if (proof.mode == ProofMode::aggregate)
        proof.payload = sigma::parse_transcript(g, in);
    else
        proof.payload = orproof::parse_transcript(g, in);
    in.expect_end();
    return proof;
}

// prover key (secret): group header || rsa flag (1) || [phi] || n (8 BE) ||
// elements || aggregate witness
inline Bytes serialize_prover_key(const Group& g, const ProverKey& key) {
    Bytes out = write_group_header(g);
    append_u8(out, key.rsa_mode ? 1 : 0);
    if (key.rsa_mode) append(out, BytesView(be_bytes(key.exponent_modulus, g.scalar_byte_len())));
    append_u64_be(out, key.elements.size());
    for (const auto& x : key.elements) append(out, BytesView(encode_scalar(g, x)));
    append(out, BytesView(encode_scalar(g, key.aggregate_witness)));
    return out;
}

inline std::pair<Group, ProverKey> parse_prover_key(BytesView bytes) {
    ByteReader in(bytes);
    Group g = read_group_header(in);
    ProverKey key;
    key.rsa_mode = in.u8() != 0;
    if (key.rsa_mode)
        key.exponent_modulus = from_be_bytes(in.take(g.scalar_byte_len()));
    else
        key.exponent_modulus = *g.public_order();
    uint64_t n = in.u64_be();
    key.elements.reserve(n);
    for (uint64_t i = 0; i < n; i++)
        key.elements.push_back({from_be_bytes(in.take(g.scalar_byte_len()))});
    key.aggregate_witness = {from_be_bytes(in.take(g.scalar_byte_len()))};
    in.expect_end();
    return {std::move(g), std::move(key)};
}

}  // namespace zkset::setmember
