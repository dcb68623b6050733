#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <vector>

#include "zkset/bytes.hpp"
#include "zkset/detail/parallel.hpp"
#include "zkset/errors.hpp"
#include "zkset/sha256.hpp"

namespace zkset::merkle {

using Digest = Sha256::Digest;

// proof file header: n (8 bytes) || index (8 bytes)
inline constexpr size_t kProofHeaderBytes = 16;

inline Digest hash_leaf(BytesView data) {
    Sha256 h;
    h.update_byte(0x00);  // domain separation: leaves vs internal nodes
    h.update(data);
    return h.finalize();
}

inline Digest hash_node(const Digest& left, const Digest& right) {
    Sha256 h;
    h.update_byte(0x01);
    h.update(BytesView(left.data(), left.size()));
    h.update(BytesView(right.data(), right.size()));
    return h.finalize();
}

// Binary tree with the odd node of a layer paired against a copy of itself.
struct Tree {
    std::vector<std::vector<Digest>> layers;  // layers[0] = leaf digests

    size_t leaf_count() const { return layers.front().size(); }
    const Digest& root() const { return layers.back().front(); }
    size_t depth() const { return layers.size() - 1; }
};

struct Proof {
    uint64_t n = 0;
    uint64_t index = 0;
    std::vector<Digest> siblings;  // bottom-up
};

inline Tree build(const std::vector<Bytes>& leaves, unsigned parallelism = 1) {
    if (leaves.empty()) fail(ErrorKind::empty_set, "merkle tree needs at least one leaf");
    Tree tree;
    tree.layers.emplace_back(leaves.size());
    detail::parallel_for(leaves.size(), parallelism,
                         [&](size_t i) { tree.layers[0][i] = hash_leaf(BytesView(leaves[i])); });
    while (tree.layers.back().size() > 1) {
        const auto& prev = tree.layers.back();
        size_t out_n = (prev.size() + 1) / 2;
        std::vector<Digest> next(out_n);
        detail::parallel_for(out_n, parallelism, [&](size_t i) {
            const Digest& left = prev[2 * i];
            const Digest& right = 2 * i + 1 < prev.size() ? prev[2 * i + 1] : prev[2 * i];
            next[i] = hash_node(left, right);
        });
        tree.layers.push_back(std::move(next));
    }
    return tree;
}

inline Proof prove(const Tree& tree, uint64_t index) {
    if (index >= tree.leaf_count()) fail(ErrorKind::parameter, "leaf index out of range");
    Proof proof{tree.leaf_count(), index, {}};
    size_t pos = index;
    for (size_t level = 0; level + 1 < tree.layers.size(); level++) {
        const auto& layer = tree.layers[level];
        size_t sib = pos ^ 1;
        proof.siblings.push_back(sib < layer.size() ? layer[sib] : layer[pos]);
        pos >>= 1;
    }
    return proof;
}

inline bool verify(const Digest& root, BytesView leaf_data, const Proof& proof) {
    if (proof.n == 0 || proof.index >= proof.n) return false;
    Digest h = hash_leaf(leaf_data);
    uint64_t pos = proof.index;
    for (const auto& sib : proof.siblings) {
        h = (pos & 1) ? hash_node(sib, h) : hash_node(h, sib);
        pos >>= 1;
    }
    return h == root;
}

inline size_t depth_for(uint64_t n) {
    size_t d = 0;
    uint64_t span = 1;
    while (span < n) {
        span <<= 1;
        d++;
    }
    return d;  // = ceil(log2 n), 0 for n = 1
}

// closed form: 32 * ceil(log2 n) + header
inline size_t proof_size_bytes(uint64_t n, size_t header_bytes = kProofHeaderBytes) {
    if (n == 0) fail(ErrorKind::parameter, "set size must be positive");
    return 32 * depth_for(n) + header_bytes;
}

// least n with proof_size_bytes(n) > constant_proof_bytes
inline uint64_t crossover_point(size_t constant_proof_bytes,
                                size_t header_bytes = kProofHeaderBytes) {
    if (header_bytes > constant_proof_bytes) return 1;
    size_t levels = (constant_proof_bytes - header_bytes) / 32 + 1;
    return (uint64_t(1) << (levels - 1)) + 1;
}

// Patricia-Merkle reference numbers; reporting only, never used to verify.
struct PatriciaCostModel {
    struct Row {
        uint64_t n;
        double avg_path_length;
        double avg_proof_bytes;
    };

    static const std::vector<Row>& rows() {
        static const std::vector<Row> table = {
            {100, 2.33, 41.7},          {1000, 3.19, 489.05},
            {10000, 4.04, 890.47},      {100000, 4.85, 1270.88},
            {1000000, 5.65, 1695.27},   {10000000, 6.46, 2104.16},
            {100000000, 7.31, 2513.06}, {300000000, 7.72, 2921.95},
        };
        return table;
    }

    // linear interpolation in n between table rows
    static std::optional<double> crossover(double constant_proof_bytes) {
        const auto& t = rows();
        if (constant_proof_bytes < t.front().avg_proof_bytes)
            return static_cast<double>(t.front().n);
        for (size_t i = 0; i + 1 < t.size(); i++) {
            if (constant_proof_bytes >= t[i].avg_proof_bytes &&
                constant_proof_bytes < t[i + 1].avg_proof_bytes) {
                double f = (constant_proof_bytes - t[i].avg_proof_bytes) /
                           (t[i + 1].avg_proof_bytes - t[i].avg_proof_bytes);
                return t[i].n + f * (double(t[i + 1].n) - double(t[i].n));
            }
        }
        return std::nullopt;  // the table never exceeds this proof size
    }
};

// proof file: n (8 BE) || index (8 BE) || sibling digests
inline Bytes serialize_proof(const Proof& proof) {
    Bytes out;
    append_u64_be(out, proof.n);
    append_u64_be(out, proof.index);
    for (const auto& d : proof.siblings) append(out, BytesView(d.data(), d.size()));
    return out;
}

inline Proof parse_proof(BytesView bytes) {
    ByteReader in(bytes);
    Proof proof;
    proof.n = in.u64_be();
    proof.index = in.u64_be();
    if (proof.n == 0 || proof.index >= proof.n) fail(ErrorKind::decode, "bad proof header");
    size_t expect = depth_for(proof.n);
    if (in.remaining() != expect * 32) fail(ErrorKind::decode, "bad sibling count");
    for (size_t i = 0; i < expect; i++) {
        Digest d;
        auto b = in.take(32);
        std::copy(b.begin(), b.end(), d.begin());
        proof.siblings.push_back(d);
    }
    return proof;
}

}  // namespace zkset::merkle
