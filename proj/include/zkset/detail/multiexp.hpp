#pragma once

#include <utility>
#include <vector>

#include "zkset/group.hpp"

namespace zkset::detail {

// Simultaneous multi-exponentiation (bucket method): computes the group-op
// fold of base_j ^ exp_j far cheaper than exponentiating term by term. Used
// by batch verification.
inline GroupElement multi_exp(const GroupData& g,
                              const std::vector<std::pair<GroupElement, BigInt>>& terms) {
    GroupElement id = identity_of(g);
    if (terms.empty()) return id;
    if (terms.size() <= 4) {
        GroupElement acc = id;
        for (const auto& [base, e] : terms) acc = op_impl(g, acc, exp_impl(g, base, e));
        return acc;
    }

    size_t max_bits = 1;
    for (const auto& [base, e] : terms) max_bits = std::max(max_bits, bit_length(e));

    unsigned window = 2;
    while (window < 16 && (size_t(1) << (window + 1)) < terms.size()) window++;
    size_t windows = (max_bits + window - 1) / window;
    size_t mask = (size_t(1) << window) - 1;

    GroupElement acc = id;
    std::vector<GroupElement> buckets(mask + 1, id);
    std::vector<bool> used(mask + 1, false);
    for (size_t w = windows; w-- > 0;) {
        for (unsigned s = 0; s < window; s++) acc = op_impl(g, acc, acc);
        std::fill(used.begin(), used.end(), false);
        for (const auto& [base, e] : terms) {
            size_t digit = static_cast<size_t>((e >> (w * window)) & mask);
            if (digit == 0) continue;
            buckets[digit] = used[digit] ? op_impl(g, buckets[digit], base) : base;
            used[digit] = true;
        }
        // suffix-sum the buckets: sum of d * bucket[d]
        GroupElement running = id, total = id;
        for (size_t d = mask; d >= 1; d--) {
            if (used[d]) running = op_impl(g, running, buckets[d]);
            total = op_impl(g, total, running);
        }
        acc = op_impl(g, acc, total);
    }
    return acc;
}

}  // namespace zkset::detail
