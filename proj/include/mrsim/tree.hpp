#pragma once

#include <cstdint>
#include <vector>

#include "mrsim/errors.hpp"

namespace mrsim {

/// Node [level, index] of an implicit B-ary tree; the root is [0, 0].
struct NodeLabel {
    std::uint64_t level = 0;
    std::uint64_t index = 0;
    friend bool operator==(const NodeLabel&, const NodeLabel&) = default;
    friend auto operator<=>(const NodeLabel&, const NodeLabel&) = default;
};

NodeLabel parent(const NodeLabel& label, std::uint64_t B);
std::vector<NodeLabel> children(const NodeLabel& label, std::uint64_t B);

/// Ancestor of `label` at level `level` (<= label.level).
NodeLabel ancestor(const NodeLabel& label, std::uint64_t level, std::uint64_t B);

struct TreeParams {
    std::uint64_t B = 2;
    std::uint64_t Nhat = 2;
    std::uint64_t L = 1;
    std::uint64_t leaf_count = 2;  // B^L
    friend bool operator==(const TreeParams&, const TreeParams&) = default;
};

/// Smallest L with B^L >= Nhat^3, computed exactly.
TreeParams tree_params(std::uint64_t B, std::uint64_t Nhat);

/// Smallest k >= 0 with B^k >= n (so ceil_log(B, 1) == 0).
std::uint64_t ceil_log(std::uint64_t B, std::uint64_t n);

/// B^e, throwing OverflowUnsupported when it does not fit in 64 bits.
std::uint64_t checked_pow(std::uint64_t B, std::uint64_t e);

}  // namespace mrsim
