#include "mrsim/tree.hpp"

#include <string>

#include "mrsim/errors.hpp"

namespace mrsim {

NodeLabel parent(const NodeLabel& label, std::uint64_t B) {
    if (label.level == 0) throw RootHasNoParent();
    return {label.level - 1, label.index / B};
}

std::vector<NodeLabel> children(const NodeLabel& label, std::uint64_t B) {
    std::vector<NodeLabel> out;
    out.reserve(B);
    for (std::uint64_t k = 0; k < B; ++k) out.push_back({label.level + 1, label.index * B + k});
    return out;
}

NodeLabel ancestor(const NodeLabel& label, std::uint64_t level, std::uint64_t B) {
    NodeLabel cur = label;
    while (cur.level > level) cur = parent(cur, B);
    return cur;
}

std::uint64_t checked_pow(std::uint64_t B, std::uint64_t e) {
    unsigned __int128 v = 1;
    for (std::uint64_t i = 0; i < e; ++i) {
        v *= B;
        if (v > UINT64_MAX)
            throw OverflowUnsupported(std::to_string(B) + "^" + std::to_string(e) +
                                      " exceeds 64-bit labels");
    }
    return static_cast<std::uint64_t>(v);
}

std::uint64_t ceil_log(std::uint64_t B, std::uint64_t n) {
    if (B < 2) throw ConfigError("logarithm base must be at least 2");
    std::uint64_t k = 0;
    unsigned __int128 v = 1;
    while (v < n) {
        v *= B;
        ++k;
    }
    return k;
}

TreeParams tree_params(std::uint64_t B, std::uint64_t Nhat) {
    if (B < 2) throw ConfigError("fan-out B must be at least 2");
    if (Nhat < 2) throw ConfigError("Nhat must be at least 2");
    if (Nhat > (1ULL << 21))
        throw OverflowUnsupported("Nhat^3 exceeds the 64-bit leaf label width");
    const unsigned __int128 cube = static_cast<unsigned __int128>(Nhat) * Nhat * Nhat;
    std::uint64_t L = 0;
    unsigned __int128 v = 1;
    while (v < cube) {
        v *= B;
        ++L;
    }
    if (v > UINT64_MAX) throw OverflowUnsupported("B^L exceeds the 64-bit leaf label width");
    return {B, Nhat, L, static_cast<std::uint64_t>(v)};
}

}  // namespace mrsim
