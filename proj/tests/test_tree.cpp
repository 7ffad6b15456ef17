#include <gtest/gtest.h>

#include <random>

#include "mrsim/tree.hpp"

using namespace mrsim;

TEST(Tree, Parent) {
    EXPECT_EQ(parent({3, 5}, 2), (NodeLabel{2, 2}));
    EXPECT_EQ(parent({2, 9}, 4), (NodeLabel{1, 2}));
    EXPECT_THROW(parent({0, 0}, 4), RootHasNoParent);
}

TEST(Tree, Params) {
    EXPECT_EQ(tree_params(4, 16).L, 6u);
    EXPECT_EQ(tree_params(4, 16).leaf_count, 4096u);
    EXPECT_EQ(tree_params(16, 4096).L, 9u);
    EXPECT_EQ(tree_params(2, 3).L, 5u);
    EXPECT_EQ(tree_params(2, 3).leaf_count, 32u);
    EXPECT_THROW(tree_params(1, 10), ConfigError);
    EXPECT_THROW(tree_params(4, 1), ConfigError);
    EXPECT_THROW(tree_params(2, (1u << 21) + 1), OverflowUnsupported);
}

TEST(Tree, CeilLog) {
    EXPECT_EQ(ceil_log(16, 1), 0u);
    EXPECT_EQ(ceil_log(16, 16), 1u);
    EXPECT_EQ(ceil_log(16, 17), 2u);
    EXPECT_EQ(ceil_log(10, 1000), 3u);
    EXPECT_EQ(ceil_log(2, 1u << 20), 20u);
}

TEST(TreeProperty, ChildrenInvertParent) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 500; ++trial) {
        const std::uint64_t B = 2 + rng() % 9;
        const std::uint64_t level = 1 + rng() % 6;
        const NodeLabel node{level, rng() % checked_pow(B, level)};
        const NodeLabel up = parent(node, B);
        const auto kids = children(up, B);
        ASSERT_EQ(kids.size(), B);
        EXPECT_NE(std::find(kids.begin(), kids.end(), node), kids.end());
        for (const auto& k : kids) EXPECT_EQ(parent(k, B), up);
        EXPECT_EQ(ancestor(node, 0, B), (NodeLabel{0, 0}));
        EXPECT_EQ(ancestor(node, level, B), node);
    }
}

TEST(TreeProperty, LeafCountCoversCube) {
    for (std::uint64_t B = 2; B < 40; ++B)
        for (std::uint64_t n : {2u, 3u, 10u, 100u, 1000u, 4096u, 50000u}) {
            const TreeParams t = tree_params(B, n);
            const std::uint64_t cube = n * n * n;
            EXPECT_GE(t.leaf_count, cube);
            if (t.L > 0) {
                EXPECT_LT(t.leaf_count / B, cube) << B << " " << n;
            }
        }
}
