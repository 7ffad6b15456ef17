#include <gtest/gtest.h>

#include <random>

#include "mrsim/apps.hpp"
#include "mrsim/generators.hpp"
#include "mrsim/oracle/oracles.hpp"

using namespace mrsim;

namespace {

std::vector<std::uint64_t> ranks_of(const SortResult& r) {
    std::vector<std::uint64_t> out;
    for (const auto& it : r.ranked) out.push_back(it.rank);
    return out;
}

RoundConfig with_b(std::uint64_t b, std::uint64_t seed = 0) {
    RoundConfig cfg;
    cfg.buffer_capacity = b;
    cfg.seed = seed;
    return cfg;
}

}  // namespace

TEST(WordCount, Examples) {
    const auto r = word_count({"a", "b", "a"}, RoundConfig{});
    EXPECT_EQ(r.counts, (std::map<std::string, std::uint64_t>{{"a", 2}, {"b", 1}}));
    EXPECT_EQ(r.metrics.rounds, 1u);
    EXPECT_TRUE(word_count({}, RoundConfig{}).counts.empty());
    const auto the = word_count(std::vector<std::string>(1000, "the"), RoundConfig{});
    EXPECT_EQ(the.counts.at("the"), 1000u);
    EXPECT_EQ(the.metrics.max_io.items, 1001u);
}

TEST(WordCount, HardModeRejectsHotWord) {
    RoundConfig cfg = with_b(10);
    cfg.enforcement = Enforcement::hard;
    EXPECT_THROW(word_count(std::vector<std::string>(1000, "the"), cfg), BufferExceeded);
}

TEST(WordCount, MatchesOracle) {
    const auto doc = gen::zipf_document(5000, 3, 200);
    EXPECT_EQ(word_count(doc, with_b(64)).counts, oracle::word_counts(doc));
}

TEST(Sort, Examples) {
    EXPECT_EQ(ranks_of(mr_sort({9, 3, 7}, RoundConfig{})), (std::vector<std::uint64_t>{3, 1, 2}));
    EXPECT_EQ(ranks_of(mr_sort({5}, RoundConfig{})), (std::vector<std::uint64_t>{1}));
    EXPECT_EQ(ranks_of(mr_sort({4, 4}, RoundConfig{})), (std::vector<std::uint64_t>{1, 2}));
    EXPECT_TRUE(mr_sort({}, RoundConfig{}).ranked.empty());
}

TEST(Sort, RandomIndexTiebreak) {
    SortOptions opt;
    opt.tiebreak = Tiebreak::random_index;
    const std::vector<Word> xs{4, 4, 4, 1, 4};
    const SortResult r = mr_sort(xs, with_b(4, 9), opt);
    EXPECT_EQ(ranks_of(r), oracle::ranks(xs, r.tiebreak));
    EXPECT_EQ(r.ranked[3].rank, 1u);
}

TEST(Sort, RecordsRejectDuplicateIds) {
    EXPECT_THROW(sort_records({{1, 0, 5}, {2, 0, 5}}, RoundConfig{}), ConfigError);
}

TEST(SortProperty, MatchesOracle) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t n = rng() % 3000;
        const std::uint64_t b = 2 + rng() % 40;
        std::vector<Word> xs(n);
        const Word range = 1 + static_cast<Word>(rng() % (2 * n + 5));
        for (auto& x : xs) x = static_cast<Word>(rng() % range) - range / 2;
        const SortResult r = mr_sort(xs, with_b(b, rng()));
        ASSERT_EQ(ranks_of(r), oracle::ranks(xs, r.tiebreak)) << "n=" << n << " b=" << b;
        for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(r.ranked[i].value, xs[i]);
        EXPECT_EQ(metric_identity_violation(r.metrics), std::nullopt);
    }
}

TEST(SortProperty, HardModeWithinBuffer) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto xs = gen::uniform_words(10000, seed, 40000);
        RoundConfig cfg = with_b(22, seed);
        cfg.enforcement = Enforcement::hard;
        const SortResult r = mr_sort(xs, cfg);
        EXPECT_EQ(ranks_of(r), oracle::ranks(xs, r.tiebreak));
        EXPECT_LE(r.metrics.max_io.items, 8u * 22);
    }
}

TEST(Ann, Examples) {
    EXPECT_EQ(ann_1d({3, 9, 7}, RoundConfig{}).successor,
              (std::vector<std::optional<Word>>{7, std::nullopt, 9}));
    EXPECT_EQ(ann_1d({5}, RoundConfig{}).successor, (std::vector<std::optional<Word>>{std::nullopt}));
    EXPECT_EQ(ann_1d({1, 2, 3, 4}, RoundConfig{}).successor,
              (std::vector<std::optional<Word>>{2, 3, 4, std::nullopt}));
}

TEST(AnnProperty, MatchesOracle) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 1 + rng() % 2000;
        std::vector<Word> xs(n);
        const Word range = 1 + static_cast<Word>(rng() % (3 * n));
        for (auto& x : xs) x = static_cast<Word>(rng() % range);
        const AnnResult r = ann_1d(xs, with_b(2 + rng() % 30, rng()));
        EXPECT_EQ(r.successor, oracle::successors(xs));
        EXPECT_EQ(metric_identity_violation(r.metrics), std::nullopt);
    }
}
