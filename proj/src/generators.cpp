#include "mrsim/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace mrsim::gen {

std::vector<Word> uniform_words(std::size_t n, std::uint64_t seed, std::uint64_t range) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> dist(0, std::max<std::uint64_t>(range, 1) - 1);
    std::vector<Word> out(n);
    for (auto& w : out) w = static_cast<Word>(dist(rng));
    return out;
}

std::vector<std::string> uniform_document(std::size_t n, std::uint64_t seed, std::size_t vocab) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> dist(0, std::max<std::size_t>(vocab, 1) - 1);
    std::vector<std::string> out(n);
    for (auto& w : out) w = "w" + std::to_string(dist(rng));
    return out;
}

std::vector<std::string> zipf_document(std::size_t n, std::uint64_t seed, std::size_t vocab, double s) {
    std::vector<double> weights(std::max<std::size_t>(vocab, 1));
    for (std::size_t r = 0; r < weights.size(); ++r) weights[r] = 1.0 / std::pow(static_cast<double>(r + 1), s);
    std::mt19937_64 rng(seed);
    std::discrete_distribution<std::size_t> dist(weights.begin(), weights.end());
    std::vector<std::string> out(n);
    for (auto& w : out) w = "w" + std::to_string(dist(rng));
    return out;
}

std::vector<Point2D> uniform_points(std::size_t n, std::uint64_t seed, Word side) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Word> dist(0, side - 1);
    std::vector<Point2D> out(n);
    for (auto& p : out) {
        p.x = dist(rng);
        p.y = dist(rng);
    }
    return out;
}

std::vector<Point2D> circle_points(std::size_t n, std::uint64_t seed, Word radius) {
    std::vector<Point2D> out;
    out.reserve(n);
    const double r = static_cast<double>(radius);
    for (std::size_t i = 0; i < n; ++i) {
        const double a = 2 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
        out.push_back({static_cast<Word>(std::llround(r * std::cos(a))),
                       static_cast<Word>(std::llround(r * std::sin(a)))});
    }
    std::mt19937_64 rng(seed);
    std::shuffle(out.begin(), out.end(), rng);
    return out;
}

std::vector<Point2D> square_with_interior(std::size_t n, std::uint64_t seed, Word side) {
    std::vector<Point2D> out{{0, 0}, {side, 0}, {side, side}, {0, side}};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Word> dist(1, side - 1);
    while (out.size() < n) out.push_back({dist(rng), dist(rng)});
    out.resize(n);
    return out;
}

std::vector<Point2D> collinear_points(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Word> dist(-1'000'000, 1'000'000);
    std::vector<Point2D> out(n);
    for (auto& p : out) {
        p.x = dist(rng);
        p.y = 3 * p.x + 1;
    }
    return out;
}

}  // namespace mrsim::gen
