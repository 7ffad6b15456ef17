#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mrsim/geometry.hpp"
#include "mrsim/types.hpp"

namespace mrsim::gen {

/// Uniform words in [0, range).
std::vector<Word> uniform_words(std::size_t n, std::uint64_t seed, std::uint64_t range);

/// Words drawn uniformly from a vocabulary of `vocab` tokens "w0", "w1", ...
std::vector<std::string> uniform_document(std::size_t n, std::uint64_t seed, std::size_t vocab);

/// Tokens with Zipf(s) frequencies over a vocabulary of `vocab` ranks.
std::vector<std::string> zipf_document(std::size_t n, std::uint64_t seed, std::size_t vocab,
                                       double s = 1.0);

/// Uniform integer points in [0, side)^2.
std::vector<Point2D> uniform_points(std::size_t n, std::uint64_t seed, Word side);

/// Points rounded from a circle of the given radius; every one is a hull vertex
/// when the radius is large relative to n^2.
std::vector<Point2D> circle_points(std::size_t n, std::uint64_t seed, Word radius = Word{1} << 40);

/// The four corners of [0, side]^2 followed by interior points.
std::vector<Point2D> square_with_interior(std::size_t n, std::uint64_t seed, Word side);

/// Points on the line y = 3x + 1, in random order with repeats allowed.
std::vector<Point2D> collinear_points(std::size_t n, std::uint64_t seed);

}  // namespace mrsim::gen
