#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "mrsim/apps.hpp"
#include "mrsim/engine.hpp"

namespace mrsim {

/// Integer point; |x|, |y| < 2^62 keeps every orientation test exact in 128 bits.
struct Point2D {
    Word x = 0;
    Word y = 0;
    friend bool operator==(const Point2D&, const Point2D&) = default;
    friend auto operator<=>(const Point2D&, const Point2D&) = default;
};

/// Twice the signed area of (a, b, c): positive for a left turn.
__int128 orient(const Point2D& a, const Point2D& b, const Point2D& c);

struct HullVertex {
    Point2D point;
    std::uint64_t index = 0;  // position in the input
    friend bool operator==(const HullVertex&, const HullVertex&) = default;
};

/// Convex hull vertices, counter-clockwise, starting at the lexicographically
/// smallest point. Collinear boundary points are excluded; among coincident
/// points the lowest input index is reported.
struct HullOutput {
    std::vector<HullVertex> vertices;
    friend bool operator==(const HullOutput&, const HullOutput&) = default;
};

/// Lower and upper monotone chains of points already sorted by (x, y, index).
void monotone_chains(const std::vector<HullVertex>& sorted, std::vector<HullVertex>& lower,
                     std::vector<HullVertex>& upper);

/// Joins lower and upper chains into a counter-clockwise cycle.
HullOutput join_chains(const std::vector<HullVertex>& lower, const std::vector<HullVertex>& upper);

/// Empty when `hull` is a strictly convex ccw polygon containing every point.
std::optional<std::string> hull_violation(const std::vector<Point2D>& points, const HullOutput& hull);

struct HullResult {
    HullOutput hull;
    RunMetrics metrics;
    std::size_t merge_rounds = 0;
};

/// Sorts by (x, y), computes strip hulls, then merges chains up a tree whose
/// fan-in is picked per level so each merge input stays within about 3B items.
HullResult hull_2d(const std::vector<Point2D>& points, const RoundConfig& cfg,
                   const SortOptions& options = {});

/// Reads "x,y" lines with integer or decimal coordinates, scaling every value
/// by a common power of ten so the points stay exact integers.
std::vector<Point2D> parse_points_csv(std::istream& in);

}  // namespace mrsim
