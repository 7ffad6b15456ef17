#include <algorithm>
#include <numeric>

#include "mrsim/oracle/oracles.hpp"

namespace mrsim::oracle {

std::vector<std::uint64_t> prefix_sums_in_leaf_order(const std::vector<WeightedInput>& inputs,
                                                     const std::vector<LeafAssignment>& assignment) {
    std::vector<std::size_t> order(inputs.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto& x = assignment[a];
        const auto& y = assignment[b];
        if (x.leaf != y.leaf) return x.leaf < y.leaf;
        if (x.tiebreak != y.tiebreak) return x.tiebreak < y.tiebreak;
        return a < b;
    });
    std::vector<std::uint64_t> sums(inputs.size());
    std::uint64_t running = 0;
    for (std::size_t i : order) sums[i] = running += inputs[i].weight;
    return sums;
}

std::vector<std::uint64_t> ranks(const std::vector<SortRecord>& records) {
    std::vector<std::size_t> order(records.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return records[a] < records[b]; });
    std::vector<std::uint64_t> out(records.size());
    for (std::size_t r = 0; r < order.size(); ++r) out[order[r]] = r + 1;
    return out;
}

std::vector<std::uint64_t> ranks(const std::vector<Word>& values, const std::vector<Word>& tiebreak) {
    std::vector<SortRecord> records;
    records.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) records.push_back({values[i], 0, tiebreak[i]});
    return ranks(records);
}

std::vector<std::optional<Word>> successors(const std::vector<Word>& values) {
    std::vector<Word> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::optional<Word>> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        auto it = std::upper_bound(sorted.begin(), sorted.end(), values[i]);
        if (it != sorted.end()) out[i] = *it;
    }
    return out;
}

std::map<std::string, std::uint64_t> word_counts(const std::vector<std::string>& document) {
    std::map<std::string, std::uint64_t> out;
    for (const auto& w : document) ++out[w];
    return out;
}

std::vector<Word> histogram(const std::vector<Word>& values, std::uint64_t buckets) {
    std::vector<Word> out(buckets, 0);
    for (Word v : values) ++out.at(static_cast<std::size_t>(v));
    return out;
}

HullOutput graham_scan(const std::vector<Point2D>& points) {
    HullOutput out;
    if (points.empty()) return out;
    // One representative per distinct location: the lowest input index.
    std::map<Point2D, std::uint64_t> first;
    for (std::size_t i = 0; i < points.size(); ++i) first.emplace(points[i], i);
    std::vector<HullVertex> pts;
    for (const auto& [p, i] : first) pts.push_back({p, i});

    auto lowest = std::min_element(pts.begin(), pts.end(), [](const HullVertex& a, const HullVertex& b) {
        return a.point.y != b.point.y ? a.point.y < b.point.y : a.point.x < b.point.x;
    });
    std::iter_swap(pts.begin(), lowest);
    const Point2D pivot = pts[0].point;
    auto dist2 = [&](const Point2D& p) {
        const __int128 dx = static_cast<__int128>(p.x) - pivot.x;
        const __int128 dy = static_cast<__int128>(p.y) - pivot.y;
        return dx * dx + dy * dy;
    };
    std::sort(pts.begin() + 1, pts.end(), [&](const HullVertex& a, const HullVertex& b) {
        const __int128 o = orient(pivot, a.point, b.point);
        if (o != 0) return o > 0;
        return dist2(a.point) < dist2(b.point);
    });
    std::vector<HullVertex> stack;
    for (const auto& v : pts) {
        while (stack.size() >= 2 && orient(stack[stack.size() - 2].point, stack.back().point, v.point) <= 0)
            stack.pop_back();
        stack.push_back(v);
    }
    auto start = std::min_element(stack.begin(), stack.end(),
                                  [](const HullVertex& a, const HullVertex& b) { return a.point < b.point; });
    std::rotate(stack.begin(), start, stack.end());
    out.vertices = std::move(stack);
    return out;
}

}  // namespace mrsim::oracle
