#include "mrsim/geometry.hpp"

#include <algorithm>
#include <sstream>

namespace mrsim {

__int128 orient(const Point2D& a, const Point2D& b, const Point2D& c) {
    const __int128 abx = static_cast<__int128>(b.x) - a.x;
    const __int128 aby = static_cast<__int128>(b.y) - a.y;
    const __int128 acx = static_cast<__int128>(c.x) - a.x;
    const __int128 acy = static_cast<__int128>(c.y) - a.y;
    return abx * acy - aby * acx;
}

void monotone_chains(const std::vector<HullVertex>& sorted, std::vector<HullVertex>& lower,
                     std::vector<HullVertex>& upper) {
    lower.clear();
    upper.clear();
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const HullVertex& v = sorted[i];
        if (i > 0 && sorted[i - 1].point == v.point) continue;
        while (lower.size() >= 2 && orient(lower[lower.size() - 2].point, lower.back().point, v.point) <= 0)
            lower.pop_back();
        lower.push_back(v);
        while (upper.size() >= 2 && orient(upper[upper.size() - 2].point, upper.back().point, v.point) >= 0)
            upper.pop_back();
        upper.push_back(v);
    }
}

HullOutput join_chains(const std::vector<HullVertex>& lower, const std::vector<HullVertex>& upper) {
    HullOutput out;
    out.vertices = lower;
    if (lower.size() < 2) return out;
    for (std::size_t i = upper.size() - 1; i-- > 1;) out.vertices.push_back(upper[i]);
    return out;
}

std::optional<std::string> hull_violation(const std::vector<Point2D>& points, const HullOutput& hull) {
    const auto& v = hull.vertices;
    if (points.empty()) return v.empty() ? std::nullopt : std::optional<std::string>("hull of no points");
    if (v.empty()) return "empty hull";
    for (const auto& h : v)
        if (h.index >= points.size() || points[h.index] != h.point) return "hull vertex not in input";
    const std::size_t n = v.size();
    if (n == 1) {
        for (const auto& p : points)
            if (p != v[0].point) return "single-vertex hull misses a point";
        return std::nullopt;
    }
    if (n == 2) {
        for (const auto& p : points) {
            if (orient(v[0].point, v[1].point, p) != 0) return "segment hull misses a point";
            if (p < std::min(v[0].point, v[1].point) || p > std::max(v[0].point, v[1].point))
                return "point beyond segment hull";
        }
        return std::nullopt;
    }
    for (std::size_t i = 0; i < n; ++i)
        if (orient(v[i].point, v[(i + 1) % n].point, v[(i + 2) % n].point) <= 0)
            return "hull turn at vertex " + std::to_string((i + 1) % n) + " is not strictly left";
    for (const auto& p : points)
        for (std::size_t i = 0; i < n; ++i)
            if (orient(v[i].point, v[(i + 1) % n].point, p) < 0) return "a point lies outside the hull";
    return std::nullopt;
}

namespace {

struct Decimal {
    __int128 mantissa = 0;
    int decimals = 0;
};

Decimal parse_decimal(std::string s) {
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
    if (s.empty()) throw UnsupportedFormat("empty coordinate");
    Decimal d;
    bool negative = false;
    std::size_t i = 0;
    if (s[0] == '-' || s[0] == '+') {
        negative = s[0] == '-';
        ++i;
    }
    bool seen_point = false;
    bool seen_digit = false;
    for (; i < s.size(); ++i) {
        const char c = s[i];
        if (c == '.' && !seen_point) {
            seen_point = true;
        } else if (c >= '0' && c <= '9') {
            d.mantissa = d.mantissa * 10 + (c - '0');
            if (seen_point) ++d.decimals;
            seen_digit = true;
            if (d.mantissa > (static_cast<__int128>(1) << 100)) throw UnsupportedFormat("coordinate too long: " + s);
        } else {
            throw UnsupportedFormat("bad coordinate: " + s);
        }
    }
    if (!seen_digit) throw UnsupportedFormat("bad coordinate: " + s);
    if (negative) d.mantissa = -d.mantissa;
    return d;
}

}  // namespace

std::vector<Point2D> parse_points_csv(std::istream& in) {
    std::vector<std::pair<Decimal, Decimal>> raw;
    int scale = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw UnsupportedFormat("expected x,y in line: " + line);
        std::string ys = line.substr(comma + 1);
        if (!ys.empty() && ys.back() == '\r') ys.pop_back();
        auto x = parse_decimal(line.substr(0, comma));
        auto y = parse_decimal(ys);
        scale = std::max({scale, x.decimals, y.decimals});
        raw.emplace_back(x, y);
    }
    const __int128 limit = static_cast<__int128>(1) << 62;
    auto to_word = [&](const Decimal& d) {
        __int128 v = d.mantissa;
        for (int k = d.decimals; k < scale; ++k) {
            v *= 10;
            if (v >= limit || v <= -limit) throw UnsupportedFormat("coordinate exceeds 2^62 after scaling");
        }
        if (v >= limit || v <= -limit) throw UnsupportedFormat("coordinate exceeds 2^62");
        return static_cast<Word>(v);
    };
    std::vector<Point2D> out;
    out.reserve(raw.size());
    for (const auto& [x, y] : raw) out.push_back({to_word(x), to_word(y)});
    return out;
}

}  // namespace mrsim
