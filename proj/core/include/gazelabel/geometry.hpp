#pragma once

#include <cmath>

namespace gazelabel {

struct Point2d {
    double x = 0.0;
    double y = 0.0;

    friend constexpr Point2d operator+(Point2d a, Point2d b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Point2d operator-(Point2d a, Point2d b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Point2d operator*(Point2d a, double s) { return {a.x * s, a.y * s}; }
    friend constexpr Point2d operator*(double s, Point2d a) { return {a.x * s, a.y * s}; }
    friend constexpr bool operator==(Point2d, Point2d) = default;
};

struct Point2i {
    int x = 0;
    int y = 0;

    friend constexpr bool operator==(Point2i, Point2i) = default;
};

constexpr Point2d to_double(Point2i p) { return {static_cast<double>(p.x), static_cast<double>(p.y)}; }

inline double distance(Point2d a, Point2d b) { return std::hypot(a.x - b.x, a.y - b.y); }

constexpr Point2d midpoint(Point2d a, Point2d b) { return {(a.x + b.x) / 2.0, (a.y + b.y) / 2.0}; }

}  // namespace gazelabel
