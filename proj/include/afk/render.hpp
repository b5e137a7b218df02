#pragma once

#include <array>
#include <string>
#include <vector>

#include "afk/moebius.hpp"

// Minimal raster output: boundary-point scatter plots in one of two fixed
// stereographic charts (around 0 and around infinity), with optional
// spherical circles, written as binary PPM.

namespace afk {

struct Image {
    int width = 0;
    int height = 0;
    std::vector<unsigned char> rgb;  // 3 bytes per pixel, row-major

    Image(int w, int h) : width(w), height(h), rgb(3 * w * h, 255) {}
    void set(int x, int y, unsigned char r, unsigned char g, unsigned char b);
};

std::string image_to_ppm(const Image& img);

enum class Chart { Zero, Infinity };  // plot z, or 1/z

struct ChartCircle {
    BoundaryPoint center;
    double radius = 0.0;  // spherical radius
    std::array<unsigned char, 3> color{255, 0, 0};
};

// Scatter plot of the points (black) plus circle outlines; `extent` is the
// half-width of the chart window centred at 0.
Image render_boundary_points(const std::vector<BoundaryPoint>& points, Chart chart, int size,
                             double extent = 1.5,
                             const std::vector<ChartCircle>& circles = {});

}  // namespace afk
