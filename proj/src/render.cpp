#include "afk/render.hpp"

#include <cmath>
#include <numbers>

namespace afk {

namespace {

// Chart coordinate of a boundary point; nullopt when out of chart.
bool chart_coord(const BoundaryPoint& p, Chart chart, cplx& out) {
    if (chart == Chart::Zero) {
        if (p.infinite) return false;
        out = p.z;
        return true;
    }
    if (p.infinite) {
        out = cplx{0, 0};
        return true;
    }
    if (std::abs(p.z) < 1e-12) return false;
    out = 1.0 / p.z;
    return true;
}

}  // namespace

void Image::set(int x, int y, unsigned char r, unsigned char g, unsigned char b) {
    if (x < 0 || x >= width || y < 0 || y >= height) return;
    const int k = 3 * (y * width + x);
    rgb[k] = r;
    rgb[k + 1] = g;
    rgb[k + 2] = b;
}

std::string image_to_ppm(const Image& img) {
    std::string out = "P6\n" + std::to_string(img.width) + " " + std::to_string(img.height) +
                      "\n255\n";
    out.append(reinterpret_cast<const char*>(img.rgb.data()), img.rgb.size());
    return out;
}

Image render_boundary_points(const std::vector<BoundaryPoint>& points, Chart chart, int size,
                             double extent, const std::vector<ChartCircle>& circles) {
    Image img(size, size);
    auto plot = [&](const cplx& z, const std::array<unsigned char, 3>& c) {
        const int x = static_cast<int>(std::lround((z.real() + extent) / (2 * extent) * (size - 1)));
        const int y = static_cast<int>(std::lround((extent - z.imag()) / (2 * extent) * (size - 1)));
        img.set(x, y, c[0], c[1], c[2]);
    };
    for (const BoundaryPoint& p : points) {
        cplx z;
        if (chart_coord(p, chart, z)) plot(z, {0, 0, 0});
    }
    for (const ChartCircle& circle : circles) {
        // Trace the spherical circle: points at sphere angle 2 * radius from
        // the centre direction (the metric has diameter pi/2).
        const std::array<double, 3> c = sphere_embed(circle.center);
        std::array<double, 3> e1{-c[1], c[0], 0};
        double n1 = std::hypot(e1[0], e1[1]);
        if (n1 < 1e-9) {
            e1 = {1, 0, 0};
            n1 = 1;
        }
        for (auto& v : e1) v /= n1;
        const std::array<double, 3> e2{c[1] * e1[2] - c[2] * e1[1],
                                       c[2] * e1[0] - c[0] * e1[2],
                                       c[0] * e1[1] - c[1] * e1[0]};
        const double phi = 2.0 * circle.radius;
        const int samples = 16 * size;
        for (int k = 0; k < samples; ++k) {
            const double t = 2.0 * std::numbers::pi * k / samples;
            std::array<double, 3> v;
            for (int a = 0; a < 3; ++a) {
                v[a] = std::cos(phi) * c[a] +
                       std::sin(phi) * (std::cos(t) * e1[a] + std::sin(t) * e2[a]);
            }
            cplx z;
            if (chart_coord(sphere_unembed(v), chart, z)) plot(z, circle.color);
        }
    }
    return img;
}

}  // namespace afk
