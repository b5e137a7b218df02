#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

// Cartesian grid clipped to a disk of Euclidean radius rho < 1 inside the
// Poincare unit disk.  Node (i, j) sits at z = (-rho + i h) + (-rho + j h) i
// with h = 2 rho / (n - 1); nodes with |z| < rho are unknowns, the Dirichlet
// boundary is the circle |z| = rho itself.

namespace afk {

class DiskGrid {
public:
    DiskGrid(int n, double rho) : n_(n), rho_(rho) {
        if (n < 5 || n % 2 == 0) throw std::invalid_argument("grid size must be odd and >= 5");
        if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("rho must be in (0,1)");
    }

    int n() const { return n_; }
    double rho() const { return rho_; }
    double spacing() const { return 2.0 * rho_ / (n_ - 1); }

    double x_at(int i) const { return -rho_ + i * spacing(); }
    double y_at(int j) const { return -rho_ + j * spacing(); }
    std::complex<double> z_at(int i, int j) const { return {x_at(i), y_at(j)}; }

    bool in_range(int i, int j) const { return i >= 0 && i < n_ && j >= 0 && j < n_; }
    bool inside(int i, int j) const {
        return in_range(i, j) && std::abs(z_at(i, j)) < rho_ - 1e-13;
    }

    int index(int i, int j) const { return j * n_ + i; }
    int size() const { return n_ * n_; }

    bool compatible(const DiskGrid& other) const {
        return n_ == other.n_ && std::abs(rho_ - other.rho_) < 1e-15;
    }

private:
    int n_;
    double rho_;
};

}  // namespace afk
