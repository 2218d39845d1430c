#pragma once
#include <stdexcept>
#include <string>

namespace magspec {

// 1D node grid for the fiber operators.  half_line_neumann starts at x_min = 0
// with a Neumann condition there; the outer end(s) are artificial Dirichlet walls.
enum class DomainKind { full_line, half_line_neumann };

struct Grid1D {
    DomainKind domain_kind = DomainKind::full_line;
    double x_min = 0.0;
    double x_max = 1.0;
    int n = 2;

    double spacing() const { return (x_max - x_min) / (n - 1); }
    double node(int i) const { return x_min + i * spacing(); }

    void validate() const {
        if (!(x_max > x_min)) throw std::invalid_argument("Grid1D: x_max <= x_min");
        if (n < 3) throw std::invalid_argument("Grid1D: need at least 3 nodes");
        if (domain_kind == DomainKind::half_line_neumann && x_min != 0.0)
            throw std::invalid_argument("Grid1D: half-line grid must start at 0");
    }

    static Grid1D half_line(double x_max, int n) {
        Grid1D g{DomainKind::half_line_neumann, 0.0, x_max, n};
        g.validate();
        return g;
    }
    static Grid1D full_line(double x_min, double x_max, int n) {
        Grid1D g{DomainKind::full_line, x_min, x_max, n};
        g.validate();
        return g;
    }
};

enum class Bc { dirichlet, neumann };

// Tensor rectangle [s_min,s_max] x [t_min,t_max], nx by ny nodes.
// All sides Dirichlet except optionally Neumann at t = t_min (half-plane
// boundary for k = 0, or the tau = 0 wall of the curvilinear model).
struct Grid2D {
    double s_min = -1, s_max = 1, t_min = 0, t_max = 1;
    int nx = 8, ny = 8;
    Bc bc_t_min = Bc::dirichlet;

    double ds() const { return (s_max - s_min) / (nx - 1); }
    double dt() const { return (t_max - t_min) / (ny - 1); }
    double s(int i) const { return s_min + i * ds(); }
    double t(int j) const { return t_min + j * dt(); }
    int index(int i, int j) const { return i * ny + j; }
    int size() const { return nx * ny; }

    void validate() const {
        if (!(s_max > s_min && t_max > t_min))
            throw std::invalid_argument("Grid2D: degenerate rectangle");
        if (nx < 8 || ny < 8) throw std::invalid_argument("Grid2D: nx, ny >= 8 required");
        if (bc_t_min == Bc::neumann && t_min != 0.0)
            throw std::invalid_argument("Grid2D: Neumann side must sit at t = 0");
    }
};

} // namespace magspec
