#include "magspec/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <json.hpp>

namespace magspec {

void HermitianSparse::validate() const {
    for (const auto& e : entries) {
        if (e.row < 0 || e.col < 0 || e.row >= dim || e.col >= dim || e.row > e.col)
            throw std::invalid_argument("HermitianSparse: bad entry position");
        if (e.row == e.col && e.value.imag() != 0.0)
            throw std::invalid_argument("HermitianSparse: complex diagonal");
        if (!std::isfinite(e.value.real()) || !std::isfinite(e.value.imag()))
            throw std::invalid_argument("HermitianSparse: non-finite entry");
    }
    if (!mass.empty()) {
        if (static_cast<int>(mass.size()) != dim)
            throw std::invalid_argument("HermitianSparse: mass length mismatch");
        for (double m : mass)
            if (!(m > 0.0)) throw std::invalid_argument("HermitianSparse: non-positive mass");
    }
}

double HermitianSparse::gershgorin_lower() const {
    std::vector<double> center(dim, 0.0), radius(dim, 0.0);
    for (const auto& e : entries) {
        if (e.row == e.col) {
            center[e.row] = e.value.real();
        } else {
            double a = std::abs(e.value);
            radius[e.row] += a;
            radius[e.col] += a;
        }
    }
    double lo = std::numeric_limits<double>::infinity();
    for (int i = 0; i < dim; ++i) {
        double scale = mass.empty() ? 1.0 : mass[i];
        lo = std::min(lo, (center[i] - radius[i]) / scale);
    }
    return lo;
}

void HermitianBuilder::add_offdiag(int row, int col, cplx v) {
    if (row == col) throw std::invalid_argument("add_offdiag: row == col");
    if (row > col) {
        std::swap(row, col);
        v = std::conj(v);
    }
    offs_.push_back({row, col, v});
}

HermitianSparse HermitianBuilder::finish(std::vector<double> mass) {
    std::sort(offs_.begin(), offs_.end(), [](const auto& a, const auto& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    HermitianSparse A;
    A.dim = dim_;
    A.mass = std::move(mass);
    for (int i = 0; i < dim_; ++i) A.entries.push_back({i, i, cplx(diag_[i], 0.0)});
    for (size_t i = 0; i < offs_.size();) {
        size_t j = i;
        cplx v = 0.0;
        while (j < offs_.size() && offs_[j].row == offs_[i].row && offs_[j].col == offs_[i].col)
            v += offs_[j++].value;
        A.entries.push_back({offs_[i].row, offs_[i].col, v});
        i = j;
    }
    A.validate();
    return A;
}

void write_matrix(const HermitianSparse& A, const std::string& path, double h, int k,
                  const Grid2D& grid) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("write_matrix: cannot open " + path);
    f.precision(17);
    for (const auto& e : A.entries)
        f << e.row << ' ' << e.col << ' ' << e.value.real() << ' ' << e.value.imag() << '\n';

    nlohmann::json side;
    side["dim"] = A.dim;
    side["h"] = h;
    side["k"] = k;
    side["grid"] = {{"s_min", grid.s_min}, {"s_max", grid.s_max}, {"t_min", grid.t_min},
                    {"t_max", grid.t_max}, {"nx", grid.nx},       {"ny", grid.ny}};
    side["bc"] = (grid.bc_t_min == Bc::neumann) ? "neumann-tmin" : "all-dirichlet";
    std::ofstream fs(path + ".json");
    fs << side.dump(2) << '\n';

    if (!A.mass.empty()) {
        std::ofstream fm(path + ".mass");
        fm.precision(17);
        for (double m : A.mass) fm << m << '\n';
    }
}

} // namespace magspec
