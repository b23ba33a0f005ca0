#include "rdcert/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rdcert/error.hpp"

namespace rdcert {

Grid::Grid(std::size_t n_nodes, double length)
    : n_nodes_(n_nodes), length_(length), spacing_(0.0) {
    if (n_nodes < 3) {
        throw ConfigError("grid.n_nodes must be >= 3 (got " + std::to_string(n_nodes) + ")");
    }
    if (!(length > 0.0) || !std::isfinite(length)) {
        throw ConfigError("grid.length must be a finite value > 0");
    }
    spacing_ = length / static_cast<double>(n_nodes - 1);
}

std::vector<double> Grid::nodes() const {
    std::vector<double> xs(n_nodes_);
    for (std::size_t j = 0; j < n_nodes_; ++j) xs[j] = x(j);
    return xs;
}

double Grid::weight(std::size_t j) const noexcept {
    return (j == 0 || j + 1 == n_nodes_) ? 0.5 * spacing_ : spacing_;
}

void require_matches(std::span<const double> f, const Grid& grid, const char* what) {
    if (f.size() != grid.n_nodes()) {
        throw ConfigError(std::string(what) + ": field has " + std::to_string(f.size()) +
                          " values but the grid has " + std::to_string(grid.n_nodes()) + " nodes");
    }
}

Field laplacian(std::span<const double> f, const Grid& grid) {
    require_matches(f, grid, "laplacian");
    const std::size_t n = f.size();
    const double inv_h2 = 1.0 / (grid.spacing() * grid.spacing());

    Field out(n);
    out[0] = 2.0 * (f[1] - f[0]) * inv_h2;
    for (std::size_t j = 1; j + 1 < n; ++j) {
        out[j] = (f[j - 1] - 2.0 * f[j] + f[j + 1]) * inv_h2;
    }
    out[n - 1] = 2.0 * (f[n - 2] - f[n - 1]) * inv_h2;
    return out;
}

double sup_norm(std::span<const double> f) noexcept {
    double m = 0.0;
    for (double x : f) {
        // NaN must win so diverged states are never reported as bounded
        if (std::isnan(x)) return x;
        m = std::max(m, std::abs(x));
    }
    return m;
}

double integrate(std::span<const double> f, const Grid& grid) {
    require_matches(f, grid, "integrate");
    const std::size_t n = f.size();
    double interior = 0.0;
    for (std::size_t j = 1; j + 1 < n; ++j) interior += f[j];
    return grid.spacing() * (0.5 * (f[0] + f[n - 1]) + interior);
}

}  // namespace rdcert
