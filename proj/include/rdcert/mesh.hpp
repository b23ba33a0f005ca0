#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rdcert {

/// Nodal values of one species on a Grid.
using Field = std::vector<double>;

/// Uniform node-centered mesh of the interval [0, length].
///
/// Nodes sit at x_j = j * spacing for j = 0..n_nodes-1, so both endpoints
/// are nodes and the no-flux boundary is imposed by ghost-node reflection.
class Grid {
public:
    /// Throws ConfigError unless n_nodes >= 3 and length > 0.
    Grid(std::size_t n_nodes, double length);

    std::size_t n_nodes() const noexcept { return n_nodes_; }
    double length() const noexcept { return length_; }
    double spacing() const noexcept { return spacing_; }
    double x(std::size_t j) const noexcept { return static_cast<double>(j) * spacing_; }
    std::vector<double> nodes() const;

    /// Trapezoid weight of node j (h/2 at the endpoints, h inside).
    double weight(std::size_t j) const noexcept;

    bool operator==(const Grid&) const = default;

private:
    std::size_t n_nodes_;
    double length_;
    double spacing_;
};

/// Second-order discrete Laplacian with homogeneous Neumann boundary.
/// Endpoints use the reflected ghost values f[-1] = f[1], f[n] = f[n-2].
Field laplacian(std::span<const double> f, const Grid& grid);

/// Discrete L-infinity norm: max_j |f[j]|, 0 for an empty field.
double sup_norm(std::span<const double> f) noexcept;

/// Composite trapezoid rule over [0, length].
double integrate(std::span<const double> f, const Grid& grid);

/// Throws ConfigError when the field length does not match the grid.
void require_matches(std::span<const double> f, const Grid& grid, const char* what);

}  // namespace rdcert
