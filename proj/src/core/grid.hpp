#pragma once
// Structured product grids over [lo,hi] factors. Axes are either periodic
// (n equally spaced nodes, the endpoint identified with the start) or bounded
// (n cells, n+1 nodes, both endpoints kept). Each axis carries fourth-order
// derivative stencils and quadrature weights; grids are plain values and two
// grids are interchangeable iff their axis lists match.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "core/num.hpp"

namespace pql {

enum class AxisKind { Periodic, Bounded };

struct Axis {
    AxisKind kind = AxisKind::Periodic;
    int n = 0;               // periodic: node count; bounded: cell count (even)
    double lo = 0.0;
    double hi = 1.0;

    int nodes() const { return kind == AxisKind::Periodic ? n : n + 1; }
    double h() const { return (hi - lo) / n; }
    double coord(int i) const { return lo + h() * i; }
    double length() const { return hi - lo; }

    bool operator==(const Axis&) const = default;
};

Axis periodic_axis(int n, double lo = 0.0, double hi = 1.0);
Axis bounded_axis(int n_cells, double lo = 0.0, double hi = 1.0);

// One row of a differentiation stencil: df/dx at a node is
// sum_k c[k] * f(node_index[k]) along that axis.
struct StencilRow {
    int idx[5];
    double c[5];
    int m = 0;
};

class Grid {
public:
    Grid() = default;
    Grid(std::string name, std::vector<Axis> axes);

    const std::string& name() const { return name_; }
    int dim() const { return static_cast<int>(axes_.size()); }
    const Axis& axis(int a) const { return axes_[a]; }
    const std::vector<Axis>& axes() const { return axes_; }
    std::int64_t node_count() const { return node_count_; }

    // Lexicographic flattening: the last axis varies fastest.
    std::int64_t flat(std::span<const int> idx) const {
        std::int64_t f = 0;
        for (int a = 0; a < dim(); ++a) f = f * axes_[a].nodes() + idx[a];
        return f;
    }
    void unflat(std::int64_t f, std::span<int> idx) const {
        for (int a = dim() - 1; a >= 0; --a) {
            idx[a] = static_cast<int>(f % axes_[a].nodes());
            f /= axes_[a].nodes();
        }
    }
    void coords(std::span<const int> idx, std::span<double> out) const {
        for (int a = 0; a < dim(); ++a) out[a] = axes_[a].coord(idx[a]);
    }

    // Product quadrature weight at a node (trapezoid on periodic axes,
    // composite Simpson on bounded ones).
    double weight(std::span<const int> idx) const {
        double w = 1.0;
        for (int a = 0; a < dim(); ++a) w *= axis_weights_[a][idx[a]];
        return w;
    }
    const std::vector<double>& axis_weights(int a) const { return axis_weights_[a]; }

    // d/dx stencil row for node i of axis a.
    const StencilRow& stencil(int a, int i) const { return stencils_[a][i]; }

    // Same axis structure (name is ignored).
    bool same_layout(const Grid& o) const { return axes_ == o.axes_; }

private:
    std::string name_;
    std::vector<Axis> axes_;
    std::int64_t node_count_ = 0;
    std::vector<std::vector<double>> axis_weights_;
    std::vector<std::vector<StencilRow>> stencils_;
};

// An oriented boundary face of a grid: the bounded axis `axis` frozen at
// `node` (0 or n). `sign` relates the lexicographic orientation of the
// remaining axes to the induced boundary orientation.
struct BoundaryFace {
    int axis = 0;
    int node = 0;
    int sign = 1;
    Grid face;
};

std::vector<BoundaryFace> boundary_faces(const Grid& g);

// Increasing k-subsets of {0..d-1} in lexicographic order; these index the
// components of degree-k forms.
const std::vector<std::vector<int>>& subsets(int d, int k);
int subset_index(int d, std::span<const int> s);

} // namespace pql
