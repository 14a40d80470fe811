#pragma once
// Maps between grids and pullbacks along them.
//
// Two regimes:
//  * AlignedMap — the map sends every target node to a source node and each
//    target axis reads one source axis affinely. Pullback is then an exact
//    gather (shifts, reflections, coordinate slices, slab wraps).
//  * SmoothMap — an arbitrary smooth chart map with a closed-form Jacobian.
//    Pullback happens at the analytic level and is sampled afterwards, so
//    there is never any grid interpolation.
//
// Chains are formal sums of aligned embeddings with real coefficients;
// integrating a form over a chain pulls it back to each carrier grid.

#include "core/fields.hpp"

namespace pql {

struct AlignedAxisMap {
    int src_axis = 0;
    std::vector<int> node_map; // target node -> source node
    double dfactor = 1.0;      // d(source coord)/d(target coord), constant
};

struct AlignedMap {
    Grid source;
    Grid target;
    std::vector<AlignedAxisMap> axes;        // one per target axis
    std::vector<std::pair<int, int>> frozen; // (source axis, node) pairs
};

// Gather-based pullback; works for any value type (scalar, Lie, group).
FormField pullback(const FormField& w, const AlignedMap& m);

// x -> x + h*shift (shift in nodes, per axis) on a fully periodic grid.
AlignedMap shift_map(const Grid& g, std::span<const int> node_shift);

// Coordinate slice: freeze `frozen_axis` at `node`; target keeps the rest.
AlignedMap slice_map(const Grid& g, int frozen_axis, int node, const std::string& name);

// Wrap a bounded [0,1] axis once around a periodic source axis: the slab
// {s} x (rest) with s = j/n reading source node j mod n. Both slab endpoints
// read source node 0.
AlignedMap slab_wrap_map(const Grid& g, int axis, const std::string& name);

// Partial slab [j0*h, j1*h] along one periodic axis; target node k reads
// source node (j0 + k) mod n. Needs an even node span for the bounded-axis
// quadrature.
AlignedMap partial_slab_map(const Grid& g, int axis, int j0, int j1, const std::string& name);

// Reverse one periodic axis: x_a -> -x_a (node i -> n-i mod n).
AlignedMap reflect_map(const Grid& g, int axis);

// ---------------------------------------------------------------------------
// Smooth maps with closed-form Jacobians.
struct SmoothMap {
    int src_dim = 0;
    int tgt_dim = 0;
    // target point -> source point
    std::function<void(std::span<const double>, std::span<double>)> eval;
    // J[i][j] = d(source_i)/d(target_j), row-major src_dim x tgt_dim
    std::function<void(std::span<const double>, std::span<double>)> jacobian;
};

// Identity and composition (jacobians chain).
SmoothMap smooth_identity(int dim);
SmoothMap compose(const SmoothMap& outer, const SmoothMap& inner); // outer after inner

// Analytic pullback: (m^* w)_J(x) = sum_I w_I(m(x)) det J[I,J].
AnalyticForm pullback(const AnalyticForm& w, const SmoothMap& m);

// ---------------------------------------------------------------------------
// Chains of aligned embeddings.
struct ChainTerm {
    double coef = 1.0;
    AlignedMap embed;
};

struct Chain {
    std::string name;
    int dim = 0; // dimension of every carrier
    std::vector<ChainTerm> terms;
};

// Integrate a scalar form on the ambient grid over the chain.
cplx chain_integrate(const Chain& c, const FormField& w);

// Single-term chain from a slice embedding.
Chain slice_chain(const Grid& g, int frozen_axis, int node, const std::string& name);

// The whole base manifold as a one-term chain (identity embedding).
Chain whole_chain(const Grid& g);

// Slab u = [j0*h, j1*h] x (rest) as a top-dimensional chain, and its
// oriented boundary {j1} - {j0} (two slices of the ambient grid).
Chain slab_chain(const Grid& g, int axis, int j0, int j1, const std::string& name);
Chain slab_boundary_chain(const Grid& g, int axis, int j0, int j1, const std::string& name);

// Formal sums: scale every coefficient / concatenate terms.
Chain chain_scaled(const Chain& c, double k);
Chain chain_sum(const Chain& a, const Chain& b);

// Oriented boundary of a chain of slab-like carriers. A carrier with no
// bounded target axis is closed and contributes nothing; one with a single
// bounded axis (a contiguous window on a source axis) contributes its two
// end slices with the same face orientations slab_boundary_chain uses.
// Anything else (two bounded axes, non-identity gathers on the remaining
// axes) is rejected.
Chain chain_boundary(const Chain& u);

// Structural equality of two chains: carriers are keyed by geometry
// (source layout, frozen nodes, per-axis gather; names ignored) and their
// coefficients folded, then compared within `tol`.
bool chain_equal(const Chain& a, const Chain& b, double tol = 1e-12);

} // namespace pql
