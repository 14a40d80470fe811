#pragma once
// Discrete differential forms on a Grid, scalar- or matrix-valued.
//
// A degree-k field stores one flat array per increasing k-subset of axes
// (see subsets() in grid.hpp); each array holds `vdim` complex lanes per
// node, nodes in lexicographic order. Scalar fields have vdim 1, matrix
// fields vdim = mat_n^2 in row-major lanes. Derivatives use the axis
// stencils of the grid; integrals use its product quadrature weights with
// compensated summation in a fixed traversal order.

#include <functional>
#include <span>

#include "core/grid.hpp"
#include "core/smat.hpp"

namespace pql {

struct FormField {
    Grid grid;
    int degree = 0;
    int vdim = 1;
    int mat_n = 0; // 0 for scalar-valued
    std::vector<std::vector<cplx>> comp;

    FormField() = default;
    FormField(const Grid& g, int deg, int matn);

    int ncomp() const { return static_cast<int>(comp.size()); }
    bool is_scalar() const { return mat_n == 0; }

    std::span<cplx> at(int c, std::int64_t node) {
        return {comp[c].data() + node * vdim, static_cast<size_t>(vdim)};
    }
    std::span<const cplx> at(int c, std::int64_t node) const {
        return {comp[c].data() + node * vdim, static_cast<size_t>(vdim)};
    }

    SMat mat_at(int c, std::int64_t node) const {
        SMat m(mat_n);
        auto v = at(c, node);
        for (int i = 0; i < vdim; ++i) m.a[i] = v[i];
        return m;
    }
    void set_mat(int c, std::int64_t node, const SMat& m) {
        auto v = at(c, node);
        for (int i = 0; i < vdim; ++i) v[i] = m.a[i];
    }
    void add_mat(int c, std::int64_t node, const SMat& m) {
        auto v = at(c, node);
        for (int i = 0; i < vdim; ++i) v[i] += m.a[i];
    }

    FormField& operator+=(const FormField& o);
    FormField& operator-=(const FormField& o);
    FormField& operator*=(cplx s);
    friend FormField operator+(FormField a, const FormField& b) { return a += b; }
    friend FormField operator-(FormField a, const FormField& b) { return a -= b; }
    friend FormField operator*(cplx s, FormField a) { return a *= s; }
};

FormField scalar_form(const Grid& g, int degree);
FormField lie_form(const Grid& g, int degree, int mat_n);

// Visit nodes in storage order; idx is the multi-index of the current node.
template <class F>
void for_each_node(const Grid& g, F&& fn) {
    int d = g.dim();
    int idx[3] = {0, 0, 0};
    std::int64_t total = g.node_count();
    for (std::int64_t f = 0; f < total; ++f) {
        fn(f, std::span<const int>(idx, d));
        for (int a = d - 1; a >= 0; --a) {
            if (++idx[a] < g.axis(a).nodes()) break;
            idx[a] = 0;
        }
    }
}

// Exterior derivative (stencil-based, fourth order).
FormField exterior_d(const FormField& w);

// max |entry| over all components/nodes/lanes.
double max_abs(const FormField& w);

// Wedge product with a caller-supplied value pairing. `mul` must ACCUMULATE
// the product of one value pair into `out` (several shuffles can hit the
// same target component).
using PairFn =
    std::function<void(std::span<const cplx>, std::span<const cplx>, std::span<cplx>)>;
FormField wedge(const FormField& a, const FormField& b, int out_mat_n, const PairFn& mul);

// Common pairings.
FormField wedge_scalar(const FormField& a, const FormField& b);  // scalar x scalar
FormField wedge_mat(const FormField& a, const FormField& b);     // matrix product
FormField wedge_scalar_mat(const FormField& a, const FormField& b);

// Interior product with a vector field (degree-1 scalar field holding the
// contravariant components of v).
FormField contract(const FormField& vec, const FormField& w);

// Integral of a top-degree scalar form over the whole grid.
cplx integrate(const FormField& w);

// Restriction of a form to a boundary face (components containing the
// frozen axis are dropped).
FormField restrict_to_face(const FormField& w, const BoundaryFace& bf);

// Sum of oriented face integrals of a scalar (dim-1)-form.
cplx integrate_boundary(const FormField& w);

// ---------------------------------------------------------------------------
// Closed-form fields. Used both to synthesize test data and to pull fields
// back along maps that do not respect the lattice.
struct AnalyticForm {
    int dim = 0;
    int degree = 0;
    int mat_n = 0; // 0 scalar
    // eval(component, point, out): write the `vdim` lanes at a point.
    std::function<void(int, std::span<const double>, std::span<cplx>)> eval;
};

FormField sample(const Grid& g, const AnalyticForm& f);

} // namespace pql
