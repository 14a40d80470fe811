#pragma once
// Connections and gauge transformations on trivialized bundles.
//
// A connection is a Lie-algebra-valued 1-form A; a gauge transformation is a
// group-valued 0-form psi. Conventions, fixed once here and relied on
// everywhere downstream:
//
//   gauge_apply:   A^psi = Ad_{psi^-1} A + psi^-1 d psi      (right action)
//   gauge_act:     phi . A = A^{phi^-1}                       (left action)
//   curvature:     F = dA + A ^ A
//   cov_d:         d^A w = dw + A ^ w - (-1)^deg(w) w ^ A     (adjoint values)
//
// Characteristic forms apply an invariant polynomial's polarization across
// wedge slots; transgress(p, A1, A0) is the odd-degree form with
// d T = p(F1) - p(F0), normalized T = r * int_0^1 p(A1-A0, F_t, ...) dt
// on the straight line A_t = (1-t) A0 + t A1.

#include "core/fields.hpp"
#include "core/liealg.hpp"
#include "core/maps.hpp"

namespace pql {

// ---------------------------------------------------------------------------
// Pointwise group operations on group-valued 0-forms.
FormField group_inverse(const FormField& psi);
FormField group_mult(const FormField& a, const FormField& b); // pointwise a*b
FormField group_pow(const FormField& psi, int k);             // k >= 0
FormField group_exp(const FormField& eta, double t);          // exp(t eta), pointwise
FormField group_identity(const Grid& g, int mat_n);           // constant identity element

// Ad_psi w = psi w psi^-1, applied to every component of a Lie-valued form.
FormField ad_apply(const FormField& psi, const FormField& w);

// Largest violation of the algebra/group membership conditions over all nodes.
double algebra_residual(const FormField& w, const LieAlgebra& alg);
double group_residual(const FormField& psi, GroupId g);

// ---------------------------------------------------------------------------
// Connection-level operations.
FormField curvature(const FormField& A);
FormField gauge_apply(const FormField& A, const FormField& psi);
FormField gauge_act(const FormField& A, const FormField& phi);
FormField cov_d(const FormField& A, const FormField& w);

// ---------------------------------------------------------------------------
// Characteristic forms.
//
// polarized_product(p, {w1..wr}) = p(w1, ..., wr) with the wedge signs of
// interleaving the slots; the wi are Lie-valued forms on one grid and the
// result is scalar of degree sum(deg wi).
FormField polarized_product(const InvariantPolynomial& p, std::span<const FormField* const> args);
FormField char_form(const InvariantPolynomial& p, const FormField& F);

// First transgression between two connections on the same bundle.
FormField transgress(const InvariantPolynomial& p, const FormField& A1, const FormField& A0);

// Second transgression: d transgress2(X,Y,Z) stitches the three pairwise
// transgressions, transgress(X,Z) = transgress(X,Y) + transgress(Y,Z) + d T2.
// Only degree <= 2 polynomials are supported (the built-ins).
FormField transgress2(const InvariantPolynomial& p, const FormField& X, const FormField& Y,
                      const FormField& Z);

// Relative Chern-Simons action over a (2r-1)-chain: s_u(A) = -int_u T(A, A0).
// With this sign, s over a closed 3-manifold matches the classical SU(2)
// action (1/8pi^2) int tr(A dA + 2/3 A^3) for A0 = 0, and jumps by +-n under
// a degree-n gauge map.
double cs_action(const InvariantPolynomial& p, const Chain& u, const FormField& A,
                 const FormField& A0);

// ---------------------------------------------------------------------------
// Infinitesimal bundle symmetries: a vector field on the base plus a gauge
// part. Either field may be all-zero.
struct SymGen {
    FormField v;  // scalar 1-field holding contravariant components
    FormField xi; // Lie-valued 0-form
};

SymGen zero_gen(const Grid& g, int mat_n);

// iota_v A + xi : the vertical representative of the symmetry at A.
FormField vertical_part(const FormField& A, const SymGen& X);

// The induced motion of the connection: d^A(iota_v A + xi). Signs follow the
// convention that the symmetry flows points by exp(-t v) and frames by
// exp(-t xi).
FormField action_on_conn(const FormField& A, const SymGen& X);

// ---------------------------------------------------------------------------
// Standard gauge maps used by the test catalog.

// U(1): psi(x) = exp(2 pi i sum_a w_a x_a) on a unit periodic grid.
FormField u1_winding(const Grid& g, std::span<const int> w);

// SU(2): radial suspension bump at the cell center: identity outside radius
// R, constant -I at the center, degree +-1 (the sign is pinned down by the
// converging integral tests, see test_gauge).
enum class BumpProfile { C4, CInf };
FormField su2_bump(const Grid& g, double R, BumpProfile profile);

} // namespace pql
