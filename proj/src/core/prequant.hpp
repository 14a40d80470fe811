#pragma once
// Prequantization over a family of connections: circle-valued cocycles of
// gauge maps, the induced connection/curvature on parameter space, sections
// and their covariant derivative, loop holonomy, and the bookkeeping that
// keeps different presentations comparable.
//
// Everything reduces to the cycle calculus in connfam.hpp:
//   rho_i(s)  = rho_c(poly, c, A_s, A0, tangent_i)   connection on the box
//   sigma     = sigma_c                              its curvature
//   alpha     = cocycle of a gauge map, either transported along a path
//               through the identity component or read off as the jump of
//               the transgression action over a bounding chain u, du = c.
//
// Path convention: phi_0 = id and  d/dt phi_t = -xi_t phi_t,  so the
// straight path exp(-t xi) has constant generator xi and the transported
// connection moves with velocity cov_d(B_t, xi_t). Alpha values keep their
// real lift next to the reduction mod 1 so integer jumps stay observable.

#include <optional>

#include "core/connfam.hpp"

namespace pql {

// ---------------------------------------------------------------------------
// Values on R/Z. rep is the representative in [0, 1).
struct CircleValue {
    double rep = 0.0;
    static CircleValue from_real(double x);
};

CircleValue circle_add(CircleValue a, CircleValue b);
double circle_dist(CircleValue a, CircleValue b); // min(|a-b|, 1-|a-b|)

// A circle value together with the real lift it was reduced from.
struct AlphaValue {
    double lift = 0.0;
    CircleValue value;
};

// ---------------------------------------------------------------------------
// A family with its cycle, characteristic polynomial, and reference
// connection. rho(s, i) evaluates the induced connection 1-form on the
// parameter box against the i-th coordinate tangent.
struct PrequantBundle {
    ConnFamily fam;
    CycleData cycle;
    InvariantPolynomial poly;
    FormField A0;
    std::function<double(std::span<const double>, int)> rho;
};

PrequantBundle make_bundle(const ConnFamily& fam, CycleData cycle,
                           const InvariantPolynomial& poly, const FormField& A0);

// ---------------------------------------------------------------------------
// Paths of gauge maps through the identity component.
struct SymmetryPath {
    std::string name;
    std::function<FormField(double)> phi; // t in [0, 1] -> group field
    std::function<SymGen(double)> gen;    // generator, d/dt phi = -xi phi
};

SymmetryPath identity_path(const Grid& g, int mat_n);
// phi_t = exp(-t xi): endpoint exp(-xi), constant generator {0, xi}.
SymmetryPath gauge_exp_path(const FormField& xi);
// pointwise product t -> outer(t) * inner(t); pure gauge paths only.
SymmetryPath path_compose(const SymmetryPath& outer, const SymmetryPath& inner);
// |d/dt phi_t + xi_t phi_t| by central differences with one Richardson step.
double path_generator_residual(const SymmetryPath& p, double t, double h = 1e-3);

// ---------------------------------------------------------------------------
// A gauge map together with the data its cocycle can be computed from: a
// path from the identity, or a bounding chain u with du = c (which also
// covers maps outside the identity component), or both.
struct LiftedSymmetry {
    std::string name;
    FormField endpoint; // the gauge map itself
    std::optional<SymmetryPath> path;
    std::optional<Chain> u;
};

LiftedSymmetry lift_via_path(const SymmetryPath& p);
LiftedSymmetry lift_via_boundary(const FormField& phi, const Chain& u,
                                 const std::string& name);

// Cocycle by transport: integrate the connection along t -> phi_t . A and
// add the generator's moment term. Throws if the path does not start at
// the identity or the adaptive t-quadrature fails to converge.
AlphaValue alpha_path(const PrequantBundle& b, const SymmetryPath& p,
                      std::span<const double> s);
AlphaValue alpha_path_at(const PrequantBundle& b, const SymmetryPath& p, const FormField& A);

// Cocycle as a jump of the transgression action: s_u(phi . A) - s_u(A).
// Throws unless chain_boundary(u) equals the bundle cycle.
AlphaValue alpha_boundary(const PrequantBundle& b, const FormField& phi, const Chain& u,
                          std::span<const double> s);
AlphaValue alpha_boundary_at(const PrequantBundle& b, const FormField& phi, const Chain& u,
                             const FormField& A);

// Evaluate through whichever construction the symmetry carries (path first).
AlphaValue alpha(const PrequantBundle& b, const LiftedSymmetry& f, std::span<const double> s);
AlphaValue alpha_at(const PrequantBundle& b, const LiftedSymmetry& f, const FormField& A);

// Circle distance in  alpha(f2 f1)(A) = alpha(f1)(A) + alpha(f2)(f1 . A).
// The composite is evaluated through a composed path when both factors
// carry one, otherwise through a bounding chain of either factor.
double cocycle_residual(const PrequantBundle& b, const LiftedSymmetry& f1,
                        const LiftedSymmetry& f2, std::span<const double> s);

// max_i |d/ds_i alpha(f) - (rho_i(f . A_s) pushed forward - rho_i(A_s))|:
// the infinitesimal compatibility of the cocycle with the connection. The
// step is wider than usual because the path lift rides on an adaptive
// quadrature whose noise a small step would amplify.
double dalpha_residual(const PrequantBundle& b, const LiftedSymmetry& f,
                       std::span<const double> s, double h = 1e-2);

// ---------------------------------------------------------------------------
// Sections over the parameter box, as their values in C.
struct ParamSection {
    std::string name;
    std::function<cplx(std::span<const double>)> value;
};

// S_u(s) = exp(2 pi i s_u(A_s)); requires du = c.
ParamSection cs_section(const PrequantBundle& b, const Chain& u);

// (nabla_dir S)(s) = dS(e_dir) - 2 pi i rho_dir(s) S(s); the derivative is
// taken by central differences with one Richardson step.
cplx covariant_derivative(const PrequantBundle& b, const ParamSection& S,
                          std::span<const double> s, int dir, double h = 1e-3);

// ---------------------------------------------------------------------------
// Loops in the parameter box.
struct ParamLoop {
    std::string name;
    std::function<void(double, std::span<double>)> point;    // t in [0, 1] -> s
    std::function<void(double, std::span<double>)> velocity; // ds/dt
};

// s(t) = center + radius (cos 2 pi t, sin 2 pi t) in the (i, j) plane.
ParamLoop param_circle(std::vector<double> center, double radius, int i = 0, int j = 1);

// Log-holonomy \oint rho of a closed loop, reduced mod 1. Adaptive in t
// with a tight tolerance so reparametrizations agree to ~1e-10; throws if
// the loop does not close or the quadrature fails to converge.
AlphaValue log_holonomy(const PrequantBundle& b, const ParamLoop& loop);

// \int_D sigma over the disk bounded by param_circle(center, radius, i, j):
// Gauss-Legendre in the radius, trapezoid in the angle.
double sigma_disk_integral(const PrequantBundle& b, std::vector<double> center,
                           double radius, int i = 0, int j = 1, int n_r = 24,
                           int n_th = 48);

// ---------------------------------------------------------------------------
// Change of reference connection. beta implements the bundle gauge
// Psi(s, z) = (s, exp(2 pi i beta(s)) z) intertwining the presentation over
// A0 with the one over A0p (degree <= 2 polynomials).
struct BackgroundChange {
    PrequantBundle bundle; // same family and cycle, reference A0p
    std::function<double(std::span<const double>)> beta;
    std::function<double(const FormField&)> beta_at;
};

BackgroundChange change_background(const PrequantBundle& b, const FormField& A0p);

// max |d beta(e_i) - (rho'_i - rho_i)| over a grid_pts-per-axis sweep.
double background_rho_residual(const PrequantBundle& b, const BackgroundChange& chg,
                               int grid_pts = 2, double h = 1e-2);
// circle distance between alpha'(f) and alpha(f) + beta(f . A_s) - beta(A_s).
double background_alpha_residual(const PrequantBundle& b, const BackgroundChange& chg,
                                 const LiftedSymmetry& f, std::span<const double> s);

// ---------------------------------------------------------------------------
// Algebra on the cycle/polynomial data. Operands must agree on the family,
// the reference connection, and the half of the data that is not being
// combined; mismatches are rejected.
PrequantBundle negate_cycle(const PrequantBundle& b);
PrequantBundle add_cycles(const PrequantBundle& a, const PrequantBundle& b);
PrequantBundle negate_poly(const PrequantBundle& b);
PrequantBundle add_polys(const PrequantBundle& a, const PrequantBundle& b);

} // namespace pql
