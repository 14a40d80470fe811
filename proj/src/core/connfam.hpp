#pragma once
// Finite-dimensional families of connections and the differential forms they
// induce on parameter space.
//
// A family is an analytic map s -> A(s) from a box S in R^m into the
// connections on a fixed base, with hand-coded partials dA/ds_i. Polynomial
// data of the family lives on S x M; integrating the space part over a chain
// c inside M leaves ordinary forms on S, evaluated here slot by slot:
//
//   sigma_c(A; a, b) = r(r-1) int_c p(a, b, F, ..., F)        (curvature form)
//   mu_c(A; X)       = -r     int_c p(iota_v A + xi, F, ...)  (moment map)
//   rho_c(A; a)      = r(r-1) int_c int_0^1 p(A-A0, a, F_t, ...) t dt
//   sigma_u(A; a)    = r      int_u p(a, F, ..., F)
//
// with A_t = t A + (1-t) A0 on the straight line. All four take the actual
// connection, not a family: families only supply points and tangents, so the
// same code serves gauge-transformed connections that leave the family.
//
// Slot orders are pinned by the exterior-derivative relations
// d rho_c = sigma_c and d s_u = rho_c - sigma_u (s-space calculus); the
// hand derivations live next to the tests that check them.

#include "core/gauge.hpp"

namespace pql {

// ---------------------------------------------------------------------------
// Analytic amplitude functions s -> R with hand-coded partials. FD in s is
// reserved for verification oracles; production values use `partial`.
struct Amplitude {
    std::string name;
    std::function<double(std::span<const double>)> value;
    std::function<double(std::span<const double>, int)> partial;
};

Amplitude amp_coordinate(int i);                     // s_i
Amplitude amp_sin(int i, double freq, double phase); // sin(freq*s_i + phase)
Amplitude amp_bilinear(int i, int j);                // s_i * s_j

// ---------------------------------------------------------------------------
// Family of connections over a parameter box (m <= 4).
struct ConnFamily {
    GroupId group{};
    Grid base;
    int m = 0;
    std::vector<double> lo, hi;
    std::function<FormField(std::span<const double>)> at;
    std::function<FormField(std::span<const double>, int)> tangent;
};

// center + sum_k amps[k](s) * dirs[k]; box defaults to [0,1]^m when lo/hi
// are empty.
ConnFamily make_family(GroupId group, const FormField& center, std::vector<FormField> dirs,
                       std::vector<Amplitude> amps, int m, std::vector<double> lo = {},
                       std::vector<double> hi = {});

// Largest |tangent(s,i) - FD_i at(s)| over i, with one Richardson step.
double family_tangent_residual(const ConnFamily& fam, std::span<const double> s,
                               double h = 1e-3);

// Tensor evaluation grid with k interior nodes per box axis.
std::vector<std::vector<double>> param_grid(const ConnFamily& fam, int k);

// ---------------------------------------------------------------------------
// Cycle bookkeeping: which construction the (2r-2)-cycle feeds.
enum class CycleCase { GaugeArbitrary, ClosedManifold, BoundaryOfManifold };

struct CycleData {
    Chain c;
    CycleCase tag = CycleCase::GaugeArbitrary;
};

// ---------------------------------------------------------------------------
// Forms induced on parameter space, evaluated at an explicit connection.

double sigma_c(const InvariantPolynomial& p, const Chain& c, const FormField& A,
               const FormField& a, const FormField& b);

double mu_c(const InvariantPolynomial& p, const Chain& c, const FormField& A, const SymGen& X);

double rho_c(const InvariantPolynomial& p, const Chain& c, const FormField& A,
             const FormField& A0, const FormField& a);

double sigma_u(const InvariantPolynomial& p, const Chain& u, const FormField& A,
               const FormField& a);

// ---------------------------------------------------------------------------
// The equivariant pair (sigma, mu) packaged over a family.
struct EquivariantTwoForm {
    std::function<double(std::span<const double>, const FormField&, const FormField&)> sigma;
    std::function<double(std::span<const double>, const SymGen&)> mu;
};

EquivariantTwoForm make_equivariant_form(const InvariantPolynomial& p, const Chain& c,
                                         const ConnFamily& fam);

// ---------------------------------------------------------------------------
// Moment identity check: d mu_c(X) = iota_{X_A} sigma_c on the family, swept
// over a parameter grid. The left side differentiates mu along s (FD oracle,
// Richardson); the right side pairs sigma_c with the full induced vector
// X_A = d^A(iota_v A + xi), whether or not it lies in the family's tangent
// span. The span defect is measured (least squares over the tangents) and
// reported, never projected away.
//
// The identity as stated is the gauge-direction one: for a generator with a
// base vector part the same calculation picks up a curvature pairing
// -r(r-1) int_c p(iota_v(.), F, ...), so the residual reported here measures
// exactly that term. test_connfam checks the corrected relation for such
// generators.
struct CartanReport {
    double identity_residual = 0.0;
    double span_residual = 0.0; // relative L2 distance of X_A from the span
    double scale = 0.0;         // max |sigma| term, for relative comparisons
};

CartanReport cartan_D_check(const InvariantPolynomial& p, const Chain& c, const ConnFamily& fam,
                            const SymGen& X, int grid_pts = 3);

} // namespace pql
