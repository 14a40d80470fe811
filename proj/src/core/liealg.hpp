#pragma once
// Matrix Lie algebras (u(1), su(2), so(3), gl(n)) in fixed bases, invariant
// polynomials with their polarizations, and the exponential map. Everything
// is analytic -- polarizations are closed-form, never finite-differenced.

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "core/num.hpp"
#include "core/smat.hpp"

namespace pql {

enum class AlgKind { U1, SU2, SO3, GL };

struct LieAlgebra {
    std::string name;
    AlgKind kind;
    int n = 0; // matrix dimension of the defining representation
    std::vector<SMat> basis;

    SMat zero() const { return SMat::zero(n); }
    int dim() const { return static_cast<int>(basis.size()); }

    // Membership of a matrix in the algebra (tolerance on the defining
    // linear conditions).
    bool contains(const SMat& x, double tol = 1e-12) const;

    // Random element: uniform coefficients in [-amp, amp] on the basis.
    SMat random_element(Rng& rng, double amp) const;
};

const LieAlgebra& algebra_u1();
const LieAlgebra& algebra_su2();
const LieAlgebra& algebra_so3();
const LieAlgebra& algebra_gl(int n); // n in {1,2,3}
const LieAlgebra& algebra_by_name(const std::string& name);

// The isomorphism su(2) -> so(3): X maps to its adjoint action in the basis
// e_k = -(i/2)sigma_k. Brackets are preserved; tr3((ad X)^2) = 4 tr2(X^2).
SMat su2_to_so3(const SMat& x);

// One-parameter group exp(tX).
inline SMat exp_map(const SMat& x, double t) { return expm(t * x); }

// Adjoint action g X g^{-1}.
inline SMat Ad(const SMat& g, const SMat& x) { return g * x * inverse(g); }

// ---------------------------------------------------------------------------
// Invariant polynomials. `pol` is the symmetric multilinear polarization;
// the homogeneous value is pol(X,...,X). `integral` marks members of the
// integral lattice (characteristic forms with integer periods).
struct InvariantPolynomial {
    std::string name;
    const LieAlgebra* alg = nullptr;
    int degree = 0;
    bool integral = false;
    std::function<cplx(std::span<const SMat>)> pol;

    cplx polarized(std::span<const SMat> args) const;
    cplx eval(const SMat& x) const;

    InvariantPolynomial scaled(double lambda, const std::string& new_name) const;
    static InvariantPolynomial sum(const InvariantPolynomial& a, const InvariantPolynomial& b,
                                   const std::string& new_name);
};

// Built-ins. Normalizations:
//   c1(X) = (i/2pi) X                   on u(1)
//   c1_squared = c1 * c1                on u(1), degree 2
//   c2_su2(X) = (1/8pi^2) tr(X^2)       on su(2)
//   p1_gl(X) = -(1/8pi^2) tr(X^2)       on gl(n)
const InvariantPolynomial& ip_c1();
const InvariantPolynomial& ip_c1_squared();
const InvariantPolynomial& ip_c2_su2();
const InvariantPolynomial& ip_p1_gl(int n);
InvariantPolynomial ip_by_name(const std::string& name, double scale = 1.0);

// ---------------------------------------------------------------------------
// Structure groups for gauge maps / connections.
enum class GroupId { U1, SU2, GL2, GL3 };

const LieAlgebra& group_algebra(GroupId g);
int group_matrix_dim(GroupId g);
bool group_contains(GroupId g, const SMat& m, double tol = 1e-12);
std::string group_name(GroupId g);
GroupId group_by_name(const std::string& name);

} // namespace pql
