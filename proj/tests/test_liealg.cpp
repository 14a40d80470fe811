#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "core/liealg.hpp"
#include "core/smat.hpp"

#include <cmath>

using namespace pql;

namespace {
const cplx I(0.0, 1.0);

double mat_dist(const SMat& x, const SMat& y) { return (x - y).max_abs(); }
} // namespace

TEST_CASE("structure constants of the fixed bases") {
    const auto& su2 = algebra_su2();
    const auto& so3 = algebra_so3();
    // [e_i, e_j] = e_k cyclically in both bases
    for (int i = 0; i < 3; ++i) {
        int j = (i + 1) % 3, k = (i + 2) % 3;
        CHECK(mat_dist(comm(su2.basis[i], su2.basis[j]), su2.basis[k]) < 1e-15);
        CHECK(mat_dist(comm(so3.basis[i], so3.basis[j]), so3.basis[k]) < 1e-15);
    }
}

TEST_CASE("membership checks accept basis combinations and reject outsiders") {
    Rng rng(31);
    for (const auto* alg : {&algebra_u1(), &algebra_su2(), &algebra_so3(), &algebra_gl(3)}) {
        for (int t = 0; t < 8; ++t) {
            SMat x = alg->random_element(rng, 2.0);
            CHECK(alg->contains(x));
        }
    }
    SMat h(2); // Hermitian, not anti-Hermitian
    h.at(0, 1) = 1.0;
    h.at(1, 0) = 1.0;
    CHECK(!algebra_su2().contains(h));
    SMat d(1);
    d.at(0, 0) = 0.3; // real, not imaginary
    CHECK(!algebra_u1().contains(d));
}

TEST_CASE("exp_map: diag(i pi, -i pi) exponentiates to -I") {
    SMat x(2);
    x.at(0, 0) = I * PI;
    x.at(1, 1) = -I * PI;
    SMat g = exp_map(x, 1.0);
    CHECK(mat_dist(g, -1.0 * SMat::id(2)) < 1e-13);
}

TEST_CASE("exp_map satisfies the one-parameter group law") {
    Rng rng(55);
    SMat x = algebra_su2().random_element(rng, 1.5);
    double s = 0.37, t = -0.81;
    CHECK(mat_dist(exp_map(x, s + t), exp_map(x, s) * exp_map(x, t)) < 1e-13);
    CHECK(mat_dist(exp_map(x, 0.0), SMat::id(2)) < 1e-15);
}

TEST_CASE("exp of an algebra element lands in the group") {
    Rng rng(77);
    SMat x = algebra_su2().random_element(rng, 1.0);
    CHECK(group_contains(GroupId::SU2, exp_map(x, 1.0), 1e-12));
    SMat u = algebra_u1().random_element(rng, 3.0);
    CHECK(group_contains(GroupId::U1, exp_map(u, 1.0), 1e-12));
}

TEST_CASE("inverse and det on random invertible matrices") {
    Rng rng(91);
    for (int t = 0; t < 6; ++t) {
        SMat m = SMat::id(3);
        m += algebra_gl(3).random_element(rng, 0.4);
        SMat mi = inverse(m);
        CHECK(mat_dist(m * mi, SMat::id(3)) < 1e-12);
        CHECK(mat_dist(mi * m, SMat::id(3)) < 1e-12);
        CHECK(std::abs(det(m) * det(mi) - 1.0) < 1e-12);
    }
    // det multiplicativity
    SMat a = SMat::id(2), b = SMat::id(2);
    a += algebra_gl(2).random_element(rng, 0.7);
    b += algebra_gl(2).random_element(rng, 0.7);
    CHECK(std::abs(det(a * b) - det(a) * det(b)) < 1e-12);
}

TEST_CASE("c1 normalization: c1(2 pi i) = -1") {
    SMat x(1);
    x.at(0, 0) = TWO_PI * I;
    CHECK(std::abs(ip_c1().eval(x) - cplx(-1.0)) < 1e-15);
}

TEST_CASE("c1_squared polarization: (i a, i b) -> a b / 4 pi^2") {
    SMat x(1), y(1);
    x.at(0, 0) = I * 1.3;
    y.at(0, 0) = I * (-0.6);
    SMat args[2] = {x, y};
    cplx v = ip_c1_squared().polarized(args);
    CHECK(std::abs(v - cplx(1.3 * -0.6 / (4.0 * PI * PI))) < 1e-16);
}

TEST_CASE("polarizations are symmetric and multilinear") {
    Rng rng(11);
    const auto& p = ip_c2_su2();
    SMat x = algebra_su2().random_element(rng, 1.0);
    SMat y = algebra_su2().random_element(rng, 1.0);
    SMat xy[2] = {x, y}, yx[2] = {y, x};
    CHECK(std::abs(p.polarized(xy) - p.polarized(yx)) < 1e-16);
    // linearity in the first slot
    SMat z = algebra_su2().random_element(rng, 1.0);
    SMat lin[2] = {2.0 * x + 3.0 * z, y};
    SMat zx[2] = {z, y};
    CHECK(std::abs(p.polarized(lin) - (2.0 * p.polarized(xy) + 3.0 * p.polarized(zx))) < 1e-15);
    // homogeneous value agrees with the diagonal
    SMat xx[2] = {x, x};
    CHECK(std::abs(p.eval(x) - p.polarized(xx)) < 1e-16);
}

TEST_CASE("invariant polynomials are Ad-invariant") {
    Rng rng(13);
    const auto& su2 = algebra_su2();
    SMat x = su2.random_element(rng, 1.0);
    SMat g = exp_map(su2.random_element(rng, 1.0), 1.0);
    CHECK(std::abs(ip_c2_su2().eval(Ad(g, x)) - ip_c2_su2().eval(x)) < 1e-14);

    const auto& gl3 = algebra_gl(3);
    SMat y = gl3.random_element(rng, 1.0);
    SMat h = exp_map(gl3.random_element(rng, 0.5), 1.0);
    CHECK(std::abs(ip_p1_gl(3).eval(Ad(h, y)) - ip_p1_gl(3).eval(y)) < 1e-14);
}

TEST_CASE("su2_to_so3 is a bracket-preserving isomorphism") {
    Rng rng(17);
    const auto& su2 = algebra_su2();
    SMat x = su2.random_element(rng, 1.0);
    SMat y = su2.random_element(rng, 1.0);
    CHECK(algebra_so3().contains(su2_to_so3(x), 1e-13));
    CHECK(mat_dist(su2_to_so3(comm(x, y)), comm(su2_to_so3(x), su2_to_so3(y))) < 1e-13);
    // basis goes to basis
    for (int k = 0; k < 3; ++k)
        CHECK(mat_dist(su2_to_so3(su2.basis[k]), algebra_so3().basis[k]) < 1e-15);
}

TEST_CASE("trace identity under the adjoint embedding: tr3((ad X)^2) = 4 tr2(X^2)") {
    Rng rng(19);
    SMat x = algebra_su2().random_element(rng, 1.2);
    SMat ax = su2_to_so3(x);
    cplx lhs = (ax * ax).trace();
    cplx rhs = 4.0 * (x * x).trace();
    CHECK(std::abs(lhs - rhs) < 1e-13);
    // consequently the degree-2 characteristic values differ by a factor -4
    CHECK(std::abs(ip_p1_gl(3).eval(ax) + 4.0 * ip_c2_su2().eval(x)) < 1e-15);
}

TEST_CASE("scaled and summed polynomials track integrality") {
    auto p2 = ip_c2_su2().scaled(2.0, "2c2");
    CHECK(p2.integral);
    auto ph = ip_c2_su2().scaled(0.5, "c2/2");
    CHECK(!ph.integral);
    Rng rng(23);
    SMat x = algebra_su2().random_element(rng, 1.0);
    CHECK(std::abs(p2.eval(x) - 2.0 * ip_c2_su2().eval(x)) < 1e-16);

    auto s = InvariantPolynomial::sum(ip_c2_su2(), p2, "3c2");
    CHECK(std::abs(s.eval(x) - 3.0 * ip_c2_su2().eval(x)) < 1e-15);
    CHECK(s.integral);
    CHECK_THROWS(InvariantPolynomial::sum(ip_c1(), ip_c1_squared(), "bad"));
}

TEST_CASE("zero element maps to zero") {
    CHECK(std::abs(ip_c2_su2().eval(algebra_su2().zero())) == 0.0);
    CHECK(std::abs(ip_c1().eval(algebra_u1().zero())) == 0.0);
}

TEST_CASE("lookups by name") {
    CHECK(algebra_by_name("su2").dim() == 3);
    CHECK(algebra_by_name("gl3").dim() == 9);
    CHECK(ip_by_name("c2_su2").degree == 2);
    CHECK(group_by_name("SU2") == GroupId::SU2);
    CHECK_THROWS(algebra_by_name("e8"));
    CHECK_THROWS(ip_by_name("pontryagin"));
    // scale passthrough
    Rng rng(29);
    SMat x = algebra_su2().random_element(rng, 1.0);
    auto p = ip_by_name("c2_su2", 3.0);
    CHECK(std::abs(p.eval(x) - 3.0 * ip_c2_su2().eval(x)) < 1e-15);
}
