#include "core/liealg.hpp"

#include <stdexcept>

namespace pql {

namespace {

const cplx I(0.0, 1.0);

LieAlgebra make_u1() {
    LieAlgebra a;
    a.name = "u1";
    a.kind = AlgKind::U1;
    a.n = 1;
    SMat b(1);
    b.at(0, 0) = I;
    a.basis = {b};
    return a;
}

LieAlgebra make_su2() {
    LieAlgebra a;
    a.name = "su2";
    a.kind = AlgKind::SU2;
    a.n = 2;
    // e_k = -(i/2) sigma_k, so [e1,e2] = e3 cyclically.
    SMat e1(2), e2(2), e3(2);
    e1.at(0, 1) = -0.5 * I;
    e1.at(1, 0) = -0.5 * I;
    e2.at(0, 1) = -0.5;
    e2.at(1, 0) = 0.5;
    e3.at(0, 0) = -0.5 * I;
    e3.at(1, 1) = 0.5 * I;
    a.basis = {e1, e2, e3};
    return a;
}

LieAlgebra make_so3() {
    LieAlgebra a;
    a.name = "so3";
    a.kind = AlgKind::SO3;
    a.n = 3;
    SMat l1(3), l2(3), l3(3);
    l1.at(1, 2) = -1.0;
    l1.at(2, 1) = 1.0;
    l2.at(0, 2) = 1.0;
    l2.at(2, 0) = -1.0;
    l3.at(0, 1) = -1.0;
    l3.at(1, 0) = 1.0;
    a.basis = {l1, l2, l3};
    return a;
}

LieAlgebra make_gl(int n) {
    LieAlgebra a;
    a.name = "gl" + std::to_string(n);
    a.kind = AlgKind::GL;
    a.n = n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            SMat e(n);
            e.at(i, j) = 1.0;
            a.basis.push_back(e);
        }
    return a;
}

} // namespace

const LieAlgebra& algebra_u1() {
    static const LieAlgebra a = make_u1();
    return a;
}
const LieAlgebra& algebra_su2() {
    static const LieAlgebra a = make_su2();
    return a;
}
const LieAlgebra& algebra_so3() {
    static const LieAlgebra a = make_so3();
    return a;
}
const LieAlgebra& algebra_gl(int n) {
    static const LieAlgebra g1 = make_gl(1);
    static const LieAlgebra g2 = make_gl(2);
    static const LieAlgebra g3 = make_gl(3);
    switch (n) {
        case 1: return g1;
        case 2: return g2;
        case 3: return g3;
        default: throw std::invalid_argument("algebra_gl: n out of range");
    }
}

const LieAlgebra& algebra_by_name(const std::string& name) {
    if (name == "u1") return algebra_u1();
    if (name == "su2") return algebra_su2();
    if (name == "so3") return algebra_so3();
    if (name == "gl1") return algebra_gl(1);
    if (name == "gl2") return algebra_gl(2);
    if (name == "gl3") return algebra_gl(3);
    throw std::invalid_argument("unknown algebra: " + name);
}

bool LieAlgebra::contains(const SMat& x, double tol) const {
    if (x.n != n) return false;
    switch (kind) {
        case AlgKind::U1:
            return std::abs(x.at(0, 0).real()) <= tol;
        case AlgKind::SU2: {
            // anti-Hermitian and traceless
            double r = (x + x.adjoint()).max_abs();
            return r <= tol && std::abs(x.trace()) <= tol;
        }
        case AlgKind::SO3: {
            double im = 0.0;
            for (int i = 0; i < 9; ++i) im = std::max(im, std::abs(x.a[i].imag()));
            double r = (x + x.transpose()).max_abs();
            return im <= tol && r <= tol;
        }
        case AlgKind::GL: {
            double im = 0.0;
            for (int i = 0; i < n * n; ++i) im = std::max(im, std::abs(x.a[i].imag()));
            return im <= tol;
        }
    }
    return false;
}

SMat LieAlgebra::random_element(Rng& rng, double amp) const {
    SMat x(n);
    for (const SMat& b : basis) x += rng.uniform(-amp, amp) * b;
    return x;
}

SMat su2_to_so3(const SMat& x) {
    // coefficients on e_k = -(i/2)sigma_k
    cplx x1 = I * (x.at(0, 1) + x.at(1, 0));
    cplx x2 = x.at(1, 0) - x.at(0, 1);
    cplx x3 = 2.0 * I * x.at(0, 0);
    const auto& so3 = algebra_so3();
    return x1 * so3.basis[0] + x2 * so3.basis[1] + x3 * so3.basis[2];
}

cplx InvariantPolynomial::polarized(std::span<const SMat> args) const {
    if (static_cast<int>(args.size()) != degree)
        throw std::invalid_argument("polarized: wrong argument count for " + name);
    return pol(args);
}

cplx InvariantPolynomial::eval(const SMat& x) const {
    std::vector<SMat> args(degree, x);
    return pol(args);
}

InvariantPolynomial InvariantPolynomial::scaled(double lambda, const std::string& new_name) const {
    InvariantPolynomial q = *this;
    q.name = new_name;
    q.integral = integral && lambda == std::round(lambda);
    auto base = pol;
    q.pol = [base, lambda](std::span<const SMat> xs) { return lambda * base(xs); };
    return q;
}

InvariantPolynomial InvariantPolynomial::sum(const InvariantPolynomial& a,
                                             const InvariantPolynomial& b,
                                             const std::string& new_name) {
    if (a.alg != b.alg || a.degree != b.degree)
        throw std::invalid_argument("polynomial sum: mismatched algebra or degree");
    InvariantPolynomial q;
    q.name = new_name;
    q.alg = a.alg;
    q.degree = a.degree;
    q.integral = a.integral && b.integral;
    auto pa = a.pol, pb = b.pol;
    q.pol = [pa, pb](std::span<const SMat> xs) { return pa(xs) + pb(xs); };
    return q;
}

const InvariantPolynomial& ip_c1() {
    static const InvariantPolynomial p = [] {
        InvariantPolynomial q;
        q.name = "c1";
        q.alg = &algebra_u1();
        q.degree = 1;
        q.integral = true;
        q.pol = [](std::span<const SMat> xs) { return (I / TWO_PI) * xs[0].at(0, 0); };
        return q;
    }();
    return p;
}

const InvariantPolynomial& ip_c1_squared() {
    static const InvariantPolynomial p = [] {
        InvariantPolynomial q;
        q.name = "c1_squared";
        q.alg = &algebra_u1();
        q.degree = 2;
        q.integral = true;
        q.pol = [](std::span<const SMat> xs) {
            return (I / TWO_PI) * xs[0].at(0, 0) * (I / TWO_PI) * xs[1].at(0, 0);
        };
        return q;
    }();
    return p;
}

const InvariantPolynomial& ip_c2_su2() {
    static const InvariantPolynomial p = [] {
        InvariantPolynomial q;
        q.name = "c2_su2";
        q.alg = &algebra_su2();
        q.degree = 2;
        q.integral = true;
        q.pol = [](std::span<const SMat> xs) {
            return (xs[0] * xs[1]).trace() / (8.0 * PI * PI);
        };
        return q;
    }();
    return p;
}

const InvariantPolynomial& ip_p1_gl(int n) {
    auto make = [](int dim) {
        InvariantPolynomial q;
        q.name = "p1_gl" + std::to_string(dim);
        q.alg = &algebra_gl(dim);
        q.degree = 2;
        q.integral = true;
        q.pol = [](std::span<const SMat> xs) {
            return -(xs[0] * xs[1]).trace() / (8.0 * PI * PI);
        };
        return q;
    };
    static const InvariantPolynomial p2 = make(2);
    static const InvariantPolynomial p3 = make(3);
    switch (n) {
        case 2: return p2;
        case 3: return p3;
        default: throw std::invalid_argument("ip_p1_gl: n out of range");
    }
}

InvariantPolynomial ip_by_name(const std::string& name, double scale) {
    const InvariantPolynomial* base = nullptr;
    if (name == "c1") base = &ip_c1();
    else if (name == "c1_squared") base = &ip_c1_squared();
    else if (name == "c2_su2") base = &ip_c2_su2();
    else if (name == "p1_gl2") base = &ip_p1_gl(2);
    else if (name == "p1_gl3") base = &ip_p1_gl(3);
    else throw std::invalid_argument("unknown polynomial: " + name);
    if (scale == 1.0) return *base;
    return base->scaled(scale, name + "_x" + std::to_string(scale));
}

const LieAlgebra& group_algebra(GroupId g) {
    switch (g) {
        case GroupId::U1: return algebra_u1();
        case GroupId::SU2: return algebra_su2();
        case GroupId::GL2: return algebra_gl(2);
        case GroupId::GL3: return algebra_gl(3);
    }
    throw std::logic_error("group_algebra: bad group");
}

int group_matrix_dim(GroupId g) { return group_algebra(g).n; }

bool group_contains(GroupId g, const SMat& m, double tol) {
    switch (g) {
        case GroupId::U1:
            return m.n == 1 && std::abs(std::abs(m.at(0, 0)) - 1.0) <= tol;
        case GroupId::SU2: {
            if (m.n != 2) return false;
            SMat u = m.adjoint() * m;
            return (u - SMat::id(2)).max_abs() <= tol && std::abs(det(m) - 1.0) <= tol;
        }
        case GroupId::GL2:
        case GroupId::GL3: {
            int n = group_matrix_dim(g);
            if (m.n != n) return false;
            double im = 0.0;
            for (int i = 0; i < n * n; ++i) im = std::max(im, std::abs(m.a[i].imag()));
            return im <= tol && std::abs(det(m)) > tol;
        }
    }
    return false;
}

std::string group_name(GroupId g) {
    switch (g) {
        case GroupId::U1: return "U1";
        case GroupId::SU2: return "SU2";
        case GroupId::GL2: return "GL2";
        case GroupId::GL3: return "GL3";
    }
    return "?";
}

GroupId group_by_name(const std::string& name) {
    if (name == "U1" || name == "u1") return GroupId::U1;
    if (name == "SU2" || name == "su2") return GroupId::SU2;
    if (name == "GL2" || name == "gl2") return GroupId::GL2;
    if (name == "GL3" || name == "gl3") return GroupId::GL3;
    throw std::invalid_argument("unknown group: " + name);
}

} // namespace pql
