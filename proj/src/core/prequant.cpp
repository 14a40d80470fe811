#include "core/prequant.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "core/num.hpp"

namespace pql {

CircleValue CircleValue::from_real(double x) {
    double r = x - std::floor(x);
    if (r >= 1.0) r = 0.0; // rounding at the seam
    return {r};
}

CircleValue circle_add(CircleValue a, CircleValue b) {
    return CircleValue::from_real(a.rep + b.rep);
}

double circle_dist(CircleValue a, CircleValue b) {
    double d = std::abs(a.rep - b.rep);
    return std::min(d, 1.0 - d);
}

// ---------------------------------------------------------------------------

PrequantBundle make_bundle(const ConnFamily& fam, CycleData cycle,
                           const InvariantPolynomial& poly, const FormField& A0) {
    if (!poly.alg) throw std::invalid_argument("make_bundle: polynomial carries no algebra");
    if (A0.degree != 1 || !A0.grid.same_layout(fam.base))
        throw std::invalid_argument(
            "make_bundle: reference connection must be a 1-form on the family base");
    if (A0.mat_n != poly.alg->n)
        throw std::invalid_argument(
            "make_bundle: reference connection and polynomial disagree on the algebra");
    if (cycle.c.dim != 2 * poly.degree - 2)
        throw std::invalid_argument("make_bundle: cycle dimension must be 2r-2");
    PrequantBundle b;
    b.fam = fam;
    b.cycle = std::move(cycle);
    b.poly = poly;
    b.A0 = A0;
    b.rho = [fam, poly, c = b.cycle.c, A0](std::span<const double> s, int i) {
        return rho_c(poly, c, fam.at(s), A0, fam.tangent(s, i));
    };
    return b;
}

// ---------------------------------------------------------------------------

SymmetryPath identity_path(const Grid& g, int mat_n) {
    SymmetryPath p;
    p.name = "id";
    FormField id = group_identity(g, mat_n);
    SymGen z = zero_gen(g, mat_n);
    p.phi = [id](double) { return id; };
    p.gen = [z](double) { return z; };
    return p;
}

SymmetryPath gauge_exp_path(const FormField& xi) {
    if (xi.degree != 0 || xi.mat_n < 1)
        throw std::invalid_argument("gauge_exp_path: generator must be an algebra-valued 0-form");
    SymmetryPath p;
    p.name = "exp(-t xi)";
    FormField x = xi;
    SymGen gx{scalar_form(xi.grid, 1), xi};
    p.phi = [x](double t) { return group_exp(x, -t); };
    p.gen = [gx](double) { return gx; };
    return p;
}

SymmetryPath path_compose(const SymmetryPath& outer, const SymmetryPath& inner) {
    if (max_abs(outer.gen(0.0).v) != 0.0 || max_abs(inner.gen(0.0).v) != 0.0)
        throw std::invalid_argument("path_compose: pure gauge paths only");
    SymmetryPath p;
    p.name = outer.name + "*" + inner.name;
    p.phi = [o = outer, i = inner](double t) { return group_mult(o.phi(t), i.phi(t)); };
    p.gen = [o = outer, i = inner](double t) {
        SymGen go = o.gen(t);
        SymGen out = go;
        out.xi = go.xi + ad_apply(o.phi(t), i.gen(t).xi);
        return out;
    };
    return p;
}

double path_generator_residual(const SymmetryPath& p, double t, double h) {
    auto diff = [&](double hh) {
        return cplx(1.0 / (2.0 * hh)) * (p.phi(t + hh) - p.phi(t - hh));
    };
    FormField rich = cplx(4.0 / 3.0) * diff(h / 2.0) - cplx(1.0 / 3.0) * diff(h);
    FormField drive = group_mult(p.gen(t).xi, p.phi(t));
    return max_abs(rich + drive);
}

// ---------------------------------------------------------------------------

LiftedSymmetry lift_via_path(const SymmetryPath& p) {
    LiftedSymmetry f;
    f.name = p.name;
    f.endpoint = p.phi(1.0);
    f.path = p;
    return f;
}

LiftedSymmetry lift_via_boundary(const FormField& phi, const Chain& u,
                                 const std::string& name) {
    LiftedSymmetry f;
    f.name = name;
    f.endpoint = phi;
    f.u = u;
    return f;
}

AlphaValue alpha_path_at(const PrequantBundle& b, const SymmetryPath& p, const FormField& A) {
    FormField id = group_identity(A.grid, A.mat_n < 1 ? 1 : A.mat_n);
    if (max_abs(p.phi(0.0) - id) > 1e-12)
        throw std::invalid_argument("alpha_path: path must start at the identity");
    auto integrand = [&](double t) {
        FormField phit = p.phi(t);
        SymGen X = p.gen(t);
        FormField B = gauge_act(A, phit);
        double moved = rho_c(b.poly, b.cycle.c, B, b.A0, action_on_conn(B, X));
        return moved + mu_c(b.poly, b.cycle.c, B, X);
    };
    AdaptiveResult r = adaptive_simpson(integrand, 0.0, 1.0, 1e-8, 16384);
    if (!r.converged)
        throw std::runtime_error("alpha_path: transport quadrature did not converge after " +
                                 std::to_string(r.panels) + " panels");
    return {r.value, CircleValue::from_real(r.value)};
}

AlphaValue alpha_path(const PrequantBundle& b, const SymmetryPath& p,
                      std::span<const double> s) {
    return alpha_path_at(b, p, b.fam.at(s));
}

AlphaValue alpha_boundary_at(const PrequantBundle& b, const FormField& phi, const Chain& u,
                             const FormField& A) {
    if (!chain_equal(chain_boundary(u), b.cycle.c))
        throw std::invalid_argument(
            "alpha_boundary: chain boundary does not match the bundle cycle");
    double v = cs_action(b.poly, u, gauge_act(A, phi), b.A0) - cs_action(b.poly, u, A, b.A0);
    return {v, CircleValue::from_real(v)};
}

AlphaValue alpha_boundary(const PrequantBundle& b, const FormField& phi, const Chain& u,
                          std::span<const double> s) {
    return alpha_boundary_at(b, phi, u, b.fam.at(s));
}

AlphaValue alpha_at(const PrequantBundle& b, const LiftedSymmetry& f, const FormField& A) {
    if (f.path) return alpha_path_at(b, *f.path, A);
    if (f.u) return alpha_boundary_at(b, f.endpoint, *f.u, A);
    throw std::invalid_argument("alpha: symmetry carries neither a path nor a bounding chain");
}

AlphaValue alpha(const PrequantBundle& b, const LiftedSymmetry& f, std::span<const double> s) {
    return alpha_at(b, f, b.fam.at(s));
}

double cocycle_residual(const PrequantBundle& b, const LiftedSymmetry& f1,
                        const LiftedSymmetry& f2, std::span<const double> s) {
    FormField A = b.fam.at(s);
    AlphaValue a1 = alpha_at(b, f1, A);
    AlphaValue a2 = alpha_at(b, f2, gauge_act(A, f1.endpoint));
    FormField both = group_mult(f2.endpoint, f1.endpoint);
    AlphaValue a21;
    if (f1.path && f2.path) {
        a21 = alpha_path_at(b, path_compose(*f2.path, *f1.path), A);
    } else if (f2.u) {
        a21 = alpha_boundary_at(b, both, *f2.u, A);
    } else if (f1.u) {
        a21 = alpha_boundary_at(b, both, *f1.u, A);
    } else {
        throw std::invalid_argument("cocycle_residual: no construction for the composite");
    }
    return circle_dist(a21.value, circle_add(a1.value, a2.value));
}

double dalpha_residual(const PrequantBundle& b, const LiftedSymmetry& f,
                       std::span<const double> s, double h) {
    FormField A = b.fam.at(s);
    FormField phiA = gauge_act(A, f.endpoint);
    std::vector<double> sp(s.begin(), s.end());
    double worst = 0.0;
    for (int i = 0; i < b.fam.m; ++i) {
        auto lift = [&](double d) {
            std::vector<double> q = sp;
            q[i] += d;
            return alpha(b, f, q).lift;
        };
        double dlift = fd_richardson(lift, h);
        FormField ti = b.fam.tangent(s, i);
        double rhs =
            rho_c(b.poly, b.cycle.c, phiA, b.A0, ad_apply(f.endpoint, ti)) - b.rho(s, i);
        worst = std::max(worst, std::abs(dlift - rhs));
    }
    return worst;
}

// ---------------------------------------------------------------------------

ParamSection cs_section(const PrequantBundle& b, const Chain& u) {
    if (!chain_equal(chain_boundary(u), b.cycle.c))
        throw std::invalid_argument("cs_section: chain boundary does not match the bundle cycle");
    ParamSection S;
    S.name = "S_" + u.name;
    S.value = [fam = b.fam, poly = b.poly, u, A0 = b.A0](std::span<const double> s) {
        return std::exp(cplx(0.0, TWO_PI * cs_action(poly, u, fam.at(s), A0)));
    };
    return S;
}

cplx covariant_derivative(const PrequantBundle& b, const ParamSection& S,
                          std::span<const double> s, int dir, double h) {
    std::vector<double> sp(s.begin(), s.end());
    auto part = [&](double d, bool im) {
        std::vector<double> q = sp;
        q[dir] += d;
        cplx v = S.value(q);
        return im ? v.imag() : v.real();
    };
    auto re = [&](double d) { return part(d, false); };
    auto imf = [&](double d) { return part(d, true); };
    cplx dS(fd_richardson(re, h), fd_richardson(imf, h));
    return dS - cplx(0.0, TWO_PI) * b.rho(s, dir) * S.value(s);
}

// ---------------------------------------------------------------------------

ParamLoop param_circle(std::vector<double> center, double radius, int i, int j) {
    if (i == j || i < 0 || j < 0 || i >= static_cast<int>(center.size()) ||
        j >= static_cast<int>(center.size()))
        throw std::invalid_argument("param_circle: need two distinct axes inside the box");
    ParamLoop l;
    l.name = "circle";
    l.point = [center, radius, i, j](double t, std::span<double> s) {
        std::copy(center.begin(), center.end(), s.begin());
        s[i] += radius * std::cos(TWO_PI * t);
        s[j] += radius * std::sin(TWO_PI * t);
    };
    l.velocity = [radius, i, j, n = center.size()](double t, std::span<double> v) {
        std::fill(v.begin(), v.begin() + n, 0.0);
        v[i] = -TWO_PI * radius * std::sin(TWO_PI * t);
        v[j] = TWO_PI * radius * std::cos(TWO_PI * t);
    };
    return l;
}

AlphaValue log_holonomy(const PrequantBundle& b, const ParamLoop& loop) {
    int m = b.fam.m;
    std::vector<double> s0(m), s1(m);
    loop.point(0.0, s0);
    loop.point(1.0, s1);
    for (int i = 0; i < m; ++i)
        if (std::abs(s0[i] - s1[i]) > 1e-12)
            throw std::invalid_argument("log_holonomy: loop does not close");
    std::vector<double> s(m), v(m);
    auto integrand = [&](double t) {
        loop.point(t, s);
        loop.velocity(t, v);
        KahanSum<double> acc;
        for (int i = 0; i < m; ++i)
            if (v[i] != 0.0) acc.add(b.rho(s, i) * v[i]);
        return acc.value();
    };
    AdaptiveResult r = adaptive_simpson(integrand, 0.0, 1.0, 1e-12, 16384);
    if (!r.converged)
        throw std::runtime_error("log_holonomy: loop quadrature did not converge after " +
                                 std::to_string(r.panels) + " panels");
    return {r.value, CircleValue::from_real(r.value)};
}

double sigma_disk_integral(const PrequantBundle& b, std::vector<double> center, double radius,
                           int i, int j, int n_r, int n_th) {
    if (i == j) throw std::invalid_argument("sigma_disk_integral: need two distinct axes");
    const Quadrature1D& q = gauss_legendre_01(n_r);
    KahanSum<double> acc;
    std::vector<double> s(center.size());
    for (int l = 0; l < n_th; ++l) {
        double th = TWO_PI * l / n_th; // periodic: trapezoid nodes
        for (size_t a = 0; a < q.x.size(); ++a) {
            double u = q.x[a];
            std::copy(center.begin(), center.end(), s.begin());
            s[i] += radius * u * std::cos(th);
            s[j] += radius * u * std::sin(th);
            double sig =
                sigma_c(b.poly, b.cycle.c, b.fam.at(s), b.fam.tangent(s, i), b.fam.tangent(s, j));
            acc.add(q.w[a] * (TWO_PI / n_th) * radius * radius * u * sig);
        }
    }
    return acc.value();
}

// ---------------------------------------------------------------------------

BackgroundChange change_background(const PrequantBundle& b, const FormField& A0p) {
    if (b.poly.degree > 2)
        throw std::invalid_argument(
            "change_background: needs the two-argument transgression (degree <= 2)");
    BackgroundChange chg;
    chg.bundle = make_bundle(b.fam, b.cycle, b.poly, A0p);
    chg.beta_at = [poly = b.poly, c = b.cycle.c, A0p, A0 = b.A0](const FormField& A) {
        return chain_integrate(c, transgress2(poly, A, A0p, A0)).real();
    };
    chg.beta = [fam = b.fam, beta_at = chg.beta_at](std::span<const double> s) {
        return beta_at(fam.at(s));
    };
    return chg;
}

double background_rho_residual(const PrequantBundle& b, const BackgroundChange& chg,
                               int grid_pts, double h) {
    double worst = 0.0;
    for (const auto& s : param_grid(b.fam, grid_pts)) {
        for (int i = 0; i < b.fam.m; ++i) {
            auto beta_i = [&](double d) {
                std::vector<double> q = s;
                q[i] += d;
                return chg.beta(q);
            };
            double lhs = fd_richardson(beta_i, h);
            double rhs = chg.bundle.rho(s, i) - b.rho(s, i);
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    }
    return worst;
}

double background_alpha_residual(const PrequantBundle& b, const BackgroundChange& chg,
                                 const LiftedSymmetry& f, std::span<const double> s) {
    FormField A = b.fam.at(s);
    AlphaValue ap = alpha_at(chg.bundle, f, A);
    AlphaValue a = alpha_at(b, f, A);
    double shift = chg.beta_at(gauge_act(A, f.endpoint)) - chg.beta_at(A);
    return circle_dist(ap.value, CircleValue::from_real(a.lift + shift));
}

// ---------------------------------------------------------------------------

namespace {

void require_shared_family(const PrequantBundle& a, const PrequantBundle& b, const char* who) {
    if (a.fam.group != b.fam.group || a.fam.m != b.fam.m ||
        !a.fam.base.same_layout(b.fam.base))
        throw std::invalid_argument(std::string(who) + ": operands live over different families");
}

void require_shared_background(const PrequantBundle& a, const PrequantBundle& b,
                               const char* who) {
    if (!a.A0.grid.same_layout(b.A0.grid) || a.A0.mat_n != b.A0.mat_n ||
        max_abs(a.A0 - b.A0) > 1e-14)
        throw std::invalid_argument(std::string(who) +
                                    ": operands disagree on the reference connection");
}

} // namespace

PrequantBundle negate_cycle(const PrequantBundle& b) {
    CycleData c{chain_scaled(b.cycle.c, -1.0), b.cycle.tag};
    return make_bundle(b.fam, std::move(c), b.poly, b.A0);
}

PrequantBundle add_cycles(const PrequantBundle& a, const PrequantBundle& b) {
    require_shared_family(a, b, "add_cycles");
    require_shared_background(a, b, "add_cycles");
    if (a.poly.name != b.poly.name || a.poly.degree != b.poly.degree || a.poly.alg != b.poly.alg)
        throw std::invalid_argument("add_cycles: operands disagree on the polynomial");
    CycleData c{chain_sum(a.cycle.c, b.cycle.c),
                a.cycle.tag == b.cycle.tag ? a.cycle.tag : CycleCase::GaugeArbitrary};
    return make_bundle(a.fam, std::move(c), a.poly, a.A0);
}

PrequantBundle negate_poly(const PrequantBundle& b) {
    return make_bundle(b.fam, b.cycle, b.poly.scaled(-1.0, "-" + b.poly.name), b.A0);
}

PrequantBundle add_polys(const PrequantBundle& a, const PrequantBundle& b) {
    require_shared_family(a, b, "add_polys");
    require_shared_background(a, b, "add_polys");
    if (!chain_equal(a.cycle.c, b.cycle.c))
        throw std::invalid_argument("add_polys: operands disagree on the cycle");
    return make_bundle(a.fam, a.cycle,
                       InvariantPolynomial::sum(a.poly, b.poly, a.poly.name + "+" + b.poly.name),
                       a.A0);
}

} // namespace pql
