#include "core/connfam.hpp"

#include "core/num.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

namespace pql {

namespace {

// Real inner product over all components and nodes (used only for the span
// diagnostic; the identity checks never need a metric).
double field_inner(const FormField& x, const FormField& y) {
    KahanSum<double> s;
    for (size_t c = 0; c < x.comp.size(); ++c)
        for (size_t f = 0; f < x.comp[c].size(); ++f)
            s.add((std::conj(x.comp[c][f]) * y.comp[c][f]).real());
    return s.value();
}

std::vector<double> shifted(std::span<const double> s, int i, double h) {
    std::vector<double> out(s.begin(), s.end());
    out[i] += h;
    return out;
}

} // namespace

Amplitude amp_coordinate(int i) {
    return {"s" + std::to_string(i),
            [i](std::span<const double> s) { return s[i]; },
            [i](std::span<const double>, int j) { return j == i ? 1.0 : 0.0; }};
}

Amplitude amp_sin(int i, double freq, double phase) {
    return {"sin" + std::to_string(i),
            [=](std::span<const double> s) { return std::sin(freq * s[i] + phase); },
            [=](std::span<const double> s, int j) {
                return j == i ? freq * std::cos(freq * s[i] + phase) : 0.0;
            }};
}

Amplitude amp_bilinear(int i, int j) {
    return {"s" + std::to_string(i) + "s" + std::to_string(j),
            [=](std::span<const double> s) { return s[i] * s[j]; },
            [=](std::span<const double> s, int k) {
                double d = 0.0;
                if (k == i) d += s[j];
                if (k == j) d += s[i];
                return d;
            }};
}

ConnFamily make_family(GroupId group, const FormField& center, std::vector<FormField> dirs,
                       std::vector<Amplitude> amps, int m, std::vector<double> lo,
                       std::vector<double> hi) {
    if (m < 1 || m > 4) throw std::invalid_argument("make_family: 1 <= m <= 4");
    if (dirs.size() != amps.size())
        throw std::invalid_argument("make_family: one amplitude per direction");
    for (const FormField& d : dirs)
        if (!d.grid.same_layout(center.grid) || d.degree != 1 || d.mat_n != center.mat_n)
            throw std::invalid_argument("make_family: directions must be 1-forms on the base");
    if (lo.empty()) lo.assign(m, 0.0);
    if (hi.empty()) hi.assign(m, 1.0);
    if ((int)lo.size() != m || (int)hi.size() != m)
        throw std::invalid_argument("make_family: box bounds must have m entries");

    ConnFamily fam;
    fam.group = group;
    fam.base = center.grid;
    fam.m = m;
    fam.lo = std::move(lo);
    fam.hi = std::move(hi);
    auto dirs_p = std::make_shared<std::vector<FormField>>(std::move(dirs));
    auto amps_p = std::make_shared<std::vector<Amplitude>>(std::move(amps));
    auto center_p = std::make_shared<FormField>(center);
    fam.at = [dirs_p, amps_p, center_p](std::span<const double> s) {
        FormField acc = *center_p;
        for (size_t k = 0; k < dirs_p->size(); ++k)
            acc += cplx((*amps_p)[k].value(s)) * (*dirs_p)[k];
        return acc;
    };
    fam.tangent = [dirs_p, amps_p, center_p](std::span<const double> s, int i) {
        FormField acc = lie_form(center_p->grid, 1, center_p->mat_n);
        for (size_t k = 0; k < dirs_p->size(); ++k)
            acc += cplx((*amps_p)[k].partial(s, i)) * (*dirs_p)[k];
        return acc;
    };
    return fam;
}

double family_tangent_residual(const ConnFamily& fam, std::span<const double> s, double h) {
    double worst = 0.0;
    for (int i = 0; i < fam.m; ++i) {
        auto fd = [&](double step) {
            FormField d1 = fam.at(shifted(s, i, step)) - fam.at(shifted(s, i, -step));
            return cplx(1.0 / (2.0 * step)) * d1;
        };
        FormField rich = cplx(4.0 / 3.0) * fd(h / 2.0) - cplx(1.0 / 3.0) * fd(h);
        worst = std::max(worst, max_abs(rich - fam.tangent(s, i)));
    }
    return worst;
}

std::vector<std::vector<double>> param_grid(const ConnFamily& fam, int k) {
    if (k < 1) throw std::invalid_argument("param_grid: k >= 1");
    std::vector<std::vector<double>> pts;
    std::vector<int> idx(fam.m, 0);
    for (;;) {
        std::vector<double> s(fam.m);
        for (int i = 0; i < fam.m; ++i)
            s[i] = fam.lo[i] + (fam.hi[i] - fam.lo[i]) * (idx[i] + 1.0) / (k + 1.0);
        pts.push_back(std::move(s));
        int a = 0;
        while (a < fam.m && ++idx[a] == k) idx[a++] = 0;
        if (a == fam.m) break;
    }
    return pts;
}

double sigma_c(const InvariantPolynomial& p, const Chain& c, const FormField& A,
               const FormField& a, const FormField& b) {
    int r = p.degree;
    if (r < 2) return 0.0;
    if (c.dim != 2 * r - 2) throw std::invalid_argument("sigma_c: chain dimension must be 2r-2");
    std::vector<const FormField*> args(r);
    args[0] = &a;
    args[1] = &b;
    FormField F = r > 2 ? curvature(A) : FormField{};
    for (int k = 2; k < r; ++k) args[k] = &F;
    return r * (r - 1) * chain_integrate(c, polarized_product(p, args)).real();
}

double mu_c(const InvariantPolynomial& p, const Chain& c, const FormField& A, const SymGen& X) {
    int r = p.degree;
    if (c.dim != 2 * r - 2) throw std::invalid_argument("mu_c: chain dimension must be 2r-2");
    FormField v = vertical_part(A, X);
    FormField F = curvature(A);
    std::vector<const FormField*> args(r, &F);
    args[0] = &v;
    return -r * chain_integrate(c, polarized_product(p, args)).real();
}

double rho_c(const InvariantPolynomial& p, const Chain& c, const FormField& A,
             const FormField& A0, const FormField& a) {
    int r = p.degree;
    if (r < 2) return 0.0;
    if (c.dim != 2 * r - 2) throw std::invalid_argument("rho_c: chain dimension must be 2r-2");
    FormField delta = A - A0;
    const auto& q = gauss_legendre_01(r + 2);
    KahanSum<double> acc;
    for (size_t i = 0; i < q.x.size(); ++i) {
        double t = q.x[i];
        std::vector<const FormField*> args(r);
        args[0] = &delta;
        args[1] = &a;
        FormField Ft;
        if (r > 2) {
            Ft = curvature(cplx(t) * A + cplx(1.0 - t) * A0);
            for (int k = 2; k < r; ++k) args[k] = &Ft;
        }
        acc.add(q.w[i] * t * r * (r - 1) *
                chain_integrate(c, polarized_product(p, args)).real());
    }
    return acc.value();
}

double sigma_u(const InvariantPolynomial& p, const Chain& u, const FormField& A,
               const FormField& a) {
    int r = p.degree;
    if (u.dim != 2 * r - 1) throw std::invalid_argument("sigma_u: chain dimension must be 2r-1");
    FormField F = curvature(A);
    std::vector<const FormField*> args(r, &F);
    args[0] = &a;
    return r * chain_integrate(u, polarized_product(p, args)).real();
}

EquivariantTwoForm make_equivariant_form(const InvariantPolynomial& p, const Chain& c,
                                         const ConnFamily& fam) {
    EquivariantTwoForm w;
    w.sigma = [p, c, fam](std::span<const double> s, const FormField& a, const FormField& b) {
        return sigma_c(p, c, fam.at(s), a, b);
    };
    w.mu = [p, c, fam](std::span<const double> s, const SymGen& X) {
        return mu_c(p, c, fam.at(s), X);
    };
    return w;
}

CartanReport cartan_D_check(const InvariantPolynomial& p, const Chain& c, const ConnFamily& fam,
                            const SymGen& X, int grid_pts) {
    CartanReport rep;
    for (const auto& s : param_grid(fam, grid_pts)) {
        FormField A = fam.at(s);
        FormField XA = action_on_conn(A, X);

        std::vector<FormField> tan;
        tan.reserve(fam.m);
        for (int i = 0; i < fam.m; ++i) tan.push_back(fam.tangent(s, i));

        for (int i = 0; i < fam.m; ++i) {
            double rhs = sigma_c(p, c, A, XA, tan[i]);
            double lhs = fd_richardson(
                [&](double h) { return mu_c(p, c, fam.at(shifted(s, i, h)), X); }, 1e-3);
            rep.identity_residual = std::max(rep.identity_residual, std::abs(lhs - rhs));
            rep.scale = std::max(rep.scale, std::abs(rhs));
        }

        // least-squares span defect of X_A against the family tangents
        double xa2 = field_inner(XA, XA);
        if (xa2 > 0.0) {
            int m = fam.m;
            std::vector<double> G(m * m), rhsv(m);
            double gscale = 0.0;
            for (int i = 0; i < m; ++i) {
                rhsv[i] = field_inner(tan[i], XA);
                for (int j = 0; j < m; ++j) G[i * m + j] = field_inner(tan[i], tan[j]);
                gscale = std::max(gscale, G[i * m + i]);
            }
            // tiny Gauss-Jordan with partial pivoting (m <= 4); degenerate
            // tangent directions just drop out of the fit
            std::vector<double> lam = rhsv;
            for (int col = 0; col < m; ++col) {
                int piv = col;
                for (int rr = col + 1; rr < m; ++rr)
                    if (std::abs(G[rr * m + col]) > std::abs(G[piv * m + col])) piv = rr;
                for (int cc = 0; cc < m; ++cc) std::swap(G[col * m + cc], G[piv * m + cc]);
                std::swap(lam[col], lam[piv]);
                double d = G[col * m + col];
                if (std::abs(d) < 1e-12 * gscale) continue;
                for (int rr = 0; rr < m; ++rr) {
                    if (rr == col) continue;
                    double f = G[rr * m + col] / d;
                    for (int cc = 0; cc < m; ++cc) G[rr * m + cc] -= f * G[col * m + cc];
                    lam[rr] -= f * lam[col];
                }
            }
            double fit = 0.0;
            for (int i = 0; i < m; ++i) {
                double d = G[i * m + i];
                double li = std::abs(d) < 1e-12 * gscale ? 0.0 : lam[i] / d;
                fit += li * rhsv[i];
            }
            double defect2 = std::max(0.0, xa2 - fit);
            rep.span_residual = std::max(rep.span_residual, std::sqrt(defect2 / xa2));
        }
    }
    return rep;
}

} // namespace pql
