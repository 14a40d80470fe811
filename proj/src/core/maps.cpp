#include "core/maps.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace pql {

FormField pullback(const FormField& w, const AlignedMap& m) {
    if (!w.grid.same_layout(m.source))
        throw std::invalid_argument("pullback: field does not live on the map's source grid");
    const Grid& tg = m.target;
    FormField out(tg, w.degree, w.mat_n);
    if (w.degree > tg.dim()) throw std::invalid_argument("pullback: degree exceeds target dim");
    const auto& tsubs = subsets(tg.dim(), w.degree);
    int vd = w.vdim;
    std::vector<int> sidx(m.source.dim());

    for (size_t c = 0; c < tsubs.size(); ++c) {
        const auto& J = tsubs[c];
        // source component hit by this target component, with sorting sign
        std::vector<int> src;
        double factor = 1.0;
        for (int b : J) {
            src.push_back(m.axes[b].src_axis);
            factor *= m.axes[b].dfactor;
        }
        // sort src, tracking permutation parity (src_axis values are distinct)
        for (size_t i = 0; i + 1 < src.size(); ++i)
            for (size_t j = 0; j + 1 < src.size() - i; ++j)
                if (src[j] > src[j + 1]) {
                    std::swap(src[j], src[j + 1]);
                    factor = -factor;
                }
        int sc = subset_index(m.source.dim(), src);
        const cplx* in = w.comp[sc].data();
        cplx* ot = out.comp[c].data();
        for_each_node(tg, [&](std::int64_t f, std::span<const int> idx) {
            for (const auto& [ax, node] : m.frozen) sidx[ax] = node;
            for (int b = 0; b < tg.dim(); ++b)
                sidx[m.axes[b].src_axis] = m.axes[b].node_map[idx[b]];
            std::int64_t sf = m.source.flat(sidx);
            for (int l = 0; l < vd; ++l) ot[f * vd + l] = factor * in[sf * vd + l];
        });
    }
    return out;
}

AlignedMap shift_map(const Grid& g, std::span<const int> node_shift) {
    if (static_cast<int>(node_shift.size()) != g.dim())
        throw std::invalid_argument("shift_map: wrong shift size");
    AlignedMap m;
    m.source = g;
    m.target = g;
    for (int a = 0; a < g.dim(); ++a) {
        if (g.axis(a).kind != AxisKind::Periodic && node_shift[a] != 0)
            throw std::invalid_argument("shift_map: shifts need periodic axes");
        AlignedAxisMap am;
        am.src_axis = a;
        int n = g.axis(a).nodes();
        am.node_map.resize(n);
        for (int i = 0; i < n; ++i)
            am.node_map[i] = ((i + node_shift[a]) % g.axis(a).n + g.axis(a).n) % g.axis(a).n;
        m.axes.push_back(std::move(am));
    }
    return m;
}

AlignedMap slice_map(const Grid& g, int frozen_axis, int node, const std::string& name) {
    if (frozen_axis < 0 || frozen_axis >= g.dim())
        throw std::invalid_argument("slice_map: bad axis");
    if (node < 0 || node >= g.axis(frozen_axis).nodes())
        throw std::invalid_argument("slice_map: node out of range");
    AlignedMap m;
    m.source = g;
    std::vector<Axis> rest;
    for (int a = 0; a < g.dim(); ++a) {
        if (a == frozen_axis) continue;
        rest.push_back(g.axis(a));
        AlignedAxisMap am;
        am.src_axis = a;
        am.node_map.resize(g.axis(a).nodes());
        for (int i = 0; i < g.axis(a).nodes(); ++i) am.node_map[i] = i;
        m.axes.push_back(std::move(am));
    }
    if (rest.empty()) throw std::invalid_argument("slice_map: slicing a 1-d grid");
    m.target = Grid(name, rest);
    m.frozen = {{frozen_axis, node}};
    return m;
}

AlignedMap slab_wrap_map(const Grid& g, int axis, const std::string& name) {
    if (g.axis(axis).kind != AxisKind::Periodic)
        throw std::invalid_argument("slab_wrap_map: axis must be periodic");
    AlignedMap m;
    m.source = g;
    std::vector<Axis> taxes;
    for (int a = 0; a < g.dim(); ++a)
        taxes.push_back(a == axis ? bounded_axis(g.axis(a).n, 0.0, g.axis(a).length()) : g.axis(a));
    m.target = Grid(name, taxes);
    for (int a = 0; a < g.dim(); ++a) {
        AlignedAxisMap am;
        am.src_axis = a;
        int tn = m.target.axis(a).nodes();
        am.node_map.resize(tn);
        for (int i = 0; i < tn; ++i) am.node_map[i] = i % g.axis(a).n;
        m.axes.push_back(std::move(am));
    }
    return m;
}

AlignedMap partial_slab_map(const Grid& g, int axis, int j0, int j1, const std::string& name) {
    if (g.axis(axis).kind != AxisKind::Periodic)
        throw std::invalid_argument("partial_slab_map: axis must be periodic");
    int span = j1 - j0;
    if (span < 4 || span % 2 != 0)
        throw std::invalid_argument("partial_slab_map: need an even node span >= 4");
    double h = g.axis(axis).h();
    AlignedMap m;
    m.source = g;
    std::vector<Axis> taxes;
    for (int a = 0; a < g.dim(); ++a)
        taxes.push_back(a == axis ? bounded_axis(span, j0 * h, j1 * h) : g.axis(a));
    m.target = Grid(name, taxes);
    for (int a = 0; a < g.dim(); ++a) {
        AlignedAxisMap am;
        am.src_axis = a;
        int tn = m.target.axis(a).nodes();
        am.node_map.resize(tn);
        for (int i = 0; i < tn; ++i)
            am.node_map[i] = (a == axis) ? (j0 + i) % g.axis(a).n : i;
        m.axes.push_back(std::move(am));
    }
    return m;
}

AlignedMap reflect_map(const Grid& g, int axis) {
    if (g.axis(axis).kind != AxisKind::Periodic)
        throw std::invalid_argument("reflect_map: axis must be periodic");
    AlignedMap m;
    m.source = g;
    m.target = g;
    for (int a = 0; a < g.dim(); ++a) {
        AlignedAxisMap am;
        am.src_axis = a;
        int n = g.axis(a).nodes();
        am.node_map.resize(n);
        for (int i = 0; i < n; ++i) am.node_map[i] = (a == axis && i != 0) ? n - i : i;
        if (a == axis) am.dfactor = -1.0;
        m.axes.push_back(std::move(am));
    }
    return m;
}

SmoothMap smooth_identity(int dim) {
    SmoothMap m;
    m.src_dim = m.tgt_dim = dim;
    m.eval = [dim](std::span<const double> x, std::span<double> out) {
        for (int i = 0; i < dim; ++i) out[i] = x[i];
    };
    m.jacobian = [dim](std::span<const double>, std::span<double> j) {
        for (int i = 0; i < dim * dim; ++i) j[i] = 0.0;
        for (int i = 0; i < dim; ++i) j[i * dim + i] = 1.0;
    };
    return m;
}

SmoothMap compose(const SmoothMap& outer, const SmoothMap& inner) {
    if (inner.src_dim != outer.tgt_dim)
        throw std::invalid_argument("compose: dimension mismatch");
    SmoothMap m;
    m.src_dim = outer.src_dim;
    m.tgt_dim = inner.tgt_dim;
    auto oev = outer.eval, iev = inner.eval;
    auto oj = outer.jacobian, ij = inner.jacobian;
    int od = outer.src_dim, md = inner.src_dim, td = inner.tgt_dim;
    m.eval = [oev, iev, md](std::span<const double> x, std::span<double> out) {
        std::vector<double> mid(md);
        iev(x, mid);
        oev(mid, out);
    };
    m.jacobian = [oj, ij, iev, od, md, td](std::span<const double> x, std::span<double> j) {
        std::vector<double> mid(md), ja(od * md), jb(md * td);
        iev(x, mid);
        oj(mid, ja);
        ij(x, jb);
        for (int i = 0; i < od; ++i)
            for (int k = 0; k < td; ++k) {
                double s = 0.0;
                for (int l = 0; l < md; ++l) s += ja[i * md + l] * jb[l * td + k];
                j[i * td + k] = s;
            }
    };
    return m;
}

namespace {

double minor_det(const std::vector<double>& jac, int cols, std::span<const int> rows,
                 std::span<const int> cs) {
    int k = static_cast<int>(rows.size());
    double m[3][3];
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) m[i][j] = jac[rows[i] * cols + cs[j]];
    switch (k) {
        case 0: return 1.0;
        case 1: return m[0][0];
        case 2: return m[0][0] * m[1][1] - m[0][1] * m[1][0];
        default:
            return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                   m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                   m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    }
}

} // namespace

AnalyticForm pullback(const AnalyticForm& w, const SmoothMap& m) {
    if (w.dim != m.src_dim) throw std::invalid_argument("pullback: form/map dimension mismatch");
    AnalyticForm out;
    out.dim = m.tgt_dim;
    out.degree = w.degree;
    out.mat_n = w.mat_n;
    int vd = w.mat_n == 0 ? 1 : w.mat_n * w.mat_n;
    auto weval = w.eval;
    auto meval = m.eval;
    auto mjac = m.jacobian;
    int sd = m.src_dim, td = m.tgt_dim, deg = w.degree;
    out.eval = [=](int c, std::span<const double> x, std::span<cplx> o) {
        const auto& J = subsets(td, deg)[c];
        std::vector<double> y(sd), jac(sd * td);
        meval(x, y);
        mjac(x, jac);
        std::vector<cplx> val(vd);
        for (int l = 0; l < vd; ++l) o[l] = 0.0;
        const auto& srcs = subsets(sd, deg);
        for (size_t ic = 0; ic < srcs.size(); ++ic) {
            double dj = minor_det(jac, td, srcs[ic], J);
            if (dj == 0.0) continue;
            weval(static_cast<int>(ic), y, val);
            for (int l = 0; l < vd; ++l) o[l] += dj * val[l];
        }
    };
    return out;
}

cplx chain_integrate(const Chain& c, const FormField& w) {
    if (w.degree != c.dim)
        throw std::invalid_argument("chain_integrate: degree does not match chain dimension");
    KahanSum<cplx> s;
    for (const ChainTerm& t : c.terms) s.add(t.coef * integrate(pullback(w, t.embed)));
    return s.value();
}

Chain slice_chain(const Grid& g, int frozen_axis, int node, const std::string& name) {
    Chain c;
    c.name = name;
    c.dim = g.dim() - 1;
    c.terms.push_back({1.0, slice_map(g, frozen_axis, node, name + ":carrier")});
    return c;
}

Chain whole_chain(const Grid& g) {
    AlignedMap m;
    m.source = g;
    m.target = g;
    for (int a = 0; a < g.dim(); ++a) {
        AlignedAxisMap am;
        am.src_axis = a;
        am.node_map.resize(g.axis(a).nodes());
        for (int i = 0; i < g.axis(a).nodes(); ++i) am.node_map[i] = i;
        m.axes.push_back(std::move(am));
    }
    Chain c;
    c.name = g.name();
    c.dim = g.dim();
    c.terms.push_back({1.0, std::move(m)});
    return c;
}

Chain slab_chain(const Grid& g, int axis, int j0, int j1, const std::string& name) {
    Chain c;
    c.name = name;
    c.dim = g.dim();
    c.terms.push_back({1.0, partial_slab_map(g, axis, j0, j1, name + ":carrier")});
    return c;
}

Chain slab_boundary_chain(const Grid& g, int axis, int j0, int j1, const std::string& name) {
    // same face orientations as boundary_faces: the high face of axis a
    // carries (-1)^a, the low face the opposite sign
    double hi = (axis % 2 == 0) ? 1.0 : -1.0;
    int n = g.axis(axis).n;
    Chain c;
    c.name = name;
    c.dim = g.dim() - 1;
    c.terms.push_back({hi, slice_map(g, axis, j1 % n, name + ":hi")});
    c.terms.push_back({-hi, slice_map(g, axis, j0 % n, name + ":lo")});
    return c;
}

Chain chain_scaled(const Chain& c, double k) {
    Chain out = c;
    for (ChainTerm& t : out.terms) t.coef *= k;
    return out;
}

Chain chain_sum(const Chain& a, const Chain& b) {
    if (a.dim != b.dim) throw std::invalid_argument("chain_sum: dimension mismatch");
    Chain out = a;
    out.name = a.name + "+" + b.name;
    out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
    return out;
}

Chain chain_boundary(const Chain& u) {
    Chain out;
    out.name = "d(" + u.name + ")";
    out.dim = u.dim - 1;
    for (const ChainTerm& t : u.terms) {
        const AlignedMap& m = t.embed;
        int slab_axis = -1;
        for (int a = 0; a < m.target.dim(); ++a) {
            if (m.target.axis(a).kind != AxisKind::Bounded) continue;
            if (slab_axis >= 0)
                throw std::invalid_argument(
                    "chain_boundary: carrier has more than one bounded axis");
            slab_axis = a;
        }
        if (slab_axis < 0) continue; // fully periodic carrier: closed
        for (int a = 0; a < m.target.dim(); ++a) {
            const AlignedAxisMap& am = m.axes[a];
            if (a == slab_axis) {
                const Axis& sax = m.source.axis(am.src_axis);
                for (size_t i = 1; i < am.node_map.size(); ++i) {
                    int want = am.node_map[i - 1] + 1;
                    if (sax.kind == AxisKind::Periodic) want %= sax.n;
                    if (am.node_map[i] != want)
                        throw std::invalid_argument(
                            "chain_boundary: bounded axis is not a contiguous window");
                }
            } else {
                for (size_t i = 0; i < am.node_map.size(); ++i)
                    if (am.node_map[i] != static_cast<int>(i))
                        throw std::invalid_argument(
                            "chain_boundary: only identity gathers beside the slab axis");
            }
        }
        const AlignedAxisMap& am = m.axes[slab_axis];
        int jlo = am.node_map.front(), jhi = am.node_map.back();
        if (jlo == jhi) continue; // wrapped all the way around: closed
        int sa = am.src_axis;
        double hi = (sa % 2 == 0) ? 1.0 : -1.0;
        out.terms.push_back({t.coef * hi, slice_map(m.source, sa, jhi, u.name + ":bhi")});
        out.terms.push_back({-t.coef * hi, slice_map(m.source, sa, jlo, u.name + ":blo")});
    }
    return out;
}

namespace {

std::string carrier_sig(const AlignedMap& m) {
    std::ostringstream o;
    o.precision(17);
    o << "src";
    for (int a = 0; a < m.source.dim(); ++a) {
        const Axis& ax = m.source.axis(a);
        o << (ax.kind == AxisKind::Periodic ? ":p" : ":b") << ax.n << "@" << ax.lo << ","
          << ax.hi;
    }
    auto frozen = m.frozen;
    std::sort(frozen.begin(), frozen.end());
    o << "|frz";
    for (auto& [a, j] : frozen) o << ":" << a << "=" << j;
    o << "|ax";
    for (const AlignedAxisMap& am : m.axes) {
        o << ":" << am.src_axis << "*" << am.dfactor << "/";
        for (int v : am.node_map) o << v << ",";
    }
    return o.str();
}

} // namespace

bool chain_equal(const Chain& a, const Chain& b, double tol) {
    if (a.dim != b.dim) return false;
    std::map<std::string, double> folded;
    for (const ChainTerm& t : a.terms) folded[carrier_sig(t.embed)] += t.coef;
    for (const ChainTerm& t : b.terms) folded[carrier_sig(t.embed)] -= t.coef;
    for (const auto& [sig, coef] : folded)
        if (std::abs(coef) > tol) return false;
    return true;
}

} // namespace pql
