#include "core/smat.hpp"

#include <stdexcept>

namespace pql {

cplx det(const SMat& m) {
    switch (m.n) {
        case 1:
            return m.at(0, 0);
        case 2:
            return m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0);
        case 3:
            return m.at(0, 0) * (m.at(1, 1) * m.at(2, 2) - m.at(1, 2) * m.at(2, 1)) -
                   m.at(0, 1) * (m.at(1, 0) * m.at(2, 2) - m.at(1, 2) * m.at(2, 0)) +
                   m.at(0, 2) * (m.at(1, 0) * m.at(2, 1) - m.at(1, 1) * m.at(2, 0));
        default:
            throw std::logic_error("det: unsupported dimension");
    }
}

SMat inverse(const SMat& m) {
    cplx d = det(m);
    if (std::abs(d) < 1e-300) throw std::domain_error("inverse: singular matrix");
    SMat r(m.n);
    switch (m.n) {
        case 1:
            r.at(0, 0) = 1.0 / d;
            break;
        case 2:
            r.at(0, 0) = m.at(1, 1) / d;
            r.at(0, 1) = -m.at(0, 1) / d;
            r.at(1, 0) = -m.at(1, 0) / d;
            r.at(1, 1) = m.at(0, 0) / d;
            break;
        case 3:
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    int i1 = (i + 1) % 3, i2 = (i + 2) % 3;
                    int j1 = (j + 1) % 3, j2 = (j + 2) % 3;
                    // adjugate: cofactor of (j,i)
                    r.at(i, j) = (m.at(j1, i1) * m.at(j2, i2) - m.at(j1, i2) * m.at(j2, i1)) / d;
                }
            break;
        default:
            throw std::logic_error("inverse: unsupported dimension");
    }
    return r;
}

SMat expm(const SMat& x) {
    // scale so the norm is small, Taylor-sum, then square back
    double nrm = x.frob();
    int s = 0;
    double scaled = nrm;
    while (scaled > 0.25) {
        scaled *= 0.5;
        ++s;
        if (s > 64) throw std::domain_error("expm: norm too large");
    }
    SMat y = x;
    y *= std::ldexp(1.0, -s);
    SMat sum = SMat::id(x.n);
    SMat term = SMat::id(x.n);
    for (int k = 1; k <= 24; ++k) {
        term = term * y;
        term *= 1.0 / static_cast<double>(k);
        sum += term;
        if (term.max_abs() < 1e-18) break;
    }
    for (int i = 0; i < s; ++i) sum = sum * sum;
    return sum;
}

} // namespace pql
