#pragma once
// Small dense complex matrices (n <= 3), stack-allocated. These carry Lie
// algebra / group values at grid nodes, so all operations must be cheap and
// allocation-free.

#include <array>
#include <cassert>
#include <cmath>

#include "core/num.hpp"

namespace pql {

struct SMat {
    int n = 0;
    std::array<cplx, 9> a{};

    SMat() = default;
    explicit SMat(int dim) : n(dim) { assert(dim >= 1 && dim <= 3); }

    static SMat zero(int dim) { return SMat(dim); }
    static SMat id(int dim) {
        SMat m(dim);
        for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
        return m;
    }

    cplx& at(int i, int j) { return a[i * n + j]; }
    const cplx& at(int i, int j) const { return a[i * n + j]; }

    SMat& operator+=(const SMat& o) {
        assert(n == o.n);
        for (int i = 0; i < n * n; ++i) a[i] += o.a[i];
        return *this;
    }
    SMat& operator-=(const SMat& o) {
        assert(n == o.n);
        for (int i = 0; i < n * n; ++i) a[i] -= o.a[i];
        return *this;
    }
    SMat& operator*=(cplx s) {
        for (int i = 0; i < n * n; ++i) a[i] *= s;
        return *this;
    }

    friend SMat operator+(SMat x, const SMat& y) { return x += y; }
    friend SMat operator-(SMat x, const SMat& y) { return x -= y; }
    friend SMat operator*(cplx s, SMat x) { return x *= s; }
    friend SMat operator*(SMat x, cplx s) { return x *= s; }

    friend SMat operator*(const SMat& x, const SMat& y) {
        assert(x.n == y.n);
        SMat r(x.n);
        for (int i = 0; i < x.n; ++i)
            for (int k = 0; k < x.n; ++k) {
                cplx v = x.at(i, k);
                if (v == cplx(0.0)) continue;
                for (int j = 0; j < x.n; ++j) r.at(i, j) += v * y.at(k, j);
            }
        return r;
    }

    cplx trace() const {
        cplx t = 0.0;
        for (int i = 0; i < n; ++i) t += at(i, i);
        return t;
    }

    SMat adjoint() const {
        SMat r(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) r.at(i, j) = std::conj(at(j, i));
        return r;
    }

    SMat transpose() const {
        SMat r(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) r.at(i, j) = at(j, i);
        return r;
    }

    double max_abs() const {
        double m = 0.0;
        for (int i = 0; i < n * n; ++i) m = std::max(m, std::abs(a[i]));
        return m;
    }

    double frob() const {
        double s = 0.0;
        for (int i = 0; i < n * n; ++i) s += std::norm(a[i]);
        return std::sqrt(s);
    }
};

inline SMat comm(const SMat& x, const SMat& y) { return x * y - y * x; }

// Adjugate-based inverse; n <= 3 so this is exact-formula territory.
SMat inverse(const SMat& m);

// Matrix exponential by scaling-and-squaring with a Taylor tail; accurate to
// ~1e-15 for the moderate norms seen here.
SMat expm(const SMat& x);

cplx det(const SMat& m);

} // namespace pql
