#include "subphase/eigensystem.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace subphase {

namespace {

double offdiag_max(const ComplexMatrix& a) {
    double m = 0.0;
    for (int i = 0; i < a.dim(); ++i) {
        for (int j = 0; j < a.dim(); ++j) {
            if (i != j) m = std::max(m, std::abs(a(i, j)));
        }
    }
    return m;
}

} // namespace

EigenSystem hermitian_eigensystem(const ComplexMatrix& m) {
    m.require_hermitian("hermitian_eigensystem");
    const int d = m.dim();
    const double scale = std::max(m.maxnorm(), 1e-300);

    ComplexMatrix a = m;
    ComplexMatrix v = ComplexMatrix::identity(d);

    const int max_sweeps = 64;
    const double stop = 1e-15 * scale;
    int sweep = 0;
    while (offdiag_max(a) > stop) {
        if (++sweep > max_sweeps) {
            throw NumericError("hermitian_eigensystem: Jacobi sweeps did not converge for a " +
                               std::to_string(d) + "x" + std::to_string(d) + " matrix");
        }
        for (int p = 0; p < d - 1; ++p) {
            for (int q = p + 1; q < d; ++q) {
                const cplx b = a(p, q);
                const double ab = std::abs(b);
                if (ab <= 1e-300) continue;
                // Phase-rotate the pq block real, then a real Jacobi angle.
                const cplx u = b / ab;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * ab);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cplx us = u * s;   // left-side factor
                const cplx ucs = std::conj(u) * s;

                // A <- A R, columns p and q
                for (int i = 0; i < d; ++i) {
                    const cplx aip = a(i, p), aiq = a(i, q);
                    a(i, p) = c * aip - ucs * aiq;
                    a(i, q) = s * aip + std::conj(u) * c * aiq;
                }
                // A <- R^H A, rows p and q
                for (int j = 0; j < d; ++j) {
                    const cplx apj = a(p, j), aqj = a(q, j);
                    a(p, j) = c * apj - us * aqj;
                    a(q, j) = s * apj + u * c * aqj;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();

                // V <- V R
                for (int i = 0; i < d; ++i) {
                    const cplx vip = v(i, p), viq = v(i, q);
                    v(i, p) = c * vip - ucs * viq;
                    v(i, q) = s * vip + std::conj(u) * c * viq;
                }
            }
        }
    }

    std::vector<int> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });

    EigenSystem sys;
    sys.values.resize(d);
    sys.vectors.reserve(d);
    for (int n = 0; n < d; ++n) {
        const int col = order[n];
        sys.values[n] = a(col, col).real();
        StateVector vec(d);
        for (int i = 0; i < d; ++i) vec[i] = v(i, col);
        // gauge: largest-magnitude entry real positive. Ties resolve to the
        // first index, with a relative tolerance so exact ties perturbed by
        // rounding stay anchored to the same entry.
        double amax = 0.0;
        for (int i = 0; i < d; ++i) amax = std::max(amax, std::abs(vec[i]));
        int imax = 0;
        for (int i = 0; i < d; ++i) {
            if (std::abs(vec[i]) >= (1.0 - 1e-9) * amax) {
                imax = i;
                break;
            }
        }
        amax = std::abs(vec[imax]);
        const cplx phase = vec[imax] / amax;
        for (int i = 0; i < d; ++i) vec[i] *= std::conj(phase);
        vec[imax] = cplx(std::abs(vec[imax]), 0.0);
        sys.vectors.push_back(std::move(vec));
    }

    const double cluster_tol = 1e-9 * scale;
    int start = 0;
    for (int n = 1; n <= d; ++n) {
        if (n == d || sys.values[n] - sys.values[n - 1] > cluster_tol) {
            if (n - 1 > start) sys.degenerate_clusters.emplace_back(start, n - 1);
            start = n;
        }
    }
    return sys;
}

} // namespace subphase
