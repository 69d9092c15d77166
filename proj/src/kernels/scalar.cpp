#include "subphase/kernels.hpp"

namespace subphase::kernels {

namespace {

void cmatvec_scalar(int dim, const cplx* a, const cplx* x, cplx* y) {
    for (int i = 0; i < dim; ++i) {
        const cplx* row = a + static_cast<std::size_t>(i) * dim;
        double sr = 0.0, si = 0.0;
        for (int j = 0; j < dim; ++j) {
            const double ar = row[j].real(), ai = row[j].imag();
            const double xr = x[j].real(), xi = x[j].imag();
            sr += ar * xr - ai * xi;
            si += ar * xi + ai * xr;
        }
        y[i] = cplx(sr, si);
    }
}

void caxpy_scalar(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
    const double ar = alpha.real(), ai = alpha.imag();
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] = cplx(y[i].real() + ar * xr - ai * xi, y[i].imag() + ar * xi + ai * xr);
    }
}

cplx cdotc_scalar(std::size_t n, const cplx* x, const cplx* y) {
    double sr = 0.0, si = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        const double yr = y[i].real(), yi = y[i].imag();
        sr += xr * yr + xi * yi;
        si += xr * yi - xi * yr;
    }
    return {sr, si};
}

double cnorm2_scalar(std::size_t n, const cplx* x) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    }
    return s;
}

} // namespace

const KernelTable& scalar_table() {
    static const KernelTable t{"scalar", cmatvec_scalar, caxpy_scalar, cdotc_scalar,
                               cnorm2_scalar};
    return t;
}

} // namespace subphase::kernels
