#include "tables.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace subphase::kernels::detail {

namespace {

// A __m256d holds two interleaved complex doubles [re0 im0 re1 im1].
// Complex product per lane pair: split a into duplicated real/imag parts,
// swap b within pairs, then fmaddsub recombines:
//   even lanes: are*bre - aim*bim, odd lanes: are*bim + aim*bre.
inline __m256d cmul2(__m256d a, __m256d b) {
    __m256d are = _mm256_movedup_pd(a);
    __m256d aim = _mm256_permute_pd(a, 0xF);
    __m256d bsw = _mm256_permute_pd(b, 0x5);
    return _mm256_fmaddsub_pd(are, b, _mm256_mul_pd(aim, bsw));
}

// conj(a) * b: fmsubadd flips the sign pattern:
//   even lanes: are*bre + aim*bim, odd lanes: are*bim - aim*bre.
inline __m256d cmulc2(__m256d a, __m256d b) {
    __m256d are = _mm256_movedup_pd(a);
    __m256d aim = _mm256_permute_pd(a, 0xF);
    __m256d bsw = _mm256_permute_pd(b, 0x5);
    return _mm256_fmsubadd_pd(are, b, _mm256_mul_pd(aim, bsw));
}

void cmatvec_avx2(int dim, const cplx* a, const cplx* x, cplx* y) {
    const double* xd = reinterpret_cast<const double*>(x);
    for (int i = 0; i < dim; ++i) {
        const double* row = reinterpret_cast<const double*>(a + static_cast<std::size_t>(i) * dim);
        __m256d acc = _mm256_setzero_pd();
        int j = 0;
        for (; j + 2 <= dim; j += 2) {
            __m256d av = _mm256_loadu_pd(row + 2 * j);
            __m256d xv = _mm256_loadu_pd(xd + 2 * j);
            acc = _mm256_add_pd(acc, cmul2(av, xv));
        }
        // fold the two partial complex sums
        __m128d lo = _mm256_castpd256_pd128(acc);
        __m128d hi = _mm256_extractf128_pd(acc, 1);
        __m128d sum = _mm_add_pd(lo, hi);
        double sr = _mm_cvtsd_f64(sum);
        double si = _mm_cvtsd_f64(_mm_unpackhi_pd(sum, sum));
        for (; j < dim; ++j) {
            const cplx& aj = a[static_cast<std::size_t>(i) * dim + j];
            sr += aj.real() * x[j].real() - aj.imag() * x[j].imag();
            si += aj.real() * x[j].imag() + aj.imag() * x[j].real();
        }
        y[i] = cplx(sr, si);
    }
}

void caxpy_avx2(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
    const __m256d av = _mm256_setr_pd(alpha.real(), alpha.imag(), alpha.real(), alpha.imag());
    const double* xd = reinterpret_cast<const double*>(x);
    double* yd = reinterpret_cast<double*>(y);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        __m256d yv = _mm256_loadu_pd(yd + 2 * i);
        _mm256_storeu_pd(yd + 2 * i, _mm256_add_pd(yv, cmul2(av, xv)));
    }
    for (; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] = cplx(y[i].real() + alpha.real() * xr - alpha.imag() * xi,
                    y[i].imag() + alpha.real() * xi + alpha.imag() * xr);
    }
}

cplx cdotc_avx2(std::size_t n, const cplx* x, const cplx* y) {
    const double* xd = reinterpret_cast<const double*>(x);
    const double* yd = reinterpret_cast<const double*>(y);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        __m256d yv = _mm256_loadu_pd(yd + 2 * i);
        acc = _mm256_add_pd(acc, cmulc2(xv, yv));
    }
    __m128d lo = _mm256_castpd256_pd128(acc);
    __m128d hi = _mm256_extractf128_pd(acc, 1);
    __m128d sum = _mm_add_pd(lo, hi);
    double sr = _mm_cvtsd_f64(sum);
    double si = _mm_cvtsd_f64(_mm_unpackhi_pd(sum, sum));
    for (; i < n; ++i) {
        sr += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
        si += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
    }
    return {sr, si};
}

double cnorm2_avx2(std::size_t n, const cplx* x) {
    const double* xd = reinterpret_cast<const double*>(x);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        acc = _mm256_fmadd_pd(xv, xv, acc);
    }
    __m128d lo = _mm256_castpd256_pd128(acc);
    __m128d hi = _mm256_extractf128_pd(acc, 1);
    __m128d sum = _mm_add_pd(lo, hi);
    double s = _mm_cvtsd_f64(sum) + _mm_cvtsd_f64(_mm_unpackhi_pd(sum, sum));
    for (; i < n; ++i) {
        s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    }
    return s;
}

} // namespace

const KernelTable* avx2_table() {
    static const KernelTable t{"avx2", cmatvec_avx2, caxpy_avx2, cdotc_avx2, cnorm2_avx2};
    return &t;
}

} // namespace subphase::kernels::detail

#else

namespace subphase::kernels::detail {
const KernelTable* avx2_table() { return nullptr; }
} // namespace subphase::kernels::detail

#endif
