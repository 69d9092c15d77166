#include "tables.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

namespace subphase::kernels::detail {

namespace {

// One float64x2_t holds a single complex double [re im].
inline float64x2_t cmul1(float64x2_t a, float64x2_t b) {
    float64x2_t are = vdupq_laneq_f64(a, 0);
    float64x2_t aim = vdupq_laneq_f64(a, 1);
    float64x2_t bsw = vextq_f64(b, b, 1);
    const float64x2_t sign = {-1.0, 1.0};
    return vfmaq_f64(vmulq_f64(vmulq_f64(aim, bsw), sign), are, b);
}

// conj(a) * b
inline float64x2_t cmulc1(float64x2_t a, float64x2_t b) {
    float64x2_t are = vdupq_laneq_f64(a, 0);
    float64x2_t aim = vdupq_laneq_f64(a, 1);
    float64x2_t bsw = vextq_f64(b, b, 1);
    const float64x2_t sign = {1.0, -1.0};
    return vfmaq_f64(vmulq_f64(vmulq_f64(aim, bsw), sign), are, b);
}

void cmatvec_neon(int dim, const cplx* a, const cplx* x, cplx* y) {
    const double* xd = reinterpret_cast<const double*>(x);
    for (int i = 0; i < dim; ++i) {
        const double* row = reinterpret_cast<const double*>(a + static_cast<std::size_t>(i) * dim);
        float64x2_t acc = vdupq_n_f64(0.0);
        for (int j = 0; j < dim; ++j) {
            acc = vaddq_f64(acc, cmul1(vld1q_f64(row + 2 * j), vld1q_f64(xd + 2 * j)));
        }
        y[i] = cplx(vgetq_lane_f64(acc, 0), vgetq_lane_f64(acc, 1));
    }
}

void caxpy_neon(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
    const float64x2_t av = {alpha.real(), alpha.imag()};
    const double* xd = reinterpret_cast<const double*>(x);
    double* yd = reinterpret_cast<double*>(y);
    for (std::size_t i = 0; i < n; ++i) {
        float64x2_t yv = vld1q_f64(yd + 2 * i);
        vst1q_f64(yd + 2 * i, vaddq_f64(yv, cmul1(av, vld1q_f64(xd + 2 * i))));
    }
}

cplx cdotc_neon(std::size_t n, const cplx* x, const cplx* y) {
    const double* xd = reinterpret_cast<const double*>(x);
    const double* yd = reinterpret_cast<const double*>(y);
    float64x2_t acc = vdupq_n_f64(0.0);
    for (std::size_t i = 0; i < n; ++i) {
        acc = vaddq_f64(acc, cmulc1(vld1q_f64(xd + 2 * i), vld1q_f64(yd + 2 * i)));
    }
    return {vgetq_lane_f64(acc, 0), vgetq_lane_f64(acc, 1)};
}

double cnorm2_neon(std::size_t n, const cplx* x) {
    const double* xd = reinterpret_cast<const double*>(x);
    float64x2_t acc = vdupq_n_f64(0.0);
    for (std::size_t i = 0; i < n; ++i) {
        float64x2_t xv = vld1q_f64(xd + 2 * i);
        acc = vfmaq_f64(acc, xv, xv);
    }
    return vaddvq_f64(acc);
}

} // namespace

const KernelTable* neon_table() {
    static const KernelTable t{"neon", cmatvec_neon, caxpy_neon, cdotc_neon, cnorm2_neon};
    return &t;
}

} // namespace subphase::kernels::detail

#else

namespace subphase::kernels::detail {
const KernelTable* neon_table() { return nullptr; }
} // namespace subphase::kernels::detail

#endif
