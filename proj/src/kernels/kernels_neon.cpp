// AArch64 only; NEON is part of the base ISA there.
#include "rampforge/kernels.hpp"

#if defined(RAMPFORGE_HAVE_NEON)

#include <arm_neon.h>
#include <cmath>

namespace rampforge::kernels::detail {

double squared_distance_neon(const double* a, const double* b, std::size_t n)
{
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t d = vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
        acc = vfmaq_f64(acc, d, d);
    }
    double total = vaddvq_f64(acc);
    for (; i < n; ++i) {
        const double d = a[i] - b[i];
        total += d * d;
    }
    return total;
}

double point_distance_sum_neon(const double* a, const double* b, std::size_t npoints)
{
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= npoints; i += 2) {
        // vld3q de-interleaves two xyz points into three lanes-of-two.
        const float64x2x3_t va = vld3q_f64(a + 3 * i);
        const float64x2x3_t vb = vld3q_f64(b + 3 * i);
        const float64x2_t d0 = vsubq_f64(va.val[0], vb.val[0]);
        const float64x2_t d1 = vsubq_f64(va.val[1], vb.val[1]);
        const float64x2_t d2 = vsubq_f64(va.val[2], vb.val[2]);
        const float64x2_t sq = vaddq_f64(vaddq_f64(vmulq_f64(d0, d0), vmulq_f64(d1, d1)), vmulq_f64(d2, d2));
        acc = vaddq_f64(acc, vsqrtq_f64(sq));
    }
    double total = vaddvq_f64(acc);
    for (; i < npoints; ++i) {
        const double d0 = a[3 * i] - b[3 * i];
        const double d1 = a[3 * i + 1] - b[3 * i + 1];
        const double d2 = a[3 * i + 2] - b[3 * i + 2];
        total += std::sqrt(d0 * d0 + d1 * d1 + d2 * d2);
    }
    return total;
}

} // namespace rampforge::kernels::detail

#endif
