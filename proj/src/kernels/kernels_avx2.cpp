// Built with -mavx2 -mfma; only reached after a runtime CPU check.
#include "rampforge/kernels.hpp"

#include <cmath>
#include <immintrin.h>

namespace rampforge::kernels::detail {

namespace {

inline double hsum(__m256d v)
{
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

} // namespace

double squared_distance_avx2(const double* a, const double* b, std::size_t n)
{
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc = _mm256_fmadd_pd(d, d, acc);
    }
    double total = hsum(acc);
    for (; i < n; ++i) {
        const double d = a[i] - b[i];
        total += d * d;
    }
    return total;
}

double point_distance_sum_avx2(const double* a, const double* b, std::size_t npoints)
{
    // Four points per step, de-interleaved with gathers. Per-point sums use
    // mul/add (no FMA) so each distance matches the scalar reference exactly.
    const __m256i idx = _mm256_setr_epi64x(0, 3, 6, 9);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= npoints; i += 4) {
        const double* pa = a + 3 * i;
        const double* pb = b + 3 * i;
        const __m256d d0 = _mm256_sub_pd(_mm256_i64gather_pd(pa, idx, 8), _mm256_i64gather_pd(pb, idx, 8));
        const __m256d d1 = _mm256_sub_pd(_mm256_i64gather_pd(pa + 1, idx, 8), _mm256_i64gather_pd(pb + 1, idx, 8));
        const __m256d d2 = _mm256_sub_pd(_mm256_i64gather_pd(pa + 2, idx, 8), _mm256_i64gather_pd(pb + 2, idx, 8));
        const __m256d sq = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(d0, d0), _mm256_mul_pd(d1, d1)),
                                         _mm256_mul_pd(d2, d2));
        acc = _mm256_add_pd(acc, _mm256_sqrt_pd(sq));
    }
    double total = hsum(acc);
    for (; i < npoints; ++i) {
        const double d0 = a[3 * i] - b[3 * i];
        const double d1 = a[3 * i + 1] - b[3 * i + 1];
        const double d2 = a[3 * i + 2] - b[3 * i + 2];
        total += std::sqrt(d0 * d0 + d1 * d1 + d2 * d2);
    }
    return total;
}

} // namespace rampforge::kernels::detail
