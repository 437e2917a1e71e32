#include "rampforge/kernels.hpp"

#include <cmath>

namespace rampforge::kernels::detail {

double squared_distance_scalar(const double* a, const double* b, std::size_t n)
{
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return acc;
}

double point_distance_sum_scalar(const double* a, const double* b, std::size_t npoints)
{
    double acc = 0.0;
    for (std::size_t i = 0; i < npoints; ++i) {
        const double d0 = a[3 * i] - b[3 * i];
        const double d1 = a[3 * i + 1] - b[3 * i + 1];
        const double d2 = a[3 * i + 2] - b[3 * i + 2];
        acc += std::sqrt(d0 * d0 + d1 * d1 + d2 * d2);
    }
    return acc;
}

} // namespace rampforge::kernels::detail
