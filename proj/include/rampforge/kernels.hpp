#pragma once

// Data-parallel inner loops used by clustering. Every kernel has a scalar
// reference implementation; vector variants (AVX2+FMA on x86-64, NEON on
// AArch64) are picked at runtime and must agree with the reference to
// within a few ulps (they differ only in summation order).

#include "rampforge/colorspace.hpp"

#include <cstddef>
#include <span>
#include <string_view>

namespace rampforge::kernels {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa);

struct KernelTable {
    Isa isa;
    /// Sum of (a[i] - b[i])^2 over n doubles.
    double (*squared_distance)(const double* a, const double* b, std::size_t n);
    /// Sum over npoints of the Euclidean distance between xyz-interleaved points.
    double (*point_distance_sum)(const double* a, const double* b, std::size_t npoints);
};

const KernelTable& scalar_table();

/// Vector table if compiled in and supported by this CPU, else nullptr.
const KernelTable* vector_table();

/// Table used by the library. Vector when available unless the environment
/// variable RAMPFORGE_ISA=scalar is set at first use.
const KernelTable& active();

inline double squared_distance(std::span<const double> a, std::span<const double> b)
{
    return active().squared_distance(a.data(), b.data(), a.size());
}

static_assert(sizeof(LabColor) == 3 * sizeof(double), "LabColor must be three packed doubles");

inline double point_distance_sum(std::span<const LabColor> a, std::span<const LabColor> b)
{
    return active().point_distance_sum(reinterpret_cast<const double*>(a.data()),
                                       reinterpret_cast<const double*>(b.data()), a.size());
}

namespace detail {
double squared_distance_scalar(const double* a, const double* b, std::size_t n);
double point_distance_sum_scalar(const double* a, const double* b, std::size_t npoints);
#if defined(RAMPFORGE_HAVE_AVX2)
double squared_distance_avx2(const double* a, const double* b, std::size_t n);
double point_distance_sum_avx2(const double* a, const double* b, std::size_t npoints);
#endif
#if defined(RAMPFORGE_HAVE_NEON)
double squared_distance_neon(const double* a, const double* b, std::size_t n);
double point_distance_sum_neon(const double* a, const double* b, std::size_t npoints);
#endif
} // namespace detail

} // namespace rampforge::kernels
