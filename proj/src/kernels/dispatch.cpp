#include "rampforge/kernels.hpp"

#include <cstdlib>
#include <string>

namespace rampforge::kernels {

std::string_view isa_name(Isa isa)
{
    switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
    }
    return "unknown";
}

const KernelTable& scalar_table()
{
    static const KernelTable table{Isa::scalar, detail::squared_distance_scalar,
                                   detail::point_distance_sum_scalar};
    return table;
}

const KernelTable* vector_table()
{
#if defined(RAMPFORGE_HAVE_AVX2)
    static const KernelTable table{Isa::avx2, detail::squared_distance_avx2, detail::point_distance_sum_avx2};
    static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    return supported ? &table : nullptr;
#elif defined(RAMPFORGE_HAVE_NEON)
    static const KernelTable table{Isa::neon, detail::squared_distance_neon, detail::point_distance_sum_neon};
    return &table;
#else
    return nullptr;
#endif
}

const KernelTable& active()
{
    static const KernelTable& table = [] () -> const KernelTable& {
        const char* env = std::getenv("RAMPFORGE_ISA");
        if (env != nullptr && std::string(env) == "scalar") return scalar_table();
        const KernelTable* vec = vector_table();
        return vec != nullptr ? *vec : scalar_table();
    }();
    return table;
}

} // namespace rampforge::kernels
