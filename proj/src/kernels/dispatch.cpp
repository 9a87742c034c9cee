#include "isopair/kernels.hpp"

#include <cstdlib>
#include <string>

namespace isopair::kernels {

#if defined(ISOPAIR_HAVE_AVX2)
namespace detail {
const KernelTable& avx2_table_unchecked();
}
#endif

const KernelTable* avx2_table() {
#if defined(ISOPAIR_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    return supported ? &detail::avx2_table_unchecked() : nullptr;
#else
    return nullptr;
#endif
}

namespace {

const KernelTable& resolve() {
    const char* env = std::getenv("ISOPAIR_KERNEL");
    const std::string wanted = env ? env : "";
    if (wanted == "scalar") {
        return scalar_table();
    }
    if (const KernelTable* fast = avx2_table()) {
        return *fast;
    }
    return scalar_table();
}

} // namespace

const KernelTable& active() {
    static const KernelTable& table = resolve();
    return table;
}

void gemm(const KernelTable& table, std::size_t m, std::size_t k, std::size_t n,
          const cx* a, const cx* b, cx* c) {
    for (std::size_t i = 0; i < m; ++i) {
        cx* crow = c + i * n;
        for (std::size_t j = 0; j < n; ++j) {
            crow[j] = cx{};
        }
        const cx* arow = a + i * k;
        for (std::size_t p = 0; p < k; ++p) {
            const cx aip = arow[p];
            if (aip == cx{}) {
                continue;
            }
            table.axpy(n, aip, b + p * n, crow);
        }
    }
}

} // namespace isopair::kernels
