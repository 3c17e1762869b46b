#pragma once

#include "smoothsvm/kernels.hpp"

namespace smoothsvm::kernels::detail {

#if defined(SMOOTHSVM_HAVE_AVX2_TU)
const KernelTable& avx2_table() noexcept;
#endif

#if defined(SMOOTHSVM_HAVE_NEON_TU)
const KernelTable& neon_table() noexcept;
#endif

}  // namespace smoothsvm::kernels::detail
