#pragma once

#include "wealth/simd.hpp"

namespace wealth::simd::detail {

extern const KernelTable kScalarTable;
#if defined(WEALTHOP_HAVE_AVX2)
extern const KernelTable kAvx2Table;
#endif
#if defined(WEALTHOP_HAVE_NEON)
extern const KernelTable kNeonTable;
#endif

}  // namespace wealth::simd::detail
