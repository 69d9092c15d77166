#pragma once

#include "subphase/kernels.hpp"

namespace subphase::kernels::detail {

// Each TU returns its table, or nullptr when the backend is not compiled in
// for this target. Runtime CPU checks live in dispatch.cpp.
const KernelTable* avx2_table();
const KernelTable* neon_table();

} // namespace subphase::kernels::detail
