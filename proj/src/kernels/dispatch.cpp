#include "subphase/kernels.hpp"

#include <atomic>

#include "subphase/errors.hpp"
#include "tables.hpp"

namespace subphase::kernels {

namespace {

bool avx2_usable() {
#if defined(__x86_64__) || defined(_M_X64)
    return detail::avx2_table() != nullptr && __builtin_cpu_supports("avx2") &&
           __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

bool neon_usable() { return detail::neon_table() != nullptr; }

const KernelTable* best_table() {
    if (avx2_usable()) return detail::avx2_table();
    if (neon_usable()) return detail::neon_table();
    return &scalar_table();
}

std::atomic<const KernelTable*> g_active{nullptr};

} // namespace

const KernelTable& table_for(Backend b) {
    switch (b) {
        case Backend::automatic:
            return *best_table();
        case Backend::scalar:
            return scalar_table();
        case Backend::avx2:
            if (!avx2_usable()) throw ValidationError("kernel backend 'avx2' not available on this machine");
            return *detail::avx2_table();
        case Backend::neon:
            if (!neon_usable()) throw ValidationError("kernel backend 'neon' not available on this machine");
            return *detail::neon_table();
    }
    return scalar_table();
}

const KernelTable& active() {
    const KernelTable* t = g_active.load(std::memory_order_acquire);
    if (!t) {
        t = best_table();
        g_active.store(t, std::memory_order_release);
    }
    return *t;
}

void select(Backend b) { g_active.store(&table_for(b), std::memory_order_release); }

Backend parse_backend(const std::string& name) {
    if (name == "auto") return Backend::automatic;
    if (name == "scalar") return Backend::scalar;
    if (name == "avx2") return Backend::avx2;
    if (name == "neon") return Backend::neon;
    throw ValidationError("unknown kernel backend '" + name + "' (expected auto|scalar|avx2|neon)");
}

std::vector<std::string> available_backends() {
    std::vector<std::string> out{"scalar"};
    if (avx2_usable()) out.push_back("avx2");
    if (neon_usable()) out.push_back("neon");
    return out;
}

} // namespace subphase::kernels
