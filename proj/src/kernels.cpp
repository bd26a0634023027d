// Licensed under the Apache License, Version 2.0.
// http://www.apache.org/licenses/LICENSE-2.0

#include "ampd/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

#include "kernels_internal.hpp"

namespace ampd::kernels {
namespace {

const Ops* pick_default() {
    const char* env = std::getenv("AMPD_KERNELS");
    if (env && std::strcmp(env, "auto") != 0) {
        if (std::strcmp(env, "scalar") == 0) return scalar_ops();
        if (std::strcmp(env, "avx2") == 0 && avx2_ops()) return avx2_ops();
        if (std::strcmp(env, "neon") == 0 && neon_ops()) return neon_ops();
        // Unknown or unavailable request: fall through to auto selection.
    }
    if (const Ops* t = avx2_ops()) return t;
    if (const Ops* t = neon_ops()) return t;
    return scalar_ops();
}

std::atomic<const Ops*>& selected() {
    static std::atomic<const Ops*> cur{pick_default()};
    return cur;
}

}  // namespace

const Ops* ops_for(Backend b) {
    switch (b) {
        case Backend::scalar: return scalar_ops();
        case Backend::avx2: return avx2_ops();
        case Backend::neon: return neon_ops();
    }
    return nullptr;
}

std::vector<Backend> available_backends() {
    std::vector<Backend> out{Backend::scalar};
    if (avx2_ops()) out.push_back(Backend::avx2);
    if (neon_ops()) out.push_back(Backend::neon);
    return out;
}

const Ops& ops() { return *selected().load(std::memory_order_relaxed); }

bool force_backend(Backend b) {
    const Ops* t = ops_for(b);
    if (!t) return false;
    selected().store(t, std::memory_order_relaxed);
    return true;
}

std::string backend_name(Backend b) {
    switch (b) {
        case Backend::scalar: return "scalar";
        case Backend::avx2: return "avx2";
        case Backend::neon: return "neon";
    }
    return "?";
}

}  // namespace ampd::kernels
