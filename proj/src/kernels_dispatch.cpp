#include "stobon/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace stobon::kern {
namespace {

const Ops* pick_backend() {
    const char* req = std::getenv("STOBON_KERNELS");
    if (req != nullptr && std::strcmp(req, "scalar") == 0) return &scalar_ops();
#if defined(STOBON_HAVE_AVX2)
    if (req != nullptr && std::strcmp(req, "avx2") == 0 && avx2_supported()) return &avx2_ops();
#endif
#if defined(STOBON_HAVE_NEON)
    if (req != nullptr && std::strcmp(req, "neon") == 0) return &neon_ops();
#endif
    // auto / unset / unavailable request: best supported variant
#if defined(STOBON_HAVE_AVX2)
    if (avx2_supported()) return &avx2_ops();
#endif
#if defined(STOBON_HAVE_NEON)
    return &neon_ops();
#else
    return &scalar_ops();
#endif
}

} // namespace

const Ops& active_ops() {
    static const Ops* selected = pick_backend();
    return *selected;
}

std::vector<const Ops*> runnable_ops() {
    std::vector<const Ops*> out{&scalar_ops()};
#if defined(STOBON_HAVE_AVX2)
    if (avx2_supported()) out.push_back(&avx2_ops());
#endif
#if defined(STOBON_HAVE_NEON)
    out.push_back(&neon_ops());
#endif
    return out;
}

} // namespace stobon::kern
