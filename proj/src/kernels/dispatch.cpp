#include "reram/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace reram::kernels {

namespace {

std::atomic<const Ops*> g_active{nullptr};
std::atomic<Backend> g_backend{Backend::autodetect};

const Ops* resolve(Backend b) {
  switch (b) {
    case Backend::scalar:
      return &scalar_ops();
    case Backend::avx2:
#if defined(RERAM_HAVE_AVX2)
      if (avx2_supported()) return &avx2_ops();
#endif
      throw std::runtime_error("AVX2 kernels unavailable on this machine");
    case Backend::autodetect:
    default: {
      if (const char* env = std::getenv("RERAM_KERNELS")) {
        std::string s(env);
        if (s == "scalar") return resolve(Backend::scalar);
        if (s == "avx2") return resolve(Backend::avx2);
        if (!s.empty())
          throw std::runtime_error("RERAM_KERNELS must be scalar or avx2, got " + s);
      }
#if defined(RERAM_HAVE_AVX2)
      if (avx2_supported()) return &avx2_ops();
#endif
      return &scalar_ops();
    }
  }
}

}  // namespace

bool avx2_supported() {
#if defined(RERAM_HAVE_AVX2)
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

const Ops& active_ops() {
  const Ops* p = g_active.load(std::memory_order_acquire);
  if (!p) {
    p = resolve(Backend::autodetect);
    g_active.store(p, std::memory_order_release);
  }
  return *p;
}

void set_backend(Backend b) {
  g_active.store(resolve(b), std::memory_order_release);
  g_backend.store(b, std::memory_order_release);
}

Backend active_backend() { return g_backend.load(std::memory_order_acquire); }

}  // namespace reram::kernels
