#include <cstdlib>
#include <cstring>

#include "homog/kernels/kernels.hpp"

namespace homog::kernels {

const Backend* avx2_backend_impl();
const Backend* neon_backend_impl();

const Backend* avx2_backend() {
#if defined(__x86_64__)
  if (!__builtin_cpu_supports("avx2")) return nullptr;
#endif
  return avx2_backend_impl();
}

const Backend* neon_backend() { return neon_backend_impl(); }

namespace {

const Backend& pick() {
  if (const char* want = std::getenv("HOMOG_KERNELS")) {
    if (std::strcmp(want, "scalar") == 0) return scalar_backend();
    if (std::strcmp(want, "avx2") == 0 && avx2_backend())
      return *avx2_backend();
    if (std::strcmp(want, "neon") == 0 && neon_backend())
      return *neon_backend();
    // Unknown or unavailable request: fall through to the default choice
    // rather than failing a numerical run over an env var typo.
  }
  if (const Backend* b = avx2_backend()) return *b;
  if (const Backend* b = neon_backend()) return *b;
  return scalar_backend();
}

}  // namespace

const Backend& active() {
  static const Backend& chosen = pick();
  return chosen;
}

std::vector<const Backend*> available() {
  std::vector<const Backend*> out{&scalar_backend()};
  if (const Backend* b = avx2_backend()) out.push_back(b);
  if (const Backend* b = neon_backend()) out.push_back(b);
  return out;
}

}  // namespace homog::kernels
