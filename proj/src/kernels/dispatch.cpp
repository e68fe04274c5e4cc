#include <atomic>
#include <string>

#include "uavcov/errors.hpp"
#include "uavcov/kernels.hpp"

namespace uavcov::kernels {

namespace {

Backend detect() { return available(Backend::Avx2) ? Backend::Avx2 : Backend::Scalar; }

std::atomic<Backend>& current() {
  static std::atomic<Backend> backend{detect()};
  return backend;
}

}  // namespace

std::string_view to_string(Backend b) { return b == Backend::Avx2 ? "avx2" : "scalar"; }

bool available(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return true;
    case Backend::Avx2:
#if defined(__x86_64__) || defined(_M_X64)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

Backend active_backend() { return current().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (!available(b)) {
    throw ContractViolation("kernel backend " + std::string(to_string(b)) + " is not available");
  }
  current().store(b, std::memory_order_relaxed);
}

void relax(std::span<const double> in, const double* block, std::size_t row_stride,
           std::span<double> out) {
  if (active_backend() == Backend::Avx2) {
    avx2::relax(in, block, row_stride, out);
  } else {
    scalar::relax(in, block, row_stride, out);
  }
}

void relax_arg(std::span<const double> in, const double* block, std::size_t row_stride,
               std::span<double> out, std::span<std::int32_t> arg) {
  if (active_backend() == Backend::Avx2) {
    avx2::relax_arg(in, block, row_stride, out, arg);
  } else {
    scalar::relax_arg(in, block, row_stride, out, arg);
  }
}

}  // namespace uavcov::kernels
