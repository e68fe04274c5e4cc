#include <cmath>

#include "uavcov/kernels.hpp"

namespace uavcov::kernels::scalar {

void relax(std::span<const double> in, const double* block, std::size_t row_stride,
           std::span<double> out) {
  const std::size_t cols = out.size();
  for (std::size_t u = 0; u < in.size(); ++u) {
    const double base = in[u];
    if (std::isinf(base)) continue;
    const double* row = block + u * row_stride;
    for (std::size_t v = 0; v < cols; ++v) {
      const double cand = base + row[v];
      if (cand < out[v]) out[v] = cand;
    }
  }
}

void relax_arg(std::span<const double> in, const double* block, std::size_t row_stride,
               std::span<double> out, std::span<std::int32_t> arg) {
  const std::size_t cols = out.size();
  for (std::size_t u = 0; u < in.size(); ++u) {
    const double base = in[u];
    if (std::isinf(base)) continue;
    const double* row = block + u * row_stride;
    for (std::size_t v = 0; v < cols; ++v) {
      const double cand = base + row[v];
      if (cand < out[v]) {
        out[v] = cand;
        arg[v] = static_cast<std::int32_t>(u);
      }
    }
  }
}

}  // namespace uavcov::kernels::scalar
