#pragma once

// Min-plus relaxation kernels for the layered dynamic program that picks one
// vertex per cluster along a fixed cluster order.
//
// A "block" is the sub-matrix of edge costs from the vertices of one cluster
// (rows) to the vertices of the next (columns), stored row-major inside the
// full dense cost matrix, so consecutive rows are `row_stride` doubles apart.
//
// Every backend must produce bit-identical results: each output is a running
// minimum over rows in increasing row order with a strict `<` update, so the
// first row attaining the minimum wins.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace uavcov::kernels {

enum class Backend { Scalar, Avx2 };

std::string_view to_string(Backend b);

/// out[v] = min(out[v], min_u in[u] + block[u * row_stride + v])
using RelaxFn = void (*)(std::span<const double> in, const double* block,
                         std::size_t row_stride, std::span<double> out);

/// Same as RelaxFn, also recording in arg[v] the row u that set out[v].
/// Entries of `arg` whose `out` is not improved are left untouched.
using RelaxArgFn = void (*)(std::span<const double> in, const double* block,
                            std::size_t row_stride, std::span<double> out,
                            std::span<std::int32_t> arg);

namespace scalar {
void relax(std::span<const double> in, const double* block, std::size_t row_stride,
           std::span<double> out);
void relax_arg(std::span<const double> in, const double* block, std::size_t row_stride,
               std::span<double> out, std::span<std::int32_t> arg);
}  // namespace scalar

namespace avx2 {
void relax(std::span<const double> in, const double* block, std::size_t row_stride,
           std::span<double> out);
void relax_arg(std::span<const double> in, const double* block, std::size_t row_stride,
               std::span<double> out, std::span<std::int32_t> arg);
}  // namespace avx2

/// Whether the backend was compiled in and the running CPU supports it.
bool available(Backend b);

/// Backend used by relax()/relax_arg(). Defaults to the fastest available.
Backend active_backend();

/// Forces a backend. Throws ContractViolation if it is not available.
void set_backend(Backend b);

void relax(std::span<const double> in, const double* block, std::size_t row_stride,
           std::span<double> out);
void relax_arg(std::span<const double> in, const double* block, std::size_t row_stride,
               std::span<double> out, std::span<std::int32_t> arg);

}  // namespace uavcov::kernels
