// Licensed under the Apache License, Version 2.0.
// http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace ampd::kernels {

// Data-parallel inner loops shared by the metric layer. Every backend
// implements the same table; results must agree with the scalar reference
// within a few ulp (the reductions may associate differently).
//
// All pow-style kernels interpret the exponent as |v|^p with p > 0 and
// define |0|^p = 0. Exact specializations are used for p in {1,2,3,4};
// other exponents go through an exp/log path.
struct Ops {
    const char* name;

    // sum(v)
    double (*sum)(const double* v, std::size_t n);
    // sum(x[i] * y[i])
    double (*dot)(const double* x, const double* y, std::size_t n);
    // v[i] *= s
    void (*scale)(double* v, std::size_t n, double s);
    // sum(|v[i]|^p)
    double (*sum_abs_pow)(const double* v, std::size_t n, double p);
    // out[i] = |v[i]|^p, returns sum(out)
    double (*abs_pow_sum)(const double* v, double* out, std::size_t n, double p);
    // sum(|x[i] - y[i]|^p)
    double (*sum_abs_diff_pow)(const double* x, const double* y, std::size_t n, double p);
};

enum class Backend { scalar, avx2, neon };

// Table for a specific backend, or nullptr when the CPU (or build) lacks it.
const Ops* ops_for(Backend b);

// Backends usable on this machine, scalar first.
std::vector<Backend> available_backends();

// The selected table. Defaults to the widest available backend; the
// AMPD_KERNELS environment variable (scalar|avx2|neon|auto) overrides,
// as does force_backend().
const Ops& ops();

// Returns false if the backend is unavailable (selection unchanged).
bool force_backend(Backend b);

std::string backend_name(Backend b);

}  // namespace ampd::kernels
