// Licensed under the Apache License, Version 2.0.
// http://www.apache.org/licenses/LICENSE-2.0
//
// Scalar reference kernels. This translation unit is built with baseline
// flags only; the loops below define the semantics the SIMD variants are
// tested against.

#include "ampd/kernels.hpp"

#include <cmath>

namespace ampd::kernels {
namespace {

double sum_scalar(const double* v, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += v[i];
    return acc;
}

double dot_scalar(const double* x, const double* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

void scale_scalar(double* v, std::size_t n, double s) {
    for (std::size_t i = 0; i < n; ++i) v[i] *= s;
}

enum class PowKind { p1, p2, p3, p4, general };

PowKind classify_p(double p) {
    if (p == 1.0) return PowKind::p1;
    if (p == 2.0) return PowKind::p2;
    if (p == 3.0) return PowKind::p3;
    if (p == 4.0) return PowKind::p4;
    return PowKind::general;
}

double sum_abs_pow_scalar(const double* v, std::size_t n, double p) {
    double acc = 0.0;
    switch (classify_p(p)) {
        case PowKind::p1:
            for (std::size_t i = 0; i < n; ++i) acc += std::fabs(v[i]);
            break;
        case PowKind::p2:
            for (std::size_t i = 0; i < n; ++i) acc += v[i] * v[i];
            break;
        case PowKind::p3:
            for (std::size_t i = 0; i < n; ++i) {
                const double a = std::fabs(v[i]);
                acc += a * a * a;
            }
            break;
        case PowKind::p4:
            for (std::size_t i = 0; i < n; ++i) {
                const double a = v[i] * v[i];
                acc += a * a;
            }
            break;
        case PowKind::general:
            for (std::size_t i = 0; i < n; ++i) {
                const double a = std::fabs(v[i]);
                acc += a == 0.0 ? 0.0 : std::pow(a, p);
            }
            break;
    }
    return acc;
}

double abs_pow_sum_scalar(const double* v, double* out, std::size_t n, double p) {
    double acc = 0.0;
    switch (classify_p(p)) {
        case PowKind::p1:
            for (std::size_t i = 0; i < n; ++i) acc += out[i] = std::fabs(v[i]);
            break;
        case PowKind::p2:
            for (std::size_t i = 0; i < n; ++i) acc += out[i] = v[i] * v[i];
            break;
        case PowKind::p3:
            for (std::size_t i = 0; i < n; ++i) {
                const double a = std::fabs(v[i]);
                acc += out[i] = a * a * a;
            }
            break;
        case PowKind::p4:
            for (std::size_t i = 0; i < n; ++i) {
                const double a = v[i] * v[i];
                acc += out[i] = a * a;
            }
            break;
        case PowKind::general:
            for (std::size_t i = 0; i < n; ++i) {
                const double a = std::fabs(v[i]);
                acc += out[i] = a == 0.0 ? 0.0 : std::pow(a, p);
            }
            break;
    }
    return acc;
}

double sum_abs_diff_pow_scalar(const double* x, const double* y, std::size_t n, double p) {
    double acc = 0.0;
    switch (classify_p(p)) {
        case PowKind::p1:
            for (std::size_t i = 0; i < n; ++i) acc += std::fabs(x[i] - y[i]);
            break;
        case PowKind::p2:
            for (std::size_t i = 0; i < n; ++i) {
                const double d = x[i] - y[i];
                acc += d * d;
            }
            break;
        case PowKind::p3:
            for (std::size_t i = 0; i < n; ++i) {
                const double d = std::fabs(x[i] - y[i]);
                acc += d * d * d;
            }
            break;
        case PowKind::p4:
            for (std::size_t i = 0; i < n; ++i) {
                const double d = x[i] - y[i];
                const double d2 = d * d;
                acc += d2 * d2;
            }
            break;
        case PowKind::general:
            for (std::size_t i = 0; i < n; ++i) {
                const double d = std::fabs(x[i] - y[i]);
                acc += d == 0.0 ? 0.0 : std::pow(d, p);
            }
            break;
    }
    return acc;
}

}  // namespace

const Ops* scalar_ops() {
    static const Ops table = {
        "scalar",         sum_scalar,         dot_scalar,
        scale_scalar,     sum_abs_pow_scalar, abs_pow_sum_scalar,
        sum_abs_diff_pow_scalar,
    };
    return &table;
}

}  // namespace ampd::kernels
