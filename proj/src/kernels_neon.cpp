// Licensed under the Apache License, Version 2.0.
// http://www.apache.org/licenses/LICENSE-2.0
//
// NEON kernels for aarch64. Integer exponents are vectorized; fractional
// exponents fall back to lane-wise std::pow, which keeps this backend exact
// against the scalar reference where vector math would need its own
// polynomial port.

#include "kernels_internal.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

#include <cmath>

namespace ampd::kernels {
namespace {

double sum_neon(const double* v, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) acc = vaddq_f64(acc, vld1q_f64(v + i));
    double s = vaddvq_f64(acc);
    for (; i < n; ++i) s += v[i];
    return s;
}

double dot_neon(const double* x, const double* y, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        acc = vfmaq_f64(acc, vld1q_f64(x + i), vld1q_f64(y + i));
    double s = vaddvq_f64(acc);
    for (; i < n; ++i) s += x[i] * y[i];
    return s;
}

void scale_neon(double* v, std::size_t n, double s) {
    const float64x2_t vs = vdupq_n_f64(s);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_f64(v + i, vmulq_f64(vld1q_f64(v + i), vs));
    for (; i < n; ++i) v[i] *= s;
}

enum class PowKind { p1, p2, p3, p4, general };

PowKind classify_p(double p) {
    if (p == 1.0) return PowKind::p1;
    if (p == 2.0) return PowKind::p2;
    if (p == 3.0) return PowKind::p3;
    if (p == 4.0) return PowKind::p4;
    return PowKind::general;
}

inline float64x2_t pow_int_lane(float64x2_t a, PowKind kind) {
    switch (kind) {
        case PowKind::p1: return a;
        case PowKind::p2: return vmulq_f64(a, a);
        case PowKind::p3: return vmulq_f64(vmulq_f64(a, a), a);
        case PowKind::p4: {
            const float64x2_t a2 = vmulq_f64(a, a);
            return vmulq_f64(a2, a2);
        }
        default: return a;
    }
}

inline double pow_abs_scalar(double a, double p) {
    a = std::fabs(a);
    return a == 0.0 ? 0.0 : std::pow(a, p);
}

double sum_abs_pow_neon(const double* v, std::size_t n, double p) {
    const PowKind kind = classify_p(p);
    if (kind == PowKind::general) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) acc += pow_abs_scalar(v[i], p);
        return acc;
    }
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        acc = vaddq_f64(acc, pow_int_lane(vabsq_f64(vld1q_f64(v + i)), kind));
    double s = vaddvq_f64(acc);
    for (; i < n; ++i) s += pow_abs_scalar(v[i], p);
    return s;
}

double abs_pow_sum_neon(const double* v, double* out, std::size_t n, double p) {
    const PowKind kind = classify_p(p);
    if (kind == PowKind::general) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) acc += out[i] = pow_abs_scalar(v[i], p);
        return acc;
    }
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t r = pow_int_lane(vabsq_f64(vld1q_f64(v + i)), kind);
        vst1q_f64(out + i, r);
        acc = vaddq_f64(acc, r);
    }
    double s = vaddvq_f64(acc);
    for (; i < n; ++i) s += out[i] = pow_abs_scalar(v[i], p);
    return s;
}

double sum_abs_diff_pow_neon(const double* x, const double* y, std::size_t n, double p) {
    const PowKind kind = classify_p(p);
    if (kind == PowKind::general) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) acc += pow_abs_scalar(x[i] - y[i], p);
        return acc;
    }
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t d = vabdq_f64(vld1q_f64(x + i), vld1q_f64(y + i));
        acc = vaddq_f64(acc, pow_int_lane(d, kind));
    }
    double s = vaddvq_f64(acc);
    for (; i < n; ++i) s += pow_abs_scalar(x[i] - y[i], p);
    return s;
}

}  // namespace

const Ops* neon_ops() {
    static const Ops table = {
        "neon",     sum_neon,         dot_neon,         scale_neon,
        sum_abs_pow_neon, abs_pow_sum_neon, sum_abs_diff_pow_neon,
    };
    return &table;
}

}  // namespace ampd::kernels

#else  // non-aarch64 build

namespace ampd::kernels {
const Ops* neon_ops() { return nullptr; }
}  // namespace ampd::kernels

#endif
