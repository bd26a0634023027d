// Licensed under the Apache License, Version 2.0.
// http://www.apache.org/licenses/LICENSE-2.0
//
// AVX2+FMA kernels. Built with -mavx2 -mfma; callers reach this table only
// after the runtime CPU check in avx2_ops(). Fractional exponents use a
// vectorized exp2(p*log2(x)) with an atanh-form log2 polynomial on
// [sqrt(1/2), sqrt(2)) and a degree-13 exp series; relative error stays a
// few orders below the 1e-9 equivalence budget of the metric layer.

#include "kernels_internal.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>
#include <cstdint>
#include <cstring>

namespace ampd::kernels {
namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d sw = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, sw));
}

inline __m256d vabs(__m256d v) {
    const __m256d sign = _mm256_set1_pd(-0.0);
    return _mm256_andnot_pd(sign, v);
}

// log2 of strictly positive finite doubles (subnormals included).
inline __m256d v_log2(__m256d x) {
    const __m256d two54 = _mm256_set1_pd(0x1.0p54);
    const __m256d min_normal = _mm256_set1_pd(0x1.0p-1022);

    // Scale subnormals into the normal range and remember the shift.
    const __m256d tiny = _mm256_cmp_pd(x, min_normal, _CMP_LT_OQ);
    x = _mm256_blendv_pd(x, _mm256_mul_pd(x, two54), tiny);
    __m256d e_adj = _mm256_and_pd(tiny, _mm256_set1_pd(54.0));

    const __m256i bits = _mm256_castpd_si256(x);
    const __m256i exp_raw =
        _mm256_and_si256(_mm256_srli_epi64(bits, 52), _mm256_set1_epi64x(0x7FF));
    // Exponent fits in 32 bits per lane; pick the low words for conversion.
    const __m128i exp32 = _mm256_castsi256_si128(
        _mm256_permutevar8x32_epi32(exp_raw, _mm256_setr_epi32(0, 2, 4, 6, 0, 0, 0, 0)));
    __m256d e = _mm256_sub_pd(_mm256_cvtepi32_pd(exp32), _mm256_set1_pd(1023.0));

    const __m256i mant_mask = _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL);
    const __m256i one_bits = _mm256_set1_epi64x(0x3FF0000000000000LL);
    __m256d m = _mm256_castsi256_pd(
        _mm256_or_si256(_mm256_and_si256(bits, mant_mask), one_bits));

    // Move m into [sqrt(1/2), sqrt(2)) so the series argument stays small.
    const __m256d sqrt2 = _mm256_set1_pd(1.4142135623730951);
    const __m256d big = _mm256_cmp_pd(m, sqrt2, _CMP_GE_OQ);
    m = _mm256_blendv_pd(m, _mm256_mul_pd(m, _mm256_set1_pd(0.5)), big);
    e = _mm256_add_pd(e, _mm256_and_pd(big, _mm256_set1_pd(1.0)));
    e = _mm256_sub_pd(e, e_adj);

    // log2(m) = (2/ln2) * atanh(z), z = (m-1)/(m+1), |z| <= 0.1716.
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d z =
        _mm256_div_pd(_mm256_sub_pd(m, one), _mm256_add_pd(m, one));
    const __m256d z2 = _mm256_mul_pd(z, z);

    const double k = 2.885390081777926814;  // 2/ln2
    __m256d poly = _mm256_set1_pd(k / 19.0);
    poly = _mm256_fmadd_pd(poly, z2, _mm256_set1_pd(k / 17.0));
    poly = _mm256_fmadd_pd(poly, z2, _mm256_set1_pd(k / 15.0));
    poly = _mm256_fmadd_pd(poly, z2, _mm256_set1_pd(k / 13.0));
    poly = _mm256_fmadd_pd(poly, z2, _mm256_set1_pd(k / 11.0));
    poly = _mm256_fmadd_pd(poly, z2, _mm256_set1_pd(k / 9.0));
    poly = _mm256_fmadd_pd(poly, z2, _mm256_set1_pd(k / 7.0));
    poly = _mm256_fmadd_pd(poly, z2, _mm256_set1_pd(k / 5.0));
    poly = _mm256_fmadd_pd(poly, z2, _mm256_set1_pd(k / 3.0));
    poly = _mm256_fmadd_pd(poly, z2, _mm256_set1_pd(k));

    return _mm256_fmadd_pd(z, poly, e);
}

// 2^y for y in [-1100, 1100]; y is clamped, so overflow saturates to inf
// and deep underflow flushes through the subnormal range to 0.
inline __m256d v_exp2(__m256d y) {
    y = _mm256_max_pd(y, _mm256_set1_pd(-1100.0));
    y = _mm256_min_pd(y, _mm256_set1_pd(1100.0));

    const __m256d n = _mm256_round_pd(y, _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    const __m256d f = _mm256_sub_pd(y, n);  // |f| <= 0.5

    // exp(f*ln2) by Taylor series; |t| <= 0.3466 keeps 13 terms exact to ~4e-18.
    const __m256d t = _mm256_mul_pd(f, _mm256_set1_pd(0.6931471805599453));
    __m256d poly = _mm256_set1_pd(1.0 / 6227020800.0);  // 1/13!
    poly = _mm256_fmadd_pd(poly, t, _mm256_set1_pd(1.0 / 479001600.0));
    poly = _mm256_fmadd_pd(poly, t, _mm256_set1_pd(1.0 / 39916800.0));
    poly = _mm256_fmadd_pd(poly, t, _mm256_set1_pd(1.0 / 3628800.0));
    poly = _mm256_fmadd_pd(poly, t, _mm256_set1_pd(1.0 / 362880.0));
    poly = _mm256_fmadd_pd(poly, t, _mm256_set1_pd(1.0 / 40320.0));
    poly = _mm256_fmadd_pd(poly, t, _mm256_set1_pd(1.0 / 5040.0));
    poly = _mm256_fmadd_pd(poly, t, _mm256_set1_pd(1.0 / 720.0));
    poly = _mm256_fmadd_pd(poly, t, _mm256_set1_pd(1.0 / 120.0));
    poly = _mm256_fmadd_pd(poly, t, _mm256_set1_pd(1.0 / 24.0));
    poly = _mm256_fmadd_pd(poly, t, _mm256_set1_pd(1.0 / 6.0));
    poly = _mm256_fmadd_pd(poly, t, _mm256_set1_pd(0.5));
    poly = _mm256_fmadd_pd(poly, t, _mm256_set1_pd(1.0));
    poly = _mm256_fmadd_pd(poly, t, _mm256_set1_pd(1.0));
    // (the last two lines fold in the +t and +1 terms)

    // Split 2^n into two normal-range factors so subnormal results survive
    // gradual underflow and large n saturates to inf only after the scale.
    const __m256d n1d = _mm256_min_pd(
        _mm256_max_pd(n, _mm256_set1_pd(-1021.0)), _mm256_set1_pd(1023.0));
    const __m256d n2d = _mm256_sub_pd(n, n1d);
    const __m256i n1 = _mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(n1d));
    const __m256i n2 = _mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(n2d));
    const __m256i bias = _mm256_set1_epi64x(1023);
    const __m256d s1 = _mm256_castsi256_pd(
        _mm256_slli_epi64(_mm256_add_epi64(n1, bias), 52));
    const __m256d s2 = _mm256_castsi256_pd(
        _mm256_slli_epi64(_mm256_add_epi64(n2, bias), 52));

    return _mm256_mul_pd(_mm256_mul_pd(poly, s1), s2);
}

// |a|^p for nonnegative finite a; |0|^p = 0.
inline __m256d v_pow_abs(__m256d a, __m256d p) {
    const __m256d zero = _mm256_setzero_pd();
    const __m256d is_zero = _mm256_cmp_pd(a, zero, _CMP_EQ_OQ);
    const __m256d safe = _mm256_blendv_pd(a, _mm256_set1_pd(1.0), is_zero);
    const __m256d r = v_exp2(_mm256_mul_pd(p, v_log2(safe)));
    return _mm256_andnot_pd(is_zero, r);
}

double sum_avx2(const double* v, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(v + i));
        acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(v + i + 4));
    }
    for (; i + 4 <= n; i += 4) acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(v + i));
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) acc += v[i];
    return acc;
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4)
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

void scale_avx2(double* v, std::size_t n, double s) {
    const __m256d vs = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(v + i, _mm256_mul_pd(_mm256_loadu_pd(v + i), vs));
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

inline __m256d pow_lane(__m256d a, PowKind kind, __m256d p) {
    switch (kind) {
        case PowKind::p1: return a;
        case PowKind::p2: return _mm256_mul_pd(a, a);
        case PowKind::p3: return _mm256_mul_pd(_mm256_mul_pd(a, a), a);
        case PowKind::p4: {
            const __m256d a2 = _mm256_mul_pd(a, a);
            return _mm256_mul_pd(a2, a2);
        }
        case PowKind::general: return v_pow_abs(a, p);
    }
    return a;
}

// Tails are run through the same vector path on a zero-padded block;
// |0|^p = 0, so the padding never contributes to a sum.
inline __m256d load_padded(const double* v, std::size_t rem) {
    double buf[4] = {0.0, 0.0, 0.0, 0.0};
    std::memcpy(buf, v, rem * sizeof(double));
    return _mm256_loadu_pd(buf);
}

double sum_abs_pow_avx2(const double* v, std::size_t n, double p) {
    const PowKind kind = classify_p(p);
    const __m256d vp = _mm256_set1_pd(p);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_add_pd(acc, pow_lane(vabs(_mm256_loadu_pd(v + i)), kind, vp));
    if (i < n)
        acc = _mm256_add_pd(acc, pow_lane(vabs(load_padded(v + i, n - i)), kind, vp));
    return hsum(acc);
}

double abs_pow_sum_avx2(const double* v, double* out, std::size_t n, double p) {
    const PowKind kind = classify_p(p);
    const __m256d vp = _mm256_set1_pd(p);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d r = pow_lane(vabs(_mm256_loadu_pd(v + i)), kind, vp);
        _mm256_storeu_pd(out + i, r);
        acc = _mm256_add_pd(acc, r);
    }
    if (i < n) {
        const __m256d r = pow_lane(vabs(load_padded(v + i, n - i)), kind, vp);
        double buf[4];
        _mm256_storeu_pd(buf, r);
        std::memcpy(out + i, buf, (n - i) * sizeof(double));
        acc = _mm256_add_pd(acc, r);
    }
    return hsum(acc);
}

double sum_abs_diff_pow_avx2(const double* x, const double* y, std::size_t n, double p) {
    const PowKind kind = classify_p(p);
    const __m256d vp = _mm256_set1_pd(p);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d =
            vabs(_mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
        acc = _mm256_add_pd(acc, pow_lane(d, kind, vp));
    }
    if (i < n) {
        const __m256d d = vabs(
            _mm256_sub_pd(load_padded(x + i, n - i), load_padded(y + i, n - i)));
        acc = _mm256_add_pd(acc, pow_lane(d, kind, vp));
    }
    return hsum(acc);
}

bool cpu_has_avx2_fma() {
#if defined(__GNUC__) || defined(__clang__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

}  // namespace

const Ops* avx2_ops() {
    if (!cpu_has_avx2_fma()) return nullptr;
    static const Ops table = {
        "avx2",     sum_avx2,         dot_avx2,         scale_avx2,
        sum_abs_pow_avx2, abs_pow_sum_avx2, sum_abs_diff_pow_avx2,
    };
    return &table;
}

}  // namespace ampd::kernels

#else  // non-x86 build

namespace ampd::kernels {
const Ops* avx2_ops() { return nullptr; }
}  // namespace ampd::kernels

#endif
