// AVX2+FMA variants of the split-plane kernels. Compiled on x86-64 only;
// callers reach these through the runtime dispatcher in kernels.cpp.

#include "spintop/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace spintop::kernels::detail {

namespace {

__attribute__((target("avx2,fma"))) inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d swapped = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

}  // namespace

__attribute__((target("avx2,fma"))) void cmatvec_avx2(
    const double* a_re, const double* a_im, const double* x_re,
    const double* x_im, double* y_re, double* y_im, int n) {
  const int n4 = n & ~3;
  for (int i = 0; i < n; ++i) {
    const double* row_re = a_re + static_cast<std::size_t>(i) * n;
    const double* row_im = a_im + static_cast<std::size_t>(i) * n;
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    int k = 0;
    for (; k < n4; k += 4) {
      const __m256d ar = _mm256_loadu_pd(row_re + k);
      const __m256d ai = _mm256_loadu_pd(row_im + k);
      const __m256d xr = _mm256_loadu_pd(x_re + k);
      const __m256d xi = _mm256_loadu_pd(x_im + k);
      acc_re = _mm256_fmadd_pd(ar, xr, acc_re);
      acc_re = _mm256_fnmadd_pd(ai, xi, acc_re);
      acc_im = _mm256_fmadd_pd(ar, xi, acc_im);
      acc_im = _mm256_fmadd_pd(ai, xr, acc_im);
    }
    double sum_re = hsum(acc_re);
    double sum_im = hsum(acc_im);
    for (; k < n; ++k) {
      sum_re += row_re[k] * x_re[k] - row_im[k] * x_im[k];
      sum_im += row_re[k] * x_im[k] + row_im[k] * x_re[k];
    }
    y_re[i] = sum_re;
    y_im[i] = sum_im;
  }
}

__attribute__((target("avx2,fma"))) double sq_norm_avx2(const double* re,
                                                        const double* im,
                                                        int n) {
  const int n4 = n & ~3;
  __m256d acc = _mm256_setzero_pd();
  int i = 0;
  for (; i < n4; i += 4) {
    const __m256d r = _mm256_loadu_pd(re + i);
    const __m256d m = _mm256_loadu_pd(im + i);
    acc = _mm256_fmadd_pd(r, r, acc);
    acc = _mm256_fmadd_pd(m, m, acc);
  }
  double sum = hsum(acc);
  for (; i < n; ++i) sum += re[i] * re[i] + im[i] * im[i];
  return sum;
}

__attribute__((target("avx2,fma"))) WeightedMoments weighted_moments_avx2(
    const double* re, const double* im, const double* w, int n) {
  const int n4 = n & ~3;
  __m256d acc_p = _mm256_setzero_pd();
  __m256d acc_w1 = _mm256_setzero_pd();
  __m256d acc_w2 = _mm256_setzero_pd();
  int i = 0;
  for (; i < n4; i += 4) {
    const __m256d r = _mm256_loadu_pd(re + i);
    const __m256d m = _mm256_loadu_pd(im + i);
    const __m256d wv = _mm256_loadu_pd(w + i);
    __m256d p = _mm256_mul_pd(r, r);
    p = _mm256_fmadd_pd(m, m, p);
    acc_p = _mm256_add_pd(acc_p, p);
    const __m256d wp = _mm256_mul_pd(wv, p);
    acc_w1 = _mm256_add_pd(acc_w1, wp);
    acc_w2 = _mm256_fmadd_pd(wv, wp, acc_w2);
  }
  WeightedMoments out;
  out.p = hsum(acc_p);
  out.w1 = hsum(acc_w1);
  out.w2 = hsum(acc_w2);
  for (; i < n; ++i) {
    const double p = re[i] * re[i] + im[i] * im[i];
    out.p += p;
    out.w1 += w[i] * p;
    out.w2 += w[i] * w[i] * p;
  }
  return out;
}

__attribute__((target("avx2,fma"))) std::complex<double> ladder_expect_avx2(
    const double* re, const double* im, const double* w, int n) {
  // Offset pairs (i-1, i): vectorize over i starting at 1.
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  int i = 1;
  for (; i + 3 < n; i += 4) {
    const __m256d r0 = _mm256_loadu_pd(re + i - 1);
    const __m256d m0 = _mm256_loadu_pd(im + i - 1);
    const __m256d r1 = _mm256_loadu_pd(re + i);
    const __m256d m1 = _mm256_loadu_pd(im + i);
    const __m256d wv = _mm256_loadu_pd(w + i);
    __m256d pr = _mm256_mul_pd(r0, r1);
    pr = _mm256_fmadd_pd(m0, m1, pr);
    __m256d pi = _mm256_mul_pd(r0, m1);
    pi = _mm256_fnmadd_pd(m0, r1, pi);
    acc_re = _mm256_fmadd_pd(wv, pr, acc_re);
    acc_im = _mm256_fmadd_pd(wv, pi, acc_im);
  }
  double sum_re = hsum(acc_re);
  double sum_im = hsum(acc_im);
  for (; i < n; ++i) {
    const double pr = re[i - 1] * re[i] + im[i - 1] * im[i];
    const double pi = re[i - 1] * im[i] - im[i - 1] * re[i];
    sum_re += w[i] * pr;
    sum_im += w[i] * pi;
  }
  return {sum_re, sum_im};
}

__attribute__((target("avx2,fma"))) void scale_avx2(double* re, double* im,
                                                    double s, int n) {
  const __m256d sv = _mm256_set1_pd(s);
  const int n4 = n & ~3;
  int i = 0;
  for (; i < n4; i += 4) {
    _mm256_storeu_pd(re + i, _mm256_mul_pd(_mm256_loadu_pd(re + i), sv));
    _mm256_storeu_pd(im + i, _mm256_mul_pd(_mm256_loadu_pd(im + i), sv));
  }
  for (; i < n; ++i) {
    re[i] *= s;
    im[i] *= s;
  }
}

}  // namespace spintop::kernels::detail

#endif  // x86-64
