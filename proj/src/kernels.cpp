#include "spintop/kernels.hpp"

#include <atomic>
#include <stdexcept>

namespace spintop::kernels {

namespace detail {

void cmatvec_scalar(const double* a_re, const double* a_im, const double* x_re,
                    const double* x_im, double* y_re, double* y_im, int n) {
  for (int i = 0; i < n; ++i) {
    const double* row_re = a_re + static_cast<std::size_t>(i) * n;
    const double* row_im = a_im + static_cast<std::size_t>(i) * n;
    double acc_re = 0.0, acc_im = 0.0;
    for (int k = 0; k < n; ++k) {
      acc_re += row_re[k] * x_re[k] - row_im[k] * x_im[k];
      acc_im += row_re[k] * x_im[k] + row_im[k] * x_re[k];
    }
    y_re[i] = acc_re;
    y_im[i] = acc_im;
  }
}

double sq_norm_scalar(const double* re, const double* im, int n) {
  double acc = 0.0;
  for (int i = 0; i < n; ++i) acc += re[i] * re[i] + im[i] * im[i];
  return acc;
}

WeightedMoments weighted_moments_scalar(const double* re, const double* im,
                                        const double* w, int n) {
  WeightedMoments out;
  for (int i = 0; i < n; ++i) {
    const double p = re[i] * re[i] + im[i] * im[i];
    out.p += p;
    out.w1 += w[i] * p;
    out.w2 += w[i] * w[i] * p;
  }
  return out;
}

std::complex<double> ladder_expect_scalar(const double* re, const double* im,
                                          const double* w, int n) {
  double acc_re = 0.0, acc_im = 0.0;
  for (int i = 1; i < n; ++i) {
    // conj(c_{i-1}) * c_i
    const double pr = re[i - 1] * re[i] + im[i - 1] * im[i];
    const double pi = re[i - 1] * im[i] - im[i - 1] * re[i];
    acc_re += w[i] * pr;
    acc_im += w[i] * pi;
  }
  return {acc_re, acc_im};
}

void scale_scalar(double* re, double* im, double s, int n) {
  for (int i = 0; i < n; ++i) {
    re[i] *= s;
    im[i] *= s;
  }
}

}  // namespace detail

namespace {

Backend g_backend = [] {
  return avx2_available() ? Backend::avx2 : Backend::scalar;
}();

}  // namespace

bool avx2_available() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend active_backend() { return g_backend; }

void force_backend(Backend b) {
  if (b == Backend::avx2 && !avx2_available())
    throw std::runtime_error("kernels: AVX2 backend not available on this CPU");
  g_backend = b;
}

std::string backend_name() {
  return g_backend == Backend::avx2 ? "avx2" : "scalar";
}

#if defined(__x86_64__) || defined(_M_X64)
#define SPINTOP_DISPATCH(fn, ...)                         \
  (g_backend == Backend::avx2 ? detail::fn##_avx2(__VA_ARGS__) \
                              : detail::fn##_scalar(__VA_ARGS__))
#else
#define SPINTOP_DISPATCH(fn, ...) detail::fn##_scalar(__VA_ARGS__)
#endif

void cmatvec(const double* a_re, const double* a_im, const double* x_re,
             const double* x_im, double* y_re, double* y_im, int n) {
  SPINTOP_DISPATCH(cmatvec, a_re, a_im, x_re, x_im, y_re, y_im, n);
}

double sq_norm(const double* re, const double* im, int n) {
  return SPINTOP_DISPATCH(sq_norm, re, im, n);
}

WeightedMoments weighted_moments(const double* re, const double* im,
                                 const double* w, int n) {
  return SPINTOP_DISPATCH(weighted_moments, re, im, w, n);
}

std::complex<double> ladder_expect(const double* re, const double* im,
                                   const double* w, int n) {
  return SPINTOP_DISPATCH(ladder_expect, re, im, w, n);
}

void scale(double* re, double* im, double s, int n) {
  SPINTOP_DISPATCH(scale, re, im, s, n);
}

#undef SPINTOP_DISPATCH

}  // namespace spintop::kernels
