#pragma once

#include <complex>
#include <string>

namespace spintop::kernels {

// Data-parallel inner loops used in the trajectory hot path. Complex data
// is carried as split real/imaginary planes so the vector variants map
// onto plain double lanes. Scalar versions are the reference; the AVX2
// variants are selected at runtime when the CPU supports AVX2+FMA and are
// equivalence-tested against the scalar ones.

enum class Backend { scalar, avx2 };

bool avx2_available();
Backend active_backend();

/// Force a backend (tests, CLI flag). Throws if unavailable on this CPU.
void force_backend(Backend b);

/// Human-readable name of the active backend.
std::string backend_name();

/// y = A x for a dense row-major complex matrix stored as split planes.
void cmatvec(const double* a_re, const double* a_im, const double* x_re,
             const double* x_im, double* y_re, double* y_im, int n);

/// sum_i (re_i^2 + im_i^2)
double sq_norm(const double* re, const double* im, int n);

/// Population-weighted moments against a diagonal weight vector w:
/// p = sum |c_i|^2, w1 = sum w_i |c_i|^2, w2 = sum w_i^2 |c_i|^2.
struct WeightedMoments {
  double p = 0.0;
  double w1 = 0.0;
  double w2 = 0.0;
};
WeightedMoments weighted_moments(const double* re, const double* im,
                                 const double* w, int n);

/// sum_{i=1}^{n-1} w_i * conj(c_{i-1}) * c_i  (w_0 is ignored).
/// With w the raising-operator coefficients on the descending-m layout this
/// is the expectation of J_plus.
std::complex<double> ladder_expect(const double* re, const double* im,
                                   const double* w, int n);

/// c_i *= s (both planes).
void scale(double* re, double* im, double s, int n);

namespace detail {
// Scalar reference implementations (always compiled; used directly by the
// equivalence tests).
void cmatvec_scalar(const double* a_re, const double* a_im, const double* x_re,
                    const double* x_im, double* y_re, double* y_im, int n);
double sq_norm_scalar(const double* re, const double* im, int n);
WeightedMoments weighted_moments_scalar(const double* re, const double* im,
                                        const double* w, int n);
std::complex<double> ladder_expect_scalar(const double* re, const double* im,
                                          const double* w, int n);
void scale_scalar(double* re, double* im, double s, int n);

#if defined(__x86_64__) || defined(_M_X64)
void cmatvec_avx2(const double* a_re, const double* a_im, const double* x_re,
                  const double* x_im, double* y_re, double* y_im, int n);
double sq_norm_avx2(const double* re, const double* im, int n);
WeightedMoments weighted_moments_avx2(const double* re, const double* im,
                                      const double* w, int n);
std::complex<double> ladder_expect_avx2(const double* re, const double* im,
                                        const double* w, int n);
void scale_avx2(double* re, double* im, double s, int n);
#endif
}  // namespace detail

}  // namespace spintop::kernels
