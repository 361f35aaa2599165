#pragma once

namespace spintop::numerics {

/// p(x) = c0 + c1 x + c2 x^2
struct Quadratic {
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double operator()(double x) const { return c0 + x * (c1 + x * c2); }
};

/// Closed-form evaluation of
///
///   S = sum over the unit-spaced lattice x = -j, -j+1, ..., +j
///       of p(x) * N(x; mu, var)
///
/// where N is the normal density and 2j is a non-negative integer (j may be
/// half-integer). No O(d) summation over the lattice is performed in the
/// bulk: narrow kernels use the Fourier-dual (theta) series of the full
/// lattice sum with directly summed boundary tails, wide kernels use the
/// midpoint truncated integral with Euler-Maclaurin endpoint-derivative
/// corrections. Both branches are accurate to ~1e-12 relative across
/// var > 0, any mu, any j; the crossover region is covered by both and
/// equivalence-tested.
double gauss_lattice_sum(const Quadratic& p, double mu, double var, double j);

/// Continuum surface of the same sum: the truncated-integral closed form
/// (with endpoint corrections where they converge) and no lattice-comb
/// terms. Differs from gauss_lattice_sum by a period-1 ripple of amplitude
/// ~2 exp(-2 pi^2 var); used where an average over mu needs an integrand
/// free of that ripple.
double gauss_lattice_sum_smooth(const Quadratic& p, double mu, double var,
                                double j);

}  // namespace spintop::numerics
