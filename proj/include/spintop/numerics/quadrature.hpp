#pragma once

#include <functional>
#include <vector>

namespace spintop::numerics {

struct GaussLegendreRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;  // sum to 2
};

/// Nodes and weights of the n-point Gauss-Legendre rule (Newton iteration
/// on the Legendre recurrence; accurate to ~1e-15).
GaussLegendreRule gauss_legendre(int n);

/// Composite Gauss-Legendre integration of f over [a, b] with n_panels
/// equal panels and an n_nodes-point rule per panel.
double integrate_composite_gl(const std::function<double(double)>& f, double a,
                              double b, int n_panels, int n_nodes);

/// Adaptive Simpson quadrature to absolute tolerance tol.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol);

}  // namespace spintop::numerics
