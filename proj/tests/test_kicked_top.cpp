#include <doctest.h>

#include <cmath>

#include "spintop/kicked_top.hpp"
#include "spintop/observables.hpp"
#include "support/oracles.hpp"

using namespace spintop;

namespace {

// Independent construction of the Floquet unitary: three dense matrix
// exponentials (scaling-and-squaring) multiplied in the U_z U_y U_x order.
CMatrix expm_propagator(const CollectiveOps& ops, const KickedTopParams& p) {
  const int d = ops.quantum.dim();
  const double j = ops.quantum.j();
  CMatrix jz_mat = CMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) jz_mat(i, i) = ops.jz[i];

  const auto factor = [&](const CMatrix& jmu, double alpha, double twist) {
    return oracle::expm_minus_i(alpha * jmu + 0.5 * twist / j * jmu * jmu);
  };
  return factor(jz_mat, p.alpha_z, p.twist_z) *
         factor(ops.jy, p.alpha_y, p.twist_y) *
         factor(ops.jx, p.alpha_x, p.twist_x);
}

}  // namespace

TEST_SUITE("kicked_top") {

TEST_CASE("default parameter derivation from the scalar knob") {
  const auto p = KickedTopParams::from_k(3.0);
  CHECK(p.alpha_x == doctest::Approx(1.7));
  CHECK(p.alpha_y == doctest::Approx(1.0));
  CHECK(p.alpha_z == doctest::Approx(0.8));
  CHECK(p.twist_x == doctest::Approx(2.55));
  CHECK(p.twist_y == doctest::Approx(2.7));
  CHECK(p.twist_z == doctest::Approx(3.0));
}

TEST_CASE("pure z-rotation is diagonal with the expected phases") {
  const SpinQuantum q(12);
  const auto ops = make_ops(q);
  KickedTopParams p;
  p.alpha_x = p.alpha_y = 0.0;
  p.alpha_z = 0.37;
  const auto prop = build_propagator(ops, p);
  for (int r = 0; r < q.dim(); ++r) {
    for (int c = 0; c < q.dim(); ++c) {
      if (r == c) {
        const Complex expected = std::polar(1.0, -0.37 * ops.jz[r]);
        CHECK(std::abs(prop.matrix(r, c) - expected) < 1e-12);
      } else {
        CHECK(std::abs(prop.matrix(r, c)) < 1e-12);
      }
    }
  }
}

TEST_CASE("unitarity of the product") {
  for (int n : {4, 31, 100}) {
    const SpinQuantum q(n);
    const auto ops = make_ops(q);
    const auto prop = build_propagator(ops, KickedTopParams::from_k(3.0));
    const CMatrix defect = prop.matrix.adjoint() * prop.matrix -
                           CMatrix::Identity(q.dim(), q.dim());
    CHECK(defect.cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("spectral construction equals the dense matrix-exponential oracle") {
  for (int n : {4, 7, 8}) {
    const SpinQuantum q(n);
    const auto ops = make_ops(q);
    const auto p = KickedTopParams::from_k(3.0);
    const auto prop = build_propagator(ops, p);
    const CMatrix expected = expm_propagator(ops, p);
    CHECK((prop.matrix - expected).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("rigid rotation preserves the magnetization length") {
  const SpinQuantum q(24);
  const auto ops = make_ops(q);
  auto p = KickedTopParams::from_k(0.0);  // rotations only
  const auto prop = build_propagator(ops, p);
  SpinState s = spin_coherent(q, 1.1, 0.6);
  const double before = magnetization(s, ops).squaredNorm();
  apply(prop, s);
  const double after = magnetization(s, ops).squaredNorm();
  CHECK(after == doctest::Approx(before).epsilon(1e-8));
}

TEST_CASE("identity parameters leave states unchanged") {
  const SpinQuantum q(9);
  const auto ops = make_ops(q);
  KickedTopParams p;
  p.alpha_x = p.alpha_y = p.alpha_z = 0.0;
  const auto prop = build_propagator(ops, p);
  SpinState s = spin_coherent(q, 2.0, 0.3);
  const CVector before = s.amplitudes;
  apply(prop, s);
  CHECK((s.amplitudes - before).norm() < 1e-12);
}

TEST_CASE("apply preserves the norm at large N") {
  const SpinQuantum q(100);
  const auto ops = make_ops(q);
  const auto prop = build_propagator(ops, KickedTopParams::from_k(3.0));
  RandomStream rng(5, 0, 0);
  SpinState s = haar_random_state(q, rng);
  apply(prop, s);
  CHECK(s.norm() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("pi rotation about x flips the stretched state") {
  const SpinQuantum q(14);
  const auto ops = make_ops(q);
  KickedTopParams p;
  p.alpha_x = std::numbers::pi;
  p.alpha_y = p.alpha_z = 0.0;
  const auto prop = build_propagator(ops, p);
  SpinState s = dicke_state(q, q.j());
  apply(prop, s);
  // Up to a global phase the output is |j, -j>.
  CHECK(std::abs(s.amplitudes[q.dim() - 1]) == doctest::Approx(1.0).epsilon(1e-9));

  // Cross-check against the rotation oracle.
  const CMatrix rot = oracle::rotation(ops, std::numbers::pi, {1.0, 0.0, 0.0});
  const CVector expected = rot * dicke_state(q, q.j()).amplitudes;
  SpinState again = dicke_state(q, q.j());
  apply(prop, again);
  CHECK((again.amplitudes - expected).norm() < 1e-9);
}

TEST_CASE("dimension mismatch is rejected") {
  const auto ops = make_ops(SpinQuantum(6));
  const auto prop = build_propagator(ops, KickedTopParams::from_k(1.0));
  SpinState wrong{SpinQuantum(8), CVector::Ones(9) / 3.0};
  CHECK_THROWS_AS(apply(prop, wrong), std::invalid_argument);
}

TEST_CASE("density conjugation: invariance, consistency, purity") {
  const SpinQuantum q(6);
  const auto ops = make_ops(q);
  const auto prop = build_propagator(ops, KickedTopParams::from_k(3.0));

  // Maximally mixed state is invariant.
  DensityState mixed = maximally_mixed(q);
  apply_density(prop, mixed);
  CHECK((mixed.rho - CMatrix::Identity(7, 7) / 7.0).cwiseAbs().maxCoeff() < 1e-12);

  // Pure density agrees with the state path.
  SpinState psi = spin_coherent(q, 0.9, -1.2);
  DensityState rho = pure_density(psi);
  apply_density(prop, rho);
  apply(prop, psi);
  CHECK((rho.rho - pure_density(psi).rho).cwiseAbs().maxCoeff() < 1e-10);

  // Random diagonal density: trace and purity preserved.
  RandomStream rng(11, 0, 0);
  DensityState diag{q, CMatrix::Zero(7, 7)};
  double trace = 0.0;
  for (int i = 0; i < 7; ++i) {
    const double w = rng.uniform() + 0.01;
    diag.rho(i, i) = w;
    trace += w;
  }
  diag.rho /= trace;
  const double purity_before = purity(diag);
  apply_density(prop, diag);
  CHECK(diag.rho.trace().real() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(purity(diag) == doctest::Approx(purity_before).epsilon(1e-10));
  CHECK((diag.rho - diag.rho.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
}

}  // TEST_SUITE
