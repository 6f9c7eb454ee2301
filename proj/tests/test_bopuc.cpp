#include <doctest.h>

#include <cmath>
#include <numbers>

#include "test_support.hpp"
#include "toeplitz/bopuc.hpp"
#include "toeplitz/errors.hpp"

using namespace toeplitz;
using testsupport::exp_skew;
using testsupport::exp_sym;
using testsupport::rel_diff;

namespace {

// mpmath, 25 digits: Bessel I_k(0.6) and D_n[exp(0.3(z + 1/z))].
constexpr double kI0 = 1.092045364317339541840880;
constexpr double kI1 = 0.3137040256049221309664602;
constexpr double kD1 = 1.09204536431733954184088;
constexpr double kD2 = 1.094152862046257207105697;

}  // namespace

TEST_CASE("constant symbol gives monomials and the geometric kernel") {
  const BopucSystem s = compute_bopuc(constant_symbol(1.0), 6);
  for (int n = 0; n <= 6; ++n) {
    CHECK(std::abs(s.kappa_sq[n] - 1.0) < 1e-15);
    for (int k = 0; k <= n; ++k) {
      CHECK(std::abs(s.monic_q[n][k] - (k == n ? 1.0 : 0.0)) < 1e-15);
      CHECK(std::abs(s.monic_qhat[n][k] - (k == n ? 1.0 : 0.0)) < 1e-15);
    }
  }
  const cplx z(0.4, 0.3), zeta(-0.7, 0.2);
  cplx geometric = 0.0;
  for (int j = 0; j <= 5; ++j) geometric += std::pow(z * zeta, j);
  CHECK(rel_diff(reproducing_kernel(s, 5, z, zeta).value, geometric) < 1e-14);
  CHECK(rel_diff(reproducing_kernel_cd(s, 5, z, zeta).value, geometric) < 1e-13);
}

TEST_CASE("first polynomials of the exp symbol match Bessel values") {
  const BopucSystem s = compute_bopuc(exp_sym(), 3);
  CHECK(rel_diff(s.kappa_sq[0], 1.0 / kI0) < 1e-14);
  CHECK(rel_diff(s.kappa_sq[1], kD1 / kD2) < 1e-13);
  CHECK(rel_diff(s.monic_q[1][0], -kI1 / kI0) < 1e-14);
  CHECK(rel_diff(s.monic_qhat[1][0], -kI1 / kI0) < 1e-14);
}

TEST_CASE("kappa squared equals the determinant ratio") {
  for (const Symbol& phi : {exp_sym(), exp_skew(), testsupport::rational_border()}) {
    const BopucSystem s = compute_bopuc(phi, 10);
    for (int n = 0; n <= 10; ++n)
      CHECK(rel_diff(s.kappa_sq[n], ratio(s.toeplitz_dets[n], s.toeplitz_dets[n + 1])) < 1e-11);
  }
}

TEST_CASE("bi-orthogonality by quadrature") {
  for (const Symbol& phi : {exp_sym(), exp_skew()}) {
    const BopucSystem s = compute_bopuc(phi, 12);
    CHECK(biorthogonality_residual(s, 256) < 1e-9);
  }
}

TEST_CASE("monic solution is unique") {
  const Symbol phi = exp_skew();
  const BopucSystem s = compute_bopuc(phi, 8);
  for (int n = 1; n <= 8; ++n) {
    const CMatrix t = toeplitz_matrix(coeffs_of(phi, n + 2), n + 1);
    Eigen::FullPivLU<CMatrix> lu(t);
    CHECK(lu.rank() == n + 1);
    CVector e = CVector::Zero(n + 1);
    e(n) = 1.0;
    const CVector x = lu.solve(e);
    for (int k = 0; k <= n; ++k) CHECK(std::abs(x(k) / x(n) - s.monic_q[n][k]) < 1e-11);
  }
}

TEST_CASE("vanishing moment determinant is reported with its index") {
  // g has mean zero, so D_1[g] = 0.
  try {
    (void)compute_bopuc(jump_g(), 6);
    FAIL("expected DegenerateMomentError");
  } catch (const DegenerateMomentError& e) {
    CHECK(e.index() == 1);
  }
  CHECK_THROWS_AS((void)lu_factorization_residual(jump_g(), 6), DegenerateMomentError);
}

TEST_CASE("recurrences hold for several symbols and points") {
  for (const Symbol& phi : {exp_sym(), exp_skew(), testsupport::rational_border()}) {
    const BopucSystem s = compute_bopuc(phi, 12);
    for (int n = 0; n < 12; ++n) {
      for (cplx z : {cplx(0.5, 0.2), cplx(-1.3, 0.4), std::polar(1.0, 0.7)}) {
        const auto r = recurrence_residuals(s, n, z);
        for (double v : r) CHECK(v < 1e-10);
      }
      const auto at_zero = recurrence_residuals(s, n, 0.0);
      CHECK(at_zero[3] < 1e-10);
      CHECK(std::isnan(at_zero[0]));
    }
  }
}

TEST_CASE("kernel conjugate symmetry for a real even symbol") {
  // phi(1/z) = phi(z) with real coefficients makes q = qhat with real coefficients.
  const BopucSystem s = compute_bopuc(exp_sym(), 8);
  const cplx z(0.3, 0.6), zeta(-0.2, 0.9);
  const cplx k1 = reproducing_kernel(s, 8, z, zeta).value;
  const cplx k2 = reproducing_kernel(s, 8, std::conj(zeta), std::conj(z)).value;
  CHECK(rel_diff(k1, std::conj(k2)) < 1e-13);
}

TEST_CASE("Christoffel-Darboux agrees with the direct sum") {
  for (const Symbol& phi : {exp_sym(), exp_skew()}) {
    const BopucSystem s = compute_bopuc(phi, 9);
    const cplx z = 0.5, zeta(0.0, 0.8);
    const KernelValue direct = reproducing_kernel(s, 8, z, zeta);
    const KernelValue cd = reproducing_kernel_cd(s, 8, z, zeta);
    CHECK(cd.method == KernelMethod::ChristoffelDarboux);
    CHECK(rel_diff(direct.value, cd.value) < 1e-12);
  }
}

TEST_CASE("confluent form is the limit of the quotient") {
  const BopucSystem s = compute_bopuc(exp_skew(), 9);
  const double z1 = 0.6;
  const KernelValue conf = reproducing_kernel_cd(s, 8, 1.0 / z1, z1);
  CHECK(conf.method == KernelMethod::Confluent);
  CHECK(rel_diff(conf.value, reproducing_kernel(s, 8, 1.0 / z1, z1).value) < 1e-12);
  const KernelValue near = reproducing_kernel_cd(s, 8, 1.0 / z1, z1 + 1e-6);
  CHECK(near.method == KernelMethod::ChristoffelDarboux);
  CHECK(rel_diff(conf.value, near.value) < 1e-5);
}

TEST_CASE("kernel as a bordered determinant") {
  CHECK(kernel_det_identity(exp_skew(), 6, 0.3, -0.4, 2.5) < 1e-12);
  CHECK(kernel_det_identity(exp_sym(), 4, cplx(0.2, 0.9), cplx(-1.1, 0.3), 0.0) < 1e-12);
  // The residual does not depend on the corner value.
  for (cplx a : {cplx(0.0), cplx(-7.0, 3.0), cplx(1e3)})
    CHECK(kernel_det_identity(testsupport::rational_border(), 5, 0.7, cplx(0, 0.5), a) < 1e-10);
}

TEST_CASE("Khat for the constant symbol is minus the geometric sum") {
  const cplx z(0.5, 0.1), zeta(0.3, -0.6);
  cplx geometric = 0.0;
  for (int j = 0; j <= 2; ++j) geometric += std::pow(z * zeta, j);
  const Coeffs one = [](long j) { return j == 0 ? cplx(1.0) : cplx(0.0); };
  const Coeffs col = [z](long r) { return r >= 0 && r <= 2 ? ipow(z, r) : cplx(0.0); };
  const Coeffs row = [zeta](long c) { return c >= 0 && c <= 2 ? ipow(zeta, c) : cplx(0.0); };
  const cplx khat = det_log(semi_framed_matrix(SemiVariant::G, one, col, row, 0.0, 4)).value();
  CHECK(rel_diff(khat, -geometric) < 1e-14);
}

TEST_CASE("LU factorization of the Toeplitz matrix") {
  CHECK(lu_factorization_residual(exp_sym(), 10) < 1e-10);
  CHECK(lu_factorization_residual(exp_skew(), 10) < 1e-10);
  CHECK(lu_factorization_residual(testsupport::rational_border(), 8) < 1e-10);
}

TEST_CASE("semi-framed H from the kernel, poles at 2 and 3") {
  const Symbol psi = testsupport::simple_pole(2.0);
  const Symbol eta = testsupport::simple_pole(3.0);
  const auto r = semiframed_via_kernel(exp_sym(), psi, eta, cplx(0.7, -0.2), 8, SemiVariant::H);
  CHECK(r.rel_diff < 1e-6);
  CHECK(rel_diff(r.pairing_ratio, r.direct_ratio) < 1e-11);
}

TEST_CASE("semi-framed variants from the kernel up to n = 20") {
  const Symbol psi = testsupport::rational_border();
  const Symbol eta = testsupport::simple_pole(cplx(0.2, 0.3), cplx(1.0, -0.5));
  for (SemiVariant v : {SemiVariant::E, SemiVariant::G, SemiVariant::H, SemiVariant::L}) {
    for (int n : {0, 1, 4, 11, 20}) {
      CAPTURE(to_string(v));
      CAPTURE(n);
      const auto r = semiframed_via_kernel(exp_skew(), psi, eta, 1.5, n, v);
      CHECK(r.rel_diff < 1e-6);
      CHECK(rel_diff(r.pairing_ratio, r.direct_ratio) < 1e-10);
    }
  }
}

TEST_CASE("constant symbol H with n = 1 is a minus two products") {
  const Symbol psi = testsupport::rational_border();
  const Symbol eta = testsupport::simple_pole(cplx(1.7, 0.1));
  const Coeffs pc = coeffs_of(psi, 3), ec = coeffs_of(eta, 3);
  const cplx a(0.4, 0.2);
  const auto r = semiframed_via_kernel(constant_symbol(1.0), psi, eta, a, 1, SemiVariant::H);
  const cplx expected = a - (ec(1) * pc(0) + ec(0) * pc(1));
  CHECK(rel_diff(r.direct_ratio, expected) < 1e-13);
  CHECK(rel_diff(r.kernel_ratio, expected) < 1e-8);
}
