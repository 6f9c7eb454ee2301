#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "test_support.hpp"
#include "toeplitz/errors.hpp"
#include "toeplitz/structmat.hpp"

using namespace toeplitz;
using testsupport::det_value;
using testsupport::exp_skew;
using testsupport::exp_sym;
using testsupport::marker;
using testsupport::rel_diff;

namespace {

cplx bd(const Symbol& phi, const Symbol& psi, int n) { return bordered_det(phi, psi, n).value(); }
cplx dn(const Symbol& phi, int n) { return toeplitz_det(phi, n).value(); }
cplx semi(SemiVariant v, const Symbol& phi, const Symbol& psi, const Symbol& eta, cplx a, int n) {
  return semi_framed_det(v, phi, psi, eta, a, n).value();
}

}  // namespace

TEST_CASE("pure Toeplitz layout") {
  const CMatrix t = build_matrix({DetKind::Pure, marker(100), {}, {}, 3});
  CHECK(t(0, 0) == cplx(100));
  CHECK(t(2, 0) == cplx(102));
  CHECK(t(0, 2) == cplx(98));
  const CMatrix u = build_matrix({DetKind::PureBulkRowConvention, marker(100), {}, {}, 3});
  CHECK(u(2, 0) == cplx(98));
  CHECK(u(0, 2) == cplx(102));
}

TEST_CASE("bordered layouts") {
  const CMatrix t = build_matrix({DetKind::Bordered, marker(100), {marker(500)}, {}, 4});
  CHECK(t(1, 0) == cplx(99));  // phi_{c-r}
  CHECK(t(0, 2) == cplx(102));
  CHECK(t(0, 3) == cplx(503));  // psi_{n-1-r}
  CHECK(t(3, 3) == cplx(500));
  StructuredDetSpec m{DetKind::MultiBordered, marker(100), {marker(500), marker(700)}, {}, 4, 2};
  const CMatrix u = build_matrix(m);
  CHECK(u(0, 1) == cplx(101));
  CHECK(u(0, 2) == cplx(503));
  CHECK(u(3, 3) == cplx(700));
  CHECK(u(1, 3) == cplx(702));
}

TEST_CASE("semi-framed layouts") {
  const int n = 4;  // bulk 3x3
  auto mk = [&](DetKind k) {
    return build_matrix({k, marker(100), {marker(500), marker(700)}, {cplx(9.0)}, n});
  };
  const CMatrix e = mk(DetKind::SemiFramedE), g = mk(DetKind::SemiFramedG),
                h = mk(DetKind::SemiFramedH), l = mk(DetKind::SemiFramedL);
  for (const CMatrix* m : {&e, &g, &h, &l}) {
    CHECK((*m)(3, 3) == cplx(9.0));
    CHECK((*m)(2, 0) == cplx(102));
  }
  CHECK(e(0, 3) == cplx(502));
  CHECK(e(3, 0) == cplx(702));
  CHECK(g(0, 3) == cplx(500));
  CHECK(g(3, 0) == cplx(700));
  CHECK(h(0, 3) == cplx(500));
  CHECK(h(3, 0) == cplx(702));
  CHECK(l(0, 3) == cplx(502));
  CHECK(l(3, 0) == cplx(700));
}

TEST_CASE("framed M and N layouts") {
  const std::vector<Symbol> b{marker(100 * 2), marker(100 * 3), marker(100 * 4), marker(100 * 5)};
  const std::vector<cplx> a{1.0, 2.0, 3.0, 4.0};
  const int size = 5;  // bulk 3x3, borders indexed 0..2
  const CMatrix mm = build_matrix({DetKind::FramedM, marker(100), b, a, size});
  CHECK(mm(0, 0) == cplx(1));
  CHECK(mm(0, 4) == cplx(2));
  CHECK(mm(4, 4) == cplx(3));
  CHECK(mm(4, 0) == cplx(4));
  CHECK(mm(0, 1) == cplx(202));  // xi_n .. xi_0 left to right
  CHECK(mm(0, 3) == cplx(200));
  CHECK(mm(1, 0) == cplx(502));  // gamma_n .. gamma_0 downwards
  CHECK(mm(1, 4) == cplx(300));  // psi_0 .. psi_n downwards
  CHECK(mm(3, 4) == cplx(302));
  CHECK(mm(4, 1) == cplx(402));  // eta_n .. eta_0
  CHECK(mm(2, 1) == cplx(101));

  const CMatrix nn = build_matrix({DetKind::FramedN, marker(100), b, a, size});
  CHECK(nn(0, 1) == cplx(200));
  CHECK(nn(0, 3) == cplx(202));
  CHECK(nn(1, 0) == cplx(500));
  CHECK(nn(1, 4) == cplx(302));
  CHECK(nn(3, 4) == cplx(300));
  CHECK(nn(4, 1) == cplx(402));
  CHECK(nn(4, 3) == cplx(400));
}

TEST_CASE("two-framed display equals the general two-frame builder") {
  std::vector<Symbol> b;
  for (int q = 0; q < 8; ++q) b.push_back(marker(1000.0 * (q + 2)));
  std::vector<cplx> a;
  for (int q = 0; q < 8; ++q) a.push_back(cplx(q + 1, -q));
  for (int size : {6, 7, 9}) {
    const CMatrix k = build_matrix({DetKind::TwoFramedK, marker(100), b, a, size});
    const CMatrix m = build_matrix({DetKind::MultiFramed, marker(100), b, a, size, 2});
    CHECK((k - m).norm() == 0.0);
    CHECK(k(0, 0) == a[4]);
    CHECK(k(0, size - 1) == a[5]);
    CHECK(k(size - 1, size - 1) == a[6]);
    CHECK(k(size - 1, 0) == a[7]);
    CHECK(k(1, 1) == a[0]);
    CHECK(k(size - 2, 1) == a[3]);
  }
}

TEST_CASE("det_log basics") {
  CHECK(rel_diff(det_value(CMatrix::Identity(3, 3)), 1.0) < 1e-15);
  CMatrix swap = CMatrix::Zero(2, 2);
  swap(0, 1) = swap(1, 0) = 1.0;
  CHECK(rel_diff(det_value(swap), -1.0) < 1e-15);
  CHECK(det_log(CMatrix(0, 0)).value() == cplx(1.0));
  CHECK_THROWS_AS(det_log(CMatrix(2, 3)), ShapeError);
  CMatrix bad = CMatrix::Identity(2, 2);
  bad(0, 1) = cplx(std::nan(""), 0.0);
  CHECK_THROWS_AS(det_log(bad), ParameterError);
}

TEST_CASE("det_log matches cofactor expansion on random matrices") {
  std::mt19937_64 rng(7);
  for (int n = 1; n <= 6; ++n) {
    for (int trial = 0; trial < 5; ++trial) {
      const CMatrix m = testsupport::random_matrix(n, rng);
      CHECK(rel_diff(det_value(m), testsupport::laplace_det(m)) < 1e-12);
    }
  }
}

TEST_CASE("det_log keeps huge determinants in log form") {
  const CMatrix m = CMatrix::Identity(40, 40) * cplx(1e200);
  const LogComplex d = det_log(m);
  CHECK(!d.is_zero());
  CHECK(std::abs(d.log_modulus() - 40 * std::log(1e200)) < 1e-9);
}

TEST_CASE("singular matrices are detected") {
  const Symbol z = monomial(1);
  for (int n : {2, 5, 10}) CHECK(toeplitz_det(z, n).is_zero());
  CMatrix rank1 = CMatrix::Ones(4, 4);
  CHECK(det_log(rank1).is_zero());
}

TEST_CASE("minors") {
  std::mt19937_64 rng(11);
  const CMatrix m = testsupport::random_matrix(5, rng);
  const std::vector<int> r{1, 3}, c{0, 4};
  const CMatrix sub = remove_rows_cols(m, r, c);
  REQUIRE(sub.rows() == 3);
  CHECK(sub(0, 0) == m(0, 1));
  CHECK(sub(2, 2) == m(4, 3));
  CHECK(rel_diff(minor_det(m, r, c).value(), testsupport::laplace_det(sub)) < 1e-13);
  const std::vector<int> none;
  CHECK(rel_diff(minor_det(m, none, none).value(), det_value(m)) < 1e-15);
  const std::vector<int> oob{5}, dup{2, 2}, one{1};
  const std::vector<int> two{0, 1}, desc{3, 1};
  CHECK_THROWS_AS(minor_det(m, oob, one), IndexError);
  CHECK_THROWS_AS(minor_det(m, dup, two), IndexError);
  CHECK_THROWS_AS(minor_det(m, desc, two), IndexError);
  CHECK_THROWS_AS(minor_det(m, one, two), IndexError);
}

TEST_CASE("corner minor of a Toeplitz matrix is a shifted Toeplitz determinant") {
  // Deleting the first row and last column of T_n (phi_{r-c}) leaves phi_{r-c+1},
  // the Toeplitz matrix of z^{-1}phi.
  const Symbol phi = exp_skew();
  const int n = 7;
  const CMatrix t = build_matrix({DetKind::Pure, phi, {}, {}, n});
  const std::vector<int> r{0}, c{n - 1};
  CHECK(rel_diff(minor_det(t, r, c).value(), dn(shift(phi, -1), n - 1)) < 1e-12);
}

TEST_CASE("bordered determinant reductions") {
  const Symbol phi = exp_skew();
  for (int n : {2, 4, 7}) {
    CHECK(rel_diff(bd(phi, phi, n), dn(phi, n)) < 1e-12);
    CHECK(rel_diff(bd(phi, constant_symbol(1.0), n), dn(phi, n - 1)) < 1e-12);
  }
  CHECK(bordered_det(phi, constant_symbol(1.0), 1).value() == cplx(1.0));
  CHECK_THROWS_AS(bordered_det(phi, std::vector<Symbol>{phi, phi}, 1), SpecError);
}

TEST_CASE("transpose leaves structured determinants unchanged") {
  const Symbol phi = exp_skew();
  for (int n : {3, 6}) {
    const CMatrix t = build_matrix({DetKind::Pure, phi, {}, {}, n});
    CHECK(rel_diff(det_value(t.transpose()), det_value(t)) < 1e-13);
    CHECK(rel_diff(dn(phi, n), det_value(build_matrix({DetKind::PureBulkRowConvention, phi,
                                                      {}, {}, n}))) < 1e-13);
  }
}

TEST_CASE("bordered determinant is linear in the border") {
  const Symbol phi = exp_sym(0.3);
  const Symbol p1 = testsupport::simple_pole(2.5, cplx(1.0, 0.5));
  const Symbol p2 = exp_skew();
  const cplx a(0.7, -0.2), b(-1.3, 0.4);
  const Symbol mix = add(scale(p1, a), scale(p2, b));
  for (int n : {3, 6, 9})
    CHECK(rel_diff(bd(phi, mix, n), a * bd(phi, p1, n) + b * bd(phi, p2, n)) < 1e-12);
}

TEST_CASE("semi-framed determinants are bilinear in the borders") {
  const Symbol phi = exp_skew();
  const Symbol p1 = testsupport::simple_pole(2.0), p2 = monomial(1, cplx(0.0, 1.0));
  const Symbol e1 = testsupport::simple_pole(0.5, cplx(0.3, 0.1)), e2 = exp_sym(0.2);
  const cplx A1 = 0.5, A2 = cplx(0.0, 2.0), B1 = -1.0, B2 = cplx(0.25, 0.75);
  const cplx ahat[2][2] = {{1.0, cplx(0.2, 0.3)}, {-0.5, 2.0}};
  const cplx total = A1 * B1 * ahat[0][0] + A1 * B2 * ahat[0][1] + A2 * B1 * ahat[1][0] +
                     A2 * B2 * ahat[1][1];
  const Symbol psi = add(scale(p1, A1), scale(p2, A2));
  const Symbol eta = add(scale(e1, B1), scale(e2, B2));
  const Symbol ps[2] = {p1, p2}, es[2] = {e1, e2};
  const cplx As[2] = {A1, A2}, Bs[2] = {B1, B2};
  for (auto v : {SemiVariant::E, SemiVariant::G, SemiVariant::H, SemiVariant::L}) {
    for (int n : {3, 6}) {
      cplx sum = 0.0;
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) sum += As[j] * Bs[k] * semi(v, phi, ps[j], es[k], ahat[j][k], n);
      CHECK(rel_diff(semi(v, phi, psi, eta, total, n), sum) < 1e-11);
    }
  }
}

TEST_CASE("semi-framed variants reduce to the H form") {
  const Symbol phi = exp_skew();
  const Symbol psi = testsupport::rational_border(), eta = exp_sym(0.4);
  const cplx a(0.3, -0.8);
  for (int n : {2, 4, 7}) {
    const Symbol psi_t = shift(reflect(psi), n - 2), eta_t = shift(reflect(eta), n - 2);
    const cplx e = semi(SemiVariant::E, phi, psi, eta, a, n);
    const cplx g = semi(SemiVariant::G, phi, psi, eta, a, n);
    const cplx l = semi(SemiVariant::L, phi, psi, eta, a, n);
    CHECK(rel_diff(e, semi(SemiVariant::H, phi, psi_t, eta, a, n)) < 1e-12);
    CHECK(rel_diff(g, semi(SemiVariant::H, phi, psi, eta_t, a, n)) < 1e-12);
    CHECK(rel_diff(l, semi(SemiVariant::H, phi, psi_t, eta_t, a, n)) < 1e-12);
  }
}

TEST_CASE("H determinants with a monomial border reduce to bordered ones") {
  const Symbol phi = exp_skew();
  const Symbol psi = testsupport::rational_border(), eta = testsupport::simple_pole(3.0, 0.7);
  const Symbol one = constant_symbol(1.0);
  const cplx a(0.4, 0.1);
  for (int n : {2, 3, 5, 8}) {
    const cplx d = dn(phi, n);
    const double sign = n % 2 == 0 ? 1.0 : -1.0;
    const Symbol phi_m = shift(phi, -1), phi_t = reflect(phi);
    const Symbol psi_t = shift(reflect(psi), n - 1);
    CHECK(rel_diff(semi(SemiVariant::H, phi, one, eta, a, n + 1),
                   a * d + sign * bd(phi_m, eta, n)) < 1e-11);
    CHECK(rel_diff(semi(SemiVariant::H, phi, psi, one, a, n + 1), a * d - bd(phi_t, psi_t, n)) <
          1e-11);
    CHECK(rel_diff(semi(SemiVariant::H, phi, monomial(n - 1), eta, a, n + 1),
                   a * d - bd(phi, eta, n)) < 1e-11);
    CHECK(rel_diff(semi(SemiVariant::H, phi, psi, monomial(n - 1), a, n + 1),
                   a * d + sign * bd(shift(phi_t, -1), psi_t, n)) < 1e-11);
  }
}

TEST_CASE("entanglement block for the jump symbol") {
  CHECK(std::abs(entanglement_block(1, 1, 1, 1, 1) - 4.0 / (std::numbers::pi * std::numbers::pi)) <
        1e-15);
  for (int m : {1, 2, 3})
    for (int n : {1, 2})
      for (int k : {1, 2, 4})
        for (int i = 1; i <= m; ++i)
          for (int j = 1; j <= n; ++j) {
            const cplx h = entanglement_block(m, n, k, i, j);
            CHECK(std::abs(h - entanglement_block_l(m, n, k, i, j)) < 1e-13);
            CHECK(std::abs(h - entanglement_block_display(m, n, k, i, j)) < 1e-13);
          }
  CHECK_THROWS_AS(entanglement_block(1, 1, 1, 2, 1), RangeError);
  CHECK_THROWS_AS(entanglement_block(1, 1, 0, 1, 1), RangeError);
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(build_matrix({DetKind::Bordered, exp_sym(), {}, {}, 3}), SpecError);
  CHECK_THROWS_AS(build_matrix({DetKind::FramedM, exp_sym(), {exp_sym()}, {1.0}, 4}), SpecError);
  CHECK_THROWS_AS(build_matrix({DetKind::Pure, exp_sym(), {}, {}, 0}), SpecError);
  CHECK_THROWS_AS(build_matrix({DetKind::TwoFramedK, exp_sym(), std::vector<Symbol>(8, exp_sym()),
                                std::vector<cplx>(8, 1.0), 5}),
                  SpecError);
  CHECK_THROWS_AS(det_kind_from_string("bogus"), SpecError);
  for (auto k : {DetKind::Pure, DetKind::SemiFramedL, DetKind::TwoFramedK, DetKind::EntanglementBlock})
    CHECK(det_kind_from_string(to_string(k)) == k);
}

TEST_CASE("CSV export") {
  CMatrix m(2, 2);
  m << cplx(1.0, 0.0), cplx(0.5, -2.0), cplx(0.1, 0.0), cplx(-3.0, 1e-20);
  const std::string csv = matrix_to_csv(m);
  CHECK(csv == "\"1,0\",\"0.5,-2\"\n\"0.10000000000000001,0\",\"-3,9.9999999999999995e-21\"\n");
}
