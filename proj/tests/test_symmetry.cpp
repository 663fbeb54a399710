#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>

#include <nlohmann/json.hpp>
#include <unsupported/Eigen/KroneckerProduct>

#include "oracles.hpp"
#include "qwalk/error.hpp"
#include "qwalk/lattice.hpp"
#include "qwalk/momentum.hpp"
#include "qwalk/symmetry.hpp"
#include "qwalk/topology.hpp"

using namespace qwalk;

namespace {

Eigen::Matrix2cd to_eigen(const Mat2& m) {
  Eigen::Matrix2cd e;
  e << m(0, 0), m(0, 1), m(1, 0), m(1, 1);
  return e;
}

// Bloch Hamiltonian from scratch: U_k = diag(e^{-ik}, e^{ik}) C, H = i log U_k.
Eigen::Matrix2cd oracle_h(double d, double a, double b, double t, double k) {
  Eigen::Matrix2cd s = Eigen::Matrix2cd::Zero();
  s(0, 0) = std::exp(-oracle::I * k);
  s(1, 1) = std::exp(oracle::I * k);
  const Eigen::Matrix2cd u = s * oracle::coin(d, a, b, t);
  return oracle::I * u.log();
}

Eigen::MatrixXcd oracle_lambda(long n) {
  Eigen::VectorXcd d(2 * n);
  for (long x = -n / 2; x < n / 2; ++x) {
    const double sign = (x % 2 == 0) ? 1.0 : -1.0;
    d(2 * (x + n / 2)) = sign;
    d(2 * (x + n / 2) + 1) = sign;
  }
  return d.asDiagonal();
}

std::vector<double> eigenphases_of(const Eigen::MatrixXcd& m) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m);
  std::vector<double> w;
  for (long i = 0; i < es.eigenvalues().size(); ++i) w.push_back(-std::arg(es.eigenvalues()(i)));
  return w;
}

}  // namespace

TEST_CASE("operator_norm switches to max-entry above 2N = 64") {
  CHECK(norm_kind_for(64) == NormKind::Spectral);
  CHECK(norm_kind_for(66) == NormKind::MaxEntry);
  Eigen::MatrixXcd small = Eigen::MatrixXcd::Constant(4, 4, 1.0);
  CHECK(operator_norm(small) == doctest::Approx(4.0));
  Eigen::MatrixXcd big = Eigen::MatrixXcd::Constant(66, 66, 0.5);
  CHECK(operator_norm(big) == doctest::Approx(0.5));
}

TEST_CASE("sublattice symmetry") {
  CHECK((sublattice_operator(8) - oracle_lambda(8)).cwiseAbs().maxCoeff() == 0.0);
  oracle::Rng rng(40);
  for (int trial = 0; trial < 10; ++trial) {
    const CoinParams p(rng.angle(), rng.angle(), rng.angle(), rng.angle());
    const auto u = build_walk(p, ThetaProfile::homogeneous(p.theta(), 8));
    CHECK(sublattice_residual(u) < 1e-13);
    // Dense oracle
    const auto m = oracle::walk(p.delta(), p.alpha(), p.beta(), std::vector<double>(8, p.theta()));
    const auto l = oracle_lambda(8);
    CHECK(oracle::spectral_norm(l * m * l + m) < 1e-13);
  }
  const auto iface = build_walk({0, 0, kPi / 2, 0}, ThetaProfile::sharp_interface(-kPi / 4, kPi / 4, 16));
  CHECK(sublattice_residual(iface) < 1e-13);

  const auto w = diagonalize(iface).eigenphases;
  CHECK(spectral_mismatch(w, shifted(w, kPi)) < 1e-10);

  CHECK_THROWS_AS(sublattice_operator(7), Error);
  // Counterexample: an on-site term commutes with Lambda instead of anticommuting.
  const Eigen::MatrixXcd broken =
      oracle::walk(0, 0, 0, std::vector<double>(8, 0.7)) + 0.4 * Eigen::MatrixXcd::Identity(16, 16);
  CHECK(oracle::spectral_norm(oracle_lambda(8) * broken * oracle_lambda(8) + broken) > 0.5);
}

TEST_CASE("particle-hole symmetry") {
  SUBCASE("real coin") {
    const auto u = build_walk({0, 0, 0, kPi / 4}, ThetaProfile::homogeneous(kPi / 4, 8));
    const auto r = phs_residual(u);
    CHECK(r.residual < 1e-12);
    CHECK(std::abs(r.global_phase - 1.0) < 1e-12);
    // Omega = K here: the dense walk matrix is real.
    CHECK(materialize(u).imag().cwiseAbs().maxCoeff() < 1e-15);
  }
  SUBCASE("complex coin") {
    const CoinParams p(0, kTwoPi / 8, kPi / 3, kPi / 5);
    const auto u = build_walk(p, ThetaProfile::homogeneous(p.theta(), 8));
    const auto r = phs_residual(u);
    CHECK(r.residual < 1e-12);
    CHECK(std::abs(r.global_phase - 1.0) < 1e-12);
    // Dense oracle: W^2 conj(U) W^-2 = U
    const auto m = oracle::walk(0, p.alpha(), p.beta(), std::vector<double>(8, p.theta()));
    const auto w2 = oracle::gauge(p.alpha(), p.beta(), 8, 2);
    CHECK(oracle::spectral_norm(w2 * m.conjugate() * w2.adjoint() - m) < 1e-12);
    CHECK((phs_conjugate(u) - w2 * m.conjugate() * w2.adjoint()).cwiseAbs().maxCoeff() < 1e-13);
    // Counterexample: plain conjugation K without the W^2 gauge is not a symmetry here.
    CHECK(oracle::spectral_norm(m.conjugate() - m) > 0.5);
  }
  SUBCASE("random commensurate alpha, any profile; spectrum reflects about delta") {
    oracle::Rng rng(41);
    for (int trial = 0; trial < 10; ++trial) {
      const long n = 2 * static_cast<long>(rng.uniform(2, 8.999));
      const long m = static_cast<long>(rng.uniform(0, n - 0.001));
      const CoinParams p(rng.angle(), kTwoPi * m / n, rng.angle(), 0.0);
      ThetaProfile prof;
      for (long i = 0; i < n; ++i) prof.theta.push_back(rng.angle());
      const auto u = build_walk(p, prof);
      const auto r = phs_residual(u);
      CHECK(r.residual < 1e-12);
      CHECK(std::abs(std::abs(r.global_phase) - 1.0) < 1e-12);
      const auto w = diagonalize(u).eigenphases;
      CHECK(spectral_mismatch(w, reflected(w, p.delta())) < 1e-10);
      CHECK(spectral_mismatch(w, reflected(w, p.delta() + kPi)) < 1e-10);
    }
  }
  SUBCASE("incommensurate alpha") {
    const auto u = build_walk({0, 0.3, 0, 0.5}, ThetaProfile::homogeneous(0.5, 8));
    CHECK_THROWS_AS(phs_residual(u), Error);
  }
}

TEST_CASE("parity symmetry") {
  oracle::Rng rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    const CoinParams p(rng.angle(), rng.angle(), rng.angle(), rng.theta(0.2, kPi - 0.2));
    const double k = rng.angle();
    CHECK(parity_residual_bloch(p, k) < 1e-12);
    // 2x2 oracle
    const double b = p.beta();
    // n_beta = (sin beta, cos beta, 0)
    Eigen::Matrix2cd par = oracle::I * (std::sin(b) * oracle::pauli(0) + std::cos(b) * oracle::pauli(1));
    CHECK(to_eigen(parity_coin(b)).isApprox(par, 1e-14));
    const auto h = oracle_h(p.delta(), p.alpha(), b, p.theta(), k);
    const auto h2 = oracle_h(p.delta(), p.alpha(), b, p.theta(), 2 * p.alpha() - k);
    CHECK((par * h * par.inverse() - h2).norm() < 1e-10);

    const auto [k0, k1] = special_points(p.alpha());
    for (double kj : {k0, k1}) {
      const Mat2 hj = bloch_hamiltonian(p, kj);
      const Mat2 pc = parity_coin(b);
      CHECK((pc * hj - hj * pc).norm() < 1e-12);
      // Bloch vector at k_j is an eigen-axis of P: n = +-n_beta.
      const Vec3 n = bloch_vector(p, kj);
      CHECK(std::abs(std::abs(n.dot({std::sin(b), std::cos(b), 0.0})) - 1.0) < 1e-12);
    }
  }
  // Out of domain: the mirror must go through alpha, not through zero.
  const CoinParams p(0, 0.7, 0.3, 0.9);
  const Mat2 pc = parity_coin(p.beta());
  CHECK((pc * bloch_hamiltonian(p, 0.4) * pc.inverse() - bloch_hamiltonian(p, -0.4)).norm() > 1e-2);
}

TEST_CASE("chiral symmetry") {
  CHECK(chiral_vector(0.0).x == 1.0);
  CHECK(chiral_vector(0.0).y == 0.0);
  CHECK(chiral_vector(0.0).z == 0.0);
  oracle::Rng rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    const double t = rng.theta(0.1, kPi - 0.1);
    CHECK(chiral_vector(t).norm() == doctest::Approx(1.0));
    const CoinParams p(0, rng.angle(), 0, t);
    for (int j = 0; j < 5; ++j) CHECK(std::abs(chiral_vector(t).dot(bloch_vector(p, rng.angle()))) < 1e-12);
    // Gamma has eigenvalues +-i for every theta.
    const auto ev = to_eigen(chiral_operator(t)).eigenvalues();
    CHECK(std::abs(ev(0) * ev(1) - 1.0) < 1e-12);
    CHECK(std::abs(ev(0) + ev(1)) < 1e-12);
    CHECK(std::abs(std::abs(ev(0).imag()) - 1.0) < 1e-12);
  }
  CHECK(std::abs(chiral_vector(0.6).dot(bloch_vector({0, 0, 0.8, 0.6}, 0.5))) > 1e-3);

  CHECK(chiral_residual({0, 0, 0, kPi / 4}, 1.0) < 1e-12);
  CHECK(chiral_residual({0, 0, 0, -kPi / 3}, -2.0) < 1e-12);
  CHECK(chiral_residual({0.4, 0.3, 0, 1.1}, 0.2) < 1e-12);

  // 2x2 oracle for Gamma = exp(-i pi/2 m.sigma) = -i m.sigma
  const double t = 0.8;
  Eigen::Matrix2cd g = -oracle::I * (std::cos(t) * oracle::pauli(0) - std::sin(t) * oracle::pauli(2));
  CHECK(to_eigen(chiral_operator(t)).isApprox(g, 1e-14));
  const auto h = oracle_h(0, 0, 0, t, 0.9);
  CHECK((g * h * g.inverse() + h).norm() < 1e-10);

  CHECK_THROWS_AS(chiral_residual({0, 0, 0.5, 0.8}, 0.2), Error);
  // The raw-frame Gamma of one theta fails for the other sign.
  const Mat2 gp = chiral_operator(kPi / 4);
  const Mat2 hm = bloch_hamiltonian({0, 0, 0, -kPi / 4}, 1.0);
  CHECK((gp * hm * gp.inverse() + hm).norm() > 1e-2);

  // V1 frame: sigma_x serves both signs.
  for (double th : {kPi / 4, -kPi / 4, 1.2, -0.5})
    for (double k : {-2.5, 0.3, 1.7}) CHECK(frame_chiral_residual({0, 0, 0, th}, Frame::V1, k) < 1e-12);
  for (double th : {kPi / 4, -kPi / 4})
    CHECK(frame_chiral_residual({0, 0, 0, th}, Frame::V2, 0.7) < 1e-12);
  CHECK_THROWS_AS(frame_chiral_residual({0, 0, 0, 0.5}, Frame::Identity, 0.7), Error);
}

TEST_CASE("time-shifted frames") {
  const long n = 8;
  for (double th : {kPi / 4, -kPi / 4, 0.3, -2.0, 2.9}) {
    const CoinParams p(0, 0, 0, th);
    CHECK(timeshift_residual(p, Frame::V1, n) < 1e-12);
    CHECK(timeshift_residual(p, Frame::V2, n) < 1e-12);

    // Dense oracle for V1: C_1/2 S C_1/2 with C_1/2 = exp(i theta/2 sigma_y).
    Eigen::Matrix2cd half = (oracle::I * (th / 2) * oracle::pauli(1)).exp();
    const Eigen::MatrixXcd blk = Eigen::kroneckerProduct(Eigen::MatrixXcd::Identity(n, n), half);
    const Eigen::MatrixXcd u1 = blk * oracle::shift(n) * blk;
    CHECK((materialize(timeshift_walk(p, Frame::V1, n)) - u1).cwiseAbs().maxCoeff() < 1e-13);

    const auto base = eigenphases_of(oracle::walk(0, 0, 0, std::vector<double>(n, th)));
    CHECK(spectral_mismatch(base, eigenphases_of(u1)) < 1e-10);
    CHECK(spectral_mismatch(base, diagonalize(timeshift_walk(p, Frame::V2, n)).eigenphases) < 1e-10);
    CHECK(materialize(timeshift_walk(p, Frame::V2, n)).isUnitary(1e-12));
  }
  // Same spectra, different topology: V1 winding about X depends on sgn theta, V2 about Z does not.
  const int v1p = rotated_winding({0, 0, 0, kPi / 4}, Frame::V1, Vec3::unit_x());
  const int v1m = rotated_winding({0, 0, 0, -kPi / 4}, Frame::V1, Vec3::unit_x());
  const int v2p = rotated_winding({0, 0, 0, kPi / 4}, Frame::V2, Vec3::unit_z());
  const int v2m = rotated_winding({0, 0, 0, -kPi / 4}, Frame::V2, Vec3::unit_z());
  CHECK(v1p != v1m);
  CHECK(v2p == v2m);

  // The split walks are conjugates of U, not U itself.
  const auto plain_u = oracle::walk(0, 0, 0, std::vector<double>(n, kPi / 4));
  CHECK((materialize(timeshift_walk({0, 0, 0, kPi / 4}, Frame::V1, n)) - plain_u).cwiseAbs().maxCoeff() > 0.1);
  CHECK_THROWS_AS(timeshift_walk({0, 0, 0, 0}, Frame::V2, n), Error);
  CHECK_THROWS_AS(timeshift_walk({0, 0.2, 0, 0.5}, Frame::V1, n), Error);
  CHECK_THROWS_AS(timeshift_walk({0, 0, 0.2, 0.5}, Frame::V1, n), Error);
  const auto plain = timeshift_walk({0, 0, 0, 0.5}, Frame::Identity, n);
  CHECK((materialize(plain) - oracle::walk(0, 0, 0, std::vector<double>(n, 0.5))).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("spectral helpers") {
  const std::vector<double> a{0.1, -3.1, 2.0};
  const std::vector<double> b{2.0 + 1e-12, 3.1 + 0.08, 0.1};
  CHECK(spectral_mismatch(a, b) == doctest::Approx(2 * kPi - 6.2 - 0.08).epsilon(1e-9));
  CHECK(std::isinf(spectral_mismatch(a, std::vector<double>{0.1})));
  const auto s = shifted(std::vector<double>{3.0}, kPi);
  CHECK(s[0] == doctest::Approx(3.0 - kPi));
  const auto r = reflected(std::vector<double>{0.5}, 0.2);
  CHECK(r[0] == doctest::Approx(-0.1));
}

TEST_CASE("symmetry_suite") {
  const auto reps = symmetry_suite({0, 0, 0, kPi / 4}, 8, 7);
  std::vector<std::string> names;
  for (const auto& r : reps) {
    names.emplace_back(to_string(r.name));
    CHECK(r.passed == (r.residual < r.tolerance));
    CHECK(r.passed);
  }
  CHECK(names == std::vector<std::string>{"SUB", "PHS", "PS", "CS", "TimeShiftV1", "TimeShiftV2"});
  const auto j = to_json(reps.front());
  CHECK(j.begin().key() == "name");
  CHECK(j["norm"] == "spectral");

  const auto complex = symmetry_suite({0.3, kTwoPi / 8, kPi / 3, kPi / 5}, 8, 7);
  CHECK(complex.size() == 3);  // no CS for beta != 0, no frames for alpha != 0
  for (const auto& r : complex) CHECK(r.passed);

  const auto incommensurate = symmetry_suite({0, 0.3, 0, 0.5}, 8, 7);
  CHECK_FALSE(incommensurate[1].passed);
  CHECK(incommensurate[1].context.contains("skipped"));
}
