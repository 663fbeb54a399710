#include "qwalk/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include <nlohmann/json.hpp>

#include "qwalk/error.hpp"
#include "qwalk/io.hpp"
#include "qwalk/momentum.hpp"

namespace qwalk {

namespace {

nlohmann::ordered_json params_json(const CoinParams& p, long n) {
  nlohmann::ordered_json j;
  j["delta"] = p.delta();
  j["alpha"] = p.alpha();
  j["beta"] = p.beta();
  j["theta"] = p.theta();
  j["ring_size"] = n;
  return j;
}

double circular_distance(double a, double b) { return std::abs(wrap_angle(a - b)); }

void require_timeshift_domain(const CoinParams& p) {
  if (std::abs(p.alpha()) > kOperatorTol || std::abs(p.beta()) > kOperatorTol) {
    throw Error(ErrorKind::UnsupportedParams,
                "time-shifted frames are defined for alpha = beta = 0");
  }
  if (sgn(p.theta()) == 0) {
    throw Error(ErrorKind::UnsupportedParams, "time-shifted frames need theta != 0");
  }
}

}  // namespace

std::string_view to_string(SymmetryName name) noexcept {
  switch (name) {
    case SymmetryName::SUB: return "SUB";
    case SymmetryName::PHS: return "PHS";
    case SymmetryName::PS: return "PS";
    case SymmetryName::CS: return "CS";
    case SymmetryName::TimeShiftV1: return "TimeShiftV1";
    case SymmetryName::TimeShiftV2: return "TimeShiftV2";
  }
  return "?";
}

std::string_view to_string(NormKind kind) noexcept {
  return kind == NormKind::Spectral ? "spectral" : "max_entry";
}

NormKind norm_kind_for(long dim) noexcept {
  return dim <= kSpectralNormMaxDim ? NormKind::Spectral : NormKind::MaxEntry;
}

double operator_norm(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  if (norm_kind_for(m.rows()) == NormKind::Spectral) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    return svd.singularValues()(0);
  }
  return m.cwiseAbs().maxCoeff();
}

nlohmann::ordered_json to_json(const SymmetryReport& r) {
  nlohmann::ordered_json j;
  j["name"] = std::string(to_string(r.name));
  j["residual"] = r.residual;
  j["tolerance"] = r.tolerance;
  j["norm"] = std::string(to_string(r.norm));
  j["passed"] = r.passed;
  j["context"] = r.context;
  return j;
}

Eigen::MatrixXcd sublattice_operator(long n) {
  if (n % 2 != 0) throw Error(ErrorKind::OddRing, "sublattice parity needs an even ring");
  Eigen::VectorXcd d(2 * n);
  for (long i = 0; i < n; ++i) {
    const double s = (site_label(i, n) % 2 == 0) ? 1.0 : -1.0;
    d(2 * i) = s;
    d(2 * i + 1) = s;
  }
  return d.asDiagonal();
}

double sublattice_residual(const WalkOperator& u) {
  const Eigen::MatrixXcd m = materialize(u);
  const Eigen::MatrixXcd lam = sublattice_operator(u.size());
  // Lambda is its own inverse.
  return operator_norm(lam * m * lam + m);
}

Eigen::MatrixXcd phs_conjugate(const WalkOperator& u) {
  const long n = u.size();
  const PhsOperator omega = phs_operator(u.params().alpha(), u.params().beta());
  Eigen::VectorXcd w2(2 * n);
  for (long i = 0; i < n; ++i) {
    const auto f = omega.unitary_part(site_label(i, n));
    w2(2 * i) = f.site_phase * f.coin_part(0, 0);
    w2(2 * i + 1) = f.site_phase * f.coin_part(1, 1);
  }
  const Eigen::MatrixXcd m = materialize(u);
  return w2.asDiagonal() * m.conjugate() * w2.conjugate().asDiagonal();
}

PhsResidual phs_residual(const WalkOperator& u) {
  if (!is_commensurate(u.params().alpha(), u.size())) {
    throw Error(ErrorKind::IncommensurateAlpha,
                "alpha=" + format_double(u.params().alpha()) + " is not 2 pi m / " +
                    std::to_string(u.size()));
  }
  const Eigen::MatrixXcd m = materialize(u);
  const Eigen::MatrixXcd a = phs_conjugate(u);
  const cplx overlap = (m.adjoint() * a).trace();
  PhsResidual r;
  if (std::abs(overlap) > 0.0) r.global_phase = overlap / std::abs(overlap);
  r.residual = operator_norm(a - r.global_phase * m);
  return r;
}

Mat2 parity_coin(double beta) noexcept {
  return pauli_dot({std::sin(beta), std::cos(beta), 0.0}) * kI;
}

double parity_residual_bloch(const CoinParams& p, double k) {
  const Mat2 pc = parity_coin(p.beta());
  const Mat2 h = bloch_hamiltonian(p, k);
  const Mat2 h_mirror = bloch_hamiltonian(p, 2.0 * p.alpha() - k);
  return (pc * h * pc.adjoint() - h_mirror).norm();
}

Vec3 chiral_vector(double theta) noexcept { return {std::cos(theta), 0.0, -std::sin(theta)}; }

Mat2 chiral_operator(double theta) noexcept { return su2_exp(chiral_vector(theta) * (-0.5 * kPi)); }

double chiral_residual(const CoinParams& p, double k) {
  if (std::abs(p.beta()) > kOperatorTol) {
    throw Error(ErrorKind::BetaNonzero, "chiral operator Gamma(theta) is defined for beta = 0");
  }
  const Mat2 g = chiral_operator(p.theta());
  const Mat2 h = bloch_hamiltonian(p, k) - Mat2::identity() * p.delta();
  return (g * h * g.adjoint() + h).norm();
}

double frame_chiral_residual(const CoinParams& p, Frame tag, double k) {
  const auto fv = frame_variant(tag);
  if (!fv.gamma_axis) {
    throw Error(ErrorKind::UnsupportedParams, "the identity frame has no theta-independent Gamma");
  }
  const Mat2 g = pauli_dot(*fv.gamma_axis) * kI;
  const Mat2 v = frame_rotation(tag, p.theta());
  const Mat2 h = v * (bloch_hamiltonian(p, k) - Mat2::identity() * p.delta()) * v.adjoint();
  return (g * h * g.adjoint() + h).norm();
}

SplitCoin split_coin(const CoinParams& p, Frame tag) {
  const cplx phase = std::polar(1.0, -p.delta());
  if (tag == Frame::Identity) return {coin_matrix(p), Mat2::identity()};
  require_timeshift_domain(p);
  const Mat2 half = su2_exp(Vec3::unit_y() * (0.5 * p.theta()));
  if (tag == Frame::V1) return {half * phase, half};
  const Mat2 cs = su2_exp(Vec3::unit_y() * (0.25 * kPi * sgn(p.theta())));
  return {half * cs * phase, cs.adjoint() * half};
}

WalkOperator timeshift_walk(const CoinParams& p, Frame tag, long n) {
  if (tag == Frame::Identity) return build_walk(p, ThetaProfile::homogeneous(p.theta(), n));
  const SplitCoin sc = split_coin(p, tag);
  return WalkOperator(p, ThetaProfile::homogeneous(p.theta(), n),
                      std::vector<Mat2>(static_cast<std::size_t>(n), sc.pre),
                      std::vector<Mat2>(static_cast<std::size_t>(n), sc.post));
}

double timeshift_residual(const CoinParams& p, Frame tag, long n) {
  const Eigen::MatrixXcd shifted_u = materialize(timeshift_walk(p, tag, n));
  const Eigen::MatrixXcd u = materialize(build_walk(p, ThetaProfile::homogeneous(p.theta(), n)));
  const Eigen::MatrixXcd v = coin_block(n, frame_rotation(tag, p.theta()));
  return operator_norm(shifted_u - v * u * v.adjoint());
}

Mat2 timeshift_momentum_step(const CoinParams& p, Frame tag, double k) {
  const SplitCoin sc = split_coin(p, tag);
  return sc.post * momentum_shift(k) * sc.pre;
}

double spectral_mismatch(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  std::vector<char> used(b.size(), 0);
  double worst = 0.0;
  for (double x : a) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_j = 0;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double d = circular_distance(x, b[j]);
      if (d < best) {
        best = d;
        best_j = j;
      }
    }
    used[best_j] = 1;
    worst = std::max(worst, best);
  }
  return worst;
}

std::vector<double> shifted(std::span<const double> phases, double shift) {
  std::vector<double> out;
  out.reserve(phases.size());
  for (double w : phases) out.push_back(wrap_angle(w + shift));
  return out;
}

std::vector<double> reflected(std::span<const double> phases, double center) {
  std::vector<double> out;
  out.reserve(phases.size());
  for (double w : phases) out.push_back(wrap_angle(2.0 * center - w));
  return out;
}

std::vector<SymmetryReport> symmetry_suite(const CoinParams& p, long n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  std::normal_distribution<double> gauss;

  const WalkOperator u = build_walk(p, ThetaProfile::homogeneous(p.theta(), n));
  const long dim = 2 * n;
  std::vector<SymmetryReport> out;

  auto finish = [&](SymmetryName name, double residual, NormKind norm,
                    nlohmann::ordered_json ctx) {
    SymmetryReport r;
    r.name = name;
    r.residual = residual;
    r.norm = norm;
    r.passed = residual < r.tolerance;
    r.context = std::move(ctx);
    out.push_back(std::move(r));
  };

  finish(SymmetryName::SUB, sublattice_residual(u), norm_kind_for(dim), params_json(p, n));

  {
    auto ctx = params_json(p, n);
    if (is_commensurate(p.alpha(), n)) {
      const auto phs = phs_residual(u);
      ctx["global_phase_re"] = phs.global_phase.real();
      ctx["global_phase_im"] = phs.global_phase.imag();
      // Omega^2 = I on a random state.
      const PhsOperator omega = phs_operator(p.alpha(), p.beta());
      WalkerState s(n);
      for (long i = 0; i < n; ++i) s.at(i) = {{gauss(rng), gauss(rng)}, {gauss(rng), gauss(rng)}};
      s.normalize();
      double sq = 0.0;
      for (long i = 0; i < n; ++i) {
        const long x = site_label(i, n);
        const Spinor back = omega.apply(x, omega.apply(x, s.at(i)));
        sq = std::max({sq, std::abs(back.right - s.at(i).right), std::abs(back.left - s.at(i).left)});
      }
      ctx["omega_squared_residual"] = sq;
      finish(SymmetryName::PHS, std::max(phs.residual, sq), norm_kind_for(dim), std::move(ctx));
    } else {
      ctx["skipped"] = "alpha is not a lattice momentum of this ring";
      SymmetryReport r;
      r.name = SymmetryName::PHS;
      r.residual = std::numeric_limits<double>::quiet_NaN();
      r.context = std::move(ctx);
      out.push_back(std::move(r));
    }
  }

  if (p.is_gapped()) {
    const double k = angle(rng);
    const auto [k0, k1] = special_points(p.alpha());
    double ps = std::max({parity_residual_bloch(p, k), parity_residual_bloch(p, k0),
                          parity_residual_bloch(p, k1)});
    auto ctx = params_json(p, n);
    ctx["k"] = k;
    finish(SymmetryName::PS, ps, NormKind::Spectral, std::move(ctx));

    if (std::abs(p.beta()) <= kOperatorTol) {
      auto cctx = params_json(p, n);
      cctx["k"] = k;
      finish(SymmetryName::CS, chiral_residual(p, k), NormKind::Spectral, std::move(cctx));
    }

    if (std::abs(p.alpha()) <= kOperatorTol && std::abs(p.beta()) <= kOperatorTol) {
      const auto base = diagonalize(u).eigenphases;
      for (Frame f : {Frame::V1, Frame::V2}) {
        auto ctx2 = params_json(p, n);
        const auto ts = diagonalize(timeshift_walk(p, f, n)).eigenphases;
        ctx2["spectral_mismatch"] = spectral_mismatch(base, ts);
        ctx2["winding"] = rotated_winding(p, f, *frame_variant(f).gamma_axis);
        ctx2["winding_axis"] = f == Frame::V1 ? "X" : "Z";
        finish(f == Frame::V1 ? SymmetryName::TimeShiftV1 : SymmetryName::TimeShiftV2,
               timeshift_residual(p, f, n), norm_kind_for(dim), std::move(ctx2));
      }
    }
  }
  return out;
}

}  // namespace qwalk
