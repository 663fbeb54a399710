#include "qwalk/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <string>

#include <Eigen/Eigenvalues>

#include "qwalk/error.hpp"
#include "qwalk/io.hpp"

namespace qwalk {

namespace {

// Eigenvalues of (U + U^dagger) / 2 closer than this share one invariant subspace.
constexpr double kClusterTol = 1e-6;

void require_ring(long n) {
  if (n < 4 || n % 2 != 0) {
    throw Error(ErrorKind::OddRing, "ring size must be even and >= 4, got " + std::to_string(n));
  }
}

void require_dense(long n) {
  if (n > kMaxDenseRing) {
    throw Error(ErrorKind::TooLarge, "dense routines are limited to N <= " +
                                         std::to_string(kMaxDenseRing) + ", got " +
                                         std::to_string(n));
  }
}

void require_same_size(long a, long b) {
  if (a != b) {
    throw Error(ErrorKind::DimensionMismatch,
                "ring sizes differ: " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

}  // namespace

ThetaProfile ThetaProfile::homogeneous(double theta, long n) {
  require_ring(n);
  return {std::vector<double>(static_cast<std::size_t>(n), wrap_angle(theta))};
}

ThetaProfile ThetaProfile::sharp_interface(double theta1, double theta2, long n) {
  require_ring(n);
  ThetaProfile p;
  p.theta.resize(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    p.theta[static_cast<std::size_t>(i)] = wrap_angle(site_label(i, n) < 0 ? theta1 : theta2);
  }
  return p;
}

WalkerState WalkerState::localized(long n, long x, int coin) {
  WalkerState s(n);
  auto& sp = s.at_site(x);
  (coin == 0 ? sp.right : sp.left) = 1.0;
  return s;
}

double WalkerState::norm() const noexcept {
  double acc = 0.0;
  for (const auto& sp : amps_) acc += sp.norm2();
  return std::sqrt(acc);
}

void WalkerState::normalize() {
  const double n = norm();
  if (n == 0.0) throw Error(ErrorKind::InvalidArgument, "cannot normalize the zero state");
  *this *= 1.0 / n;
}

cplx WalkerState::inner(const WalkerState& other) const {
  require_same_size(size(), other.size());
  cplx acc = 0.0;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    acc += std::conj(amps_[i].right) * other.amps_[i].right +
           std::conj(amps_[i].left) * other.amps_[i].left;
  }
  return acc;
}

std::vector<double> WalkerState::probabilities() const {
  std::vector<double> p(amps_.size());
  std::transform(amps_.begin(), amps_.end(), p.begin(),
                 [](const Spinor& s) { return s.norm2(); });
  return p;
}

Eigen::VectorXcd WalkerState::to_vector() const {
  Eigen::VectorXcd v(2 * size());
  for (long i = 0; i < size(); ++i) {
    v(2 * i) = amps_[static_cast<std::size_t>(i)].right;
    v(2 * i + 1) = amps_[static_cast<std::size_t>(i)].left;
  }
  return v;
}

WalkerState WalkerState::from_vector(const Eigen::VectorXcd& v) {
  if (v.size() % 2 != 0) throw Error(ErrorKind::DimensionMismatch, "odd amplitude vector");
  WalkerState s(static_cast<long>(v.size() / 2));
  for (long i = 0; i < s.size(); ++i) s.at(i) = {v(2 * i), v(2 * i + 1)};
  return s;
}

WalkerState& WalkerState::operator+=(const WalkerState& o) {
  require_same_size(size(), o.size());
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    amps_[i].right += o.amps_[i].right;
    amps_[i].left += o.amps_[i].left;
  }
  return *this;
}

WalkerState& WalkerState::operator-=(const WalkerState& o) {
  require_same_size(size(), o.size());
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    amps_[i].right -= o.amps_[i].right;
    amps_[i].left -= o.amps_[i].left;
  }
  return *this;
}

WalkerState& WalkerState::operator*=(cplx s) {
  for (auto& sp : amps_) {
    sp.right *= s;
    sp.left *= s;
  }
  return *this;
}

WalkOperator::WalkOperator(CoinParams params, ThetaProfile profile, std::vector<Mat2> pre,
                           std::vector<Mat2> post)
    : params_(params), profile_(std::move(profile)), pre_(std::move(pre)), post_(std::move(post)) {
  require_ring(profile_.size());
  require_same_size(static_cast<long>(pre_.size()), profile_.size());
  if (!post_.empty()) require_same_size(static_cast<long>(post_.size()), profile_.size());
}

WalkOperator build_walk(const CoinParams& p, const ThetaProfile& profile) {
  require_ring(profile.size());
  std::vector<Mat2> coins;
  coins.reserve(profile.theta.size());
  for (double th : profile.theta) coins.push_back(coin_matrix(p.with_theta(th)));
  return WalkOperator(p, profile, std::move(coins));
}

WalkerState step(const WalkOperator& u, const WalkerState& s) {
  const long n = u.size();
  require_same_size(n, s.size());
  const auto& pre = u.pre_coins();
  const auto& post = u.post_coins();
  WalkerState out(n);
  for (long i = 0; i < n; ++i) {
    const Spinor c = pre[static_cast<std::size_t>(i)] * s.at(i);
    out.at((i + 1) % n).right = c.right;
    out.at((i + n - 1) % n).left = c.left;
  }
  if (!post.empty()) {
    for (long i = 0; i < n; ++i) out.at(i) = post[static_cast<std::size_t>(i)] * out.at(i);
  }
  return out;
}

Eigen::MatrixXcd shift_matrix(long n) {
  require_ring(n);
  Eigen::MatrixXcd sm = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  for (long i = 0; i < n; ++i) {
    sm(2 * ((i + 1) % n), 2 * i) = 1.0;
    sm(2 * ((i + n - 1) % n) + 1, 2 * i + 1) = 1.0;
  }
  return sm;
}

Eigen::MatrixXcd coin_block(long n, const Mat2& m) {
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  for (long i = 0; i < n; ++i) {
    for (int r = 0; r < 2; ++r) {
      for (int col = 0; col < 2; ++col) c(2 * i + r, 2 * i + col) = m(r, col);
    }
  }
  return c;
}

Eigen::MatrixXcd materialize(const WalkOperator& u) {
  const long n = u.size();
  require_dense(n);
  // Column j is U applied to the j-th basis vector.
  Eigen::MatrixXcd m(2 * n, 2 * n);
  for (long i = 0; i < n; ++i) {
    for (int c = 0; c < 2; ++c) {
      m.col(2 * i + c) = step(u, WalkerState::localized(n, site_label(i, n), c)).to_vector();
    }
  }
  return m;
}

StepObservables observe(const WalkerState& s, long t, long window) {
  const long n = s.size();
  StepObservables o;
  o.t = t;
  double total = 0.0;
  double m1 = 0.0;
  double m2 = 0.0;
  for (long i = 0; i < n; ++i) {
    const double p = s.at(i).norm2();
    const auto x = static_cast<double>(site_label(i, n));
    total += p;
    m1 += p * x;
    m2 += p * x * x;
    if (std::abs(site_label(i, n)) <= window) o.interface_prob += p;
  }
  if (total > 0.0) {
    o.mean_x = m1 / total;
    o.sigma_x = std::sqrt(std::max(0.0, m2 / total - o.mean_x * o.mean_x));
  }
  return o;
}

Trajectory evolve(const WalkOperator& u, const WalkerState& s0, long steps, long record_every,
                  long window) {
  require_same_size(u.size(), s0.size());
  if (steps < 0) throw Error(ErrorKind::InvalidArgument, "step count must be >= 0");
  if (record_every < 1) throw Error(ErrorKind::InvalidArgument, "record_every must be >= 1");
  Trajectory tr;
  tr.window = window;
  tr.observables.reserve(static_cast<std::size_t>(steps + 1));
  WalkerState s = s0;
  for (long t = 0;; ++t) {
    tr.observables.push_back(observe(s, t, window));
    if (t % record_every == 0) tr.snapshots.push_back({t, s});
    if (t == steps) break;
    s = step(u, s);
  }
  tr.final_state = std::move(s);
  return tr;
}

double inverse_participation_ratio(const WalkerState& s) {
  double acc = 0.0;
  for (const auto& sp : s.amplitudes()) {
    const double p = sp.norm2();
    acc += p * p;
  }
  return acc;
}

SpectralData diagonalize(const WalkOperator& u) {
  const Eigen::MatrixXcd m = materialize(u);
  const long dim = m.rows();
  // U is normal, so it commutes with its Hermitian part, whose eigenvalues are cos(w).
  // Each cluster of equal cos(w) is an invariant subspace of U, resolved by a small Schur
  // decomposition (diagonal for a normal block).
  const Eigen::MatrixXcd h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorKind::InvalidArgument, "eigen decomposition did not converge");
  }
  const Eigen::VectorXd& cosw = es.eigenvalues();
  const Eigen::MatrixXcd& q = es.eigenvectors();

  Eigen::MatrixXcd vecs(dim, dim);
  std::vector<double> phases(static_cast<std::size_t>(dim));
  for (long a = 0; a < dim;) {
    long b = a + 1;
    while (b < dim && cosw(b) - cosw(b - 1) < kClusterTol) ++b;
    const Eigen::MatrixXcd qc = q.middleCols(a, b - a);
    const Eigen::MatrixXcd block = qc.adjoint() * m * qc;
    Eigen::ComplexSchur<Eigen::MatrixXcd> schur(block, /*computeU=*/true);
    if (schur.info() != Eigen::Success) {
      throw Error(ErrorKind::InvalidArgument, "Schur decomposition did not converge");
    }
    vecs.middleCols(a, b - a) = qc * schur.matrixU();
    for (long j = 0; j < b - a; ++j) {
      phases[static_cast<std::size_t>(a + j)] = wrap_angle(-std::arg(schur.matrixT()(j, j)));
    }
    a = b;
  }

  std::vector<std::size_t> order(phases.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return phases[a] < phases[b]; });

  SpectralData out;
  out.eigenphases.reserve(order.size());
  out.eigenvectors.reserve(order.size());
  out.ipr.reserve(order.size());
  for (std::size_t j : order) {
    out.eigenphases.push_back(phases[j]);
    out.eigenvectors.push_back(WalkerState::from_vector(vecs.col(static_cast<long>(j))));
    out.ipr.push_back(inverse_participation_ratio(out.eigenvectors.back()));
  }
  return out;
}

std::vector<LocalizationEntry> localization_report(const SpectralData& spec, long x_lo, long x_hi) {
  std::vector<LocalizationEntry> out;
  out.reserve(spec.eigenvectors.size());
  for (std::size_t j = 0; j < spec.eigenvectors.size(); ++j) {
    const auto& v = spec.eigenvectors[j];
    const long n = v.size();
    double w = 0.0;
    for (long x = std::max(x_lo, -n / 2); x <= std::min(x_hi, n / 2 - 1); ++x) {
      w += v.at_site(x).norm2();
    }
    out.push_back({j, spec.eigenphases[j], std::clamp(w, 0.0, 1.0), spec.ipr[j]});
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.weight > b.weight;
  });
  return out;
}

void write_state_csv(std::ostream& os, const WalkerState& s) {
  os << "x,re_a,im_a,re_b,im_b,prob\n";
  for (long i = 0; i < s.size(); ++i) {
    const auto& sp = s.at(i);
    os << site_label(i, s.size()) << ',' << format_double(sp.right.real()) << ','
       << format_double(sp.right.imag()) << ',' << format_double(sp.left.real()) << ','
       << format_double(sp.left.imag()) << ',' << format_double(sp.norm2()) << '\n';
  }
}

void write_trajectory_csv(std::ostream& os, const Trajectory& tr) {
  os << "t,interface_prob,mean_x,sigma_x\n";
  for (const auto& o : tr.observables) {
    os << o.t << ',' << format_double(o.interface_prob) << ',' << format_double(o.mean_x) << ','
       << format_double(o.sigma_x) << '\n';
  }
}

void write_spectrum_csv(std::ostream& os, const SpectralData& spec, long x_lo, long x_hi) {
  auto rows = localization_report(spec, x_lo, x_hi);
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.index < b.index; });
  os << "index,eigenphase,window_weight,ipr\n";
  for (const auto& r : rows) {
    os << r.index << ',' << format_double(r.eigenphase) << ',' << format_double(r.weight) << ','
       << format_double(r.ipr) << '\n';
  }
}

}  // namespace qwalk

namespace qwalk {

WalkerState apply_phs(const PhsOperator& omega, const WalkerState& s) {
  WalkerState out(s.size());
  for (long i = 0; i < s.size(); ++i) out.at(i) = omega.apply(site_label(i, s.size()), s.at(i));
  return out;
}

}  // namespace qwalk
