#include "qwalk/edge.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <nlohmann/json.hpp>

#include "qwalk/error.hpp"
#include "qwalk/io.hpp"

namespace qwalk {

namespace {

constexpr double kTruncationTol = 1e-12;
constexpr long kMinEdgeRing = 64;

bool is_eta(double eta) {
  return std::abs(wrap_angle(eta)) <= kOperatorTol || std::abs(wrap_angle(eta - kPi)) <= kOperatorTol;
}

// 1 / A for theta < 0, finite down to theta = -pi/2.
cplx inverse_decay_negative(double alpha, double theta) {
  return std::polar(std::cos(theta) / (1.0 - std::sin(theta)), -alpha);
}

cplx ipow(cplx base, long e) {
  cplx r = 1.0;
  for (long i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

void InterfaceSpec::validate() const {
  const double t1 = wrap_angle(theta1);
  const double t2 = wrap_angle(theta2);
  if (!(t1 < 0.0 && t1 > -kPi)) {
    throw Error(ErrorKind::InvalidArgument, "theta1 must lie in (-pi, 0), got " + format_double(theta1));
  }
  if (!(t2 > 0.0 && t2 < kPi)) {
    throw Error(ErrorKind::InvalidArgument, "theta2 must lie in (0, pi), got " + format_double(theta2));
  }
  if (n < 4 || n % 2 != 0) {
    throw Error(ErrorKind::OddRing, "ring size must be even and >= 4, got " + std::to_string(n));
  }
}

InterfaceSpec default_interface_spec(long n) {
  InterfaceSpec s;
  s.delta = 0.0;
  s.alpha = 0.0;
  s.beta = kPi / 2;
  s.theta1 = -kPi / 4;
  s.theta2 = kPi / 4;
  s.n = n;
  return s;
}

cplx decay_constant(double alpha, double theta) {
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  const double mag = theta >= 0.0 ? c / (1.0 + s) : (1.0 - s) / c;
  return std::polar(mag, alpha);
}

double norm_constant(double theta1, double theta2) noexcept {
  return 1.0 / std::sin(theta2) - 1.0 / std::sin(theta1);
}

long required_ring_size(double theta1, double theta2) {
  const double r2 = std::abs(decay_constant(0.0, theta2));
  const double r1inv = std::abs(inverse_decay_negative(0.0, theta1));
  const double r = std::max(r2, r1inv);
  long n = kMinEdgeRing;
  if (r > 0.0) {
    const double need = std::log(kTruncationTol) / std::log(r);
    while (static_cast<double>(n) <= need) n += 2;
  }
  return n;
}

WalkerState edge_amplitudes(const InterfaceSpec& spec, double eta) {
  spec.validate();
  if (!is_eta(eta)) {
    throw Error(ErrorKind::InvalidArgument, "eta must be 0 or pi, got " + format_double(eta));
  }
  const long n = spec.n;
  const cplx a2 = decay_constant(spec.alpha, spec.theta2);
  const cplx a1_inv = inverse_decay_negative(spec.alpha, spec.theta1);
  const cplx b_phase = -std::polar(1.0, -(spec.alpha + spec.beta));
  // A_j^x for the side that owns site x.
  auto power = [&](long x, bool right_side) {
    return right_side ? ipow(a2, x) : ipow(a1_inv, -x);
  };
  WalkerState s(n);
  for (long i = 0; i < n; ++i) {
    const long x = site_label(i, n);
    const bool right = x >= 0;
    const cplx carrier = std::polar(1.0, eta * static_cast<double>(x));
    // b_x uses A_j^{x+1} with j fixed by x, so b_{-1} = -e^{-i(alpha+beta)} A_1^0.
    const cplx b_pow = right ? ipow(a2, x + 1) : ipow(a1_inv, -(x + 1));
    s.at(i) = {carrier * power(x, right), carrier * b_phase * b_pow};
  }
  return s;
}

EdgeState analytic_edge_state(const InterfaceSpec& spec, double eta) {
  spec.validate();
  const double r2 = std::abs(decay_constant(spec.alpha, spec.theta2));
  const double r1inv = std::abs(inverse_decay_negative(spec.alpha, spec.theta1));
  const auto n = static_cast<double>(spec.n);
  if (std::pow(r2, n) >= kTruncationTol || std::pow(r1inv, n) >= kTruncationTol) {
    throw Error(ErrorKind::RingTooSmall,
                "N=" + std::to_string(spec.n) + " truncates the edge state; need N >= " +
                    std::to_string(required_ring_size(spec.theta1, spec.theta2)));
  }
  EdgeState e;
  e.eta = is_eta(eta) && std::abs(wrap_angle(eta)) > kOperatorTol ? kPi : 0.0;
  e.spec = spec;
  e.a1 = decay_constant(spec.alpha, spec.theta1);
  e.a2 = decay_constant(spec.alpha, spec.theta2);
  e.norm_constant = norm_constant(spec.theta1, spec.theta2);
  e.state = edge_amplitudes(spec, eta);
  e.ring_norm2 = e.state.norm() * e.state.norm();
  e.state.normalize();
  return e;
}

WalkOperator interface_walk(const InterfaceSpec& spec) {
  spec.validate();
  return build_walk(spec.params(0.0),
                    ThetaProfile::sharp_interface(spec.theta1, spec.theta2, spec.n));
}

EigenResidual eigen_residual(const WalkOperator& u, const EdgeState& e) {
  const InterfaceSpec& s = e.spec;
  bool match = u.size() == s.n && u.post_coins().empty() &&
               u.params().same_family(s.params(0.0));
  if (match) {
    const auto expected = ThetaProfile::sharp_interface(s.theta1, s.theta2, s.n);
    for (long i = 0; i < s.n && match; ++i) {
      match = std::abs(wrap_angle(expected.theta[static_cast<std::size_t>(i)] -
                                  u.profile().theta[static_cast<std::size_t>(i)])) <= kOperatorTol;
    }
  }
  if (!match) throw Error(ErrorKind::SpecMismatch, "walk operator was not built from this interface");

  const WalkerState image = step(u, e.state);
  const cplx lambda = e.state.inner(image);
  EigenResidual r;
  r.quasienergy = wrap_angle(-std::arg(lambda));
  r.residual = (image - std::polar(1.0, -r.quasienergy) * e.state).norm();
  return r;
}

OverlapDecomposition overlap_decomposition(const WalkerState& s, std::span<const EdgeState> edges) {
  OverlapDecomposition out;
  WalkerState rest = s;
  for (const auto& e : edges) {
    if (e.state.size() != s.size()) {
      throw Error(ErrorKind::DimensionMismatch, "edge state lives on a different ring");
    }
    const cplx c = e.state.inner(s);
    out.projections.push_back(c);
    rest -= c * e.state;
  }
  out.remainder_norm = rest.norm();
  return out;
}

std::string_view to_string(OverlapCase c) noexcept {
  switch (c) {
    case OverlapCase::OrthogonalToBoth: return "OrthogonalToBoth";
    case OverlapCase::OverlapOne: return "OverlapOne";
    case OverlapCase::OverlapBoth: return "OverlapBoth";
  }
  return "?";
}

std::optional<OverlapCase> parse_overlap_case(std::string_view name) noexcept {
  if (name == "orthogonal" || name == "OrthogonalToBoth") return OverlapCase::OrthogonalToBoth;
  if (name == "one" || name == "OverlapOne") return OverlapCase::OverlapOne;
  if (name == "both" || name == "OverlapBoth") return OverlapCase::OverlapBoth;
  return std::nullopt;
}

long dynamics_ring_size(long steps, long window) {
  long n = 2 * steps + window;
  n = std::max<long>(n, 4);
  if (n % 2 != 0) ++n;
  return n;
}

WalkerState overlap_initial_state(OverlapCase c, const EdgeState& edge0, const EdgeState& edge_pi) {
  const long n = edge0.state.size();
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  if (c == OverlapCase::OverlapBoth) {
    WalkerState s = edge0.state + edge_pi.state;
    s.normalize();
    return s;
  }
  WalkerState chi = inv_sqrt2 * WalkerState::localized(n, -1, 0);
  chi += cplx(0.0, inv_sqrt2) * WalkerState::localized(n, 0, 1);
  // Two passes of Gram-Schmidt keep the residual overlap at rounding level.
  for (int pass = 0; pass < 2; ++pass) {
    for (const EdgeState* e : {&edge0, &edge_pi}) chi -= e->state.inner(chi) * e->state;
  }
  chi.normalize();
  if (c == OverlapCase::OrthogonalToBoth) return chi;
  WalkerState s = edge0.state + chi;
  s.normalize();
  return s;
}

DynamicsRecord interface_dynamics(const InterfaceSpec& spec, OverlapCase c, long steps, long window) {
  spec.validate();
  if (steps < 1) throw Error(ErrorKind::InvalidArgument, "interface dynamics need at least one step");
  const long need = dynamics_ring_size(steps, window);
  if (spec.n < need) {
    throw Error(ErrorKind::RingTooSmall, "dynamics over " + std::to_string(steps) +
                                             " steps need N >= " + std::to_string(need));
  }
  const EdgeState e0 = analytic_edge_state(spec, 0.0);
  const EdgeState epi = analytic_edge_state(spec, kPi);
  const WalkOperator u = interface_walk(spec);

  DynamicsRecord r;
  r.which = c;
  r.spec = spec;
  r.steps = steps;
  r.window = window;
  const WalkerState init = overlap_initial_state(c, e0, epi);
  const std::vector<EdgeState> edges{e0, epi};
  const auto dec = overlap_decomposition(init, edges);
  r.projections = dec.projections;
  for (const cplx& pr : r.projections) r.predicted += std::norm(pr);

  r.trajectory.window = window;
  r.trajectory.snapshots.push_back({0, init});
  std::vector<double> p_origin;
  p_origin.reserve(static_cast<std::size_t>(steps + 1));
  WalkerState s = init;
  for (long t = 0;; ++t) {
    r.trajectory.observables.push_back(observe(s, t, window));
    p_origin.push_back(s.at_site(0).norm2());
    if (t == steps) break;
    s = step(u, s);
  }
  r.trajectory.snapshots.push_back({steps, s});
  r.trajectory.final_state = s;

  const long start = steps - steps / 4;
  double sum = 0.0;
  double alt = 0.0;
  for (long t = start; t <= steps; ++t) {
    sum += r.trajectory.observables[static_cast<std::size_t>(t)].interface_prob;
    alt += (t % 2 == 0 ? 1.0 : -1.0) * p_origin[static_cast<std::size_t>(t)];
  }
  const auto count = static_cast<double>(steps - start + 1);
  r.plateau = sum / count;
  r.period2_amplitude = std::abs(alt) / count;
  r.oscillation_detected = r.period2_amplitude > kPeriod2Threshold;
  r.final_interface_prob = r.trajectory.observables.back().interface_prob;

  switch (c) {
    case OverlapCase::OrthogonalToBoth:
      r.passed = r.final_interface_prob < kDynamicsTol;
      break;
    case OverlapCase::OverlapOne:
      r.passed = std::abs(r.plateau - r.predicted) < kDynamicsTol && !r.oscillation_detected;
      break;
    case OverlapCase::OverlapBoth:
      r.passed = std::abs(r.plateau - r.predicted) < kDynamicsTol && r.oscillation_detected;
      break;
  }
  return r;
}

nlohmann::ordered_json to_json(const InterfaceSpec& spec) {
  nlohmann::ordered_json j;
  j["delta"] = spec.delta;
  j["alpha"] = spec.alpha;
  j["beta"] = spec.beta;
  j["theta1"] = spec.theta1;
  j["theta2"] = spec.theta2;
  j["ring_size"] = spec.n;
  return j;
}

nlohmann::ordered_json to_json(const DynamicsRecord& r) {
  nlohmann::ordered_json j;
  j["case"] = std::string(to_string(r.which));
  j["spec"] = to_json(r.spec);
  j["steps"] = r.steps;
  j["window"] = r.window;
  auto proj = nlohmann::ordered_json::array();
  const char* names[] = {"eta_0", "eta_pi"};
  for (std::size_t i = 0; i < r.projections.size(); ++i) {
    nlohmann::ordered_json p;
    p["edge"] = i < 2 ? names[i] : "edge";
    p["re"] = r.projections[i].real();
    p["im"] = r.projections[i].imag();
    p["weight"] = std::norm(r.projections[i]);
    proj.push_back(std::move(p));
  }
  j["edge_projections"] = std::move(proj);
  j["predicted"] = r.predicted;
  j["plateau"] = r.plateau;
  j["final_interface_prob"] = r.final_interface_prob;
  j["period2_amplitude"] = r.period2_amplitude;
  j["oscillation_detected"] = r.oscillation_detected;
  j["tolerance"] = kDynamicsTol;
  j["period2_threshold"] = kPeriod2Threshold;
  j["passed"] = r.passed;
  return j;
}

}  // namespace qwalk
