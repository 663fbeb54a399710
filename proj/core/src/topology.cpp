#include "qwalk/topology.hpp"

#include <cmath>
#include <ostream>

#include <nlohmann/json.hpp>

#include "qwalk/error.hpp"
#include "qwalk/io.hpp"

namespace qwalk {

namespace {

void require_gapped(const CoinParams& p) {
  if (!p.is_gapped()) {
    throw Error(ErrorKind::GaplessParameters,
                "theta=" + format_double(p.theta()) + " closes both gaps");
  }
}

char pole_name(int s) { return s > 0 ? 'N' : 'S'; }

}  // namespace

ManifoldFrame manifold_frame(double beta) noexcept {
  ManifoldFrame f;
  f.beta = beta;
  f.n_beta = {std::sin(beta), std::cos(beta), 0.0};
  f.e_w = Vec3::unit_z().cross(f.n_beta);
  return f;
}

double retract(const Vec3& v, const ManifoldFrame& f) {
  const double u = v.dot(f.n_beta);
  const double w = v.dot(f.e_w);
  if (std::hypot(u, w) <= kProjectionTol) {
    throw Error(ErrorKind::OnExcludedCircle, "point has no projection onto the pole plane");
  }
  return std::atan2(w, u);
}

int winding_number(std::span<const double> angles) {
  if (angles.empty()) return 0;
  double total = 0.0;
  for (std::size_t i = 0; i < angles.size(); ++i) {
    const double next = angles[(i + 1) % angles.size()];
    const double d = wrap_angle(next - angles[i]);
    if (std::abs(d) > 0.5 * kPi) {
      throw Error(ErrorKind::GridTooCoarse,
                  "angle step " + format_double(d) + " too large to unwrap reliably");
    }
    total += d;
  }
  return static_cast<int>(std::lround(total / kTwoPi));
}

int winding_about(std::span<const Vec3> curve, const Vec3& axis) {
  const Vec3 a = axis.normalized();
  // Any unit e1 orthogonal to a, then e2 = a x e1 so that (e1, e2, a) is right-handed.
  const Vec3 helper = std::abs(a.x) < 0.9 ? Vec3::unit_x() : Vec3::unit_y();
  const Vec3 e1 = (helper - a * helper.dot(a)).normalized();
  const Vec3 e2 = a.cross(e1);
  std::vector<double> angles;
  angles.reserve(curve.size());
  for (const Vec3& v : curve) {
    const double u = v.dot(e1);
    const double w = v.dot(e2);
    if (std::hypot(u, w) <= kProjectionTol) {
      throw Error(ErrorKind::CurveHitsAxis, "curve passes through the winding axis");
    }
    angles.push_back(std::atan2(w, u));
  }
  return winding_number(angles);
}

int winding_mt(const CoinParams& p, Band band, std::size_t grid) {
  require_gapped(p);
  const ManifoldFrame f = manifold_frame(p.beta());
  const double s = static_cast<double>(static_cast<int>(band));
  std::vector<double> angles;
  angles.reserve(grid);
  for (double k : k_grid(grid)) angles.push_back(retract(bloch_vector(p, k) * s, f));
  return winding_number(angles);
}

FrameVariant frame_variant(Frame tag) noexcept {
  switch (tag) {
    case Frame::V1: return {tag, Vec3::unit_x()};
    case Frame::V2: return {tag, Vec3::unit_z()};
    case Frame::Identity: break;
  }
  return {Frame::Identity, std::nullopt};
}

std::string_view to_string(Frame tag) noexcept {
  switch (tag) {
    case Frame::V1: return "V1";
    case Frame::V2: return "V2";
    case Frame::Identity: break;
  }
  return "Identity";
}

std::optional<Frame> parse_frame(std::string_view name) noexcept {
  if (name == "identity" || name == "Identity" || name == "none") return Frame::Identity;
  if (name == "v1" || name == "V1") return Frame::V1;
  if (name == "v2" || name == "V2") return Frame::V2;
  return std::nullopt;
}

Mat2 frame_rotation(Frame tag, double theta) {
  switch (tag) {
    case Frame::Identity:
      return Mat2::identity();
    case Frame::V1:
      return su2_exp(Vec3::unit_y() * (0.5 * theta));
    case Frame::V2: {
      const int s = sgn(theta);
      if (s == 0) throw Error(ErrorKind::UndefinedSign, "V2 frame needs theta != 0");
      return su2_exp(Vec3::unit_y() * (0.5 * (theta - s * 0.5 * kPi)));
    }
  }
  return Mat2::identity();
}

std::vector<Vec3> bz_image(const CoinParams& p, Frame tag, std::size_t grid) {
  const Mat2 v = frame_rotation(tag, p.theta());
  std::vector<Vec3> out;
  out.reserve(grid);
  for (double k : k_grid(grid)) {
    const BlochPoint bp = bloch_point(p, k);
    if (bp.degenerate) continue;
    out.push_back(rotate_bloch(v, bp.n));
  }
  return out;
}

int rotated_winding(const CoinParams& p, Frame tag, const Vec3& axis, std::size_t grid) {
  require_gapped(p);
  const auto curve = bz_image(p, tag, grid);
  return winding_about(curve, axis);
}

PoleAssignment pole_assignment(const CoinParams& p) {
  require_gapped(p);
  const Vec3 pole = manifold_frame(p.beta()).n_beta;
  const auto [k0, k1] = special_points(p.alpha());
  auto classify = [&](double k) {
    const Vec3 n = bloch_vector(p, k);
    if ((n - pole).norm() <= kPoleTol) return +1;
    if ((n + pole).norm() <= kPoleTol) return -1;
    throw Error(ErrorKind::PoleMismatch,
                "Bloch vector at k=" + format_double(k) + " is not at either pole");
  };
  return {classify(k0), classify(k1)};
}

std::string_view to_string(PhaseLabel label) noexcept {
  return label == PhaseLabel::ThetaPositive ? "ThetaPositive" : "ThetaNegative";
}

RelHomotopyInvariant relative_homotopy_invariant(const CoinParams& p, std::size_t grid) {
  RelHomotopyInvariant inv;
  inv.winding_mt = winding_mt(p, Band::Upper, grid);
  inv.poles = pole_assignment(p);
  inv.phase_label = inv.poles.at_k1 > 0 ? PhaseLabel::ThetaPositive : PhaseLabel::ThetaNegative;
  return inv;
}

bool rel_homotopic(const CoinParams& p1, const CoinParams& p2, std::size_t grid) {
  if (!p1.same_family(p2)) {
    throw Error(ErrorKind::MixedFamilies, "maps belong to different (delta, alpha, beta) families");
  }
  const auto a = relative_homotopy_invariant(p1, grid);
  const auto b = relative_homotopy_invariant(p2, grid);
  return a.winding_mt == b.winding_mt && a.poles == b.poles;
}

int predicted_edge_states(const CoinParams& p1, const CoinParams& p2, std::size_t grid) {
  return rel_homotopic(p1, p2, grid) ? 0 : 2;
}

nlohmann::ordered_json to_json(const RelHomotopyInvariant& inv) {
  nlohmann::ordered_json j;
  j["winding_mt"] = inv.winding_mt;
  j["pole_k0"] = std::string(1, pole_name(inv.poles.at_k0));
  j["pole_k1"] = std::string(1, pole_name(inv.poles.at_k1));
  j["phase_label"] = std::string(to_string(inv.phase_label));
  return j;
}

void write_bz_image_csv(std::ostream& os, const CoinParams& p, Frame tag, std::size_t grid) {
  const Mat2 v = frame_rotation(tag, p.theta());
  const std::string name(to_string(tag));
  os << "k,n_x,n_y,n_z,frame\n";
  for (double k : k_grid(grid)) {
    const BlochPoint bp = bloch_point(p, k);
    const Vec3 n = bp.degenerate ? bp.n : rotate_bloch(v, bp.n);
    os << format_double(k) << ',' << format_double(n.x) << ',' << format_double(n.y) << ','
       << format_double(n.z) << ',' << name << '\n';
  }
}

}  // namespace qwalk
