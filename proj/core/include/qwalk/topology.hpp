#pragma once

// Bloch-sphere images of the Brillouin zone and the invariants built on them.
//
// For gapped theta the images of f_{theta,+}: k -> n_k fill a set M_T: the sphere
// minus the great circle through the Z-axis and the poles +-n_beta, with the two
// poles put back. M_T retracts onto the equator through the poles, so every map
// has a well-defined winding number, and that number is the same for all theta.
// What separates theta > 0 from theta < 0 is which pole each special momentum
// k_j = alpha + j pi lands on; the relative-homotopy invariant records both.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qwalk/coin.hpp"
#include "qwalk/momentum.hpp"

namespace qwalk {

/// Projections shorter than this are treated as hitting the excluded set.
inline constexpr double kProjectionTol = 1e-9;
/// Bloch vectors within this distance of +-n_beta count as a pole hit.
inline constexpr double kPoleTol = 1e-9;

struct ManifoldFrame {
  Vec3 n_beta;  // (sin beta, cos beta, 0)
  Vec3 e_w;     // Z x n_beta
  double beta = 0.0;
};

ManifoldFrame manifold_frame(double beta) noexcept;

/// Angle of v on the retraction circle, atan2(v . e_w, v . n_beta).
/// P_N = n_beta maps to 0 and P_S = -n_beta to pi.
double retract(const Vec3& v, const ManifoldFrame& f);

/// Total winding of a closed sequence of angles, counting the wrap from the last
/// sample back to the first. Throws GridTooCoarse when a single step exceeds pi/2.
int winding_number(std::span<const double> angles);

/// Winding of a closed curve about an axis, counterclockwise seen from +axis.
/// Throws CurveHitsAxis when a sample projects to (near) zero.
int winding_about(std::span<const Vec3> curve, const Vec3& axis);

enum class Band { Upper = 1, Lower = -1 };

/// Winding of f_{theta,band} on the retraction of M_T. Throws GaplessParameters.
int winding_mt(const CoinParams& p, Band band = Band::Upper, std::size_t grid = kDefaultGrid);

enum class Frame { Identity, V1, V2 };

struct FrameVariant {
  Frame tag = Frame::Identity;
  /// Axis gamma of the theta-independent chiral operator i gamma . sigma, if the frame has one.
  std::optional<Vec3> gamma_axis;
};

FrameVariant frame_variant(Frame tag) noexcept;
std::string_view to_string(Frame tag) noexcept;
std::optional<Frame> parse_frame(std::string_view name) noexcept;

/// V1(theta) = exp(i theta/2 sigma_y); V2(theta) = exp(i/2 (theta - sgn(theta) pi/2) sigma_y).
/// V2 throws UndefinedSign at theta = 0.
Mat2 frame_rotation(Frame tag, double theta);

/// The upper-band image f_{theta,+}(k) over k_grid(grid), conjugated into the frame.
/// Degenerate k are skipped when gapless.
std::vector<Vec3> bz_image(const CoinParams& p, Frame tag, std::size_t grid = kDefaultGrid);

/// Winding of the frame-rotated upper-band image about axis.
int rotated_winding(const CoinParams& p, Frame tag, const Vec3& axis,
                    std::size_t grid = kDefaultGrid);

struct PoleAssignment {
  int at_k0 = 0;  // +1: f(k0) = +n_beta (P_N); -1: P_S
  int at_k1 = 0;

  bool operator==(const PoleAssignment&) const = default;
};

/// Pole hit by the upper band at k0 and k1. Throws GaplessParameters, or
/// PoleMismatch if the Bloch vector there is not +-n_beta.
PoleAssignment pole_assignment(const CoinParams& p);

enum class PhaseLabel { ThetaPositive, ThetaNegative };
std::string_view to_string(PhaseLabel label) noexcept;

struct RelHomotopyInvariant {
  int winding_mt = 0;
  PoleAssignment poles;
  PhaseLabel phase_label = PhaseLabel::ThetaPositive;
};

RelHomotopyInvariant relative_homotopy_invariant(const CoinParams& p,
                                                 std::size_t grid = kDefaultGrid);

/// Homotopic relative to {k0, k1}: same M_T winding and same poles at both points.
/// Throws MixedFamilies when (delta, alpha, beta) differ, GaplessParameters for theta in {0, pi}.
bool rel_homotopic(const CoinParams& p1, const CoinParams& p2, std::size_t grid = kDefaultGrid);

/// Edge states expected at an interface: 0 within a phase, 2 (one per gap) across phases.
int predicted_edge_states(const CoinParams& p1, const CoinParams& p2,
                          std::size_t grid = kDefaultGrid);

/// {"winding_mt", "pole_k0", "pole_k1", "phase_label"} with poles as "N"/"S".
nlohmann::ordered_json to_json(const RelHomotopyInvariant& inv);

/// Columns k, n_x, n_y, n_z, frame.
void write_bz_image_csv(std::ostream& os, const CoinParams& p, Frame tag,
                        std::size_t grid = kDefaultGrid);

}  // namespace qwalk
