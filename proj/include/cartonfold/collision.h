#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cartonfold/carton_spec.h"
#include "cartonfold/kinematic_tree.h"

namespace cartonfold {

// Static environment: fixture boxes plus the optional table half-space z < 0.
struct ObstacleSet {
  std::vector<Obstacle> boxes;
  bool table_plane = true;

  static ObstacleSet FromSpec(const CartonSpec& spec);
};

class SweepParams {
 public:
  /// Throws ValidationError unless tolerance_angle > 0 and
  /// penetration_tolerance >= 0.
  SweepParams(double tolerance_angle, double penetration_tolerance);
  static SweepParams FromPlanner(const PlannerParams& p) {
    return SweepParams(p.tolerance_angle, p.penetration_tolerance);
  }

  double tolerance_angle() const { return tolerance_angle_; }
  double penetration_tolerance() const { return penetration_tolerance_; }

 private:
  double tolerance_angle_;
  double penetration_tolerance_;
};

/// from, from + step, ... toward `to`, with `to` always appended. At least two
/// samples unless from == to.
std::vector<double> SampleAngles(double from, double to, double step);

enum class ContactKind { kPanel, kObstacle, kTable };

struct SweepContact {
  double angle = 0;      // moving joint angle at the first colliding sample
  int moving_panel = 0;  // panel id
  ContactKind kind = ContactKind::kPanel;
  int other_panel = 0;   // panel id when kind == kPanel
  std::string obstacle;  // name when kind == kObstacle

  std::string Describe() const;
};

struct SweepResult {
  bool collision_free = true;
  int samples = 0;  // samples evaluated (stops at the first contact)
  std::optional<SweepContact> contact;
};

/// Sweeps joint `moving` (panel index) from theta_init to theta_final with all
/// joints in `folded` at theta_final and the rest at theta_init. The moving
/// subtree is tested at every sample against every other panel and every
/// obstacle; all pairs tolerate `penetration_tolerance` of overlap, and the
/// table rejects moving corners below -penetration_tolerance.
/// Throws PreconditionError when `moving` is folded or not foldable.
SweepResult SweepFold(const KinematicTree& tree, PanelSet folded, int moving,
                      const SweepParams& params, const ObstacleSet& obstacles);

/// CC(S_t, u_t): true when the fold is collision free.
bool CollisionCheck(const KinematicTree& tree, PanelSet folded, int moving,
                    const SweepParams& params, const ObstacleSet& obstacles);

enum class GraspSide { kInside, kOutside, kNone };
std::string_view GraspSideName(GraspSide side);

/// Advisory grasp choice at the fold start pose. A gripper-sized box is placed
/// `standoff` off the panel's inner face (the side it folds toward); when that
/// placement hits another panel, an obstacle or the table, the outer face is
/// tried. Does not affect sequence validity.
GraspSide DetermineGraspSide(const KinematicTree& tree, PanelSet folded,
                             int joint, const GripperSpec& gripper,
                             const ObstacleSet& obstacles,
                             double penetration_tolerance);

}  // namespace cartonfold
