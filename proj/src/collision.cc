#include "cartonfold/collision.h"

#include <cmath>

#include <fmt/format.h>

#include "cartonfold/errors.h"

namespace cartonfold {
namespace {

double MinZ(const OrientedBox& box) {
  const Vec3 reach = box.pose().rotation().cwiseAbs() * box.half_extents();
  return box.center().z() - reach.z();
}

}  // namespace

ObstacleSet ObstacleSet::FromSpec(const CartonSpec& spec) {
  return ObstacleSet{spec.environment, spec.table_plane};
}

SweepParams::SweepParams(double tolerance_angle, double penetration_tolerance)
    : tolerance_angle_(tolerance_angle),
      penetration_tolerance_(penetration_tolerance) {
  if (!(tolerance_angle > 0) || !std::isfinite(tolerance_angle)) {
    throw ValidationError("tolerance angle must be positive");
  }
  if (!(penetration_tolerance >= 0) || !std::isfinite(penetration_tolerance)) {
    throw ValidationError("penetration tolerance must be >= 0");
  }
}

std::vector<double> SampleAngles(double from, double to, double step) {
  if (!(step > 0)) throw ValidationError("sampling step must be positive");
  std::vector<double> out{from};
  if (from == to) return out;
  const double span = std::abs(to - from);
  const double dir = to > from ? 1.0 : -1.0;
  // Interior samples stop short of the endpoint so it is never duplicated.
  const auto interior = static_cast<long>(std::ceil(span / step - 1e-9)) - 1;
  for (long k = 1; k <= interior; ++k) out.push_back(from + dir * step * k);
  out.push_back(to);
  return out;
}

std::string SweepContact::Describe() const {
  const std::string at = fmt::format("{:.2f} deg", RadToDeg(angle));
  switch (kind) {
    case ContactKind::kPanel:
      return fmt::format("panel {} hits panel {} at {}", moving_panel,
                         other_panel, at);
    case ContactKind::kObstacle:
      return fmt::format("panel {} hits obstacle '{}' at {}", moving_panel,
                         obstacle, at);
    case ContactKind::kTable:
      return fmt::format("panel {} goes below the table at {}", moving_panel, at);
  }
  return "unknown contact";
}

SweepResult SweepFold(const KinematicTree& tree, PanelSet folded, int moving,
                      const SweepParams& params, const ObstacleSet& obstacles) {
  if (moving < 0 || moving >= tree.size() || !tree.IsFoldable(moving)) {
    throw PreconditionError(
        fmt::format("panel index {} is not a foldable joint", moving));
  }
  if (folded.Contains(moving)) {
    throw PreconditionError(
        fmt::format("joint {} is already folded", tree.id(moving)));
  }

  const PanelSet subtree = tree.Subtree(moving);
  const double allowance = -params.penetration_tolerance();
  JointVector theta = tree.ThetaFor(folded);
  const std::vector<OrientedBox> still = tree.Solids(theta);
  const PanelSpec& joint = tree.panel(moving);

  SweepResult result;
  for (double phi : SampleAngles(joint.theta_init, joint.theta_final,
                                 params.tolerance_angle())) {
    ++result.samples;
    theta[moving] = phi;
    const std::vector<OrientedBox> solids = tree.Solids(theta);
    for (int m = 0; m < tree.size(); ++m) {
      if (!subtree.Contains(m)) continue;
      auto contact = [&](ContactKind kind) {
        SweepContact c;
        c.angle = phi;
        c.moving_panel = tree.id(m);
        c.kind = kind;
        return c;
      };
      if (obstacles.table_plane &&
          MinZ(solids[m]) < -params.penetration_tolerance()) {
        result.collision_free = false;
        result.contact = contact(ContactKind::kTable);
        return result;
      }
      for (int s = 0; s < tree.size(); ++s) {
        if (subtree.Contains(s)) continue;
        if (BoxesIntersect(solids[m], still[s], allowance)) {
          result.collision_free = false;
          result.contact = contact(ContactKind::kPanel);
          result.contact->other_panel = tree.id(s);
          return result;
        }
      }
      for (const Obstacle& o : obstacles.boxes) {
        if (BoxesIntersect(solids[m], o.box, allowance)) {
          result.collision_free = false;
          result.contact = contact(ContactKind::kObstacle);
          result.contact->obstacle = o.name;
          return result;
        }
      }
    }
  }
  return result;
}

bool CollisionCheck(const KinematicTree& tree, PanelSet folded, int moving,
                    const SweepParams& params, const ObstacleSet& obstacles) {
  return SweepFold(tree, folded, moving, params, obstacles).collision_free;
}

std::string_view GraspSideName(GraspSide side) {
  switch (side) {
    case GraspSide::kInside:
      return "inside";
    case GraspSide::kOutside:
      return "outside";
    case GraspSide::kNone:
      return "none";
  }
  return "none";
}

GraspSide DetermineGraspSide(const KinematicTree& tree, PanelSet folded,
                             int joint, const GripperSpec& gripper,
                             const ObstacleSet& obstacles,
                             double penetration_tolerance) {
  if (folded.Contains(joint)) {
    throw PreconditionError(
        fmt::format("joint {} is already folded", tree.id(joint)));
  }
  const std::vector<PanelPose> poses = tree.ForwardKinematics(tree.ThetaFor(folded));
  const PanelSpec& spec = tree.panel(joint);
  const PanelPose& panel = poses[joint];
  const Vec3 normal = panel.pose.rotation().col(2);
  const double inner = spec.theta_final >= spec.theta_init ? 1.0 : -1.0;
  const double offset =
      spec.dims.thickness / 2 + gripper.standoff + gripper.dims.z() / 2;

  auto blocked = [&](double side) {
    const OrientedBox tool(
        RigidTransform(panel.pose.rotation(),
                       panel.center + side * offset * normal),
        gripper.dims / 2);
    if (obstacles.table_plane && MinZ(tool) < -penetration_tolerance) {
      return true;
    }
    for (int i = 0; i < tree.size(); ++i) {
      if (i != joint &&
          BoxesIntersect(tool, poses[i].solid, -penetration_tolerance)) {
        return true;
      }
    }
    for (const Obstacle& o : obstacles.boxes) {
      if (BoxesIntersect(tool, o.box, -penetration_tolerance)) return true;
    }
    return false;
  };

  if (!blocked(inner)) return GraspSide::kInside;
  if (!blocked(-inner)) return GraspSide::kOutside;
  return GraspSide::kNone;
}

}  // namespace cartonfold
