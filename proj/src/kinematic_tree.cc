#include "cartonfold/kinematic_tree.h"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "cartonfold/errors.h"

namespace cartonfold {
namespace {

constexpr double kAngleSlack = 1e-9;

// Rotation by `angle` about the local X axis through the origin.
RigidTransform HingeRotation(double angle) {
  return RigidTransform(
      Eigen::AngleAxisd(angle, Vec3::UnitX()).toRotationMatrix(),
      Vec3::Zero());
}

}  // namespace

OrientedBox PanelSolid(const PanelDims& dims, const RigidTransform& frame) {
  const Vec3 center_local(dims.width / 2, dims.height / 2, 0);
  return OrientedBox(
      frame * RigidTransform::FromTranslation(center_local),
      Vec3(dims.width / 2, dims.height / 2, dims.thickness / 2));
}

KinematicTree::KinematicTree(CartonSpec spec) : spec_(std::move(spec)) {
  ValidateCartonSpec(spec_);
  const int n = size();
  parent_.assign(n, -1);
  children_.assign(n, {});
  descendants_.assign(n, PanelSet());
  crease_frame_.assign(n, RigidTransform());

  for (int i = 0; i < n; ++i) {
    const PanelSpec& p = spec_.panels[i];
    if (!p.parent) {
      root_ = i;
      continue;
    }
    parent_[i] = IndexOf(*p.parent);
    children_[parent_[i]].push_back(i);

    const Vec3 x = p.crease_dir;
    const Vec3 z = Vec3::UnitZ();
    Mat3 r;
    r.col(0) = x;
    r.col(1) = z.cross(x);
    r.col(2) = z;
    // Re-orthonormalize away the 1e-9 slack allowed on crease_dir.
    r.col(0).normalize();
    r.col(1).normalize();
    crease_frame_[i] = RigidTransform(r, p.crease_anchor);
  }

  // Breadth-first from the root.
  topo_.push_back(root_);
  for (std::size_t k = 0; k < topo_.size(); ++k) {
    for (int c : children_[topo_[k]]) topo_.push_back(c);
  }
  for (auto it = topo_.rbegin(); it != topo_.rend(); ++it) {
    for (int c : children_[*it]) {
      descendants_[*it] = PanelSet(descendants_[*it].bits() |
                                   descendants_[c].With(c).bits());
    }
  }

  for (int i = 0; i < n; ++i) {
    if (i != root_ && spec_.panels[i].foldable) {
      foldable_.push_back(i);
      foldable_set_ = foldable_set_.With(i);
    }
  }
  std::sort(foldable_.begin(), foldable_.end(),
            [this](int a, int b) { return id(a) < id(b); });
}

int KinematicTree::IndexOf(int panel_id) const {
  for (int i = 0; i < size(); ++i) {
    if (spec_.panels[i].id == panel_id) return i;
  }
  throw ValidationError(fmt::format("unknown panel id {}", panel_id));
}

std::vector<std::vector<int>> KinematicTree::ConnectivityMatrix() const {
  std::vector<std::vector<int>> c(size(), std::vector<int>(size(), 0));
  for (int i = 0; i < size(); ++i) {
    for (int j = 0; j < size(); ++j) c[i][j] = Influences(i, j) ? 1 : 0;
  }
  return c;
}

JointVector KinematicTree::ThetaFor(PanelSet folded) const {
  std::vector<double> theta(size(), 0.0);
  for (int i = 0; i < size(); ++i) {
    if (i == root_) continue;
    const PanelSpec& p = spec_.panels[i];
    theta[i] = folded.Contains(i) ? p.theta_final : p.theta_init;
  }
  return JointVector(std::move(theta));
}

std::vector<RigidTransform> KinematicTree::WorldFrames(
    const JointVector& theta) const {
  if (theta.size() != size()) {
    throw ValidationError(fmt::format(
        "joint vector has {} entries, carton has {} panels", theta.size(),
        size()));
  }
  std::vector<RigidTransform> frames(size());
  for (int i : topo_) {
    frames[i] = i == root_ ? spec_.root_pose
                           : frames[parent_[i]] * crease_frame_[i] *
                                 HingeRotation(theta[i]);
  }
  return frames;
}

std::vector<PanelPose> KinematicTree::ForwardKinematics(
    const JointVector& theta) const {
  for (int i = 0; i < std::min(size(), theta.size()); ++i) {
    const PanelSpec& p = spec_.panels[i];
    const double lo =
        i == root_ ? 0.0 : std::min(p.theta_init, p.theta_final);
    const double hi =
        i == root_ ? 0.0 : std::max(p.theta_init, p.theta_final);
    if (!(theta[i] >= lo - kAngleSlack && theta[i] <= hi + kAngleSlack)) {
      throw ValidationError(fmt::format(
          "joint angle {} rad for panel {} is outside its fold range",
          theta[i], p.id));
    }
  }
  const std::vector<RigidTransform> frames = WorldFrames(theta);
  std::vector<PanelPose> poses;
  poses.reserve(size());
  for (int i = 0; i < size(); ++i) {
    const PanelDims& d = spec_.panels[i].dims;
    poses.push_back(PanelPose{
        spec_.panels[i].id, frames[i],
        frames[i] * Vec3(d.width / 2, d.height / 2, 0), PanelSolid(d, frames[i])});
  }
  return poses;
}

std::vector<OrientedBox> KinematicTree::Solids(const JointVector& theta) const {
  const std::vector<RigidTransform> frames = WorldFrames(theta);
  std::vector<OrientedBox> solids;
  solids.reserve(size());
  for (int i = 0; i < size(); ++i) {
    solids.push_back(PanelSolid(spec_.panels[i].dims, frames[i]));
  }
  return solids;
}

}  // namespace cartonfold
