#pragma once

#include <array>
#include <span>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace cartonfold {

// Lengths are millimeters and angles are radians throughout the library.
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// A proper rigid motion x -> R x + p.
class RigidTransform {
 public:
  RigidTransform() : rotation_(Mat3::Identity()), translation_(Vec3::Zero()) {}

  /// Throws ValidationError unless `rotation` is orthonormal with det +1
  /// (tolerance 1e-9).
  RigidTransform(const Mat3& rotation, const Vec3& translation);

  static RigidTransform Identity() { return {}; }
  static RigidTransform FromTranslation(const Vec3& p);
  /// Intrinsic roll-pitch-yaw (about x, then y, then z of the fixed frame).
  static RigidTransform FromRpy(const Vec3& rpy, const Vec3& p);

  const Mat3& rotation() const { return rotation_; }
  const Vec3& translation() const { return translation_; }

  Vec3 operator*(const Vec3& point) const {
    return rotation_ * point + translation_;
  }
  RigidTransform operator*(const RigidTransform& other) const;
  RigidTransform Inverse() const;

  bool IsNearlyEqualTo(const RigidTransform& other, double tolerance) const;

 private:
  struct Unchecked {};
  RigidTransform(Unchecked, const Mat3& rotation, const Vec3& translation)
      : rotation_(rotation), translation_(translation) {}

  Mat3 rotation_;
  Vec3 translation_;
};

/// Rotation by `angle` about the line through `point_on_axis` along
/// `axis_dir` (right-hand rule). Points on the line are fixed.
/// Throws ValidationError when |axis_dir| differs from 1 by more than 1e-9.
RigidTransform RotateAboutAxis(const Vec3& point_on_axis, const Vec3& axis_dir,
                               double angle);

class OrientedBox {
 public:
  /// Throws ValidationError unless every half extent is strictly positive.
  OrientedBox(const RigidTransform& pose, const Vec3& half_extents);

  const RigidTransform& pose() const { return pose_; }
  const Vec3& half_extents() const { return half_extents_; }
  Vec3 center() const { return pose_.translation(); }

  std::array<Vec3, 8> Corners() const;
  /// True when `point` lies inside or on the boundary of the box.
  bool Contains(const Vec3& point, double slack = 0.0) const;

 private:
  RigidTransform pose_;
  Vec3 half_extents_;
};

struct Aabb {
  Vec3 min;
  Vec3 max;

  Vec3 Extents() const { return max - min; }
  double Volume() const;
  double MaxDimension() const { return Extents().maxCoeff(); }
};

/// Separating-axis test over the 15 candidate axes. Each box is inflated by
/// `clearance / 2` along its own axes before testing, so a positive clearance
/// demands a gap and a negative one tolerates that much interpenetration.
/// Touching boxes count as intersecting. Cross-product axes that vanish for
/// (near) parallel edges are skipped.
bool BoxesIntersect(const OrientedBox& a, const OrientedBox& b,
                    double clearance);

/// Tightest world-axis-aligned box around every corner of every box.
/// Throws ValidationError for an empty list.
Aabb WorldAabb(std::span<const OrientedBox> boxes);

}  // namespace cartonfold
