#include "cartonfold/geometry.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cartonfold/errors.h"

namespace cartonfold {
namespace {

constexpr double kOrthonormalTolerance = 1e-9;
constexpr double kUnitTolerance = 1e-9;
// Squared length below which a cross-product axis is treated as degenerate.
constexpr double kDegenerateAxis = 1e-12;

}  // namespace

RigidTransform::RigidTransform(const Mat3& rotation, const Vec3& translation)
    : rotation_(rotation), translation_(translation) {
  const double orthogonality =
      (rotation.transpose() * rotation - Mat3::Identity()).cwiseAbs().maxCoeff();
  if (!(orthogonality <= kOrthonormalTolerance) ||
      std::abs(rotation.determinant() - 1.0) > kOrthonormalTolerance) {
    throw ValidationError("rotation matrix is not a proper orthonormal matrix");
  }
}

RigidTransform RigidTransform::FromTranslation(const Vec3& p) {
  return RigidTransform(Unchecked{}, Mat3::Identity(), p);
}

RigidTransform RigidTransform::FromRpy(const Vec3& rpy, const Vec3& p) {
  const Mat3 r = (Eigen::AngleAxisd(rpy.z(), Vec3::UnitZ()) *
                  Eigen::AngleAxisd(rpy.y(), Vec3::UnitY()) *
                  Eigen::AngleAxisd(rpy.x(), Vec3::UnitX()))
                     .toRotationMatrix();
  return RigidTransform(Unchecked{}, r, p);
}

RigidTransform RigidTransform::operator*(const RigidTransform& other) const {
  return RigidTransform(Unchecked{}, rotation_ * other.rotation_,
                        rotation_ * other.translation_ + translation_);
}

RigidTransform RigidTransform::Inverse() const {
  const Mat3 rt = rotation_.transpose();
  return RigidTransform(Unchecked{}, rt, -(rt * translation_));
}

bool RigidTransform::IsNearlyEqualTo(const RigidTransform& other,
                                     double tolerance) const {
  return (rotation_ - other.rotation_).cwiseAbs().maxCoeff() <= tolerance &&
         (translation_ - other.translation_).cwiseAbs().maxCoeff() <= tolerance;
}

RigidTransform RotateAboutAxis(const Vec3& point_on_axis, const Vec3& axis_dir,
                               double angle) {
  if (!(std::abs(axis_dir.norm() - 1.0) <= kUnitTolerance)) {
    throw ValidationError("rotation axis must be a unit vector");
  }
  const Mat3 r = Eigen::AngleAxisd(angle, axis_dir).toRotationMatrix();
  return RigidTransform(r, point_on_axis - r * point_on_axis);
}

OrientedBox::OrientedBox(const RigidTransform& pose, const Vec3& half_extents)
    : pose_(pose), half_extents_(half_extents) {
  if (!(half_extents.minCoeff() > 0.0)) {
    throw ValidationError("box half extents must be strictly positive");
  }
}

std::array<Vec3, 8> OrientedBox::Corners() const {
  std::array<Vec3, 8> corners;
  for (int i = 0; i < 8; ++i) {
    const Vec3 local((i & 1) ? half_extents_.x() : -half_extents_.x(),
                     (i & 2) ? half_extents_.y() : -half_extents_.y(),
                     (i & 4) ? half_extents_.z() : -half_extents_.z());
    corners[i] = pose_ * local;
  }
  return corners;
}

bool OrientedBox::Contains(const Vec3& point, double slack) const {
  const Vec3 local =
      pose_.rotation().transpose() * (point - pose_.translation());
  return (local.cwiseAbs() - half_extents_).maxCoeff() <= slack;
}

double Aabb::Volume() const {
  const Vec3 e = Extents();
  return e.x() * e.y() * e.z();
}

bool BoxesIntersect(const OrientedBox& a, const OrientedBox& b,
                    double clearance) {
  const Vec3 ha = (a.half_extents().array() + clearance / 2).max(0.0);
  const Vec3 hb = (b.half_extents().array() + clearance / 2).max(0.0);
  const Mat3& ra = a.pose().rotation();
  const Mat3& rb = b.pose().rotation();
  const Vec3 offset = b.center() - a.center();

  // Projection radius of a box with axes `r` and half sizes `h` onto `axis`.
  auto radius = [](const Mat3& r, const Vec3& h, const Vec3& axis) {
    return h.x() * std::abs(r.col(0).dot(axis)) +
           h.y() * std::abs(r.col(1).dot(axis)) +
           h.z() * std::abs(r.col(2).dot(axis));
  };
  auto separates = [&](const Vec3& axis) {
    return std::abs(offset.dot(axis)) >
           radius(ra, ha, axis) + radius(rb, hb, axis);
  };

  for (int i = 0; i < 3; ++i) {
    if (separates(ra.col(i)) || separates(rb.col(i))) return false;
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const Vec3 axis = ra.col(i).cross(rb.col(j));
      if (axis.squaredNorm() < kDegenerateAxis) continue;
      if (separates(axis.normalized())) return false;
    }
  }
  return true;
}

Aabb WorldAabb(std::span<const OrientedBox> boxes) {
  if (boxes.empty()) {
    throw ValidationError("cannot bound an empty set of boxes");
  }
  constexpr double inf = std::numeric_limits<double>::infinity();
  Aabb out{Vec3::Constant(inf), Vec3::Constant(-inf)};
  for (const OrientedBox& box : boxes) {
    // Half widths of an oriented box along the world axes.
    const Vec3 reach =
        box.pose().rotation().cwiseAbs() * box.half_extents();
    out.min = out.min.cwiseMin(box.center() - reach);
    out.max = out.max.cwiseMax(box.center() + reach);
  }
  return out;
}

}  // namespace cartonfold
