#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "cartonfold/carton_spec.h"
#include "cartonfold/geometry.h"

namespace cartonfold {

// A set of panel indices (not ids), at most 64 panels.
class PanelSet {
 public:
  constexpr PanelSet() = default;
  constexpr explicit PanelSet(std::uint64_t bits) : bits_(bits) {}

  constexpr bool Contains(int index) const { return (bits_ >> index) & 1u; }
  constexpr PanelSet With(int index) const {
    return PanelSet(bits_ | (std::uint64_t{1} << index));
  }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool IsSubsetOf(PanelSet other) const {
    return (bits_ & ~other.bits_) == 0;
  }

  friend constexpr bool operator==(PanelSet, PanelSet) = default;

 private:
  std::uint64_t bits_ = 0;
};

// Joint angles in radians, one per panel index; the root entry stays 0.
class JointVector {
 public:
  JointVector() = default;
  explicit JointVector(std::vector<double> theta) : theta_(std::move(theta)) {}

  double operator[](int index) const { return theta_[index]; }
  double& operator[](int index) { return theta_[index]; }
  int size() const { return static_cast<int>(theta_.size()); }
  std::span<const double> values() const { return theta_; }

 private:
  std::vector<double> theta_;
};

struct PanelPose {
  int id = 0;
  RigidTransform pose;  // panel frame in world
  Vec3 center;          // geometric center in world
  OrientedBox solid;
};

/// Validated parent/child structure of a carton. Panels keep the index order
/// of the spec; joint i is the crease between panel i and its parent.
class KinematicTree {
 public:
  /// Validates `spec` first (ValidationError on failure).
  explicit KinematicTree(CartonSpec spec);

  const CartonSpec& spec() const { return spec_; }
  int size() const { return static_cast<int>(spec_.panels.size()); }
  const PanelSpec& panel(int index) const { return spec_.panels[index]; }
  int id(int index) const { return spec_.panels[index].id; }
  /// Throws ValidationError for an unknown id.
  int IndexOf(int id) const;

  int root() const { return root_; }
  int parent(int index) const { return parent_[index]; }
  std::span<const int> children(int index) const { return children_[index]; }
  /// Parents before children.
  std::span<const int> topological_order() const { return topo_; }

  /// True when moving joint `i` moves panel `j` (strict ancestry).
  bool Influences(int i, int j) const { return descendants_[i].Contains(j); }
  /// Binary n x n matrix, C[i][j] = Influences(i, j).
  std::vector<std::vector<int>> ConnectivityMatrix() const;
  /// `index` together with all of its descendants.
  PanelSet Subtree(int index) const { return descendants_[index].With(index); }

  /// Foldable joints, ascending by id.
  std::span<const int> foldable() const { return foldable_; }
  PanelSet foldable_set() const { return foldable_set_; }
  bool IsFoldable(int index) const { return foldable_set_.Contains(index); }

  /// theta_final on `folded`, theta_init elsewhere.
  JointVector ThetaFor(PanelSet folded) const;
  JointVector InitialTheta() const { return ThetaFor(PanelSet()); }

  /// Poses for every panel, indexed like the spec. Throws ValidationError when
  /// an angle leaves its [theta_init, theta_final] interval (1e-9 slack) or
  /// the vector has the wrong length.
  std::vector<PanelPose> ForwardKinematics(const JointVector& theta) const;
  /// Same as ForwardKinematics without the range check; solids only.
  std::vector<OrientedBox> Solids(const JointVector& theta) const;

  /// Panel frame relative to its parent frame at theta = 0.
  const RigidTransform& crease_frame(int index) const {
    return crease_frame_[index];
  }

 private:
  std::vector<RigidTransform> WorldFrames(const JointVector& theta) const;

  CartonSpec spec_;
  int root_ = 0;
  std::vector<int> parent_;
  std::vector<std::vector<int>> children_;
  std::vector<int> topo_;
  std::vector<PanelSet> descendants_;
  std::vector<int> foldable_;
  PanelSet foldable_set_;
  std::vector<RigidTransform> crease_frame_;
};

/// Box occupied by a panel whose frame is `frame`.
OrientedBox PanelSolid(const PanelDims& dims, const RigidTransform& frame);

}  // namespace cartonfold
