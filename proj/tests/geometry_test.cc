#include "cartonfold/geometry.h"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "cartonfold/errors.h"
#include "test_util.h"

namespace cartonfold {
namespace {

constexpr double kPi = std::numbers::pi;

OrientedBox Cube(const Vec3& center, double half = 1.0) {
  return OrientedBox(RigidTransform::FromTranslation(center),
                     Vec3::Constant(half));
}

void ExpectVecNear(const Vec3& a, const Vec3& b, double tol) {
  EXPECT_NEAR((a - b).norm(), 0.0, tol) << a.transpose() << " vs "
                                        << b.transpose();
}

TEST(RotateAboutAxisTest, ZeroAngleIsIdentity) {
  const RigidTransform t = RotateAboutAxis(Vec3::Zero(), Vec3::UnitX(), 0.0);
  EXPECT_TRUE(t.IsNearlyEqualTo(RigidTransform::Identity(), 1e-15));
}

TEST(RotateAboutAxisTest, QuarterTurnAboutZ) {
  const RigidTransform t =
      RotateAboutAxis(Vec3::Zero(), Vec3::UnitZ(), kPi / 2);
  ExpectVecNear(t * Vec3(1, 0, 0), Vec3(0, 1, 0), 1e-12);
}

TEST(RotateAboutAxisTest, HalfTurnAboutOffsetAxis) {
  const Vec3 p(0, 5, 0);
  const RigidTransform half = RotateAboutAxis(p, Vec3::UnitX(), kPi);
  ExpectVecNear(half * Vec3(0, 10, 0), Vec3::Zero(), 1e-12);
  // Two quarter turns compose to the same map.
  const RigidTransform quarter = RotateAboutAxis(p, Vec3::UnitX(), kPi / 2);
  EXPECT_TRUE((quarter * quarter).IsNearlyEqualTo(half, 1e-12));
}

TEST(RotateAboutAxisTest, FixesPointsOnAxisAndFollowsRightHandRule) {
  const Vec3 p(1, -2, 3);
  const Vec3 axis = Vec3(1, 2, 2).normalized();
  const RigidTransform t = RotateAboutAxis(p, axis, 0.7);
  for (double s : {-3.0, 0.0, 2.5}) ExpectVecNear(t * (p + s * axis), p + s * axis, 1e-12);
  const Eigen::AngleAxisd aa(t.rotation());
  EXPECT_NEAR(aa.angle(), 0.7, 1e-12);
  ExpectVecNear(aa.axis(), axis, 1e-12);
}

TEST(RotateAboutAxisTest, RejectsNonUnitAxis) {
  EXPECT_THROW(RotateAboutAxis(Vec3::Zero(), Vec3(1, 1, 0), 0.3),
               ValidationError);
}

TEST(RigidTransformTest, RejectsNonOrthonormalRotation) {
  Mat3 r = Mat3::Identity();
  r(0, 0) = 1.01;
  EXPECT_THROW(RigidTransform(r, Vec3::Zero()), ValidationError);
  EXPECT_THROW(RigidTransform(-Mat3::Identity(), Vec3::Zero()),
               ValidationError);
}

TEST(RigidTransformTest, CompositionIsAssociativeAndHasIdentity) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-3, 3);
  auto random = [&] {
    return RigidTransform::FromRpy(Vec3(u(rng), u(rng), u(rng)),
                                   Vec3(u(rng), u(rng), u(rng)) * 100);
  };
  for (int i = 0; i < 200; ++i) {
    const RigidTransform a = random(), b = random(), c = random();
    EXPECT_TRUE(((a * b) * c).IsNearlyEqualTo(a * (b * c), 1e-9));
    EXPECT_TRUE((RigidTransform::Identity() * a).IsNearlyEqualTo(a, 1e-12));
    EXPECT_TRUE((a * a.Inverse()).IsNearlyEqualTo(RigidTransform(), 1e-9));
  }
}

TEST(OrientedBoxTest, RejectsNonPositiveExtents) {
  EXPECT_THROW(OrientedBox(RigidTransform(), Vec3(1, 0, 1)), ValidationError);
}

TEST(BoxesIntersectTest, Examples) {
  EXPECT_FALSE(BoxesIntersect(Cube(Vec3::Zero()), Cube(Vec3(3, 0, 0)), 0));
  EXPECT_TRUE(BoxesIntersect(Cube(Vec3::Zero()), Cube(Vec3::Zero()), 0));
  EXPECT_TRUE(BoxesIntersect(Cube(Vec3::Zero()), Cube(Vec3(1.9, 0, 0)), 0));
  EXPECT_FALSE(BoxesIntersect(Cube(Vec3::Zero()), Cube(Vec3(2.05, 0, 0)), 0));
  EXPECT_TRUE(BoxesIntersect(Cube(Vec3::Zero()), Cube(Vec3(2.05, 0, 0)), 0.2));
}

TEST(BoxesIntersectTest, TouchingCountsAndAllowanceForgivesContact) {
  const OrientedBox a = Cube(Vec3::Zero());
  const OrientedBox b = Cube(Vec3(2, 0, 0));
  EXPECT_TRUE(BoxesIntersect(a, b, 0));
  EXPECT_FALSE(BoxesIntersect(a, b, -0.1));
  EXPECT_FALSE(BoxesIntersect(a, Cube(Vec3(1.95, 0, 0)), -0.1));
  EXPECT_TRUE(BoxesIntersect(a, Cube(Vec3(1.8, 0, 0)), -0.1));
}

TEST(BoxesIntersectTest, EdgeEdgeSeparationNeedsCrossAxes) {
  // Two bars crossing at right angles, both rotated 45 degrees so that only
  // an edge-edge cross product axis separates them.
  const OrientedBox a(RigidTransform::FromRpy(Vec3(kPi / 4, 0, 0), Vec3::Zero()),
                      Vec3(5, 1, 1));
  const double gap = std::sqrt(2.0) * 2 + 0.05;
  const OrientedBox b(
      RigidTransform::FromRpy(Vec3(0, kPi / 4, 0), Vec3(0, 0, gap)),
      Vec3(1, 5, 1));
  EXPECT_FALSE(BoxesIntersect(a, b, 0));
  const OrientedBox c(
      RigidTransform::FromRpy(Vec3(0, kPi / 4, 0), Vec3(0, 0, gap - 0.1)),
      Vec3(1, 5, 1));
  EXPECT_TRUE(BoxesIntersect(a, c, 0));
}

// True when inflating or deflating by `band` flips the SAT verdict.
bool NearTouching(const OrientedBox& a, const OrientedBox& b, double band) {
  return BoxesIntersect(a, b, band) != BoxesIntersect(a, b, -band);
}

TEST(BoxesIntersectTest, MatchesSamplingOracleOnRandomPairs) {
  std::mt19937 rng(20240611);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  std::uniform_real_distribution<double> pos(-2.5, 2.5);
  std::uniform_real_distribution<double> ext(0.2, 1.5);
  constexpr int kSamples = 16;
  int agree = 0, banded = 0, hits = 0;
  for (int trial = 0; trial < 1500; ++trial) {
    const OrientedBox a(
        RigidTransform::FromRpy(Vec3(angle(rng), angle(rng), angle(rng)),
                                Vec3::Zero()),
        Vec3(ext(rng), ext(rng), ext(rng)));
    const OrientedBox b(
        RigidTransform::FromRpy(Vec3(angle(rng), angle(rng), angle(rng)),
                                Vec3(pos(rng), pos(rng), pos(rng))),
        Vec3(ext(rng), ext(rng), ext(rng)));
    const bool sat = BoxesIntersect(a, b, 0);
    const bool oracle = test::SampledOverlap(a, b, kSamples);
    hits += sat ? 1 : 0;
    if (sat == oracle) {
      ++agree;
      continue;
    }
    // A lattice of spacing 2h/n can miss overlaps thinner than that spacing.
    const double band = 2 * 1.5 / kSamples * std::sqrt(3.0);
    EXPECT_TRUE(sat && NearTouching(a, b, band))
        << "trial " << trial << " sat=" << sat << " oracle=" << oracle;
    ++banded;
  }
  EXPECT_GT(hits, 300);
  EXPECT_GT(1500 - hits, 300);
  EXPECT_GE(agree, 1400) << banded << " disagreements in the sampling band";
}

TEST(BoxesIntersectTest, IsSymmetric) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int i = 0; i < 2000; ++i) {
    const OrientedBox a(RigidTransform::FromRpy(Vec3(u(rng), u(rng), u(rng)),
                                                Vec3(u(rng), u(rng), u(rng))),
                        Vec3(0.5, 1.0, 0.2));
    const OrientedBox b(RigidTransform::FromRpy(Vec3(u(rng), u(rng), u(rng)),
                                                Vec3(u(rng), u(rng), u(rng))),
                        Vec3(1.2, 0.3, 0.7));
    for (double c : {-0.1, 0.0, 0.3}) {
      EXPECT_EQ(BoxesIntersect(a, b, c), BoxesIntersect(b, a, c));
    }
  }
}

TEST(WorldAabbTest, Examples) {
  const std::vector<OrientedBox> one = {Cube(Vec3::Zero())};
  const Aabb box = WorldAabb(one);
  ExpectVecNear(box.min, Vec3(-1, -1, -1), 0);
  ExpectVecNear(box.max, Vec3(1, 1, 1), 0);

  const std::vector<OrientedBox> turned = {OrientedBox(
      RigidTransform::FromRpy(Vec3(0, 0, kPi / 4), Vec3::Zero()),
      Vec3(0.5, 0.5, 0.01))};
  const Aabb t = WorldAabb(turned);
  EXPECT_NEAR(t.Extents().x(), std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(t.Extents().y(), std::sqrt(2.0), 1e-12);

  const std::vector<OrientedBox> two = {Cube(Vec3::Zero()),
                                        Cube(Vec3(5, -4, 1))};
  const Aabb hull = WorldAabb(two);
  ExpectVecNear(hull.min, Vec3(-1, -5, -1), 0);
  ExpectVecNear(hull.max, Vec3(6, 1, 2), 0);
  EXPECT_DOUBLE_EQ(hull.Volume(), 7 * 6 * 3);
  EXPECT_DOUBLE_EQ(hull.MaxDimension(), 7);
}

TEST(WorldAabbTest, RejectsEmptyInput) {
  EXPECT_THROW(WorldAabb({}), ValidationError);
}

TEST(WorldAabbTest, ContainsEveryCornerAndIsMonotone) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-3, 3);
  std::vector<OrientedBox> boxes;
  Vec3 prev = Vec3::Zero();
  for (int i = 0; i < 50; ++i) {
    boxes.emplace_back(
        RigidTransform::FromRpy(Vec3(u(rng), u(rng), u(rng)),
                                Vec3(u(rng), u(rng), u(rng)) * 10),
        Vec3(1 + std::abs(u(rng)), 1, 0.1));
    const Aabb b = WorldAabb(boxes);
    for (const OrientedBox& box : boxes) {
      for (const Vec3& c : box.Corners()) {
        EXPECT_TRUE((c.array() >= b.min.array() - 1e-9).all());
        EXPECT_TRUE((c.array() <= b.max.array() + 1e-9).all());
      }
    }
    EXPECT_TRUE((b.Extents().array() >= prev.array()).all());
    prev = b.Extents();
  }
}

}  // namespace
}  // namespace cartonfold
