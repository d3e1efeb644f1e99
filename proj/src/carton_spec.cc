#include "cartonfold/carton_spec.h"

#include <cmath>
#include <map>
#include <set>
#include <string>

#include <fmt/format.h>

#include "cartonfold/errors.h"

namespace cartonfold {
namespace {

constexpr double kUnitTolerance = 1e-9;
constexpr double kAngleTolerance = 1e-9;

}  // namespace

void PlannerParams::Validate() const {
  if (!(tolerance_angle > 0.0) || !std::isfinite(tolerance_angle)) {
    throw ValidationError("planner.tolerance_angle must be positive");
  }
  if (!(penetration_tolerance >= 0.0) ||
      !std::isfinite(penetration_tolerance)) {
    throw ValidationError("planner.penetration_tolerance must be >= 0");
  }
  if (!(support_tolerance >= 0.0) || !std::isfinite(support_tolerance)) {
    throw ValidationError("planner.support_tolerance must be >= 0");
  }
  if (subset_cap < 0 || subset_cap > 30) {
    throw ValidationError("planner.subset_cap must lie in [0, 30]");
  }
}

void ValidateCartonSpec(const CartonSpec& spec) {
  if (spec.panels.empty()) {
    throw ValidationError("carton has no panels");
  }
  if (spec.panels.size() > 64) {
    throw ValidationError("at most 64 panels are supported");
  }

  std::map<int, const PanelSpec*> by_id;
  for (const PanelSpec& p : spec.panels) {
    if (p.id < 1) {
      throw ValidationError(fmt::format("panel id {} must be >= 1", p.id));
    }
    if (!by_id.emplace(p.id, &p).second) {
      throw ValidationError(fmt::format("duplicate panel id {}", p.id));
    }
  }

  for (const PanelSpec& p : spec.panels) {
    const PanelDims& d = p.dims;
    if (!(d.height > 0) || !(d.width > 0) || !(d.thickness > 0) ||
        !std::isfinite(d.height + d.width + d.thickness)) {
      throw ValidationError(
          fmt::format("panel {} has non-positive dimensions", p.id));
    }
    if (p.parent && !by_id.contains(*p.parent)) {
      throw ValidationError(fmt::format("panel {} names unknown parent {}",
                                        p.id, *p.parent));
    }
    if (p.parent && *p.parent == p.id) {
      throw ValidationError(fmt::format("panel {} is its own parent", p.id));
    }
  }

  // Walk every parent chain; a chain longer than the panel count loops.
  for (const PanelSpec& p : spec.panels) {
    std::set<int> seen{p.id};
    const PanelSpec* cur = &p;
    while (cur->parent) {
      cur = by_id.at(*cur->parent);
      if (!seen.insert(cur->id).second) {
        throw ValidationError(fmt::format(
            "cycle in parent links through panel {}", cur->id));
      }
    }
  }

  int roots = 0;
  for (const PanelSpec& p : spec.panels) roots += p.parent ? 0 : 1;
  if (roots != 1) {
    throw ValidationError(
        fmt::format("carton must have exactly one root panel, found {}", roots));
  }

  for (const PanelSpec& p : spec.panels) {
    const bool equal_range =
        std::abs(p.theta_final - p.theta_init) <= kAngleTolerance;
    if (!std::isfinite(p.theta_init) || !std::isfinite(p.theta_final)) {
      throw ValidationError(fmt::format("panel {} has a non-finite angle", p.id));
    }
    if (!p.parent) {
      if (p.foldable || !equal_range) {
        throw ValidationError(
            fmt::format("root panel {} cannot be foldable", p.id));
      }
      continue;
    }
    if (std::abs(p.crease_dir.norm() - 1.0) > kUnitTolerance) {
      throw ValidationError(
          fmt::format("panel {} crease_dir is not a unit vector", p.id));
    }
    if (std::abs(p.crease_dir.z()) > kUnitTolerance) {
      throw ValidationError(fmt::format(
          "panel {} crease_dir must lie in the parent panel plane", p.id));
    }
    if (!p.crease_anchor.allFinite()) {
      throw ValidationError(
          fmt::format("panel {} crease anchor is not finite", p.id));
    }
    if (p.foldable && equal_range) {
      throw ValidationError(fmt::format(
          "panel {} is foldable but theta_init equals theta_final", p.id));
    }
    if (!p.foldable && !equal_range) {
      throw ValidationError(fmt::format(
          "panel {} is not foldable but theta_init differs from theta_final",
          p.id));
    }
  }

  if (spec.gripper) {
    if (!(spec.gripper->dims.minCoeff() > 0)) {
      throw ValidationError("gripper dims must be positive");
    }
    if (!(spec.gripper->standoff >= 0)) {
      throw ValidationError("gripper standoff must be >= 0");
    }
  }
  spec.planner.Validate();
}

}  // namespace cartonfold
