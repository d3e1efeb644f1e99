#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "cartonfold/carton_spec.h"

namespace cartonfold {

// Carton-spec documents are YAML. Lengths are millimeters and angles are
// degrees in the document; the parsed CartonSpec stores radians.
//
//   name: demo
//   root_pose: {translation_mm: [0, 0, 1], rpy_deg: [0, 0, 0]}
//   table_plane: true
//   panels:
//     - {id: 1, dims_mm: [200, 300, 2]}
//     - id: 2
//       parent: 1
//       dims_mm: [100, 300, 2]          # height, width, thickness
//       crease_anchor_mm: [300, -1, 0]  # parent frame
//       crease_dir: [-1, 0, 0]          # parent frame
//       theta_init_deg: 0
//       theta_final_deg: 90
//   environment:
//     - {name: profile, center_mm: [0, -150, 10], size_mm: [600, 20, 20]}
//   gripper: {dims_mm: [80, 40, 20], standoff_mm: 5}
//   planner: {tolerance_angle_deg: 5, penetration_tolerance_mm: 0.1,
//             support_tolerance_mm: 1, subset_cap: 20}
//   ranking: [aerial, maxdim]
//
// Unknown keys are rejected. When root_pose is omitted the root rests on the
// table: its frame sits at z = thickness / 2.

/// Parses and validates. Throws ValidationError with a descriptive message.
CartonSpec ParseCartonSpec(std::string_view document);

/// Reads `path` and parses it. Unreadable files raise ValidationError.
CartonSpec LoadCartonSpec(const std::filesystem::path& path);

/// Emits a document that ParseCartonSpec maps back to an equivalent spec.
std::string SerializeCartonSpec(const CartonSpec& spec);

}  // namespace cartonfold
