#include "cartonfold/spec_io.h"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>
#include <string>

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include "cartonfold/errors.h"

namespace cartonfold {
namespace {

void RejectUnknownKeys(const YAML::Node& node, std::string_view where,
                       std::initializer_list<std::string_view> allowed) {
  for (const auto& kv : node) {
    const std::string key = kv.first.as<std::string>();
    bool ok = false;
    for (std::string_view a : allowed) ok = ok || key == a;
    if (!ok) {
      throw ValidationError(fmt::format("unknown key '{}' in {}", key, where));
    }
  }
}

double ReadDouble(const YAML::Node& node, std::string_view what) {
  try {
    const double v = node.as<double>();
    if (!std::isfinite(v)) throw YAML::Exception(node.Mark(), "non-finite");
    return v;
  } catch (const YAML::Exception&) {
    throw ValidationError(fmt::format("{} must be a finite number", what));
  }
}

Vec3 ReadVec3(const YAML::Node& node, std::string_view what) {
  if (!node.IsSequence() || node.size() != 3) {
    throw ValidationError(fmt::format("{} must be a list of 3 numbers", what));
  }
  return Vec3(ReadDouble(node[0], what), ReadDouble(node[1], what),
              ReadDouble(node[2], what));
}

int ReadInt(const YAML::Node& node, std::string_view what) {
  try {
    return node.as<int>();
  } catch (const YAML::Exception&) {
    throw ValidationError(fmt::format("{} must be an integer", what));
  }
}

bool ReadBool(const YAML::Node& node, std::string_view what) {
  try {
    return node.as<bool>();
  } catch (const YAML::Exception&) {
    throw ValidationError(fmt::format("{} must be true or false", what));
  }
}

RigidTransform ReadPose(const YAML::Node& node, std::string_view what,
                        const Vec3& default_translation) {
  if (!node.IsMap()) {
    throw ValidationError(fmt::format("{} must be a mapping", what));
  }
  RejectUnknownKeys(node, what, {"translation_mm", "rpy_deg"});
  const Vec3 p = node["translation_mm"]
                     ? ReadVec3(node["translation_mm"], what)
                     : default_translation;
  const Vec3 rpy = node["rpy_deg"] ? ReadVec3(node["rpy_deg"], what)
                                   : Vec3::Zero();
  return RigidTransform::FromRpy(rpy * (std::numbers::pi / 180.0), p);
}

PanelSpec ReadPanel(const YAML::Node& node, std::size_t index) {
  const std::string where = fmt::format("panels[{}]", index);
  if (!node.IsMap()) {
    throw ValidationError(where + " must be a mapping");
  }
  RejectUnknownKeys(node, where,
                    {"id", "parent", "dims_mm", "crease_anchor_mm",
                     "crease_dir", "theta_init_deg", "theta_final_deg",
                     "foldable"});
  if (!node["id"]) throw ValidationError(where + " is missing 'id'");
  if (!node["dims_mm"]) throw ValidationError(where + " is missing 'dims_mm'");

  PanelSpec p;
  p.id = ReadInt(node["id"], where + ".id");
  if (node["parent"] && !node["parent"].IsNull()) {
    p.parent = ReadInt(node["parent"], where + ".parent");
  }
  const Vec3 dims = ReadVec3(node["dims_mm"], where + ".dims_mm");
  p.dims = {dims.x(), dims.y(), dims.z()};
  if (node["crease_anchor_mm"]) {
    p.crease_anchor = ReadVec3(node["crease_anchor_mm"], where + ".crease_anchor_mm");
  }
  if (node["crease_dir"]) {
    p.crease_dir = ReadVec3(node["crease_dir"], where + ".crease_dir");
  }
  if (node["theta_init_deg"]) {
    p.theta_init = DegToRad(ReadDouble(node["theta_init_deg"], where));
  }
  p.theta_final = node["theta_final_deg"]
                      ? DegToRad(ReadDouble(node["theta_final_deg"], where))
                      : p.theta_init;
  p.foldable = node["foldable"] ? ReadBool(node["foldable"], where + ".foldable")
                                : p.parent.has_value();
  return p;
}

Obstacle ReadObstacle(const YAML::Node& node, std::size_t index) {
  const std::string where = fmt::format("environment[{}]", index);
  if (!node.IsMap()) throw ValidationError(where + " must be a mapping");
  RejectUnknownKeys(node, where, {"name", "center_mm", "size_mm", "rpy_deg"});
  if (!node["center_mm"] || !node["size_mm"]) {
    throw ValidationError(where + " needs center_mm and size_mm");
  }
  const Vec3 center = ReadVec3(node["center_mm"], where + ".center_mm");
  const Vec3 size = ReadVec3(node["size_mm"], where + ".size_mm");
  if (!(size.minCoeff() > 0)) {
    throw ValidationError(where + ".size_mm must be positive");
  }
  const Vec3 rpy = node["rpy_deg"] ? ReadVec3(node["rpy_deg"], where + ".rpy_deg")
                                   : Vec3::Zero();
  Obstacle o{node["name"] ? node["name"].as<std::string>()
                          : fmt::format("obstacle{}", index),
             OrientedBox(RigidTransform::FromRpy(
                             rpy * (std::numbers::pi / 180.0), center),
                         size / 2)};
  return o;
}

void EmitVec3(YAML::Emitter& out, const Vec3& v) {
  out << YAML::Flow << YAML::BeginSeq << v.x() << v.y() << v.z()
      << YAML::EndSeq;
}

Vec3 RpyDegrees(const Mat3& r) {
  // Inverse of FromRpy: R = Rz(yaw) Ry(pitch) Rx(roll).
  const Vec3 ypr = r.eulerAngles(2, 1, 0);
  return Vec3(ypr.z(), ypr.y(), ypr.x()) * (180.0 / std::numbers::pi);
}

}  // namespace

CartonSpec ParseCartonSpec(std::string_view document) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(document));
  } catch (const YAML::Exception& e) {
    throw ValidationError(fmt::format("malformed carton spec (line {}): {}",
                                      e.mark.line + 1, e.msg));
  }
  if (!root.IsMap()) {
    throw ValidationError("carton spec must be a mapping at top level");
  }
  try {
    RejectUnknownKeys(root, "carton spec",
                      {"name", "panels", "root_pose", "environment", "gripper",
                       "planner", "ranking", "table_plane"});
    CartonSpec spec;
    if (root["name"]) spec.name = root["name"].as<std::string>();

    const YAML::Node panels = root["panels"];
    if (!panels || !panels.IsSequence() || panels.size() == 0) {
      throw ValidationError("'panels' must be a non-empty list");
    }
    for (std::size_t i = 0; i < panels.size(); ++i) {
      spec.panels.push_back(ReadPanel(panels[i], i));
    }

    // The root's default placement rests it on the table.
    double root_thickness = 0;
    for (const PanelSpec& p : spec.panels) {
      if (!p.parent) root_thickness = p.dims.thickness;
    }
    const Vec3 rest(0, 0, root_thickness / 2);
    spec.root_pose = root["root_pose"]
                         ? ReadPose(root["root_pose"], "root_pose", rest)
                         : RigidTransform::FromTranslation(rest);

    if (root["table_plane"]) {
      spec.table_plane = ReadBool(root["table_plane"], "table_plane");
    }
    if (const YAML::Node env = root["environment"]; env && !env.IsNull()) {
      if (!env.IsSequence()) {
        throw ValidationError("'environment' must be a list of boxes");
      }
      for (std::size_t i = 0; i < env.size(); ++i) {
        spec.environment.push_back(ReadObstacle(env[i], i));
      }
    }
    if (const YAML::Node g = root["gripper"]; g && !g.IsNull()) {
      RejectUnknownKeys(g, "gripper", {"dims_mm", "standoff_mm"});
      if (!g["dims_mm"]) throw ValidationError("gripper needs dims_mm");
      GripperSpec gs;
      gs.dims = ReadVec3(g["dims_mm"], "gripper.dims_mm");
      if (g["standoff_mm"]) {
        gs.standoff = ReadDouble(g["standoff_mm"], "gripper.standoff_mm");
      }
      spec.gripper = gs;
    }
    if (const YAML::Node pl = root["planner"]; pl && !pl.IsNull()) {
      RejectUnknownKeys(pl, "planner",
                        {"tolerance_angle_deg", "penetration_tolerance_mm",
                         "support_tolerance_mm", "subset_cap"});
      if (pl["tolerance_angle_deg"]) {
        spec.planner.tolerance_angle = DegToRad(
            ReadDouble(pl["tolerance_angle_deg"], "planner.tolerance_angle_deg"));
      }
      if (pl["penetration_tolerance_mm"]) {
        spec.planner.penetration_tolerance = ReadDouble(
            pl["penetration_tolerance_mm"], "planner.penetration_tolerance_mm");
      }
      if (pl["support_tolerance_mm"]) {
        spec.planner.support_tolerance = ReadDouble(
            pl["support_tolerance_mm"], "planner.support_tolerance_mm");
      }
      if (pl["subset_cap"]) {
        spec.planner.subset_cap = ReadInt(pl["subset_cap"], "planner.subset_cap");
      }
    }
    if (const YAML::Node r = root["ranking"]; r && !r.IsNull()) {
      if (!r.IsSequence()) {
        throw ValidationError("'ranking' must be a list of criteria");
      }
      std::vector<Criterion> order;
      for (const auto& c : r) order.push_back(ParseCriterion(c.as<std::string>()));
      spec.ranking = RankingPolicy(std::move(order));
    }

    ValidateCartonSpec(spec);
    return spec;
  } catch (const YAML::Exception& e) {
    throw ValidationError(fmt::format("malformed carton spec (line {}): {}",
                                      e.mark.line + 1, e.msg));
  }
}

CartonSpec LoadCartonSpec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("cannot read carton spec '" + path.string() + "'");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseCartonSpec(buffer.str());
}

std::string SerializeCartonSpec(const CartonSpec& spec) {
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << YAML::BeginMap;
  if (!spec.name.empty()) out << YAML::Key << "name" << YAML::Value << spec.name;

  out << YAML::Key << "root_pose" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "translation_mm" << YAML::Value;
  EmitVec3(out, spec.root_pose.translation());
  out << YAML::Key << "rpy_deg" << YAML::Value;
  EmitVec3(out, RpyDegrees(spec.root_pose.rotation()));
  out << YAML::EndMap;

  out << YAML::Key << "table_plane" << YAML::Value << spec.table_plane;

  out << YAML::Key << "panels" << YAML::Value << YAML::BeginSeq;
  for (const PanelSpec& p : spec.panels) {
    out << YAML::BeginMap;
    out << YAML::Key << "id" << YAML::Value << p.id;
    if (p.parent) out << YAML::Key << "parent" << YAML::Value << *p.parent;
    out << YAML::Key << "dims_mm" << YAML::Value;
    EmitVec3(out, Vec3(p.dims.height, p.dims.width, p.dims.thickness));
    if (p.parent) {
      out << YAML::Key << "crease_anchor_mm" << YAML::Value;
      EmitVec3(out, p.crease_anchor);
      out << YAML::Key << "crease_dir" << YAML::Value;
      EmitVec3(out, p.crease_dir);
    }
    out << YAML::Key << "theta_init_deg" << YAML::Value << RadToDeg(p.theta_init);
    out << YAML::Key << "theta_final_deg" << YAML::Value
        << RadToDeg(p.theta_final);
    out << YAML::Key << "foldable" << YAML::Value << p.foldable;
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;

  if (!spec.environment.empty()) {
    out << YAML::Key << "environment" << YAML::Value << YAML::BeginSeq;
    for (const Obstacle& o : spec.environment) {
      out << YAML::BeginMap;
      out << YAML::Key << "name" << YAML::Value << o.name;
      out << YAML::Key << "center_mm" << YAML::Value;
      EmitVec3(out, o.box.center());
      out << YAML::Key << "size_mm" << YAML::Value;
      EmitVec3(out, o.box.half_extents() * 2);
      out << YAML::Key << "rpy_deg" << YAML::Value;
      EmitVec3(out, RpyDegrees(o.box.pose().rotation()));
      out << YAML::EndMap;
    }
    out << YAML::EndSeq;
  }

  if (spec.gripper) {
    out << YAML::Key << "gripper" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "dims_mm" << YAML::Value;
    EmitVec3(out, spec.gripper->dims);
    out << YAML::Key << "standoff_mm" << YAML::Value << spec.gripper->standoff;
    out << YAML::EndMap;
  }

  out << YAML::Key << "planner" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "tolerance_angle_deg" << YAML::Value
      << RadToDeg(spec.planner.tolerance_angle);
  out << YAML::Key << "penetration_tolerance_mm" << YAML::Value
      << spec.planner.penetration_tolerance;
  out << YAML::Key << "support_tolerance_mm" << YAML::Value
      << spec.planner.support_tolerance;
  out << YAML::Key << "subset_cap" << YAML::Value << spec.planner.subset_cap;
  out << YAML::EndMap;

  out << YAML::Key << "ranking" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (Criterion c : spec.ranking.order()) out << std::string(CriterionName(c));
  out << YAML::EndSeq;

  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace cartonfold
