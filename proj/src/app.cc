#include "cartonfold/app.h"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ostream.h>
#include "json.hpp"

#include "cartonfold/errors.h"
#include "cartonfold/spec_io.h"

namespace cartonfold {
namespace {

using nlohmann::json;

std::string Fixed(double v) { return fmt::format("{:.6f}", v); }

json Vec3Json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

json StateRecord(const KinematicTree& tree, const SequenceScore& row,
                 std::size_t rank, std::size_t t, const FoldState& state) {
  const JointVector theta = state.Theta(tree);
  const std::vector<PanelPose> poses = tree.ForwardKinematics(theta);
  const Aabb bounds = WorldAabb(tree.Solids(theta));
  json panels = json::array();
  json angles = json::array();
  for (int i = 0; i < tree.size(); ++i) {
    const PanelPose& p = poses[i];
    const Mat3& r = p.pose.rotation();
    panels.push_back({
        {"id", p.id},
        {"rotation", json::array({Vec3Json(r.row(0)), Vec3Json(r.row(1)),
                                  Vec3Json(r.row(2))})},
        {"translation", Vec3Json(p.pose.translation())},
        {"center", Vec3Json(p.center)},
        {"half_extents", Vec3Json(p.solid.half_extents())},
    });
    angles.push_back({{"id", tree.id(i)}, {"theta_rad", theta[i]}});
  }
  const bool has_next = t < row.per_step.size();
  return json{
      {"rank", rank},
      {"sequence", row.sequence.order},
      {"t", t},
      {"next_joint", has_next ? json(row.per_step[t].joint) : json(nullptr)},
      {"aerial", has_next ? json(row.per_step[t].aerial) : json(nullptr)},
      {"joints", angles},
      {"aabb", {{"min", Vec3Json(bounds.min)}, {"max", Vec3Json(bounds.max)}}},
      {"panels", panels},
  };
}

void Log(std::ostream& err, LogLevel level, LogLevel needed,
         std::string_view message) {
  if (level >= needed) fmt::print(err, "{}\n", message);
}

int ExplainSequence(const KinematicTree& tree, const RunConfig& config,
                    std::ostream& out, std::ostream& err) {
  const CartonSpec& spec = tree.spec();
  const FoldSequence& seq = *config.explain;
  const SweepParams params = SweepParams::FromPlanner(spec.planner);
  const ObstacleSet obstacles = ObstacleSet::FromSpec(spec);

  std::vector<int> joints;
  try {
    joints = IdsToIndices(tree, seq.order);
    ScoreSequence(tree, seq, spec.planner.support_tolerance);
  } catch (const ValidationError& e) {
    fmt::print(err, "invalid sequence: {}\n", e.what());
    return exit_code::kNoSequences;
  }

  struct Row {
    int joint;
    int samples;
    bool aerial;
    double volume;
    double max_dim;
    std::string grasp;
  };
  std::vector<Row> rows;
  FoldState state;
  int naf = 0;
  double c_vol = 0;
  double c_dim = 0;
  for (std::size_t t = 0; t < joints.size(); ++t) {
    const int j = joints[t];
    const SweepResult sweep = SweepFold(tree, state.folded, j, params, obstacles);
    if (!sweep.collision_free) {
      fmt::print(err, "step {} (joint {}) collides: {}\n", t + 1, tree.id(j),
                 sweep.contact->Describe());
      return exit_code::kNoSequences;
    }
    const Aabb b = StateBounds(tree, state);
    Row r{tree.id(j), sweep.samples,
          IsAerial(tree, state, j, spec.planner.support_tolerance), b.Volume(),
          b.MaxDimension(), "n/a"};
    if (spec.gripper) {
      r.grasp = GraspSideName(DetermineGraspSide(
          tree, state.folded, j, *spec.gripper, obstacles,
          spec.planner.penetration_tolerance));
    }
    naf += r.aerial ? 1 : 0;
    c_vol += r.volume;
    c_dim += r.max_dim;
    rows.push_back(r);
    state = Transition(tree, state, j);
  }

  if (config.format == OutputFormat::kStructured) {
    std::string body;
    for (std::size_t t = 0; t < rows.size(); ++t) {
      const Row& r = rows[t];
      body += fmt::format(
          "{}    {{\"step\": {}, \"joint\": {}, \"samples\": {}, \"aerial\": "
          "{}, \"volume_mm3\": {}, \"maxdim_mm\": {}, \"grasp\": \"{}\"}}",
          t == 0 ? "" : ",\n", t + 1, r.joint, r.samples,
          r.aerial ? "true" : "false", Fixed(r.volume), Fixed(r.max_dim),
          r.grasp);
    }
    fmt::print(out,
               "{{\n  \"sequence\": [{}],\n  \"steps\": [\n{}\n  ],\n"
               "  \"volume_mm3\": {},\n  \"maxdim_mm\": {},\n  \"naf\": {}\n}}\n",
               fmt::join(seq.order, ", "), body, Fixed(c_vol), Fixed(c_dim),
               naf);
    return exit_code::kSuccess;
  }

  fmt::print(out, "sequence {} on {}\n", seq.ToString(),
             spec.name.empty() ? config.spec_path.string() : spec.name);
  fmt::print(out, "{:>4}  {:>5}  {:>7}  {:>6}  {:>18}  {:>12}  {}\n", "step",
             "joint", "samples", "aerial", "volume_mm3", "maxdim_mm", "grasp");
  for (std::size_t t = 0; t < rows.size(); ++t) {
    const Row& r = rows[t];
    fmt::print(out, "{:>4}  {:>5}  {:>7}  {:>6}  {:>18.3f}  {:>12.3f}  {}\n",
               t + 1, r.joint, r.samples, r.aerial ? "yes" : "no", r.volume,
               r.max_dim, r.grasp);
  }
  fmt::print(out, "totals: volume_mm3={} maxdim_mm={} naf={}\n", Fixed(c_vol),
             Fixed(c_dim), naf);
  return exit_code::kSuccess;
}

}  // namespace

LogLevel LogLevelFromEnv() {
  const char* raw = std::getenv("CARTONFOLD_LOG");
  const std::string v = raw ? raw : "";
  if (v == "quiet") return LogLevel::kQuiet;
  if (v == "info") return LogLevel::kInfo;
  if (v == "debug") return LogLevel::kDebug;
  return LogLevel::kWarn;
}

FoldSequence ParseSequenceList(std::string_view text) {
  FoldSequence seq;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size()) {
      throw ValidationError("bad joint id '" + token + "' in sequence");
    }
    seq.order.push_back(value);
    token.clear();
  };
  for (char c : text) {
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') {
      token += c;
    } else if (c == ',' || c == ' ' || c == '[' || c == ']') {
      flush();
    } else {
      throw ValidationError(std::string("unexpected character '") + c +
                            "' in sequence");
    }
  }
  flush();
  if (seq.order.empty()) throw ValidationError("empty sequence");
  return seq;
}

void ApplyOverrides(const RunConfig& config, CartonSpec& spec) {
  if (config.tolerance_angle_deg) {
    spec.planner.tolerance_angle = DegToRad(*config.tolerance_angle_deg);
  }
  if (config.penetration_mm) {
    spec.planner.penetration_tolerance = *config.penetration_mm;
  }
  if (config.support_mm) spec.planner.support_tolerance = *config.support_mm;
  if (config.subset_cap) spec.planner.subset_cap = *config.subset_cap;
  spec.planner.Validate();
}

std::string FormatTable(const RankedReport& report, std::size_t total,
                        std::size_t rows) {
  std::string out = fmt::format("{} valid sequences, ranked by [{}]\n", total,
                                report.policy.ToString());
  std::size_t width = 8;
  for (std::size_t i = 0; i < rows; ++i) {
    width = std::max(width, report.rows[i].sequence.ToString().size());
  }
  out += fmt::format("{:>4}  {:<{}}  {:>20}  {:>14}  {:>4}\n", "rank",
                     "sequence", width, "volume_mm3", "maxdim_mm", "naf");
  for (std::size_t i = 0; i < rows; ++i) {
    const SequenceScore& s = report.rows[i];
    out += fmt::format("{:>4}  {:<{}}  {:>20.3f}  {:>14.3f}  {:>4}\n", i + 1,
                       s.sequence.ToString(), width, s.c_vol, s.c_dim,
                       s.c_aerial);
  }
  return out;
}

std::string FormatCsv(const RankedReport& report, std::size_t rows) {
  std::string out = "sequence,volume_mm3,maxdim_mm,naf\n";
  for (std::size_t i = 0; i < rows; ++i) {
    const SequenceScore& s = report.rows[i];
    out += fmt::format("\"{}\",{},{},{}\n", s.sequence.ToString(),
                       Fixed(s.c_vol), Fixed(s.c_dim), s.c_aerial);
  }
  return out;
}

std::string FormatStructured(const RankedReport& report,
                             const std::string& carton, std::size_t total,
                             std::size_t rows) {
  std::string out = "{\n";
  out += fmt::format("  \"carton\": {},\n", json(carton).dump());
  out += fmt::format("  \"policy\": [");
  for (std::size_t i = 0; i < report.policy.order().size(); ++i) {
    out += fmt::format("{}\"{}\"", i ? ", " : "",
                       CriterionName(report.policy.order()[i]));
  }
  out += "],\n";
  out += fmt::format("  \"sequence_count\": {},\n", total);
  out += "  \"rows\": [";
  for (std::size_t i = 0; i < rows; ++i) {
    const SequenceScore& s = report.rows[i];
    out += i ? ",\n" : "\n";
    out += fmt::format(
        "    {{\"rank\": {}, \"sequence\": [{}], \"volume_mm3\": {}, "
        "\"maxdim_mm\": {}, \"naf\": {}, \"per_step\": [",
        i + 1, fmt::join(s.sequence.order, ", "), Fixed(s.c_vol),
        Fixed(s.c_dim), s.c_aerial);
    for (std::size_t t = 0; t < s.per_step.size(); ++t) {
      const StepMetrics& m = s.per_step[t];
      out += fmt::format(
          "{}{{\"t\": {}, \"joint\": {}, \"volume_mm3\": {}, \"maxdim_mm\": "
          "{}, \"aerial\": {}}}",
          t ? ", " : "", t, m.joint, Fixed(m.volume), Fixed(m.max_dimension),
          m.aerial ? "true" : "false");
    }
    out += "]}";
  }
  out += rows ? "\n  ]\n}\n" : "]\n}\n";
  return out;
}

void DumpStates(const KinematicTree& tree, const RankedReport& report,
                std::size_t rows, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (std::size_t i = 0; i < rows; ++i) {
    const SequenceScore& row = report.rows[i];
    std::ofstream file(dir / fmt::format("rank_{:04}.jsonl", i + 1));
    if (!file) {
      throw std::runtime_error("cannot write state dump in " + dir.string());
    }
    FoldState state;
    const std::vector<int> joints = IdsToIndices(tree, row.sequence.order);
    for (std::size_t t = 0; t <= joints.size(); ++t) {
      file << StateRecord(tree, row, i + 1, t, state).dump() << '\n';
      if (t < joints.size()) state = Transition(tree, state, joints[t]);
    }
  }
}

int Run(const RunConfig& config, std::ostream& out, std::ostream& err,
        LogLevel log) {
  CartonSpec spec;
  try {
    spec = LoadCartonSpec(config.spec_path);
    ApplyOverrides(config, spec);
  } catch (const ValidationError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return exit_code::kInvalidSpec;
  }
  const KinematicTree tree(spec);

  if (config.explain) return ExplainSequence(tree, config, out, err);

  PlannerOptions options;
  options.mode = config.mode;
  options.subset_cap = spec.planner.subset_cap;
  options.allow_naive_fallback = config.allow_naive_fallback;

  EnumerationResult found;
  try {
    found = EnumerateSequences(tree, SweepParams::FromPlanner(spec.planner),
                               ObstacleSet::FromSpec(spec), options);
  } catch (const EmptyProblemError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return exit_code::kNoSequences;
  } catch (const LimitError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return exit_code::kLimit;
  }
  for (const std::string& w : found.warnings) {
    Log(err, log, LogLevel::kWarn, "warning: " + w);
  }
  const PlannerStats& st = found.stats;
  Log(err, log, LogLevel::kInfo,
      fmt::format("planner nodes_expanded={} collision_checks={} "
                  "pruned_branches={} dead_ends={} sequences={}",
                  st.nodes_expanded, st.collision_checks, st.pruned_branches,
                  st.dead_ends, found.sequences.size()));
  if (log >= LogLevel::kDebug) {
    for (const FoldState& s : found.dead_end_states) {
      std::vector<int> ids;
      for (int i = 0; i < tree.size(); ++i) {
        if (s.folded.Contains(i)) ids.push_back(tree.id(i));
      }
      Log(err, log, LogLevel::kDebug,
          fmt::format("planner dead_end folded=[{}]", fmt::join(ids, ", ")));
    }
  }

  const RankedReport report = ScoreAndRank(found.sequences, tree, spec.ranking,
                                           spec.planner.support_tolerance);
  const std::size_t total = report.rows.size();
  const std::size_t rows =
      config.top_n ? std::min(*config.top_n, total) : total;

  switch (config.format) {
    case OutputFormat::kTable:
      out << FormatTable(report, total, rows);
      break;
    case OutputFormat::kCsv:
      out << FormatCsv(report, rows);
      break;
    case OutputFormat::kStructured:
      out << FormatStructured(report, spec.name, total, rows);
      break;
  }

  if (config.dump_states) DumpStates(tree, report, rows, *config.dump_states);
  return total == 0 ? exit_code::kNoSequences : exit_code::kSuccess;
}

}  // namespace cartonfold
