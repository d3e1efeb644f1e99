// Python bindings for the carton folding planner.

#include <map>
#include <string>
#include <vector>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "cartonfold/collision.h"
#include "cartonfold/errors.h"
#include "cartonfold/kinematic_tree.h"
#include "cartonfold/metrics.h"
#include "cartonfold/planner.h"
#include "cartonfold/spec_io.h"

namespace py = pybind11;

namespace cartonfold {
namespace {

PanelSet FoldedSet(const KinematicTree& tree, const std::vector<int>& ids) {
  PanelSet out;
  for (int j : IdsToIndices(tree, ids)) out = out.With(j);
  return out;
}

JointVector ThetaFromMap(const KinematicTree& tree,
                         const std::map<int, double>& angles) {
  JointVector theta = tree.InitialTheta();
  for (const auto& [id, value] : angles) theta[tree.IndexOf(id)] = value;
  return theta;
}

RankingPolicy PolicyFrom(const std::vector<std::string>& names) {
  std::vector<Criterion> order;
  for (const std::string& n : names) order.push_back(ParseCriterion(n));
  return RankingPolicy(order);
}

py::dict ScoreDict(const SequenceScore& s) {
  py::list steps;
  for (const StepMetrics& m : s.per_step) {
    py::dict d;
    d["joint"] = m.joint;
    d["volume_mm3"] = m.volume;
    d["maxdim_mm"] = m.max_dimension;
    d["aerial"] = m.aerial;
    steps.append(d);
  }
  py::dict d;
  d["sequence"] = s.sequence.order;
  d["volume_mm3"] = s.c_vol;
  d["maxdim_mm"] = s.c_dim;
  d["naf"] = s.c_aerial;
  d["per_step"] = steps;
  return d;
}

}  // namespace
}  // namespace cartonfold

PYBIND11_MODULE(_cartonfold, m) {
  using namespace cartonfold;
  m.doc() = "Enumerate and rank collision-free carton folding sequences.";

  py::register_exception<ValidationError>(m, "ValidationError",
                                          PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError",
                                            PyExc_RuntimeError);
  py::register_exception<LimitError>(m, "LimitError", PyExc_RuntimeError);

  py::class_<CartonSpec>(m, "CartonSpec")
      .def_readonly("name", &CartonSpec::name)
      .def_property_readonly("panel_ids",
                             [](const CartonSpec& s) {
                               std::vector<int> ids;
                               for (const PanelSpec& p : s.panels) ids.push_back(p.id);
                               return ids;
                             })
      .def("to_yaml", &SerializeCartonSpec);

  m.def("parse_spec", [](const std::string& text) { return ParseCartonSpec(text); },
        py::arg("document"), "Parse and validate a YAML carton spec.");
  m.def("load_spec", &LoadCartonSpec, py::arg("path"),
        "Read and validate a YAML carton spec file.");

  py::class_<KinematicTree>(m, "KinematicTree")
      .def(py::init<CartonSpec>(), py::arg("spec"))
      .def_property_readonly("panel_ids",
                             [](const KinematicTree& t) {
                               std::vector<int> ids;
                               for (int i = 0; i < t.size(); ++i) ids.push_back(t.id(i));
                               return ids;
                             })
      .def_property_readonly("foldable_ids",
                             [](const KinematicTree& t) {
                               std::vector<int> ids;
                               for (int j : t.foldable()) ids.push_back(t.id(j));
                               return ids;
                             })
      .def("connectivity", &KinematicTree::ConnectivityMatrix,
           "C[i][j] = 1 when panel i (in panel_ids order) is an ancestor of j.")
      .def(
          "forward_kinematics",
          [](const KinematicTree& t, const std::map<int, double>& angles) {
            py::list out;
            for (const PanelPose& p : t.ForwardKinematics(ThetaFromMap(t, angles))) {
              py::dict d;
              d["id"] = p.id;
              d["rotation"] = p.pose.rotation();
              d["translation"] = p.pose.translation();
              d["center"] = p.center;
              d["half_extents"] = p.solid.half_extents();
              out.append(d);
            }
            return out;
          },
          py::arg("angles") = std::map<int, double>{},
          "Panel poses for joint angles given as {panel id: radians}; "
          "unlisted joints stay at their initial angle.")
      .def(
          "bounds",
          [](const KinematicTree& t, const std::vector<int>& folded) {
            const Aabb b = StateBounds(t, FoldState{FoldedSet(t, folded)});
            return py::make_tuple(b.min, b.max);
          },
          py::arg("folded") = std::vector<int>{});

  m.def(
      "collision_check",
      [](const KinematicTree& t, const std::vector<int>& folded, int joint) {
        const CartonSpec& s = t.spec();
        return CollisionCheck(t, FoldedSet(t, folded), t.IndexOf(joint),
                              SweepParams::FromPlanner(s.planner),
                              ObstacleSet::FromSpec(s));
      },
      py::arg("tree"), py::arg("folded"), py::arg("joint"),
      "True when folding `joint` after the `folded` ids sweeps without contact.");

  m.def(
      "enumerate_sequences",
      [](const KinematicTree& t, const std::string& mode) {
        PlannerOptions options;
        if (mode == "naive") {
          options.mode = SearchMode::kNaive;
        } else if (mode != "memoized") {
          throw ValidationError("mode must be 'naive' or 'memoized'");
        }
        options.subset_cap = t.spec().planner.subset_cap;
        const EnumerationResult r = EnumerateSequences(
            t, SweepParams::FromPlanner(t.spec().planner),
            ObstacleSet::FromSpec(t.spec()), options);
        std::vector<std::vector<int>> out;
        for (const FoldSequence& s : r.sequences) out.push_back(s.order);
        return out;
      },
      py::arg("tree"), py::arg("mode") = "memoized",
      "All collision-free sequences in depth-first order.");

  m.def(
      "score_and_rank",
      [](const KinematicTree& t, const std::vector<std::vector<int>>& seqs,
         const std::vector<std::string>& policy) {
        std::vector<FoldSequence> in;
        for (const auto& s : seqs) in.push_back(FoldSequence{s});
        const RankedReport r = ScoreAndRank(
            in, t, policy.empty() ? t.spec().ranking : PolicyFrom(policy),
            t.spec().planner.support_tolerance);
        py::list out;
        for (const SequenceScore& s : r.rows) out.append(ScoreDict(s));
        return out;
      },
      py::arg("tree"), py::arg("sequences"),
      py::arg("policy") = std::vector<std::string>{},
      "Score sequences and sort them best first. An empty policy uses the "
      "spec's ranking.");

  m.def(
      "obb_intersect",
      [](const Vec3& center_a, const Mat3& rotation_a, const Vec3& half_a,
         const Vec3& center_b, const Mat3& rotation_b, const Vec3& half_b,
         double clearance) {
        return BoxesIntersect(
            OrientedBox(RigidTransform(rotation_a, center_a), half_a),
            OrientedBox(RigidTransform(rotation_b, center_b), half_b),
            clearance);
      },
      py::arg("center_a"), py::arg("rotation_a"), py::arg("half_extents_a"),
      py::arg("center_b"), py::arg("rotation_b"), py::arg("half_extents_b"),
      py::arg("clearance") = 0.0);
}
