#include "cartonfold/metrics.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "cartonfold/errors.h"

namespace cartonfold {
namespace {

constexpr double kRelativeTie = 1e-9;

// -1, 0, +1 with near-equal values treated as ties.
int CompareValues(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  if (std::abs(a - b) <= kRelativeTie * scale) return 0;
  return a < b ? -1 : 1;
}

}  // namespace

Aabb StateBounds(const KinematicTree& tree, const FoldState& state) {
  const std::vector<OrientedBox> solids = tree.Solids(state.Theta(tree));
  return WorldAabb(solids);
}

double BoundingVolume(const KinematicTree& tree, const FoldState& state) {
  return StateBounds(tree, state).Volume();
}

double MaxDimension(const KinematicTree& tree, const FoldState& state) {
  return StateBounds(tree, state).MaxDimension();
}

bool IsAerial(const KinematicTree& tree, const FoldState& state_before,
              int joint, double support_tolerance) {
  const std::vector<OrientedBox> solids =
      tree.Solids(state_before.Theta(tree));
  const PanelSet moving = tree.Subtree(joint);
  double lowest = std::numeric_limits<double>::infinity();
  for (int i = 0; i < tree.size(); ++i) {
    if (!moving.Contains(i)) continue;
    for (const Vec3& c : solids[i].Corners()) lowest = std::min(lowest, c.z());
  }
  return lowest > support_tolerance;
}

double SequenceScore::Value(Criterion c) const {
  switch (c) {
    case Criterion::kAerial:
      return c_aerial;
    case Criterion::kMaxDim:
      return c_dim;
    case Criterion::kVolume:
      return c_vol;
  }
  return 0;
}

SequenceScore ScoreSequence(const KinematicTree& tree,
                            const FoldSequence& sequence,
                            double support_tolerance) {
  const std::vector<int> joints = IdsToIndices(tree, sequence.order);
  PanelSet seen;
  for (int j : joints) {
    if (!tree.IsFoldable(j) || seen.Contains(j)) {
      throw ValidationError(fmt::format(
          "sequence {} must list each foldable joint once", sequence.ToString()));
    }
    seen = seen.With(j);
  }
  if (seen != tree.foldable_set()) {
    throw ValidationError(fmt::format(
        "sequence {} does not cover every foldable joint", sequence.ToString()));
  }

  SequenceScore score;
  score.sequence = sequence;
  FoldState state;
  for (int j : joints) {
    StepMetrics step;
    step.joint = tree.id(j);
    step.bounds = StateBounds(tree, state);
    step.volume = step.bounds.Volume();
    step.max_dimension = step.bounds.MaxDimension();
    step.aerial = IsAerial(tree, state, j, support_tolerance);
    score.c_vol += step.volume;
    score.c_dim += step.max_dimension;
    score.c_aerial += step.aerial ? 1 : 0;
    score.per_step.push_back(step);
    state = Transition(tree, state, j);
  }
  return score;
}

void RankScores(std::vector<SequenceScore>& rows, const RankingPolicy& policy) {
  std::sort(rows.begin(), rows.end(),
            [&](const SequenceScore& a, const SequenceScore& b) {
              for (Criterion c : policy.order()) {
                const int cmp = CompareValues(a.Value(c), b.Value(c));
                if (cmp != 0) return cmp < 0;
              }
              return a.sequence < b.sequence;
            });
}

RankedReport ScoreAndRank(const std::vector<FoldSequence>& sequences,
                          const KinematicTree& tree, const RankingPolicy& policy,
                          double support_tolerance) {
  RankedReport report;
  report.policy = policy;
  if (sequences.empty()) {
    report.diagnostics.push_back("no sequences to rank");
    return report;
  }
  report.rows.reserve(sequences.size());
  for (const FoldSequence& s : sequences) {
    report.rows.push_back(ScoreSequence(tree, s, support_tolerance));
  }
  RankScores(report.rows, policy);
  return report;
}

}  // namespace cartonfold
