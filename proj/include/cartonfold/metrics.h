#pragma once

#include <string>
#include <vector>

#include "cartonfold/kinematic_tree.h"
#include "cartonfold/planner.h"
#include "cartonfold/ranking_policy.h"

namespace cartonfold {

/// Axis-aligned (table frame) bounds of every panel solid in `state`.
Aabb StateBounds(const KinematicTree& tree, const FoldState& state);

/// V(S_t) = l * w * h of the state's bounds, mm^3.
double BoundingVolume(const KinematicTree& tree, const FoldState& state);

/// MaxDim(S_t) = max(l, w, h), mm.
double MaxDimension(const KinematicTree& tree, const FoldState& state);

/// An aerial fold starts with its moving subtree lifted off the workbench:
/// the lowest corner of any panel in the subtree of `joint` is more than
/// `support_tolerance` above the table (z = 0) in `state_before`.
bool IsAerial(const KinematicTree& tree, const FoldState& state_before,
              int joint, double support_tolerance);

struct StepMetrics {
  int joint = 0;           // id folded from this state
  double volume = 0;       // V(S_t)
  double max_dimension = 0;  // MaxDim(S_t)
  bool aerial = false;     // a(S_t)
  Aabb bounds;
};

// Costs of one sequence. Sums run over t = 0 .. k-1: the state before each
// fold is scored and the final state is not.
struct SequenceScore {
  FoldSequence sequence;
  double c_vol = 0;
  double c_dim = 0;
  int c_aerial = 0;
  std::vector<StepMetrics> per_step;

  double Value(Criterion c) const;
};

/// Throws ValidationError when `sequence` does not name every foldable joint
/// exactly once.
SequenceScore ScoreSequence(const KinematicTree& tree,
                            const FoldSequence& sequence,
                            double support_tolerance);

struct RankedReport {
  RankingPolicy policy = RankingPolicy::Default();
  std::vector<SequenceScore> rows;  // best first
  std::vector<std::string> diagnostics;
};

/// Scores every sequence and sorts ascending by the policy's criteria, then
/// by canonical sequence order. Criterion values within a relative 1e-9 of
/// each other compare equal so round-off never decides the order.
RankedReport ScoreAndRank(const std::vector<FoldSequence>& sequences,
                          const KinematicTree& tree, const RankingPolicy& policy,
                          double support_tolerance);

/// Sorts already-scored rows in place with the same ordering as ScoreAndRank.
void RankScores(std::vector<SequenceScore>& rows, const RankingPolicy& policy);

}  // namespace cartonfold
