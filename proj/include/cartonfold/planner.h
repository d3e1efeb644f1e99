#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cartonfold/collision.h"
#include "cartonfold/kinematic_tree.h"

namespace cartonfold {

// S_t: which joints have been driven to theta_final. Every other joint sits
// at theta_init, so the folded set alone determines the carton pose.
struct FoldState {
  PanelSet folded;

  JointVector Theta(const KinematicTree& tree) const {
    return tree.ThetaFor(folded);
  }
  bool IsFinal(const KinematicTree& tree) const {
    return folded == tree.foldable_set();
  }
  friend bool operator==(const FoldState&, const FoldState&) = default;
};

// Joint ids in folding order.
struct FoldSequence {
  std::vector<int> order;

  std::string ToString() const;  // "[2, 7, 4]"
  friend auto operator<=>(const FoldSequence&, const FoldSequence&) = default;
};

/// Unfolded foldable joints as panel indices, ascending by joint id.
std::vector<int> ActionSpace(const KinematicTree& tree, const FoldState& state);

/// Folds `joint` (panel index). Throws PreconditionError when the joint is
/// already folded or is not foldable.
FoldState Transition(const KinematicTree& tree, const FoldState& state,
                     int joint);

/// Converts joint ids to panel indices (ValidationError on unknown ids).
std::vector<int> IdsToIndices(const KinematicTree& tree,
                              const std::vector<int>& ids);

enum class SearchMode { kNaive, kMemoized };

struct PlannerOptions {
  SearchMode mode = SearchMode::kMemoized;
  // Memoization needs a 2^k x k table; above this many foldable joints the
  // search runs naively, or throws LimitError when fallback is disallowed.
  int subset_cap = 20;
  bool allow_naive_fallback = true;
};

struct PlannerStats {
  std::int64_t nodes_expanded = 0;
  std::int64_t collision_checks = 0;  // sweeps actually run
  std::int64_t pruned_branches = 0;   // actions rejected by the sweep
  std::int64_t dead_ends = 0;         // non-final states with no valid action
  bool fell_back_to_naive = false;
};

struct EnumerationResult {
  std::vector<FoldSequence> sequences;  // depth-first order
  PlannerStats stats;
  std::vector<FoldState> dead_end_states;
  std::vector<std::string> warnings;
};

/// All sequences that fold every foldable joint with each step passing
/// CollisionCheck, via depth-first backtracking with children expanded in
/// ascending joint id. Throws EmptyProblemError when nothing is foldable.
EnumerationResult EnumerateSequences(const KinematicTree& tree,
                                     const SweepParams& params,
                                     const ObstacleSet& obstacles,
                                     const PlannerOptions& options = {});

// Collision verdicts for every (folded subset, next joint) pair over the
// foldable joints. Subsets are encoded over the foldable list order: bit b
// stands for tree.foldable()[b].
class FeasibilityTable {
 public:
  /// Runs k * 2^(k-1) sweeps for k foldable joints, split across
  /// `num_threads` workers. Throws LimitError when k exceeds `subset_cap`.
  FeasibilityTable(const KinematicTree& tree, const SweepParams& params,
                   const ObstacleSet& obstacles, int num_threads = 1,
                   int subset_cap = 20);

  int joint_count() const { return k_; }
  std::uint64_t subset_count() const { return std::uint64_t{1} << k_; }
  /// Verdict for folding foldable slot `slot` from compact subset `subset`;
  /// false when the slot is already in the subset.
  bool Feasible(std::uint64_t subset, int slot) const {
    return table_[subset * k_ + slot] == 1;
  }
  /// Same lookup keyed by a PanelSet and a panel index.
  bool Feasible(PanelSet folded, int joint) const;
  std::int64_t checks_run() const { return checks_; }

  std::uint64_t Compact(PanelSet folded) const;

 private:
  const KinematicTree* tree_;
  int k_;
  std::vector<std::uint8_t> table_;
  std::int64_t checks_ = 0;
};

}  // namespace cartonfold
