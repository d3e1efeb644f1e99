#include "cartonfold/planner.h"

#include <algorithm>
#include <atomic>
#include <set>
#include <thread>

#include <fmt/format.h>

#include "cartonfold/errors.h"

namespace cartonfold {
namespace {

// Compact subset encoding over tree.foldable(): bit b <-> foldable()[b].
class SubsetCodec {
 public:
  explicit SubsetCodec(const KinematicTree& tree) : slot_of_(tree.size(), -1) {
    const auto f = tree.foldable();
    for (std::size_t b = 0; b < f.size(); ++b) {
      slot_of_[f[b]] = static_cast<int>(b);
    }
  }
  int slot(int index) const { return slot_of_[index]; }
  std::uint64_t Encode(PanelSet folded) const {
    std::uint64_t out = 0;
    for (std::size_t i = 0; i < slot_of_.size(); ++i) {
      if (slot_of_[i] >= 0 && folded.Contains(static_cast<int>(i))) {
        out |= std::uint64_t{1} << slot_of_[i];
      }
    }
    return out;
  }

 private:
  std::vector<int> slot_of_;
};

PanelSet Decode(const KinematicTree& tree, std::uint64_t subset) {
  PanelSet out;
  const auto f = tree.foldable();
  for (std::size_t b = 0; b < f.size(); ++b) {
    if ((subset >> b) & 1u) out = out.With(f[b]);
  }
  return out;
}

class Search {
 public:
  Search(const KinematicTree& tree, const SweepParams& params,
         const ObstacleSet& obstacles, bool memoize)
      : tree_(tree), params_(params), obstacles_(obstacles), codec_(tree) {
    if (memoize) {
      const std::size_t k = tree.foldable().size();
      memo_.assign((std::size_t{1} << k) * k, kUnknown);
    }
  }

  EnumerationResult Run() {
    std::vector<int> path;
    Visit(FoldState{}, path);
    for (std::uint64_t bits : dead_ends_) {
      result_.dead_end_states.push_back(FoldState{PanelSet(bits)});
    }
    result_.stats.dead_ends = static_cast<std::int64_t>(dead_ends_.size());
    return std::move(result_);
  }

 private:
  static constexpr std::uint8_t kUnknown = 2;

  bool Allowed(PanelSet folded, int joint) {
    if (memo_.empty()) {
      ++result_.stats.collision_checks;
      return CollisionCheck(tree_, folded, joint, params_, obstacles_);
    }
    const std::size_t k = tree_.foldable().size();
    std::uint8_t& cell = memo_[codec_.Encode(folded) * k + codec_.slot(joint)];
    if (cell == kUnknown) {
      ++result_.stats.collision_checks;
      cell = CollisionCheck(tree_, folded, joint, params_, obstacles_) ? 1 : 0;
    }
    return cell == 1;
  }

  void Visit(const FoldState& state, std::vector<int>& path) {
    ++result_.stats.nodes_expanded;
    if (state.IsFinal(tree_)) {
      result_.sequences.push_back(FoldSequence{path});
      return;
    }
    bool any = false;
    for (int joint : ActionSpace(tree_, state)) {
      if (!Allowed(state.folded, joint)) {
        ++result_.stats.pruned_branches;
        continue;
      }
      any = true;
      path.push_back(tree_.id(joint));
      Visit(Transition(tree_, state, joint), path);
      path.pop_back();
    }
    if (!any) dead_ends_.insert(state.folded.bits());
  }

  const KinematicTree& tree_;
  const SweepParams& params_;
  const ObstacleSet& obstacles_;
  SubsetCodec codec_;
  std::vector<std::uint8_t> memo_;
  std::set<std::uint64_t> dead_ends_;
  EnumerationResult result_;
};

}  // namespace

std::string FoldSequence::ToString() const {
  return fmt::format("[{}]", fmt::join(order, ", "));
}

std::vector<int> ActionSpace(const KinematicTree& tree, const FoldState& state) {
  std::vector<int> out;
  for (int joint : tree.foldable()) {
    if (!state.folded.Contains(joint)) out.push_back(joint);
  }
  return out;
}

FoldState Transition(const KinematicTree& tree, const FoldState& state,
                     int joint) {
  if (joint < 0 || joint >= tree.size() || !tree.IsFoldable(joint)) {
    throw PreconditionError(
        fmt::format("panel index {} is not a foldable joint", joint));
  }
  if (state.folded.Contains(joint)) {
    throw PreconditionError(
        fmt::format("joint {} is already folded", tree.id(joint)));
  }
  return FoldState{state.folded.With(joint)};
}

std::vector<int> IdsToIndices(const KinematicTree& tree,
                              const std::vector<int>& ids) {
  std::vector<int> out;
  out.reserve(ids.size());
  for (int id : ids) out.push_back(tree.IndexOf(id));
  return out;
}

EnumerationResult EnumerateSequences(const KinematicTree& tree,
                                     const SweepParams& params,
                                     const ObstacleSet& obstacles,
                                     const PlannerOptions& options) {
  const int k = static_cast<int>(tree.foldable().size());
  if (k == 0) {
    throw EmptyProblemError("carton has no foldable joints");
  }
  bool memoize = options.mode == SearchMode::kMemoized;
  std::vector<std::string> warnings;
  if (memoize && k > std::min(options.subset_cap, 30)) {
    if (!options.allow_naive_fallback) {
      throw LimitError(fmt::format(
          "{} foldable joints exceed the memoization cap of {}", k,
          options.subset_cap));
    }
    memoize = false;
    warnings.push_back(fmt::format(
        "{} foldable joints exceed the memoization cap of {}; searching "
        "without memoization",
        k, options.subset_cap));
  }
  EnumerationResult result = Search(tree, params, obstacles, memoize).Run();
  result.stats.fell_back_to_naive =
      options.mode == SearchMode::kMemoized && !memoize;
  result.warnings = std::move(warnings);
  return result;
}

FeasibilityTable::FeasibilityTable(const KinematicTree& tree,
                                   const SweepParams& params,
                                   const ObstacleSet& obstacles,
                                   int num_threads, int subset_cap)
    : tree_(&tree), k_(static_cast<int>(tree.foldable().size())) {
  if (k_ > std::min(subset_cap, 30)) {
    throw LimitError(fmt::format(
        "{} foldable joints exceed the memoization cap of {}", k_, subset_cap));
  }
  table_.assign(subset_count() * k_, 0);
  const auto foldable = tree.foldable();
  std::atomic<std::int64_t> checks{0};

  // Workers own disjoint subsets, so no two write the same cell.
  auto work = [&](std::uint64_t first, std::uint64_t stride) {
    std::int64_t local = 0;
    for (std::uint64_t s = first; s < subset_count(); s += stride) {
      const PanelSet folded = Decode(tree, s);
      for (int b = 0; b < k_; ++b) {
        if ((s >> b) & 1u) continue;
        ++local;
        table_[s * k_ + b] =
            CollisionCheck(tree, folded, foldable[b], params, obstacles) ? 1 : 0;
      }
    }
    checks += local;
  };

  const int workers = std::max(1, num_threads);
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back(work, static_cast<std::uint64_t>(w),
                        static_cast<std::uint64_t>(workers));
    }
  }
  checks_ = checks.load();
}

std::uint64_t FeasibilityTable::Compact(PanelSet folded) const {
  return SubsetCodec(*tree_).Encode(folded);
}

bool FeasibilityTable::Feasible(PanelSet folded, int joint) const {
  const auto f = tree_->foldable();
  const auto it = std::find(f.begin(), f.end(), joint);
  if (it == f.end()) return false;
  return Feasible(Compact(folded), static_cast<int>(it - f.begin()));
}

}  // namespace cartonfold
