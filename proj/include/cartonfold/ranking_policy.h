#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace cartonfold {

// Ranking criteria; every criterion is minimized.
enum class Criterion { kAerial, kMaxDim, kVolume };

std::string_view CriterionName(Criterion c);
/// Accepts "aerial", "maxdim", "volume". Throws ValidationError otherwise.
Criterion ParseCriterion(std::string_view name);

// Ordered lexicographic criteria; ties fall back to the canonical
// (lexicographic) order of the joint sequence.
class RankingPolicy {
 public:
  /// Throws ValidationError for an empty list or a repeated criterion.
  explicit RankingPolicy(std::vector<Criterion> order);

  /// Aerial folds first, then cumulative maximum dimension.
  static RankingPolicy Default();

  const std::vector<Criterion>& order() const { return order_; }
  std::string ToString() const;

  friend bool operator==(const RankingPolicy&, const RankingPolicy&) = default;

 private:
  std::vector<Criterion> order_;
};

}  // namespace cartonfold
