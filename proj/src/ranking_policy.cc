#include "cartonfold/ranking_policy.h"

#include <algorithm>
#include <string>

#include "cartonfold/errors.h"

namespace cartonfold {

std::string_view CriterionName(Criterion c) {
  switch (c) {
    case Criterion::kAerial:
      return "aerial";
    case Criterion::kMaxDim:
      return "maxdim";
    case Criterion::kVolume:
      return "volume";
  }
  return "unknown";
}

Criterion ParseCriterion(std::string_view name) {
  if (name == "aerial") return Criterion::kAerial;
  if (name == "maxdim") return Criterion::kMaxDim;
  if (name == "volume") return Criterion::kVolume;
  throw ValidationError("unknown ranking criterion '" + std::string(name) +
                        "' (expected aerial, maxdim or volume)");
}

RankingPolicy::RankingPolicy(std::vector<Criterion> order)
    : order_(std::move(order)) {
  if (order_.empty()) {
    throw ValidationError("ranking policy needs at least one criterion");
  }
  for (auto it = order_.begin(); it != order_.end(); ++it) {
    if (std::find(order_.begin(), it, *it) != it) {
      throw ValidationError("ranking criterion '" +
                            std::string(CriterionName(*it)) + "' is repeated");
    }
  }
}

RankingPolicy RankingPolicy::Default() {
  return RankingPolicy({Criterion::kAerial, Criterion::kMaxDim});
}

std::string RankingPolicy::ToString() const {
  std::string out;
  for (Criterion c : order_) {
    if (!out.empty()) out += ",";
    out += CriterionName(c);
  }
  return out;
}

}  // namespace cartonfold
