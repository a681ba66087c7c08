#pragma once

// Independent reference implementations used to validate the library.
// These deliberately take different computational routes than the code
// under test (uncentered normal equations, from-scratch cluster distance
// recomputation, a self-contained permutation sampler).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tradeport/cluster.hpp"

namespace testsupport {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

// Uncentered normal equations.
inline LineFit ols_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("ols_fit needs matched inputs");
  }
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) {
    throw std::invalid_argument("ols_fit: degenerate regressor");
  }
  LineFit fit;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  return fit;
}

// Product-moment form of the correlation, uncentered sums.
inline double pearson_oracle(std::span<const double> x,
                             std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    syy += y[i] * y[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) /
         std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy));
}

// Two-sided permutation p-value with the add-one estimator.
inline double permutation_p_oracle(std::span<const double> x,
                                   std::span<const double> y, int draws,
                                   std::uint64_t seed) {
  const double observed = std::fabs(pearson_oracle(x, y));
  std::vector<double> shuffled(y.begin(), y.end());
  std::mt19937_64 engine(seed);
  int hits = 0;
  for (int draw = 0; draw < draws; ++draw) {
    for (std::size_t i = shuffled.size() - 1; i > 0; --i) {
      const std::size_t j = engine() % (i + 1);
      std::swap(shuffled[i], shuffled[j]);
    }
    if (std::fabs(pearson_oracle(x, shuffled)) >= observed - 1e-12) {
      ++hits;
    }
  }
  return (hits + 1.0) / (draws + 1.0);
}

struct RefMerge {
  int left = 0;
  int right = 0;
  double distance = 0.0;
  int size = 0;
};

// Exhaustive reference agglomeration: tracks explicit member lists and
// recomputes every inter-cluster distance from the original matrix at
// every step. Tie-break matches the library contract: lexicographic order
// of the (smaller, larger) smallest-member pair.
inline std::vector<RefMerge> reference_agglomerate(
    const std::vector<std::string>& items, const std::vector<double>& matrix,
    tradeport::cluster::Linkage linkage) {
  using tradeport::cluster::Linkage;
  const std::size_t n = items.size();
  struct Group {
    std::vector<int> leaves;
    int node = 0;
    std::string rep;
  };
  std::vector<Group> groups;
  for (std::size_t i = 0; i < n; ++i) {
    groups.push_back({{static_cast<int>(i)}, static_cast<int>(i), items[i]});
  }
  auto original = [&](int a, int b) {
    return matrix[static_cast<std::size_t>(a) * n + static_cast<std::size_t>(b)];
  };
  auto group_distance = [&](const Group& a, const Group& b) {
    double best = linkage == Linkage::complete ? 0.0
                  : linkage == Linkage::single
                      ? std::numeric_limits<double>::infinity()
                      : 0.0;
    double sum = 0.0;
    for (const int p : a.leaves) {
      for (const int q : b.leaves) {
        const double d = original(p, q);
        if (linkage == Linkage::single) best = std::min(best, d);
        if (linkage == Linkage::complete) best = std::max(best, d);
        sum += d;
      }
    }
    if (linkage == Linkage::average) {
      return sum / (static_cast<double>(a.leaves.size()) *
                    static_cast<double>(b.leaves.size()));
    }
    return best;
  };

  std::vector<RefMerge> merges;
  int next_node = static_cast<int>(n);
  while (groups.size() > 1) {
    std::size_t best_i = 0, best_j = 1;
    double best = std::numeric_limits<double>::infinity();
    bool first = true;
    for (std::size_t i = 0; i < groups.size(); ++i) {
      for (std::size_t j = i + 1; j < groups.size(); ++j) {
        const double d = group_distance(groups[i], groups[j]);
        auto key = [&](std::size_t a, std::size_t b) {
          const auto& ra = groups[a].rep;
          const auto& rb = groups[b].rep;
          return ra < rb ? std::make_pair(ra, rb) : std::make_pair(rb, ra);
        };
        if (first || d < best ||
            (d == best && key(i, j) < key(best_i, best_j))) {
          best = d;
          best_i = i;
          best_j = j;
          first = false;
        }
      }
    }
    Group& a = groups[best_i];
    Group& b = groups[best_j];
    RefMerge merge;
    const bool a_first = a.rep < b.rep;
    merge.left = a_first ? a.node : b.node;
    merge.right = a_first ? b.node : a.node;
    merge.distance = best;
    merge.size = static_cast<int>(a.leaves.size() + b.leaves.size());
    merges.push_back(merge);
    a.leaves.insert(a.leaves.end(), b.leaves.begin(), b.leaves.end());
    std::sort(a.leaves.begin(), a.leaves.end());
    a.node = next_node++;
    a.rep = std::min(a.rep, b.rep);
    groups.erase(groups.begin() + static_cast<std::ptrdiff_t>(best_j));
  }
  return merges;
}

// Partition of leaf indices induced by the reference merges at a cut.
inline std::vector<std::vector<int>> reference_cut(
    std::size_t n, const std::vector<RefMerge>& merges, double threshold) {
  std::vector<int> owner(n);
  for (std::size_t i = 0; i < n; ++i) owner[i] = static_cast<int>(i);
  std::vector<std::vector<int>> members(2 * n - 1);
  for (std::size_t i = 0; i < n; ++i) members[i] = {static_cast<int>(i)};
  int next_node = static_cast<int>(n);
  for (const auto& merge : merges) {
    auto& slot = members[static_cast<std::size_t>(next_node)];
    if (merge.distance <= threshold) {
      const auto& left = members[static_cast<std::size_t>(merge.left)];
      const auto& right = members[static_cast<std::size_t>(merge.right)];
      // only track groups that are themselves cut-connected
      if (!left.empty() && !right.empty()) {
        slot = left;
        slot.insert(slot.end(), right.begin(), right.end());
        members[static_cast<std::size_t>(merge.left)].clear();
        members[static_cast<std::size_t>(merge.right)].clear();
      }
    }
    ++next_node;
  }
  std::vector<std::vector<int>> result;
  for (auto& group : members) {
    if (group.empty()) continue;
    std::sort(group.begin(), group.end());
    result.push_back(std::move(group));
  }
  std::sort(result.begin(), result.end());
  return result;
}

}  // namespace testsupport
