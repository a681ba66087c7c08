#include "tradeport/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "tradeport/errors.hpp"

namespace tradeport::cluster {

Linkage parse_linkage(std::string_view name) {
  if (name == "single") return Linkage::single;
  if (name == "complete") return Linkage::complete;
  if (name == "average") return Linkage::average;
  throw ConfigError("unknown linkage '" + std::string(name) +
                    "' (use single, complete, or average)");
}

std::string_view linkage_name(Linkage linkage) {
  switch (linkage) {
    case Linkage::single: return "single";
    case Linkage::complete: return "complete";
    case Linkage::average: return "average";
  }
  return "?";
}

DistanceMatrix DistanceMatrix::from_values(int year,
                                           std::vector<std::string> items,
                                           std::vector<double> values) {
  const std::size_t n = items.size();
  if (values.size() != n * n) {
    throw ConfigError("distance matrix has " + std::to_string(values.size()) +
                      " entries, expected " + std::to_string(n * n));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double d = values[i * n + j];
      if (d < 0.0 || std::isnan(d)) {
        throw ConfigError("distance matrix has a negative or NaN entry");
      }
      if (d != values[j * n + i]) {
        throw ConfigError("distance matrix is not symmetric");
      }
    }
    if (values[i * n + i] != 0.0) {
      throw ConfigError("distance matrix diagonal must be zero");
    }
  }
  DistanceMatrix matrix;
  matrix.year = year;
  matrix.items = std::move(items);
  matrix.values = std::move(values);
  return matrix;
}

double portfolio_distance(const shares::Portfolio& a,
                          const shares::Portfolio& b) {
  if (a.level != b.level) {
    throw ConfigError("portfolio distance needs matching SITC levels, got " +
                      std::to_string(a.level) + " and " +
                      std::to_string(b.level));
  }
  double sum = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  // categories are sorted; walk the union, missing entries are 0
  while (i < a.categories.size() || j < b.categories.size()) {
    double diff = 0.0;
    if (j >= b.categories.size() ||
        (i < a.categories.size() && a.categories[i] < b.categories[j])) {
      diff = a.values[i];
      ++i;
    } else if (i >= a.categories.size() ||
               b.categories[j] < a.categories[i]) {
      diff = -b.values[j];
      ++j;
    } else {
      diff = a.values[i] - b.values[j];
      ++i;
      ++j;
    }
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

DistanceMatrix portfolio_distances(const ingest::TradePanel& panel,
                                   int year) {
  const auto& countries = panel.countries(year);
  const std::size_t n = countries.size();
  std::vector<std::vector<double>> share_rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = panel.export_row(countries[i], year);
    const double total = panel.total_export(countries[i], year);
    share_rows[i].reserve(row.size());
    for (const double value : row) {
      share_rows[i].push_back(value / total);
    }
  }
  std::vector<double> values(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double sum = 0.0;
      for (std::size_t p = 0; p < share_rows[i].size(); ++p) {
        const double diff = share_rows[i][p] - share_rows[j][p];
        sum += diff * diff;
      }
      const double d = std::sqrt(sum);
      values[i * n + j] = d;
      values[j * n + i] = d;
    }
  }
  DistanceMatrix matrix;
  matrix.year = year;
  matrix.items = countries;
  matrix.values = std::move(values);
  return matrix;
}

namespace {

struct ActiveCluster {
  int node = 0;          // dendrogram node id
  int size = 0;
  std::string rep;       // lexicographically smallest member
};

}  // namespace

Dendrogram agglomerate(const DistanceMatrix& matrix, Linkage linkage) {
  const int n = matrix.size();
  if (n < 2) {
    throw DataError("agglomeration needs at least 2 items, got " +
                    std::to_string(n));
  }
  // revalidate; hand-built matrices reach this entry point directly
  for (int i = 0; i < n; ++i) {
    if (matrix.at(i, i) != 0.0) {
      throw ConfigError("distance matrix diagonal must be zero");
    }
    for (int j = 0; j < n; ++j) {
      const double d = matrix.at(i, j);
      if (d < 0.0 || std::isnan(d)) {
        throw ConfigError("distance matrix has a negative or NaN entry");
      }
      if (d != matrix.at(j, i)) {
        throw ConfigError("distance matrix is not symmetric");
      }
    }
  }

  Dendrogram tree;
  tree.year = matrix.year;
  tree.leaves = matrix.items;
  tree.merges.reserve(static_cast<std::size_t>(n - 1));

  std::vector<ActiveCluster> active(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    active[static_cast<std::size_t>(i)] = {i, 1, matrix.items[static_cast<std::size_t>(i)]};
  }
  // score[i][j]: min/max distance for single/complete linkage; for average
  // linkage the SUM of cross-pair distances (one division at comparison
  // time instead of compounded rounded averages)
  std::vector<std::vector<double>> score(static_cast<std::size_t>(n),
                                         std::vector<double>(static_cast<std::size_t>(n), 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      score[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = matrix.at(i, j);
    }
  }
  std::vector<bool> alive(static_cast<std::size_t>(n), true);

  auto current_distance = [&](int i, int j) {
    const double s = score[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    if (linkage != Linkage::average) return s;
    return s / (static_cast<double>(active[static_cast<std::size_t>(i)].size) *
                static_cast<double>(active[static_cast<std::size_t>(j)].size));
  };

  for (int step = 0; step < n - 1; ++step) {
    int best_i = -1;
    int best_j = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      if (!alive[static_cast<std::size_t>(i)]) continue;
      for (int j = i + 1; j < n; ++j) {
        if (!alive[static_cast<std::size_t>(j)]) continue;
        const double d = current_distance(i, j);
        bool better = d < best;
        if (!better && d == best) {
          // tie: lexicographic order of the (smaller, larger) reps
          const auto key = [&](int a, int b) {
            const auto& ra = active[static_cast<std::size_t>(a)].rep;
            const auto& rb = active[static_cast<std::size_t>(b)].rep;
            return ra < rb ? std::make_pair(ra, rb) : std::make_pair(rb, ra);
          };
          better = key(i, j) < key(best_i, best_j);
        }
        if (better) {
          best = d;
          best_i = i;
          best_j = j;
        }
      }
    }

    auto& a = active[static_cast<std::size_t>(best_i)];
    auto& b = active[static_cast<std::size_t>(best_j)];
    const bool a_first = a.rep < b.rep;
    Merge merge;
    merge.left = a_first ? a.node : b.node;
    merge.right = a_first ? b.node : a.node;
    merge.distance = best;
    merge.size = a.size + b.size;
    tree.merges.push_back(merge);

    // merged cluster stays in slot best_i
    for (int k = 0; k < n; ++k) {
      if (!alive[static_cast<std::size_t>(k)] || k == best_i || k == best_j) continue;
      const double sak = score[static_cast<std::size_t>(best_i)][static_cast<std::size_t>(k)];
      const double sbk = score[static_cast<std::size_t>(best_j)][static_cast<std::size_t>(k)];
      double updated = 0.0;
      switch (linkage) {
        case Linkage::single:
          updated = std::min(sak, sbk);
          break;
        case Linkage::complete:
          updated = std::max(sak, sbk);
          break;
        case Linkage::average:
          updated = sak + sbk;
          break;
      }
      score[static_cast<std::size_t>(best_i)][static_cast<std::size_t>(k)] = updated;
      score[static_cast<std::size_t>(k)][static_cast<std::size_t>(best_i)] = updated;
    }
    a.node = n + step;
    a.size += b.size;
    a.rep = std::min(a.rep, b.rep);
    alive[static_cast<std::size_t>(best_j)] = false;
  }
  return tree;
}

ClusterSet cut(const Dendrogram& tree, double threshold) {
  if (threshold < 0.0) {
    throw ConfigError("cut threshold must be nonnegative");
  }
  const int n = static_cast<int>(tree.leaves.size());
  // union-find over dendrogram nodes
  std::vector<int> parent(static_cast<std::size_t>(2 * n - 1));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (std::size_t k = 0; k < tree.merges.size(); ++k) {
    const auto& merge = tree.merges[k];
    const int node = n + static_cast<int>(k);
    if (merge.distance <= threshold) {
      parent[static_cast<std::size_t>(find(merge.left))] = node;
      parent[static_cast<std::size_t>(find(merge.right))] = node;
    }
  }
  std::map<int, std::vector<std::string>> groups;
  for (int leaf = 0; leaf < n; ++leaf) {
    groups[find(leaf)].push_back(tree.leaves[static_cast<std::size_t>(leaf)]);
  }
  ClusterSet set;
  set.year = tree.year;
  set.threshold = threshold;
  std::vector<std::vector<std::string>> clusters;
  clusters.reserve(groups.size());
  for (auto& [_, members] : groups) {
    std::sort(members.begin(), members.end());
    clusters.push_back(std::move(members));
  }
  std::sort(clusters.begin(), clusters.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  set.clusters = std::move(clusters);
  return set;
}

ClusterStats cluster_stats(const ingest::TradePanel& panel,
                           std::span<const std::string> cluster, int year) {
  if (cluster.empty()) {
    throw DataError("cluster is empty");
  }
  ClusterStats stats;
  stats.countries.assign(cluster.begin(), cluster.end());
  std::sort(stats.countries.begin(), stats.countries.end());
  stats.count = static_cast<int>(stats.countries.size());

  const double world_gdp = panel.world_gdp(year);
  std::vector<double> sums(panel.categories().size(), 0.0);
  double total = 0.0;
  for (const auto& country : stats.countries) {
    const auto row = panel.export_row(country, year);
    for (std::size_t p = 0; p < sums.size(); ++p) {
      sums[p] += row[p];
    }
    total += panel.total_export(country, year);
    stats.gdp += panel.gdp(country, year) / world_gdp;
  }
  if (total <= 0.0) {
    throw DataError("cluster has zero total export in year " +
                    std::to_string(year));
  }
  stats.portfolio.owner = stats.countries.front();  // representative member
  stats.portfolio.year = year;
  stats.portfolio.level = panel.level();
  stats.portfolio.categories = panel.categories();
  stats.portfolio.values.reserve(sums.size());
  for (const double sum : sums) {
    stats.portfolio.values.push_back(sum / total);
  }
  return stats;
}

std::string name_cluster(const ClusterStats& stats) {
  const auto& portfolio = stats.portfolio;
  if (portfolio.level != 1) {
    throw ConfigError("cluster naming needs a level-1 portfolio, got level " +
                      std::to_string(portfolio.level));
  }
  std::vector<std::size_t> order(portfolio.categories.size());
  std::iota(order.begin(), order.end(), 0);
  // descending share; equal shares fall back to ascending digit
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return portfolio.values[a] > portfolio.values[b];
  });
  std::string name;
  double cumulative = 0.0;
  for (const std::size_t idx : order) {
    name += portfolio.categories[idx];
    cumulative += portfolio.values[idx];
    if (cumulative > 0.5) {
      return name;
    }
  }
  return name;  // degenerate portfolio summing below one half
}

double cluster_cross_distance(const ClusterStats& a, const ClusterStats& b) {
  return portfolio_distance(a.portfolio, b.portfolio);
}

ClusterSet cluster_year(const ingest::TradePanel& panel, int year,
                        double threshold, Linkage linkage) {
  const auto matrix = portfolio_distances(panel, year);
  const auto tree = agglomerate(matrix, linkage);
  ClusterSet set = cut(tree, threshold);
  const auto level1 = panel.aggregated(1);
  set.names.reserve(set.clusters.size());
  for (const auto& members : set.clusters) {
    set.names.push_back(name_cluster(cluster_stats(level1, members, year)));
  }
  return set;
}

}  // namespace tradeport::cluster
