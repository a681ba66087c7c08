#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tradeport/ingest.hpp"
#include "tradeport/shares.hpp"

namespace tradeport::cluster {

enum class Linkage { single, complete, average };

Linkage parse_linkage(std::string_view name);
std::string_view linkage_name(Linkage linkage);

// Symmetric pairwise distance matrix over countries of one year.
struct DistanceMatrix {
  int year = 0;
  std::vector<std::string> items;  // sorted country names
  std::vector<double> values;      // row-major items.size()^2

  static DistanceMatrix from_values(int year, std::vector<std::string> items,
                                    std::vector<double> values);

  int size() const { return static_cast<int>(items.size()); }
  double at(int i, int j) const {
    return values[static_cast<std::size_t>(i) *
                      static_cast<std::size_t>(items.size()) +
                  static_cast<std::size_t>(j)];
  }
};

// Euclidean distance between two dense share vectors; categories missing
// on one side count as zero.
double portfolio_distance(const shares::Portfolio& a,
                          const shares::Portfolio& b);

DistanceMatrix portfolio_distances(const ingest::TradePanel& panel, int year);

struct Merge {
  int left = 0;      // node id: 0..n-1 leaves, n+k for merge k
  int right = 0;
  double distance = 0.0;
  int size = 0;      // leaves under the new node

  bool operator==(const Merge&) const = default;
};

struct Dendrogram {
  int year = 0;
  std::vector<std::string> leaves;
  std::vector<Merge> merges;  // leaves.size()-1 entries, nondecreasing distance
};

// Iterative pair linking in increasing distance order. Ties resolve by the
// lexicographic order of the clusters' smallest members.
Dendrogram agglomerate(const DistanceMatrix& matrix,
                       Linkage linkage = Linkage::single);

struct ClusterSet {
  int year = 0;
  double threshold = 0.0;
  std::vector<std::vector<std::string>> clusters;  // disjoint, each sorted
  std::vector<std::string> names;                  // empty until assigned
};

// Maximal subtrees whose internal merge distances stay within the
// threshold; threshold 0 yields singletons.
ClusterSet cut(const Dendrogram& tree, double threshold);

// Value-weighted cluster portfolio and summed normalized GDP.
struct ClusterStats {
  std::vector<std::string> countries;
  shares::Portfolio portfolio;
  double gdp = 0.0;
  int count = 0;
};

ClusterStats cluster_stats(const ingest::TradePanel& panel,
                           std::span<const std::string> cluster, int year);

// Shortest descending-share prefix of level-1 categories whose cumulative
// share strictly exceeds one half, concatenated as digits.
std::string name_cluster(const ClusterStats& stats);

double cluster_cross_distance(const ClusterStats& a, const ClusterStats& b);

// Full per-year pipeline: distances at the panel's own level, cut at the
// threshold, names from the level-1 aggregate.
ClusterSet cluster_year(const ingest::TradePanel& panel, int year,
                        double threshold, Linkage linkage = Linkage::single);

}  // namespace tradeport::cluster
