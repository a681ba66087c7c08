#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tradeport/cluster.hpp"
#include "tradeport/ingest.hpp"

namespace tradeport::transition {

// Countries that moved from one source-year cluster to one dest-year
// cluster, with the end-over-start ratio of their summed normalized GDP.
struct TransitionCell {
  std::string source;
  std::string dest;
  std::vector<std::string> countries;  // sorted
  double g_source = 0.0;
  double g_dest = 0.0;
  double gamma = 0.0;
};

struct Residence {
  std::string country;
  std::string cluster;  // last-known cluster
};

struct TransitionReport {
  int source_year = 0;
  int dest_year = 0;
  std::vector<std::string> source_clusters;  // labels in source-set order
  std::vector<std::string> dest_clusters;
  std::vector<TransitionCell> cells;  // nonempty cells, source-major order
  std::vector<Residence> source_only;  // clustered at source year only
  std::vector<Residence> dest_only;

  const TransitionCell* find(std::string_view source,
                             std::string_view dest) const;
};

TransitionReport transition_table(const ingest::TradePanel& panel,
                                  const cluster::ClusterSet& source,
                                  const cluster::ClusterSet& dest);

struct SeriesPoint {
  int year = 0;
  double g = 0.0;            // summed normalized GDP of members with data
  double g_normalized = 0.0; // divided by the source-year value when requested
  int n_present = 0;
};

std::vector<SeriesPoint> transition_series(const ingest::TradePanel& panel,
                                           const TransitionReport& report,
                                           std::string_view source,
                                           std::string_view dest,
                                           bool normalize_to_start);

// Countries whose normalized GDP grew by at least `threshold` over the
// panel's full year span, tagged with their dest-year cluster.
struct GrowthEntry {
  std::string country;
  double gamma = 0.0;
  std::string dest_cluster;  // empty when the country is not in the dest set
};

std::vector<GrowthEntry> growth_ranking(const ingest::TradePanel& panel,
                                        const cluster::ClusterSet& dest,
                                        double threshold);

}  // namespace tradeport::transition
