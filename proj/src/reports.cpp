#include "tradeport/reports.hpp"

#include <algorithm>

#include "tradeport/errors.hpp"
#include "tradeport/shares.hpp"
#include "tradeport/table.hpp"

namespace tradeport::reports {

namespace {

using Rows = std::vector<std::vector<std::string>>;

std::string fmt(double v) { return table::format_double(v); }

}  // namespace

void write_global_shares(const std::filesystem::path& path,
                         const ingest::TradePanel& panel, char delimiter) {
  Rows rows;
  for (const int year : panel.years()) {
    if (panel.countries(year).empty()) continue;
    const auto portfolio = shares::global_share(panel, year);
    for (std::size_t p = 0; p < portfolio.categories.size(); ++p) {
      rows.push_back({portfolio.owner, std::to_string(year),
                      portfolio.categories[p], fmt(portfolio.values[p])});
    }
  }
  table::write_table_atomic(path, delimiter,
                            {"owner", "year", "category", "share"}, rows);
}

void write_local_shares(const std::filesystem::path& path,
                        const ingest::TradePanel& panel, char delimiter) {
  Rows rows;
  for (const int year : panel.years()) {
    for (const auto& country : panel.countries(year)) {
      const auto portfolio = shares::local_share(panel, country, year);
      for (std::size_t p = 0; p < portfolio.categories.size(); ++p) {
        rows.push_back({country, std::to_string(year),
                        portfolio.categories[p], fmt(portfolio.values[p])});
      }
    }
  }
  table::write_table_atomic(path, delimiter,
                            {"owner", "year", "category", "share"}, rows);
}

void write_gdp_profiles(const std::filesystem::path& path,
                        const ingest::TradePanel& panel, char delimiter) {
  Rows rows;
  for (const int year : panel.years()) {
    if (panel.countries(year).empty()) continue;
    const auto profile = shares::gdp_profile(panel, year);
    for (std::size_t i = 0; i < profile.countries.size(); ++i) {
      rows.push_back({std::to_string(year), profile.countries[i],
                      fmt(profile.values[i])});
    }
  }
  table::write_table_atomic(path, delimiter, {"year", "country", "g"}, rows);
}

void write_sector_shares(const std::filesystem::path& path,
                         const ingest::TradePanel& panel, char delimiter) {
  Rows rows;
  for (const int year : panel.years()) {
    if (panel.countries(year).empty()) continue;
    const auto portfolio = shares::global_share(panel, year);
    rows.push_back(
        {std::to_string(year),
         fmt(shares::sector_share(portfolio, sitc::Sector::primary)),
         fmt(shares::sector_share(portfolio, sitc::Sector::manufacturing))});
  }
  table::write_table_atomic(path, delimiter,
                            {"year", "primary", "manufacturing"}, rows);
}

void write_share_gdp_correlations(
    const std::filesystem::path& path, const ingest::TradePanel& panel,
    correlate::PValueMode mode,
    const correlate::PermutationSpec& permutation, char delimiter) {
  Rows rows;
  for (const auto& category : panel.categories()) {
    for (const int year : panel.years()) {
      if (panel.countries(year).empty()) continue;
      try {
        const auto result = correlate::share_gdp_correlation(
            panel, category, year, mode, permutation);
        rows.push_back({category, std::to_string(year), fmt(result.rho),
                        fmt(result.p_value), std::to_string(result.n)});
      } catch (const DataError&) {
        // zero-variance or tiny years are skipped
      }
    }
  }
  table::write_table_atomic(
      path, delimiter, {"category", "year", "rho", "p_value", "n"}, rows);
}

void write_share_gdp_scatter(const std::filesystem::path& path,
                             const ingest::TradePanel& panel, char delimiter) {
  Rows rows;
  for (const auto& category : panel.categories()) {
    for (const int year : panel.years()) {
      if (panel.countries(year).empty()) continue;
      const auto profile = shares::gdp_profile(panel, year);
      for (std::size_t i = 0; i < profile.countries.size(); ++i) {
        const auto& country = profile.countries[i];
        const double share =
            panel.export_value(country, category, year) /
            panel.total_export(country, year);
        rows.push_back({category, std::to_string(year), country,
                        fmt(profile.values[i]), fmt(share)});
      }
    }
  }
  table::write_table_atomic(
      path, delimiter, {"category", "year", "country", "g", "share"}, rows);
}

void write_elasticities(const std::filesystem::path& path,
                        const ingest::TradePanel& panel, char delimiter) {
  Rows rows;
  for (const auto& category : panel.categories()) {
    for (const int year : panel.years()) {
      if (panel.countries(year).empty()) continue;
      try {
        const auto fit = correlate::fit_elasticity(panel, category, year);
        rows.push_back({category, std::to_string(year), fmt(fit.alpha),
                        fmt(fit.std_error), std::to_string(fit.n),
                        std::to_string(fit.excluded)});
      } catch (const DataError&) {
      }
    }
  }
  table::write_table_atomic(
      path, delimiter,
      {"category", "year", "alpha", "stderr", "n", "excluded"}, rows);
}

void write_elasticity_summary(const std::filesystem::path& path,
                              const ingest::TradePanel& panel,
                              char delimiter) {
  Rows rows;
  for (const auto& category : panel.categories()) {
    try {
      const auto summary = correlate::elasticity_summary(panel, category);
      rows.push_back({category, fmt(summary.mean_alpha),
                      fmt(summary.std_alpha),
                      std::to_string(summary.n_years)});
    } catch (const DataError&) {
    }
  }
  table::write_table_atomic(
      path, delimiter, {"category", "mean_alpha", "std_alpha", "n_years"},
      rows);
}

void write_variation_fractions(const std::filesystem::path& path,
                               const correlate::VariationProfile& profile,
                               char delimiter) {
  Rows rows;
  for (const auto& category : profile.categories) {
    const auto slice = profile.slice(category);
    if (slice.lambda.empty()) continue;
    int increased = 0;
    for (const double l : slice.lambda) {
      if (l > 1.0) ++increased;
    }
    const double n = static_cast<double>(slice.lambda.size());
    rows.push_back({category, fmt(increased / n),
                    fmt((n - increased) / n),
                    std::to_string(slice.lambda.size())});
  }
  table::write_table_atomic(
      path, delimiter,
      {"category", "fraction_increased", "fraction_decreased", "n"}, rows);
}

void write_variation_scatter(const std::filesystem::path& path,
                             const correlate::VariationProfile& profile,
                             char delimiter) {
  Rows rows;
  for (const auto& category : profile.categories) {
    const auto slice = profile.slice(category);
    for (std::size_t i = 0; i < slice.countries.size(); ++i) {
      rows.push_back({category, slice.countries[i], fmt(slice.lambda[i]),
                      fmt(slice.gamma[i])});
    }
  }
  table::write_table_atomic(
      path, delimiter, {"category", "country", "lambda", "gamma"}, rows);
}

void write_variation_correlations(
    const std::filesystem::path& path,
    const correlate::VariationProfile& profile, correlate::PValueMode mode,
    const correlate::PermutationSpec& permutation, char delimiter) {
  Rows rows;
  for (const auto& category : profile.categories) {
    try {
      const auto result =
          correlate::variation_correlation(profile, category, mode, permutation);
      rows.push_back({category, fmt(result.rho), fmt(result.p_value),
                      std::to_string(result.n)});
    } catch (const DataError&) {
    }
  }
  table::write_table_atomic(path, delimiter,
                            {"category", "rho", "p_value", "n"}, rows);
}

void write_dendrogram(const std::filesystem::path& path,
                      const cluster::Dendrogram& tree, char delimiter) {
  Rows rows;
  for (std::size_t k = 0; k < tree.merges.size(); ++k) {
    const auto& merge = tree.merges[k];
    rows.push_back({std::to_string(k), std::to_string(merge.left),
                    std::to_string(merge.right), fmt(merge.distance),
                    std::to_string(merge.size)});
  }
  table::write_table_atomic(
      path, delimiter,
      {"merge_index", "left_id", "right_id", "distance", "size"}, rows);
}

void write_dendrogram_leaves(const std::filesystem::path& path,
                             const cluster::Dendrogram& tree, char delimiter) {
  Rows rows;
  for (std::size_t i = 0; i < tree.leaves.size(); ++i) {
    rows.push_back({std::to_string(i), tree.leaves[i]});
  }
  table::write_table_atomic(path, delimiter, {"leaf_id", "country"}, rows);
}

void write_cluster_members(const std::filesystem::path& path,
                           const cluster::ClusterSet& set, char delimiter) {
  Rows rows;
  for (std::size_t i = 0; i < set.clusters.size(); ++i) {
    const std::string name =
        i < set.names.size() ? set.names[i] : "#" + std::to_string(i);
    for (const auto& country : set.clusters[i]) {
      rows.push_back({std::to_string(set.year), name, country});
    }
  }
  table::write_table_atomic(path, delimiter, {"year", "cluster_name", "country"},
                            rows);
}

void write_cluster_stats(const std::filesystem::path& path,
                         const ingest::TradePanel& level1_panel,
                         const cluster::ClusterSet& set, char delimiter) {
  std::vector<std::string> header = {"year", "cluster_name", "n_countries",
                                     "gdp"};
  for (const auto& category : level1_panel.categories()) {
    header.push_back("phi_" + category);
  }
  Rows rows;
  for (std::size_t i = 0; i < set.clusters.size(); ++i) {
    const auto stats =
        cluster::cluster_stats(level1_panel, set.clusters[i], set.year);
    const std::string name =
        i < set.names.size() ? set.names[i] : "#" + std::to_string(i);
    std::vector<std::string> row = {std::to_string(set.year), name,
                                    std::to_string(stats.count),
                                    fmt(stats.gdp)};
    for (const double value : stats.portfolio.values) {
      row.push_back(fmt(value));
    }
    rows.push_back(std::move(row));
  }
  table::write_table_atomic(path, delimiter, header, rows);
}

void write_cluster_cross_distances(const std::filesystem::path& path,
                                   const ingest::TradePanel& level1_panel,
                                   const cluster::ClusterSet& source,
                                   const cluster::ClusterSet& dest,
                                   char delimiter) {
  std::vector<cluster::ClusterStats> source_stats;
  std::vector<cluster::ClusterStats> dest_stats;
  for (const auto& members : source.clusters) {
    source_stats.push_back(
        cluster::cluster_stats(level1_panel, members, source.year));
  }
  for (const auto& members : dest.clusters) {
    dest_stats.push_back(
        cluster::cluster_stats(level1_panel, members, dest.year));
  }
  std::vector<std::string> header = {"cluster"};
  for (std::size_t j = 0; j < dest.clusters.size(); ++j) {
    header.push_back(j < dest.names.size() ? dest.names[j]
                                           : "#" + std::to_string(j));
  }
  Rows rows;
  for (std::size_t i = 0; i < source.clusters.size(); ++i) {
    std::vector<std::string> row = {i < source.names.size()
                                        ? source.names[i]
                                        : "#" + std::to_string(i)};
    for (const auto& stats : dest_stats) {
      row.push_back(fmt(cluster::cluster_cross_distance(source_stats[i], stats)));
    }
    rows.push_back(std::move(row));
  }
  table::write_table_atomic(path, delimiter, header, rows);
}

void write_transition_matrix(const std::filesystem::path& path,
                             const transition::TransitionReport& report,
                             char delimiter) {
  std::vector<std::string> header = {"cluster"};
  header.insert(header.end(), report.dest_clusters.begin(),
                report.dest_clusters.end());
  Rows rows;
  for (const auto& source : report.source_clusters) {
    std::vector<std::string> row = {source};
    for (const auto& dest : report.dest_clusters) {
      const auto* cell = report.find(source, dest);
      if (!cell) {
        row.push_back("");  // no country for this transition
      } else {
        row.push_back(table::format_sig(cell->gamma, 2) + " (" +
                      std::to_string(cell->countries.size()) + ")");
      }
    }
    rows.push_back(std::move(row));
  }
  table::write_table_atomic(path, delimiter, header, rows);
}

void write_transition_members(const std::filesystem::path& path,
                              const transition::TransitionReport& report,
                              char delimiter) {
  Rows rows;
  for (const auto& cell : report.cells) {
    for (const auto& country : cell.countries) {
      rows.push_back({cell.source, cell.dest, country});
    }
  }
  table::write_table_atomic(
      path, delimiter, {"source_cluster", "dest_cluster", "country"}, rows);
}

void write_transition_unmatched(const std::filesystem::path& path,
                                const transition::TransitionReport& report,
                                char delimiter) {
  Rows rows;
  for (const auto& entry : report.source_only) {
    rows.push_back({"source", entry.cluster, entry.country});
  }
  for (const auto& entry : report.dest_only) {
    rows.push_back({"dest", entry.cluster, entry.country});
  }
  table::write_table_atomic(path, delimiter, {"side", "cluster", "country"},
                            rows);
}

void write_transition_series(const std::filesystem::path& path,
                             const ingest::TradePanel& panel,
                             const transition::TransitionReport& report,
                             int min_countries, char delimiter) {
  Rows rows;
  for (const auto& cell : report.cells) {
    if (static_cast<int>(cell.countries.size()) < min_countries) continue;
    const auto series = transition::transition_series(
        panel, report, cell.source, cell.dest, true);
    for (const auto& point : series) {
      rows.push_back({cell.source, cell.dest, std::to_string(point.year),
                      fmt(point.g), fmt(point.g_normalized)});
    }
  }
  table::write_table_atomic(
      path, delimiter,
      {"source_cluster", "dest_cluster", "year", "g", "g_normalized"}, rows);
}

void write_growth_ranking(const std::filesystem::path& path,
                          const std::vector<transition::GrowthEntry>& entries,
                          char delimiter) {
  Rows rows;
  for (const auto& entry : entries) {
    rows.push_back({entry.country, fmt(entry.gamma), entry.dest_cluster});
  }
  table::write_table_atomic(path, delimiter,
                            {"country", "gamma", "dest_cluster"}, rows);
}

void write_panel_summary(const std::filesystem::path& path,
                         const ingest::TradePanel& panel, char delimiter) {
  Rows rows;
  for (const int year : panel.years()) {
    rows.push_back({std::to_string(year),
                    std::to_string(panel.countries(year).size()),
                    fmt(panel.countries(year).empty()
                            ? 0.0
                            : panel.world_export(year)),
                    fmt(panel.countries(year).empty() ? 0.0
                                                      : panel.world_gdp(year))});
  }
  table::write_table_atomic(
      path, delimiter, {"year", "n_countries", "world_export", "world_gdp"},
      rows);
}

}  // namespace tradeport::reports
