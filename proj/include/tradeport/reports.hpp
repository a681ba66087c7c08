#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "tradeport/cluster.hpp"
#include "tradeport/correlate.hpp"
#include "tradeport/ingest.hpp"
#include "tradeport/transition.hpp"

namespace tradeport::reports {

// Machine-readable outputs keep full double precision; the
// transition matrix rounds gamma to 2 significant figures.

// (owner, year, category, share) for the world portfolio of every year.
void write_global_shares(const std::filesystem::path& path,
                         const ingest::TradePanel& panel, char delimiter);

// (owner, year, category, share) for every country of every year.
void write_local_shares(const std::filesystem::path& path,
                        const ingest::TradePanel& panel, char delimiter);

// (year, country, g).
void write_gdp_profiles(const std::filesystem::path& path,
                        const ingest::TradePanel& panel, char delimiter);

// (year, primary, manufacturing); needs a level-1 panel.
void write_sector_shares(const std::filesystem::path& path,
                         const ingest::TradePanel& panel, char delimiter);

// (category, year, rho, p_value, n) over all categories and years.
void write_share_gdp_correlations(const std::filesystem::path& path,
                                  const ingest::TradePanel& panel,
                                  correlate::PValueMode mode,
                                  const correlate::PermutationSpec& permutation,
                                  char delimiter);

// (category, year, country, g, share) scatter points of local share
// against normalized GDP.
void write_share_gdp_scatter(const std::filesystem::path& path,
                             const ingest::TradePanel& panel, char delimiter);

// (category, year, alpha, stderr, n, excluded); years that cannot be fit
// are skipped.
void write_elasticities(const std::filesystem::path& path,
                        const ingest::TradePanel& panel, char delimiter);

// (category, mean_alpha, std_alpha, n_years).
void write_elasticity_summary(const std::filesystem::path& path,
                              const ingest::TradePanel& panel, char delimiter);

// (category, fraction_increased, fraction_decreased, n).
void write_variation_fractions(const std::filesystem::path& path,
                               const correlate::VariationProfile& profile,
                               char delimiter);

// (category, country, lambda, gamma).
void write_variation_scatter(const std::filesystem::path& path,
                             const correlate::VariationProfile& profile,
                             char delimiter);

// (category, rho, p_value, n); categories with too few defined ratios are
// skipped.
void write_variation_correlations(
    const std::filesystem::path& path,
    const correlate::VariationProfile& profile, correlate::PValueMode mode,
    const correlate::PermutationSpec& permutation, char delimiter);

// (merge_index, left_id, right_id, distance, size) linkage-matrix layout.
void write_dendrogram(const std::filesystem::path& path,
                      const cluster::Dendrogram& tree, char delimiter);

// (leaf_id, country).
void write_dendrogram_leaves(const std::filesystem::path& path,
                             const cluster::Dendrogram& tree, char delimiter);

// (year, cluster_name, country).
void write_cluster_members(const std::filesystem::path& path,
                           const cluster::ClusterSet& set, char delimiter);

// (year, cluster_name, n_countries, gdp, phi_0...phi_9) from level-1 stats.
void write_cluster_stats(const std::filesystem::path& path,
                         const ingest::TradePanel& level1_panel,
                         const cluster::ClusterSet& set, char delimiter);

// Cross-year distance matrix between level-1 cluster portfolios; rows are
// source-year clusters, columns dest-year clusters.
void write_cluster_cross_distances(const std::filesystem::path& path,
                                   const ingest::TradePanel& level1_panel,
                                   const cluster::ClusterSet& source,
                                   const cluster::ClusterSet& dest,
                                   char delimiter);

// Matrix of "gamma (n)" cells, 2 significant figures.
void write_transition_matrix(const std::filesystem::path& path,
                             const transition::TransitionReport& report,
                             char delimiter);

// (source_cluster, dest_cluster, country).
void write_transition_members(const std::filesystem::path& path,
                              const transition::TransitionReport& report,
                              char delimiter);

// (side, cluster, country) for countries clustered in only one year.
void write_transition_unmatched(const std::filesystem::path& path,
                                const transition::TransitionReport& report,
                                char delimiter);

// (source_cluster, dest_cluster, year, g, g_normalized) for cells with at
// least min_countries members.
void write_transition_series(const std::filesystem::path& path,
                             const ingest::TradePanel& panel,
                             const transition::TransitionReport& report,
                             int min_countries, char delimiter);

// (country, gamma, dest_cluster).
void write_growth_ranking(const std::filesystem::path& path,
                          const std::vector<transition::GrowthEntry>& entries,
                          char delimiter);

// (year, n_countries, world_export, world_gdp).
void write_panel_summary(const std::filesystem::path& path,
                         const ingest::TradePanel& panel, char delimiter);

}  // namespace tradeport::reports
