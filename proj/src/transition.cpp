#include "tradeport/transition.hpp"

#include <algorithm>
#include <map>

#include "tradeport/errors.hpp"

namespace tradeport::transition {

namespace {

std::string cluster_label(const cluster::ClusterSet& set, std::size_t index) {
  if (index < set.names.size() && !set.names[index].empty()) {
    return set.names[index];
  }
  return "#" + std::to_string(index);
}

// country -> cluster index
std::map<std::string, std::size_t> membership(const cluster::ClusterSet& set) {
  std::map<std::string, std::size_t> result;
  for (std::size_t i = 0; i < set.clusters.size(); ++i) {
    for (const auto& country : set.clusters[i]) {
      result[country] = i;
    }
  }
  return result;
}

}  // namespace

const TransitionCell* TransitionReport::find(std::string_view source,
                                             std::string_view dest) const {
  for (const auto& cell : cells) {
    if (cell.source == source && cell.dest == dest) {
      return &cell;
    }
  }
  return nullptr;
}

TransitionReport transition_table(const ingest::TradePanel& panel,
                                  const cluster::ClusterSet& source,
                                  const cluster::ClusterSet& dest) {
  if (source.year >= dest.year) {
    throw ConfigError("transition needs source year before dest year, got " +
                      std::to_string(source.year) + " and " +
                      std::to_string(dest.year));
  }
  TransitionReport report;
  report.source_year = source.year;
  report.dest_year = dest.year;
  for (std::size_t i = 0; i < source.clusters.size(); ++i) {
    report.source_clusters.push_back(cluster_label(source, i));
  }
  for (std::size_t i = 0; i < dest.clusters.size(); ++i) {
    report.dest_clusters.push_back(cluster_label(dest, i));
  }

  const auto source_of = membership(source);
  const auto dest_of = membership(dest);
  const double world_source = panel.world_gdp(source.year);
  const double world_dest = panel.world_gdp(dest.year);

  // (source idx, dest idx) -> countries
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::string>>
      cell_members;
  for (const auto& [country, si] : source_of) {
    const auto it = dest_of.find(country);
    if (it == dest_of.end()) {
      report.source_only.push_back(
          Residence{country, cluster_label(source, si)});
      continue;
    }
    cell_members[{si, it->second}].push_back(country);
  }
  for (const auto& [country, di] : dest_of) {
    if (!source_of.count(country)) {
      report.dest_only.push_back(Residence{country, cluster_label(dest, di)});
    }
  }
  if (cell_members.empty()) {
    throw DataError("the two cluster sets share no country");
  }

  for (auto& [key, members] : cell_members) {
    TransitionCell cell;
    cell.source = cluster_label(source, key.first);
    cell.dest = cluster_label(dest, key.second);
    std::sort(members.begin(), members.end());
    cell.countries = std::move(members);
    for (const auto& country : cell.countries) {
      cell.g_source += panel.gdp(country, source.year) / world_source;
      cell.g_dest += panel.gdp(country, dest.year) / world_dest;
    }
    cell.gamma = cell.g_dest / cell.g_source;
    report.cells.push_back(std::move(cell));
  }
  return report;
}

std::vector<SeriesPoint> transition_series(const ingest::TradePanel& panel,
                                           const TransitionReport& report,
                                           std::string_view source,
                                           std::string_view dest,
                                           bool normalize_to_start) {
  const TransitionCell* cell = report.find(source, dest);
  if (!cell) {
    throw DataError("no transition cell " + std::string(source) + " -> " +
                    std::string(dest));
  }
  std::vector<SeriesPoint> series;
  series.reserve(panel.years().size());
  for (const int year : panel.years()) {
    SeriesPoint point;
    point.year = year;
    const double world = panel.has_year(year) ? panel.world_gdp(year) : 0.0;
    for (const auto& country : cell->countries) {
      if (panel.has_country(country, year)) {
        point.g += panel.gdp(country, year) / world;
        ++point.n_present;
      }
    }
    point.g_normalized = point.g;
    series.push_back(point);
  }
  if (normalize_to_start) {
    double start = 0.0;
    for (const auto& point : series) {
      if (point.year == report.source_year) {
        start = point.g;
        break;
      }
    }
    if (start <= 0.0) {
      throw DataError("cell " + std::string(source) + " -> " +
                      std::string(dest) + " has no member with data in " +
                      std::to_string(report.source_year) +
                      "; cannot normalize");
    }
    for (auto& point : series) {
      point.g_normalized = point.g / start;
    }
  }
  return series;
}

std::vector<GrowthEntry> growth_ranking(const ingest::TradePanel& panel,
                                        const cluster::ClusterSet& dest,
                                        double threshold) {
  if (panel.years().empty()) {
    throw DataError("panel has no years");
  }
  const int t0 = panel.years().front();
  const int t1 = panel.years().back();
  if (t0 == t1) {
    throw DataError("growth ranking needs a multi-year panel");
  }
  const double world_start = panel.world_gdp(t0);
  const double world_end = panel.world_gdp(t1);
  const auto dest_of = membership(dest);

  std::vector<GrowthEntry> entries;
  for (const auto& country : panel.countries(t0)) {
    if (!panel.has_country(country, t1)) continue;
    GrowthEntry entry;
    entry.country = country;
    entry.gamma = (panel.gdp(country, t1) / world_end) /
                  (panel.gdp(country, t0) / world_start);
    if (entry.gamma < threshold) continue;
    const auto it = dest_of.find(country);
    if (it != dest_of.end()) {
      entry.dest_cluster = cluster_label(dest, it->second);
    }
    entries.push_back(std::move(entry));
  }
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    if (a.gamma != b.gamma) return a.gamma > b.gamma;
    return a.country < b.country;
  });
  return entries;
}

}  // namespace tradeport::transition
