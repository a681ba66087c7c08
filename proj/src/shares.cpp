#include "tradeport/shares.hpp"

#include <algorithm>

#include "tradeport/errors.hpp"

namespace tradeport::shares {

double Portfolio::share(std::string_view category) const {
  const auto it =
      std::lower_bound(categories.begin(), categories.end(), category);
  if (it == categories.end() || *it != category) return 0.0;
  return values[static_cast<std::size_t>(it - categories.begin())];
}

double GdpProfile::value_of(std::string_view country) const {
  const auto it =
      std::lower_bound(countries.begin(), countries.end(), country);
  if (it == countries.end() || *it != country) {
    throw DataError("country '" + std::string(country) +
                    "' absent from GDP profile of year " +
                    std::to_string(year));
  }
  return values[static_cast<std::size_t>(it - countries.begin())];
}

Portfolio global_share(const ingest::TradePanel& panel, int year) {
  const double world = panel.world_export(year);
  if (world <= 0.0) {
    throw DataError("world export is not positive in year " +
                    std::to_string(year));
  }
  Portfolio portfolio;
  portfolio.owner = "world";
  portfolio.year = year;
  portfolio.level = panel.level();
  portfolio.categories = panel.categories();
  portfolio.values.reserve(portfolio.categories.size());
  for (const auto& category : portfolio.categories) {
    portfolio.values.push_back(panel.world_category_export(category, year) /
                               world);
  }
  return portfolio;
}

Portfolio local_share(const ingest::TradePanel& panel,
                      std::string_view country, int year) {
  const double total = panel.total_export(country, year);
  if (total <= 0.0) {
    throw DataError("country '" + std::string(country) +
                    "' has zero total export in year " + std::to_string(year));
  }
  Portfolio portfolio;
  portfolio.owner = std::string(country);
  portfolio.year = year;
  portfolio.level = panel.level();
  portfolio.categories = panel.categories();
  const auto row = panel.export_row(country, year);
  portfolio.values.reserve(row.size());
  for (const double value : row) {
    portfolio.values.push_back(value / total);
  }
  return portfolio;
}

GdpProfile gdp_profile(const ingest::TradePanel& panel, int year) {
  const auto& countries = panel.countries(year);
  if (countries.empty()) {
    throw DataError("no countries in panel for year " + std::to_string(year));
  }
  const double world = panel.world_gdp(year);
  GdpProfile profile;
  profile.year = year;
  profile.countries = countries;
  profile.values.reserve(countries.size());
  for (const auto& country : countries) {
    profile.values.push_back(panel.gdp(country, year) / world);
  }
  return profile;
}

double sector_share(const Portfolio& portfolio, sitc::Sector sector,
                    const sitc::SectorPartition& partition) {
  if (portfolio.level != 1) {
    throw ConfigError("sector_share needs a level-1 portfolio, got level " +
                      std::to_string(portfolio.level));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < portfolio.categories.size(); ++i) {
    if (partition.contains(sector, portfolio.categories[i][0])) {
      sum += portfolio.values[i];
    }
  }
  return sum;
}

}  // namespace tradeport::shares
