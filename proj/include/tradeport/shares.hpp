#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tradeport/ingest.hpp"
#include "tradeport/sitc.hpp"

namespace tradeport::shares {

// A normalized export share vector over commodity categories, dense over
// the panel's category set (absent categories hold an exact 0).
struct Portfolio {
  std::string owner;  // country, cluster, or "world"
  int year = 0;
  int level = 1;
  std::vector<std::string> categories;  // sorted, aligned with values
  std::vector<double> values;           // sum to 1

  double share(std::string_view category) const;

  bool operator==(const Portfolio&) const = default;
};

// Normalized GDP fractions g(c,t) of all countries at one year.
struct GdpProfile {
  int year = 0;
  std::vector<std::string> countries;  // sorted, aligned with values
  std::vector<double> values;          // sum to 1

  double value_of(std::string_view country) const;

  bool operator==(const GdpProfile&) const = default;
};

// Category shares of total world export at one year.
Portfolio global_share(const ingest::TradePanel& panel, int year);

// Category shares of one country's export at one year.
Portfolio local_share(const ingest::TradePanel& panel,
                      std::string_view country, int year);

// Each country's fraction of world GDP at one year.
GdpProfile gdp_profile(const ingest::TradePanel& panel, int year);

// Summed share of a sector; the portfolio must be at level 1, and
// primary + manufacturing add up to exactly 1.
double sector_share(const Portfolio& portfolio, sitc::Sector sector,
                    const sitc::SectorPartition& partition =
                        sitc::SectorPartition::standard());

}  // namespace tradeport::shares
