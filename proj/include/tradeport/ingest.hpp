#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tradeport/sitc.hpp"

namespace tradeport::ingest {

// One row of the export-value source: F_p(c,t) in nominal value units.
struct TradeRecord {
  std::string country;
  int year;
  sitc::SitcCode code;
  double value;

  bool operator==(const TradeRecord&) const = default;
};

// One row of the GDP source: W(c,t), strictly positive.
struct GdpRecord {
  std::string country;
  int year;
  double gdp;

  bool operator==(const GdpRecord&) const = default;
};

// Study window; the defaults cover the 1962-2000 panel.
struct YearWindow {
  int from = 1962;
  int to = 2000;

  bool contains(int year) const { return year >= from && year <= to; }
};

// Reconciliation entry: rename `source` to `target`, either always (alias,
// no year bounds) or only inside [year_from, year_to] (entity merge).
struct MergeRule {
  std::string source;
  std::string target;
  std::optional<int> year_from;
  std::optional<int> year_to;

  bool applies(int year) const;
};

struct ColumnNames {
  std::string country = "country";
  std::string year = "year";
  std::string sitc = "sitc";
  std::string value = "value";
  std::string gdp = "gdp";
  std::string source = "source_name";
  std::string target = "target_name";
  std::string year_from = "year_from";
  std::string year_to = "year_to";
};

// Format descriptor for the tabular inputs; optionally loaded from a small
// JSON file ({"delimiter": "\t", "columns": {"country": "...", ...}}).
struct TableFormat {
  char delimiter = '\t';
  ColumnNames columns;

  static TableFormat from_json_file(const std::filesystem::path& path);
};

std::vector<TradeRecord> load_trade(std::istream& in,
                                    const TableFormat& format = {});
std::vector<TradeRecord> load_trade_file(const std::filesystem::path& path,
                                         const TableFormat& format = {});
std::vector<GdpRecord> load_gdp(std::istream& in,
                                const TableFormat& format = {});
std::vector<GdpRecord> load_gdp_file(const std::filesystem::path& path,
                                     const TableFormat& format = {});
std::vector<MergeRule> load_merge_rules(std::istream& in,
                                        const TableFormat& format = {});
std::vector<MergeRule> load_merge_rules_file(const std::filesystem::path& path,
                                             const TableFormat& format = {});

// One rename performed by merge_entities, for the reconciliation report.
struct MergeAction {
  std::string source;
  std::string target;
  int year;
  int rows;

  bool operator==(const MergeAction&) const = default;
};

// Applies the rules (rename, then sum duplicate keys). Year-bounded rules
// must lie inside the window. Unaffected records pass through unchanged,
// in input order; a merged group lands at its first occurrence.
std::vector<TradeRecord> merge_entities(std::vector<TradeRecord> records,
                                        std::span<const MergeRule> rules,
                                        const YearWindow& window = {},
                                        std::vector<MergeAction>* log = nullptr);
std::vector<GdpRecord> merge_entities(std::vector<GdpRecord> records,
                                      std::span<const MergeRule> rules,
                                      const YearWindow& window = {},
                                      std::vector<MergeAction>* log = nullptr);

// The joined panel: per year, the countries having both a positive export
// total and a GDP value, with export values aggregated to the panel's SITC
// level over a dense, data-derived category set. Immutable once built.
class TradePanel {
 public:
  int level() const { return level_; }
  const std::vector<int>& years() const { return years_; }
  const std::vector<std::string>& categories() const { return categories_; }
  bool has_year(int year) const;
  bool has_country(std::string_view country, int year) const;

  const std::vector<std::string>& countries(int year) const;
  std::span<const double> export_row(std::string_view country, int year) const;
  double export_value(std::string_view country, std::string_view category,
                      int year) const;
  double total_export(std::string_view country, int year) const;
  double gdp(std::string_view country, int year) const;

  double world_export(int year) const;
  double world_category_export(std::string_view category, int year) const;
  double world_gdp(int year) const;

  // Empty-join years and other anomalies observed while building.
  const std::vector<std::string>& warnings() const { return warnings_; }

  // Re-binned copy at a coarser SITC level.
  TradePanel aggregated(int level) const;

  int category_index(std::string_view category) const;  // -1 when absent

  bool operator==(const TradePanel&) const = default;

  struct YearSlice {
    std::vector<std::string> countries;  // sorted
    std::vector<double> gdp;             // per country
    std::vector<double> totals;          // per-country export total
    std::vector<std::vector<double>> exports;  // [country][category]
    std::vector<double> world_by_category;
    double world_export = 0.0;
    double world_gdp = 0.0;

    bool operator==(const YearSlice&) const = default;
  };

  friend TradePanel build_panel(std::span<const TradeRecord> trade,
                                std::span<const GdpRecord> gdp, int level,
                                const YearWindow& window);

 private:
  const YearSlice& slice(int year) const;
  int country_row(const YearSlice& s, std::string_view country, int year) const;

  int level_ = 1;
  std::vector<int> years_;
  std::vector<std::string> categories_;
  std::map<std::string, int, std::less<>> category_index_;
  std::map<int, YearSlice> slices_;
  std::vector<std::string> warnings_;
};

// Joins trade and GDP records at the given SITC level (1 or 2) inside the
// window. Codes shorter than the requested level keep their own length.
TradePanel build_panel(std::span<const TradeRecord> trade,
                       std::span<const GdpRecord> gdp, int level,
                       const YearWindow& window = {});

// Country-name audit of a join: who matched, who did not, which renames
// were applied, and which (country, year) slots have GDP but no export.
struct Reconciliation {
  std::vector<std::string> matched;
  std::vector<std::string> trade_only;
  std::vector<std::string> gdp_only;
  std::vector<MergeAction> actions;
  std::vector<std::pair<std::string, int>> export_gaps;
};

Reconciliation reconcile(std::span<const TradeRecord> trade,
                         std::span<const GdpRecord> gdp,
                         std::span<const MergeAction> actions,
                         const YearWindow& window = {});

void write_reconciliation(const std::filesystem::path& path,
                          const Reconciliation& report, char delimiter = '\t');

// Writes a panel back out in the same schema load_trade/load_gdp read
// (non-zero cells only); re-ingesting reproduces the panel.
void write_panel_files(const TradePanel& panel,
                       const std::filesystem::path& trade_path,
                       const std::filesystem::path& gdp_path,
                       const TableFormat& format = {});

}  // namespace tradeport::ingest
