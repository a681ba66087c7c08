#include "tradeport/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include <json.hpp>

#include "tradeport/errors.hpp"
#include "tradeport/table.hpp"

namespace tradeport::ingest {

bool MergeRule::applies(int year) const {
  if (year_from && year < *year_from) return false;
  if (year_to && year > *year_to) return false;
  return true;
}

TableFormat TableFormat::from_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open format file '" + path.string() + "'");
  }
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("format file '" + path.string() + "': " + e.what());
  }
  TableFormat format;
  if (doc.contains("delimiter")) {
    const auto d = doc["delimiter"].get<std::string>();
    if (d.size() != 1) {
      throw ConfigError("format file: delimiter must be a single character");
    }
    format.delimiter = d[0];
  }
  if (doc.contains("columns")) {
    const auto& cols = doc["columns"];
    auto pick = [&](const char* key, std::string& target) {
      if (cols.contains(key)) target = cols[key].get<std::string>();
    };
    pick("country", format.columns.country);
    pick("year", format.columns.year);
    pick("sitc", format.columns.sitc);
    pick("value", format.columns.value);
    pick("gdp", format.columns.gdp);
    pick("source_name", format.columns.source);
    pick("target_name", format.columns.target);
    pick("year_from", format.columns.year_from);
    pick("year_to", format.columns.year_to);
  }
  return format;
}

std::vector<TradeRecord> load_trade(std::istream& in,
                                    const TableFormat& format) {
  const auto tab = table::read_table(in, format.delimiter);
  const int c_country = tab.column(format.columns.country);
  const int c_year = tab.column(format.columns.year);
  const int c_sitc = tab.column(format.columns.sitc);
  const int c_value = tab.column(format.columns.value);
  std::vector<TradeRecord> records;
  records.reserve(tab.rows.size());
  for (std::size_t i = 0; i < tab.rows.size(); ++i) {
    const auto& row = tab.rows[i];
    const std::size_t line = tab.line_numbers[i];
    const std::string& country = row[c_country];
    if (country.empty()) {
      throw ParseError("row " + std::to_string(line) + ": empty country name");
    }
    const int year = table::parse_int(row[c_year], line, format.columns.year);
    sitc::SitcCode code = [&] {
      try {
        return sitc::parse_sitc(row[c_sitc]);
      } catch (const ParseError& e) {
        throw ParseError("row " + std::to_string(line) + ": " + e.what());
      }
    }();
    const double value =
        table::parse_double(row[c_value], line, format.columns.value);
    if (value < 0.0) {
      throw ParseError("row " + std::to_string(line) +
                       ": negative export value " + row[c_value]);
    }
    records.push_back(TradeRecord{country, year, std::move(code), value});
  }
  return records;
}

std::vector<TradeRecord> load_trade_file(const std::filesystem::path& path,
                                         const TableFormat& format) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open trade file '" + path.string() + "'");
  }
  try {
    return load_trade(in, format);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::vector<GdpRecord> load_gdp(std::istream& in, const TableFormat& format) {
  const auto tab = table::read_table(in, format.delimiter);
  const int c_country = tab.column(format.columns.country);
  const int c_year = tab.column(format.columns.year);
  const int c_gdp = tab.column(format.columns.gdp);
  std::vector<GdpRecord> records;
  records.reserve(tab.rows.size());
  for (std::size_t i = 0; i < tab.rows.size(); ++i) {
    const auto& row = tab.rows[i];
    const std::size_t line = tab.line_numbers[i];
    const std::string& country = row[c_country];
    if (country.empty()) {
      throw ParseError("row " + std::to_string(line) + ": empty country name");
    }
    const int year = table::parse_int(row[c_year], line, format.columns.year);
    const double gdp =
        table::parse_double(row[c_gdp], line, format.columns.gdp);
    if (gdp <= 0.0) {
      throw ParseError("row " + std::to_string(line) +
                       ": GDP must be positive, got " + row[c_gdp]);
    }
    records.push_back(GdpRecord{country, year, gdp});
  }
  return records;
}

std::vector<GdpRecord> load_gdp_file(const std::filesystem::path& path,
                                     const TableFormat& format) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open GDP file '" + path.string() + "'");
  }
  try {
    return load_gdp(in, format);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::vector<MergeRule> load_merge_rules(std::istream& in,
                                        const TableFormat& format) {
  const auto tab = table::read_table(in, format.delimiter);
  const int c_source = tab.column(format.columns.source);
  const int c_target = tab.column(format.columns.target);
  const int c_from = tab.column(format.columns.year_from);
  const int c_to = tab.column(format.columns.year_to);
  std::vector<MergeRule> rules;
  rules.reserve(tab.rows.size());
  for (std::size_t i = 0; i < tab.rows.size(); ++i) {
    const auto& row = tab.rows[i];
    const std::size_t line = tab.line_numbers[i];
    MergeRule rule;
    rule.source = row[c_source];
    rule.target = row[c_target];
    if (rule.source.empty() || rule.target.empty()) {
      throw ParseError("row " + std::to_string(line) +
                       ": merge rule needs source and target names");
    }
    if (!row[c_from].empty()) {
      rule.year_from =
          table::parse_int(row[c_from], line, format.columns.year_from);
    }
    if (!row[c_to].empty()) {
      rule.year_to = table::parse_int(row[c_to], line, format.columns.year_to);
    }
    rules.push_back(std::move(rule));
  }
  return rules;
}

std::vector<MergeRule> load_merge_rules_file(const std::filesystem::path& path,
                                             const TableFormat& format) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open merge-rule file '" + path.string() + "'");
  }
  try {
    return load_merge_rules(in, format);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

namespace {

void validate_rules(std::span<const MergeRule> rules,
                    const YearWindow& window) {
  for (const auto& rule : rules) {
    if (rule.year_from && rule.year_to && *rule.year_from > *rule.year_to) {
      throw ConfigError("merge rule " + rule.source + " -> " + rule.target +
                        ": year_from exceeds year_to");
    }
    for (const auto& bound : {rule.year_from, rule.year_to}) {
      if (bound && !window.contains(*bound)) {
        throw ConfigError("merge rule " + rule.source + " -> " + rule.target +
                          " references year " + std::to_string(*bound) +
                          " outside the panel window " +
                          std::to_string(window.from) + "-" +
                          std::to_string(window.to));
      }
    }
  }
}

const MergeRule* matching_rule(std::span<const MergeRule> rules,
                               const std::string& country, int year) {
  for (const auto& rule : rules) {
    if (rule.source == country && rule.applies(year)) {
      return &rule;
    }
  }
  return nullptr;
}

void log_action(std::vector<MergeAction>* log, const std::string& source,
                const std::string& target, int year) {
  if (!log) return;
  for (auto& action : *log) {
    if (action.source == source && action.target == target &&
        action.year == year) {
      ++action.rows;
      return;
    }
  }
  log->push_back(MergeAction{source, target, year, 1});
}

}  // namespace

std::vector<TradeRecord> merge_entities(std::vector<TradeRecord> records,
                                        std::span<const MergeRule> rules,
                                        const YearWindow& window,
                                        std::vector<MergeAction>* log) {
  validate_rules(rules, window);
  std::vector<TradeRecord> output;
  output.reserve(records.size());
  // key (country, year, code digits) -> position in output
  std::map<std::tuple<std::string, int, std::string>, std::size_t> slot;
  for (auto& record : records) {
    if (const auto* rule = matching_rule(rules, record.country, record.year)) {
      log_action(log, record.country, rule->target, record.year);
      record.country = rule->target;
    }
    const auto key =
        std::make_tuple(record.country, record.year, record.code.digits());
    const auto it = slot.find(key);
    if (it == slot.end()) {
      slot.emplace(key, output.size());
      output.push_back(std::move(record));
    } else {
      output[it->second].value += record.value;
    }
  }
  return output;
}

std::vector<GdpRecord> merge_entities(std::vector<GdpRecord> records,
                                      std::span<const MergeRule> rules,
                                      const YearWindow& window,
                                      std::vector<MergeAction>* log) {
  validate_rules(rules, window);
  std::vector<GdpRecord> output;
  output.reserve(records.size());
  std::map<std::pair<std::string, int>, std::size_t> slot;
  for (auto& record : records) {
    if (const auto* rule = matching_rule(rules, record.country, record.year)) {
      log_action(log, record.country, rule->target, record.year);
      record.country = rule->target;
    }
    const auto key = std::make_pair(record.country, record.year);
    const auto it = slot.find(key);
    if (it == slot.end()) {
      slot.emplace(key, output.size());
      output.push_back(std::move(record));
    } else {
      output[it->second].gdp += record.gdp;
    }
  }
  return output;
}

bool TradePanel::has_year(int year) const {
  return slices_.find(year) != slices_.end();
}

const TradePanel::YearSlice& TradePanel::slice(int year) const {
  const auto it = slices_.find(year);
  if (it == slices_.end()) {
    throw DataError("year " + std::to_string(year) + " absent from panel");
  }
  return it->second;
}

int TradePanel::country_row(const YearSlice& s, std::string_view country,
                            int year) const {
  const auto it =
      std::lower_bound(s.countries.begin(), s.countries.end(), country);
  if (it == s.countries.end() || *it != country) {
    throw DataError("country '" + std::string(country) +
                    "' absent from panel in year " + std::to_string(year));
  }
  return static_cast<int>(it - s.countries.begin());
}

bool TradePanel::has_country(std::string_view country, int year) const {
  const auto it = slices_.find(year);
  if (it == slices_.end()) return false;
  const auto& countries = it->second.countries;
  return std::binary_search(countries.begin(), countries.end(), country);
}

const std::vector<std::string>& TradePanel::countries(int year) const {
  return slice(year).countries;
}

std::span<const double> TradePanel::export_row(std::string_view country,
                                               int year) const {
  const auto& s = slice(year);
  return s.exports[static_cast<std::size_t>(country_row(s, country, year))];
}

double TradePanel::export_value(std::string_view country,
                                std::string_view category, int year) const {
  const auto& s = slice(year);
  const int row = country_row(s, country, year);
  const int col = category_index(category);
  if (col < 0) return 0.0;
  return s.exports[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
}

double TradePanel::total_export(std::string_view country, int year) const {
  const auto& s = slice(year);
  return s.totals[static_cast<std::size_t>(country_row(s, country, year))];
}

double TradePanel::gdp(std::string_view country, int year) const {
  const auto& s = slice(year);
  return s.gdp[static_cast<std::size_t>(country_row(s, country, year))];
}

double TradePanel::world_export(int year) const {
  return slice(year).world_export;
}

double TradePanel::world_category_export(std::string_view category,
                                         int year) const {
  const auto& s = slice(year);
  const int col = category_index(category);
  if (col < 0) return 0.0;
  return s.world_by_category[static_cast<std::size_t>(col)];
}

double TradePanel::world_gdp(int year) const { return slice(year).world_gdp; }

int TradePanel::category_index(std::string_view category) const {
  const auto it = category_index_.find(category);
  return it == category_index_.end() ? -1 : it->second;
}

TradePanel TradePanel::aggregated(int level) const {
  if (level < 1 || level > level_) {
    throw ConfigError("cannot aggregate a level-" + std::to_string(level_) +
                      " panel to level " + std::to_string(level));
  }
  if (level == level_) {
    return *this;
  }
  TradePanel out;
  out.level_ = level;
  out.years_ = years_;
  out.warnings_ = warnings_;

  std::set<std::string> category_set;
  for (const auto& category : categories_) {
    category_set.insert(
        category.substr(0, static_cast<std::size_t>(level)));
  }
  out.categories_.assign(category_set.begin(), category_set.end());
  for (std::size_t i = 0; i < out.categories_.size(); ++i) {
    out.category_index_[out.categories_[i]] = static_cast<int>(i);
  }
  std::vector<int> remap(categories_.size());
  for (std::size_t i = 0; i < categories_.size(); ++i) {
    remap[i] = out.category_index_.at(
        categories_[i].substr(0, static_cast<std::size_t>(level)));
  }

  for (const auto& [year, s] : slices_) {
    YearSlice ns;
    ns.countries = s.countries;
    ns.gdp = s.gdp;
    ns.totals = s.totals;
    ns.world_export = s.world_export;
    ns.world_gdp = s.world_gdp;
    ns.exports.assign(s.countries.size(),
                      std::vector<double>(out.categories_.size(), 0.0));
    ns.world_by_category.assign(out.categories_.size(), 0.0);
    for (std::size_t row = 0; row < s.exports.size(); ++row) {
      for (std::size_t col = 0; col < categories_.size(); ++col) {
        ns.exports[row][static_cast<std::size_t>(remap[col])] +=
            s.exports[row][col];
      }
    }
    for (std::size_t col = 0; col < categories_.size(); ++col) {
      ns.world_by_category[static_cast<std::size_t>(remap[col])] +=
          s.world_by_category[col];
    }
    out.slices_.emplace(year, std::move(ns));
  }
  return out;
}

TradePanel build_panel(std::span<const TradeRecord> trade,
                       std::span<const GdpRecord> gdp, int level,
                       const YearWindow& window) {
  if (level < 1 || level > 2) {
    throw ConfigError("panel level must be 1 or 2, got " +
                      std::to_string(level));
  }
  if (window.from > window.to) {
    throw ConfigError("year window is empty: " + std::to_string(window.from) +
                      "-" + std::to_string(window.to));
  }

  TradePanel panel;
  panel.level_ = level;

  // year -> country -> category -> summed value
  std::map<int, std::map<std::string, std::map<std::string, double>>> cells;
  for (const auto& record : trade) {
    if (!window.contains(record.year)) continue;
    const int keep = std::min(level, record.code.level());
    cells[record.year][record.country]
         [record.code.digits().substr(0, static_cast<std::size_t>(keep))] +=
        record.value;
  }

  std::map<int, std::map<std::string, double>> gdp_by_year;
  for (const auto& record : gdp) {
    if (!window.contains(record.year)) continue;
    if (record.gdp <= 0.0) {
      throw DataError("GDP for " + record.country + " in " +
                      std::to_string(record.year) + " is not positive");
    }
    const auto [it, inserted] =
        gdp_by_year[record.year].try_emplace(record.country, record.gdp);
    if (!inserted) {
      throw DataError("duplicate GDP entry for " + record.country + " in " +
                      std::to_string(record.year) +
                      " (use merge rules to combine entities)");
    }
  }

  std::set<int> candidate_years;
  for (const auto& [year, _] : cells) candidate_years.insert(year);
  for (const auto& [year, _] : gdp_by_year) candidate_years.insert(year);

  // First pass: joined country sets and the category universe.
  std::map<int, std::vector<std::string>> joined;
  std::set<std::string> category_set;
  for (const int year : candidate_years) {
    std::vector<std::string> kept;
    const auto cells_it = cells.find(year);
    const auto gdp_it = gdp_by_year.find(year);
    if (cells_it != cells.end() && gdp_it != gdp_by_year.end()) {
      for (const auto& [country, by_category] : cells_it->second) {
        if (!gdp_it->second.count(country)) continue;
        double total = 0.0;
        for (const auto& [_, value] : by_category) total += value;
        if (total <= 0.0) continue;
        kept.push_back(country);
        for (const auto& [category, value] : by_category) {
          if (value > 0.0) category_set.insert(category);
        }
      }
    }
    if (kept.empty()) {
      panel.warnings_.push_back(
          "year " + std::to_string(year) +
          ": no country has both export and GDP data (empty join)");
    }
    joined.emplace(year, std::move(kept));
  }

  panel.categories_.assign(category_set.begin(), category_set.end());
  for (std::size_t i = 0; i < panel.categories_.size(); ++i) {
    panel.category_index_[panel.categories_[i]] = static_cast<int>(i);
  }

  // Second pass: dense per-year slices; accumulation follows sorted
  // country/category order so sums are reproducible.
  for (const int year : candidate_years) {
    TradePanel::YearSlice s;
    s.countries = joined.at(year);
    const std::size_t n = s.countries.size();
    s.gdp.resize(n, 0.0);
    s.totals.resize(n, 0.0);
    s.exports.assign(n, std::vector<double>(panel.categories_.size(), 0.0));
    s.world_by_category.assign(panel.categories_.size(), 0.0);
    for (std::size_t row = 0; row < n; ++row) {
      const auto& country = s.countries[row];
      s.gdp[row] = gdp_by_year.at(year).at(country);
      for (const auto& [category, value] : cells.at(year).at(country)) {
        const int col = panel.category_index(category);
        if (col < 0) continue;  // value 0 everywhere
        s.exports[row][static_cast<std::size_t>(col)] += value;
      }
      for (const double v : s.exports[row]) s.totals[row] += v;
      s.world_export += s.totals[row];
      s.world_gdp += s.gdp[row];
      for (std::size_t col = 0; col < panel.categories_.size(); ++col) {
        s.world_by_category[col] += s.exports[row][col];
      }
    }
    panel.years_.push_back(year);
    panel.slices_.emplace(year, std::move(s));
  }

  return panel;
}

Reconciliation reconcile(std::span<const TradeRecord> trade,
                         std::span<const GdpRecord> gdp,
                         std::span<const MergeAction> actions,
                         const YearWindow& window) {
  Reconciliation report;
  report.actions.assign(actions.begin(), actions.end());

  std::map<std::string, std::map<int, double>> trade_totals;
  for (const auto& record : trade) {
    if (!window.contains(record.year)) continue;
    trade_totals[record.country][record.year] += record.value;
  }
  std::map<std::string, std::set<int>> gdp_years;
  for (const auto& record : gdp) {
    if (!window.contains(record.year)) continue;
    gdp_years[record.country].insert(record.year);
  }

  for (const auto& [country, _] : trade_totals) {
    if (gdp_years.count(country)) {
      report.matched.push_back(country);
    } else {
      report.trade_only.push_back(country);
    }
  }
  for (const auto& [country, _] : gdp_years) {
    if (!trade_totals.count(country)) {
      report.gdp_only.push_back(country);
    }
  }

  for (const auto& country : report.matched) {
    const auto& totals = trade_totals.at(country);
    bool has_positive_year = false;
    for (const auto& [_, total] : totals) {
      if (total > 0.0) {
        has_positive_year = true;
        break;
      }
    }
    if (!has_positive_year) continue;
    for (const int year : gdp_years.at(country)) {
      const auto it = totals.find(year);
      if (it == totals.end() || it->second <= 0.0) {
        report.export_gaps.emplace_back(country, year);
      }
    }
  }
  return report;
}

void write_reconciliation(const std::filesystem::path& path,
                          const Reconciliation& report, char delimiter) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& name : report.matched) {
    rows.push_back({"matched", name, "", "", ""});
  }
  for (const auto& name : report.trade_only) {
    rows.push_back({"trade_only", name, "", "", ""});
  }
  for (const auto& name : report.gdp_only) {
    rows.push_back({"gdp_only", name, "", "", ""});
  }
  for (const auto& action : report.actions) {
    rows.push_back({"merge", action.source, std::to_string(action.year),
                    action.target, std::to_string(action.rows)});
  }
  for (const auto& [country, year] : report.export_gaps) {
    rows.push_back({"export_gap", country, std::to_string(year), "", ""});
  }
  table::write_table_atomic(path, delimiter,
                            {"kind", "name", "year", "target", "rows"}, rows);
}

void write_panel_files(const TradePanel& panel,
                       const std::filesystem::path& trade_path,
                       const std::filesystem::path& gdp_path,
                       const TableFormat& format) {
  std::vector<std::vector<std::string>> trade_rows;
  std::vector<std::vector<std::string>> gdp_rows;
  for (const int year : panel.years()) {
    for (const auto& country : panel.countries(year)) {
      const auto row = panel.export_row(country, year);
      for (std::size_t col = 0; col < row.size(); ++col) {
        if (row[col] > 0.0) {
          trade_rows.push_back({country, std::to_string(year),
                                panel.categories()[col],
                                table::format_double(row[col])});
        }
      }
      gdp_rows.push_back({country, std::to_string(year),
                          table::format_double(panel.gdp(country, year))});
    }
  }
  const auto& c = format.columns;
  table::write_table_atomic(trade_path, format.delimiter,
                            {c.country, c.year, c.sitc, c.value}, trade_rows);
  table::write_table_atomic(gdp_path, format.delimiter,
                            {c.country, c.year, c.gdp}, gdp_rows);
}

}  // namespace tradeport::ingest
