#include "tradeport/synth.hpp"

#include <cmath>
#include <set>

#include "tradeport/errors.hpp"
#include "tradeport/rng.hpp"
#include "tradeport/sitc.hpp"

namespace tradeport::synth {

namespace {

void validate(const SynthConfig& config) {
  if (config.n_countries < 3) {
    throw ConfigError("synthetic panel needs at least 3 countries");
  }
  if (config.year_from > config.year_to) {
    throw ConfigError("synthetic year range is empty");
  }
  if (config.noise_scale < 0.0) {
    throw ConfigError("noise scale must be nonnegative");
  }
  if (config.categories.empty()) {
    throw ConfigError("synthetic panel needs at least one category");
  }
  std::set<std::string> seen;
  for (const auto& category : config.categories) {
    const auto code = sitc::parse_sitc(category);
    if (code.level() > 2) {
      throw ConfigError("synthetic category '" + category +
                        "' is finer than level 2");
    }
    if (!seen.insert(category).second) {
      throw ConfigError("duplicate synthetic category '" + category + "'");
    }
  }
  if (!config.true_alpha.empty() &&
      config.true_alpha.size() != config.categories.size()) {
    throw ConfigError("true_alpha must match the category count");
  }
  if (!config.base_weight.empty()) {
    if (config.base_weight.size() != config.categories.size()) {
      throw ConfigError("base_weight must match the category count");
    }
    for (const double w : config.base_weight) {
      if (w < 0.0) throw ConfigError("base weights must be nonnegative");
    }
  }
  if (!config.gdp_growth.empty() &&
      config.gdp_growth.size() != static_cast<std::size_t>(config.n_countries)) {
    throw ConfigError("gdp_growth must match the country count");
  }
  if (config.growth_min > config.growth_max) {
    throw ConfigError("growth range is empty");
  }
  if (config.growth_min <= -1.0) {
    throw ConfigError("growth rates must stay above -100%");
  }
  if (config.gdp_scale_decades < 0.0) {
    throw ConfigError("gdp_scale_decades must be nonnegative");
  }
}

}  // namespace

ingest::TradePanel generate(const SynthConfig& config) {
  validate(config);
  detail::Rng rng(config.seed);

  const std::size_t n = static_cast<std::size_t>(config.n_countries);
  const std::size_t n_categories = config.categories.size();

  // zero-padded names keep the country order stable
  std::size_t width = 2;
  for (int v = config.n_countries - 1; v >= 100; v /= 10) ++width;
  std::vector<std::string> countries(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::string number = std::to_string(c);
    countries[c] = "C" + std::string(width - number.size(), '0') + number;
  }

  std::vector<double> base_gdp(n);
  for (std::size_t c = 0; c < n; ++c) {
    base_gdp[c] = std::pow(10.0, rng.uniform01() * config.gdp_scale_decades);
  }
  std::vector<double> growth(n);
  for (std::size_t c = 0; c < n; ++c) {
    growth[c] = config.gdp_growth.empty()
                    ? rng.uniform(config.growth_min, config.growth_max)
                    : config.gdp_growth[c];
  }

  std::vector<ingest::TradeRecord> trade;
  std::vector<ingest::GdpRecord> gdp;
  trade.reserve(n * n_categories *
                static_cast<std::size_t>(config.year_to - config.year_from + 1));

  int level = 1;
  std::vector<sitc::SitcCode> codes;
  codes.reserve(n_categories);
  for (const auto& category : config.categories) {
    codes.push_back(sitc::parse_sitc(category));
    level = std::max(level, codes.back().level());
  }

  for (int year = config.year_from; year <= config.year_to; ++year) {
    std::vector<double> w(n);
    double world = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
      w[c] = base_gdp[c] * std::pow(1.0 + growth[c], year - config.year_from);
      world += w[c];
    }
    for (std::size_t c = 0; c < n; ++c) {
      const double g = w[c] / world;
      std::vector<double> weight(n_categories);
      double weight_sum = 0.0;
      for (std::size_t p = 0; p < n_categories; ++p) {
        const double alpha =
            config.true_alpha.empty() ? 0.0 : config.true_alpha[p];
        const double base =
            config.base_weight.empty() ? 1.0 : config.base_weight[p];
        double value = base * std::pow(g, alpha);
        if (config.noise_scale > 0.0) {
          value *= std::exp(config.noise_scale * rng.normal());
        }
        weight[p] = value;
        weight_sum += value;
      }
      if (!(weight_sum > 0.0) || !std::isfinite(weight_sum)) {
        throw DataError("synthetic share normalization vanished for " +
                        countries[c] + " in " + std::to_string(year));
      }
      const double total_export = 0.3 * w[c];
      for (std::size_t p = 0; p < n_categories; ++p) {
        const double value = total_export * weight[p] / weight_sum;
        if (value > 0.0) {
          trade.push_back(
              ingest::TradeRecord{countries[c], year, codes[p], value});
        }
      }
      gdp.push_back(ingest::GdpRecord{countries[c], year, w[c]});
    }
  }

  return ingest::build_panel(trade, gdp, level,
                             ingest::YearWindow{config.year_from, config.year_to});
}

}  // namespace tradeport::synth
