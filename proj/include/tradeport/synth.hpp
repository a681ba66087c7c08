#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tradeport/ingest.hpp"

namespace tradeport::synth {

// Recipe for a synthetic panel whose local shares follow
// share(p) ~ base(p) * g^alpha(p) * lognormal-noise, renormalized per
// country. Everything downstream of the seed is deterministic.
struct SynthConfig {
  int n_countries = 24;
  int year_from = 1962;
  int year_to = 1966;
  std::vector<std::string> categories = {"0", "1", "2", "3", "4",
                                         "5", "6", "7", "8", "9"};
  std::vector<double> true_alpha;   // per category; empty = all zero
  std::vector<double> base_weight;  // per category; empty = all one
  std::vector<double> gdp_growth;   // per country; empty = drawn from range
  double growth_min = -0.02;
  double growth_max = 0.08;
  double gdp_scale_decades = 3.0;   // base GDP spans this many decades
  double noise_scale = 0.0;
  std::uint64_t seed = 1;
};

// Recorded in run manifests so panels regenerate identically anywhere.
inline constexpr std::string_view kRngAlgorithm = "mt19937_64/box-muller";

ingest::TradePanel generate(const SynthConfig& config);

}  // namespace tradeport::synth
