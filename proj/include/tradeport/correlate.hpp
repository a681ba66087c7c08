#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tradeport/ingest.hpp"

namespace tradeport::correlate {

struct CorrelationResult {
  double rho = 0.0;
  double p_value = 1.0;
  int n = 0;
};

// The parametric p-value is the two-sided t test of zero correlation with
// n-2 degrees of freedom; permutation mode is the resampling cross-check.
enum class PValueMode { parametric, permutation };

struct PermutationSpec {
  int draws = 10000;
  std::uint64_t seed = 987654321;
};

PValueMode parse_pvalue_mode(std::string_view name);

double pearson_rho(std::span<const double> x, std::span<const double> y);

CorrelationResult pearson(std::span<const double> x, std::span<const double> y,
                          PValueMode mode = PValueMode::parametric,
                          const PermutationSpec& permutation = {});

// Correlation of one category's share profile against the GDP profile over
// the countries of one year.
CorrelationResult share_gdp_correlation(const ingest::TradePanel& panel,
                                        std::string_view category, int year,
                                        PValueMode mode = PValueMode::parametric,
                                        const PermutationSpec& permutation = {});

// Slope of ln(share) on ln(normalized GDP) across countries: the
// GDP-elasticity of one category's local export share at one year.
struct ElasticityEstimate {
  double alpha = 0.0;
  double std_error = 0.0;  // OLS slope standard error
  int n = 0;               // countries used
  int year = 0;
  int excluded = 0;  // countries dropped because the share was zero
};

ElasticityEstimate fit_elasticity(const ingest::TradePanel& panel,
                                  std::string_view category, int year);

// Unweighted mean and standard deviation of the per-year elasticities.
struct ElasticitySummary {
  double mean_alpha = 0.0;
  double std_alpha = 0.0;
  int n_years = 0;
};

ElasticitySummary elasticity_summary(const ingest::TradePanel& panel,
                                     std::string_view category);

// Multiplicative end-over-start variation of shares and GDP between two
// years, over the countries present at both.
struct VariationProfile {
  int t0 = 0;
  int t1 = 0;
  std::vector<std::string> countries;  // sorted; aligned with gamma
  std::vector<double> gamma;
  std::vector<std::string> categories;
  // lambda[category][country]; NaN when the share is zero at either year.
  std::vector<std::vector<double>> lambda;

  struct Slice {
    std::vector<std::string> countries;
    std::vector<double> lambda;
    std::vector<double> gamma;
  };
  // Countries with a defined share ratio for the category.
  Slice slice(std::string_view category) const;
};

VariationProfile variation_profile(const ingest::TradePanel& panel, int t0,
                                   int t1);

CorrelationResult variation_correlation(const VariationProfile& profile,
                                        std::string_view category,
                                        PValueMode mode = PValueMode::parametric,
                                        const PermutationSpec& permutation = {});

namespace detail {

// I_x(a, b), continued-fraction evaluation.
double regularized_incomplete_beta(double a, double b, double x);
double student_t_two_sided_p(double t, int dof);
double permutation_p_value(std::span<const double> x,
                           std::span<const double> y,
                           const PermutationSpec& permutation);

}  // namespace detail

}  // namespace tradeport::correlate
