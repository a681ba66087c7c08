#include "tradeport/correlate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tradeport/errors.hpp"
#include "tradeport/rng.hpp"
#include "tradeport/shares.hpp"

namespace tradeport::correlate {

PValueMode parse_pvalue_mode(std::string_view name) {
  if (name == "parametric") return PValueMode::parametric;
  if (name == "permutation") return PValueMode::permutation;
  throw ConfigError("unknown p-value mode '" + std::string(name) +
                    "' (use parametric or permutation)");
}

namespace detail {

namespace {

// Lentz continued fraction for the incomplete beta function.
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIterations = 300;
  constexpr double kEps = 3e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_prefactor = std::lgamma(a + b) - std::lgamma(a) -
                              std::lgamma(b) + a * std::log(x) +
                              b * std::log1p(-x);
  const double prefactor = std::exp(ln_prefactor);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return prefactor * beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - prefactor * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, int dof) {
  if (dof < 1) {
    throw ConfigError("t test needs at least 1 degree of freedom");
  }
  if (std::isinf(t)) return 0.0;
  const double v = static_cast<double>(dof);
  return regularized_incomplete_beta(v / 2.0, 0.5, v / (v + t * t));
}

double permutation_p_value(std::span<const double> x,
                           std::span<const double> y,
                           const PermutationSpec& permutation) {
  if (permutation.draws < 1) {
    throw ConfigError("permutation test needs at least 1 draw");
  }
  const double observed = std::fabs(pearson_rho(x, y));
  std::vector<double> shuffled(y.begin(), y.end());
  tradeport::detail::Rng rng(permutation.seed);
  int hits = 0;
  for (int draw = 0; draw < permutation.draws; ++draw) {
    for (std::size_t i = shuffled.size() - 1; i > 0; --i) {
      const std::size_t j = rng.below(i + 1);
      std::swap(shuffled[i], shuffled[j]);
    }
    if (std::fabs(pearson_rho(x, shuffled)) >= observed - 1e-12) {
      ++hits;
    }
  }
  return (hits + 1.0) / (permutation.draws + 1.0);
}

}  // namespace detail

double pearson_rho(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw DataError("correlation profiles differ in length");
  }
  const std::size_t n = x.size();
  if (n < 3) {
    throw DataError("correlation needs at least 3 points, got " +
                    std::to_string(n));
  }
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_x += x[i];
    mean_y += y[i];
  }
  mean_x /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mean_x;
    const double dy = y[i] - mean_y;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx <= 0.0 || syy <= 0.0) {
    throw DataError("correlation undefined: a profile has zero variance");
  }
  double rho = sxy / std::sqrt(sxx * syy);
  rho = std::clamp(rho, -1.0, 1.0);
  return rho;
}

CorrelationResult pearson(std::span<const double> x, std::span<const double> y,
                          PValueMode mode,
                          const PermutationSpec& permutation) {
  CorrelationResult result;
  result.rho = pearson_rho(x, y);
  result.n = static_cast<int>(x.size());
  if (mode == PValueMode::permutation) {
    result.p_value = detail::permutation_p_value(x, y, permutation);
    return result;
  }
  const double r2 = result.rho * result.rho;
  if (r2 >= 1.0) {
    result.p_value = 0.0;
    return result;
  }
  const int dof = result.n - 2;
  const double t =
      result.rho * std::sqrt(static_cast<double>(dof) / (1.0 - r2));
  result.p_value = detail::student_t_two_sided_p(t, dof);
  return result;
}

CorrelationResult share_gdp_correlation(const ingest::TradePanel& panel,
                                        std::string_view category, int year,
                                        PValueMode mode,
                                        const PermutationSpec& permutation) {
  const int col = panel.category_index(category);
  if (col < 0) {
    throw DataError("category '" + std::string(category) +
                    "' absent from panel");
  }
  const auto profile = shares::gdp_profile(panel, year);
  std::vector<double> share_profile;
  share_profile.reserve(profile.countries.size());
  for (const auto& country : profile.countries) {
    const auto row = panel.export_row(country, year);
    share_profile.push_back(row[static_cast<std::size_t>(col)] /
                            panel.total_export(country, year));
  }
  return pearson(share_profile, profile.values, mode, permutation);
}

ElasticityEstimate fit_elasticity(const ingest::TradePanel& panel,
                                  std::string_view category, int year) {
  const int col = panel.category_index(category);
  if (col < 0) {
    throw DataError("category '" + std::string(category) +
                    "' absent from panel");
  }
  const auto profile = shares::gdp_profile(panel, year);
  std::vector<double> log_g;
  std::vector<double> log_share;
  int excluded = 0;
  for (std::size_t i = 0; i < profile.countries.size(); ++i) {
    const auto& country = profile.countries[i];
    const double share = panel.export_row(country, year)[static_cast<std::size_t>(col)] /
                         panel.total_export(country, year);
    if (share <= 0.0) {
      ++excluded;  // log undefined; reported, not imputed
      continue;
    }
    log_g.push_back(std::log(profile.values[i]));
    log_share.push_back(std::log(share));
  }
  const std::size_t n = log_g.size();
  if (n < 3) {
    throw DataError("elasticity fit for category '" + std::string(category) +
                    "' in " + std::to_string(year) + " has only " +
                    std::to_string(n) + " countries with positive share");
  }
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_x += log_g[i];
    mean_y += log_share[i];
  }
  mean_x /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = log_g[i] - mean_x;
    sxx += dx * dx;
    sxy += dx * (log_share[i] - mean_y);
  }
  if (sxx <= 0.0) {
    throw DataError("elasticity fit degenerate: all GDP values equal in " +
                    std::to_string(year));
  }
  ElasticityEstimate estimate;
  estimate.year = year;
  estimate.n = static_cast<int>(n);
  estimate.excluded = excluded;
  estimate.alpha = sxy / sxx;
  double ssr = 0.0;
  const double intercept = mean_y - estimate.alpha * mean_x;
  for (std::size_t i = 0; i < n; ++i) {
    const double residual =
        log_share[i] - (intercept + estimate.alpha * log_g[i]);
    ssr += residual * residual;
  }
  if (n > 2) {
    estimate.std_error =
        std::sqrt(ssr / (static_cast<double>(n) - 2.0) / sxx);
  }
  return estimate;
}

ElasticitySummary elasticity_summary(const ingest::TradePanel& panel,
                                     std::string_view category) {
  std::vector<double> alphas;
  for (const int year : panel.years()) {
    try {
      alphas.push_back(fit_elasticity(panel, category, year).alpha);
    } catch (const DataError&) {
      // year not estimable; skipped
    }
  }
  if (alphas.size() < 2) {
    throw DataError("elasticity summary for category '" +
                    std::string(category) + "' has fewer than 2 estimable years");
  }
  ElasticitySummary summary;
  summary.n_years = static_cast<int>(alphas.size());
  double mean = 0.0;
  for (const double a : alphas) mean += a;
  mean /= static_cast<double>(alphas.size());
  double ss = 0.0;
  for (const double a : alphas) ss += (a - mean) * (a - mean);
  summary.mean_alpha = mean;
  summary.std_alpha =
      std::sqrt(ss / (static_cast<double>(alphas.size()) - 1.0));
  return summary;
}

VariationProfile::Slice VariationProfile::slice(
    std::string_view category) const {
  const auto it =
      std::lower_bound(categories.begin(), categories.end(), category);
  if (it == categories.end() || *it != category) {
    throw DataError("category '" + std::string(category) +
                    "' absent from variation profile");
  }
  const auto& row = lambda[static_cast<std::size_t>(it - categories.begin())];
  Slice slice;
  for (std::size_t i = 0; i < countries.size(); ++i) {
    if (std::isnan(row[i])) continue;
    slice.countries.push_back(countries[i]);
    slice.lambda.push_back(row[i]);
    slice.gamma.push_back(gamma[i]);
  }
  return slice;
}

VariationProfile variation_profile(const ingest::TradePanel& panel, int t0,
                                   int t1) {
  if (t0 == t1) {
    throw ConfigError("variation needs two distinct years, got " +
                      std::to_string(t0) + " twice");
  }
  const auto start = shares::gdp_profile(panel, t0);
  const auto end = shares::gdp_profile(panel, t1);

  VariationProfile profile;
  profile.t0 = t0;
  profile.t1 = t1;
  profile.categories = panel.categories();
  std::set_intersection(start.countries.begin(), start.countries.end(),
                        end.countries.begin(), end.countries.end(),
                        std::back_inserter(profile.countries));
  if (profile.countries.empty()) {
    throw DataError("no country is present in both " + std::to_string(t0) +
                    " and " + std::to_string(t1));
  }
  profile.gamma.reserve(profile.countries.size());
  for (const auto& country : profile.countries) {
    profile.gamma.push_back(end.value_of(country) / start.value_of(country));
  }
  profile.lambda.assign(
      profile.categories.size(),
      std::vector<double>(profile.countries.size(),
                          std::numeric_limits<double>::quiet_NaN()));
  for (std::size_t i = 0; i < profile.countries.size(); ++i) {
    const auto& country = profile.countries[i];
    const auto share_start = shares::local_share(panel, country, t0);
    const auto share_end = shares::local_share(panel, country, t1);
    for (std::size_t p = 0; p < profile.categories.size(); ++p) {
      const double s0 = share_start.values[p];
      const double s1 = share_end.values[p];
      if (s0 > 0.0 && s1 > 0.0) {
        profile.lambda[p][i] = s1 / s0;
      }
    }
  }
  return profile;
}

CorrelationResult variation_correlation(const VariationProfile& profile,
                                        std::string_view category,
                                        PValueMode mode,
                                        const PermutationSpec& permutation) {
  const auto slice = profile.slice(category);
  return pearson(slice.lambda, slice.gamma, mode, permutation);
}

}  // namespace tradeport::correlate
