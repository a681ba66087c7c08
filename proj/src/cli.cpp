#include "tradeport/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tradeport/cluster.hpp"
#include "tradeport/correlate.hpp"
#include "tradeport/errors.hpp"
#include "tradeport/ingest.hpp"
#include "tradeport/reports.hpp"
#include "tradeport/synth.hpp"
#include "tradeport/table.hpp"
#include "tradeport/transition.hpp"

namespace tradeport::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct CommonOptions {
  std::string trade;
  std::string gdp;
  std::string aliases;
  std::string format_path;
  std::string out = "out";
  int level = 1;
  int from_year = 1962;
  int to_year = 2000;
};

struct ClusterOptions {
  double dc = 0.45;
  std::string linkage = "single";
  std::vector<int> at_years;
};

struct CorrelateOptions {
  std::string pvalue = "parametric";
  int draws = 10000;
  std::uint64_t perm_seed = 987654321;
};

struct TransitionOptions {
  int min_countries = 4;      // smallest cell kept in the plotted series
  double growth_threshold = 1.5;
};

struct SynthOptions {
  int countries = 24;
  int from_year = 1962;
  int to_year = 1966;
  double noise = 0.0;
  std::uint64_t seed = 1;
  std::vector<std::string> alphas;  // CATEGORY=VALUE
};

struct Loaded {
  ingest::TableFormat format;
  std::vector<ingest::TradeRecord> trade;
  std::vector<ingest::GdpRecord> gdp;
  std::vector<ingest::MergeAction> actions;
  ingest::TradePanel panel;
  ingest::YearWindow window;
};

void add_common(CLI::App* sub, CommonOptions& opt, bool needs_inputs) {
  auto* trade = sub->add_option("--trade", opt.trade, "Trade file");
  auto* gdp = sub->add_option("--gdp", opt.gdp, "GDP file");
  if (needs_inputs) {
    trade->required();
    gdp->required();
  }
  sub->add_option("--aliases", opt.aliases,
                  "Alias/merge-rule file (source_name, target_name, year_from, year_to)");
  sub->add_option("--format", opt.format_path,
                  "JSON format descriptor (delimiter, column names)");
  sub->add_option("--level", opt.level, "SITC level")
      ->check(CLI::Range(1, 2));
  sub->add_option("--from-year", opt.from_year, "Window start");
  sub->add_option("--to-year", opt.to_year, "Window end");
  sub->add_option("--out", opt.out, "Output directory");
}

void add_cluster(CLI::App* sub, ClusterOptions& opt) {
  sub->add_option("--dc", opt.dc, "Dendrogram cut distance")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--linkage", opt.linkage, "Linkage rule")
      ->check(CLI::IsMember({"single", "complete", "average"}));
  sub->add_option("--at", opt.at_years,
                  "Year(s) to cluster (default: window endpoints)");
}

void add_correlate(CLI::App* sub, CorrelateOptions& opt) {
  sub->add_option("--pvalue", opt.pvalue, "Significance mode")
      ->check(CLI::IsMember({"parametric", "permutation"}));
  sub->add_option("--draws", opt.draws, "Permutation draws")
      ->check(CLI::PositiveNumber);
  sub->add_option("--perm-seed", opt.perm_seed, "Permutation seed");
}

ingest::TableFormat resolve_format(const CommonOptions& opt) {
  if (opt.format_path.empty()) {
    return {};
  }
  return ingest::TableFormat::from_json_file(opt.format_path);
}

Loaded load_inputs(const CommonOptions& opt, int level,
                   bool require_nonempty_join = true) {
  Loaded loaded;
  loaded.format = resolve_format(opt);
  loaded.window = ingest::YearWindow{opt.from_year, opt.to_year};
  auto trade = ingest::load_trade_file(opt.trade, loaded.format);
  auto gdp = ingest::load_gdp_file(opt.gdp, loaded.format);
  std::vector<ingest::MergeRule> rules;
  if (!opt.aliases.empty()) {
    rules = ingest::load_merge_rules_file(opt.aliases, loaded.format);
  }
  loaded.trade =
      ingest::merge_entities(std::move(trade), rules, loaded.window,
                             &loaded.actions);
  loaded.gdp = ingest::merge_entities(std::move(gdp), rules, loaded.window,
                                      &loaded.actions);
  loaded.panel = ingest::build_panel(loaded.trade, loaded.gdp, level,
                                     loaded.window);
  if (require_nonempty_join) {
    bool any = false;
    for (const int year : loaded.panel.years()) {
      if (!loaded.panel.countries(year).empty()) {
        any = true;
        break;
      }
    }
    if (!any) {
      throw DataError(
          "empty join: no (country, year) has both export and GDP data; "
          "run the ingest command for a reconciliation report");
    }
  }
  return loaded;
}

fs::path prepare_out(const CommonOptions& opt) {
  fs::path dir(opt.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw IoError("cannot create output directory '" + dir.string() + "'");
  }
  return dir;
}

void write_warnings(const fs::path& path, const ingest::TradePanel& panel,
                    char delimiter) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& warning : panel.warnings()) {
    rows.push_back({warning});
  }
  table::write_table_atomic(path, delimiter, {"warning"}, rows);
}

void write_manifest(const fs::path& dir, const std::string& command,
                    const json& parameters, const Loaded* loaded,
                    const std::vector<std::string>& outputs,
                    const json& extra = json::object()) {
  json doc;
  doc["tool"] = "tradeport";
  doc["version"] = std::string(kVersion);
  doc["command"] = command;
  doc["parameters"] = parameters;
  json inputs = json::array();
  if (loaded) {
    inputs.push_back({{"role", "trade"}, {"rows", loaded->trade.size()}});
    inputs.push_back({{"role", "gdp"}, {"rows", loaded->gdp.size()}});
  }
  doc["inputs"] = inputs;
  doc["outputs"] = outputs;
  for (const auto& [key, value] : extra.items()) {
    doc[key] = value;
  }
  const fs::path tmp = dir / "manifest.json.tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) {
      throw IoError("cannot write manifest in '" + dir.string() + "'");
    }
    out << doc.dump(2) << "\n";
  }
  fs::rename(tmp, dir / "manifest.json");
}

json common_parameters(const CommonOptions& opt, int level) {
  return json{{"trade", opt.trade},
              {"gdp", opt.gdp},
              {"aliases", opt.aliases},
              {"format", opt.format_path},
              {"level", level},
              {"from_year", opt.from_year},
              {"to_year", opt.to_year},
              {"out", opt.out}};
}

int effective_level(const CLI::App* sub, const CommonOptions& opt,
                    int fallback) {
  return sub->count("--level") > 0 ? opt.level : fallback;
}

std::vector<int> cluster_years(const ClusterOptions& copt,
                               const CommonOptions& opt) {
  if (!copt.at_years.empty()) {
    return copt.at_years;
  }
  return {opt.from_year, opt.to_year};
}

// ---- commands ------------------------------------------------------------

int cmd_ingest(const CommonOptions& opt, const CLI::App* sub) {
  const int level = effective_level(sub, opt, 1);
  // the audit command still writes its report when the join is empty
  const auto loaded = load_inputs(opt, level, false);
  const auto dir = prepare_out(opt);
  const char d = loaded.format.delimiter;
  const auto recon = ingest::reconcile(loaded.trade, loaded.gdp,
                                       loaded.actions, loaded.window);
  ingest::write_reconciliation(dir / "reconciliation.tsv", recon, d);
  reports::write_panel_summary(dir / "panel_summary.tsv", loaded.panel, d);
  write_warnings(dir / "panel_warnings.tsv", loaded.panel, d);
  write_manifest(dir, "ingest", common_parameters(opt, level), &loaded,
                 {"reconciliation.tsv", "panel_summary.tsv",
                  "panel_warnings.tsv"});
  return kOk;
}

int cmd_shares(const CommonOptions& opt, const CLI::App* sub) {
  const int level = effective_level(sub, opt, 1);
  const auto loaded = load_inputs(opt, level);
  const auto dir = prepare_out(opt);
  const char d = loaded.format.delimiter;
  std::vector<std::string> outputs = {"global_shares.tsv", "local_shares.tsv",
                                      "gdp_profiles.tsv"};
  reports::write_global_shares(dir / "global_shares.tsv", loaded.panel, d);
  reports::write_local_shares(dir / "local_shares.tsv", loaded.panel, d);
  reports::write_gdp_profiles(dir / "gdp_profiles.tsv", loaded.panel, d);
  if (loaded.panel.level() == 1) {
    reports::write_sector_shares(dir / "sector_shares.tsv", loaded.panel, d);
    outputs.push_back("sector_shares.tsv");
  }
  write_manifest(dir, "shares", common_parameters(opt, level), &loaded,
                 outputs);
  return kOk;
}

int cmd_correlate(const CommonOptions& opt, const CorrelateOptions& copt,
                  const CLI::App* sub) {
  const int level = effective_level(sub, opt, 1);
  const auto loaded = load_inputs(opt, level);
  const auto dir = prepare_out(opt);
  const char d = loaded.format.delimiter;
  const auto mode = correlate::parse_pvalue_mode(copt.pvalue);
  const correlate::PermutationSpec spec{copt.draws, copt.perm_seed};
  reports::write_share_gdp_correlations(dir / "correlations.tsv", loaded.panel,
                                        mode, spec, d);
  const auto profile =
      correlate::variation_profile(loaded.panel, opt.from_year, opt.to_year);
  reports::write_variation_fractions(dir / "variation_fractions.tsv", profile,
                                     d);
  reports::write_variation_scatter(dir / "variation_scatter.tsv", profile, d);
  reports::write_variation_correlations(dir / "variation_correlations.tsv",
                                        profile, mode, spec, d);
  json parameters = common_parameters(opt, level);
  parameters["pvalue"] = copt.pvalue;
  parameters["draws"] = copt.draws;
  parameters["perm_seed"] = copt.perm_seed;
  write_manifest(dir, "correlate", parameters, &loaded,
                 {"correlations.tsv", "variation_fractions.tsv",
                  "variation_scatter.tsv", "variation_correlations.tsv"});
  return kOk;
}

int cmd_elasticity(const CommonOptions& opt, const CLI::App* sub) {
  const int level = effective_level(sub, opt, 1);
  const auto loaded = load_inputs(opt, level);
  const auto dir = prepare_out(opt);
  const char d = loaded.format.delimiter;
  reports::write_elasticities(dir / "elasticities.tsv", loaded.panel, d);
  reports::write_elasticity_summary(dir / "elasticity_summary.tsv", loaded.panel, d);
  write_manifest(dir, "elasticity", common_parameters(opt, level), &loaded,
                 {"elasticities.tsv", "elasticity_summary.tsv"});
  return kOk;
}

int cmd_cluster(const CommonOptions& opt, const ClusterOptions& copt,
                const CLI::App* sub) {
  const int level = effective_level(sub, opt, 2);
  const auto loaded = load_inputs(opt, level);
  const auto dir = prepare_out(opt);
  const char d = loaded.format.delimiter;
  const auto linkage = cluster::parse_linkage(copt.linkage);
  const auto level1 = loaded.panel.aggregated(1);
  const auto years = cluster_years(copt, opt);

  std::vector<std::string> outputs;
  std::vector<cluster::ClusterSet> sets;
  for (const int year : years) {
    const auto matrix = cluster::portfolio_distances(loaded.panel, year);
    const auto tree = cluster::agglomerate(matrix, linkage);
    auto set = cluster::cut(tree, copt.dc);
    for (const auto& members : set.clusters) {
      set.names.push_back(
          cluster::name_cluster(cluster::cluster_stats(level1, members, year)));
    }
    const std::string suffix = std::to_string(year) + ".tsv";
    reports::write_dendrogram(dir / ("dendrogram_" + suffix), tree, d);
    reports::write_dendrogram_leaves(dir / ("dendrogram_leaves_" + suffix),
                                     tree, d);
    reports::write_cluster_members(dir / ("clusters_" + suffix), set, d);
    reports::write_cluster_stats(dir / ("cluster_stats_" + suffix), level1,
                                 set, d);
    outputs.insert(outputs.end(),
                   {"dendrogram_" + suffix, "dendrogram_leaves_" + suffix,
                    "clusters_" + suffix, "cluster_stats_" + suffix});
    sets.push_back(std::move(set));
  }
  if (sets.size() == 2) {
    reports::write_cluster_cross_distances(dir / "cluster_distances.tsv",
                                           level1, sets[0], sets[1], d);
    outputs.push_back("cluster_distances.tsv");
  }
  json parameters = common_parameters(opt, level);
  parameters["dc"] = copt.dc;
  parameters["linkage"] = copt.linkage;
  parameters["years"] = years;
  write_manifest(dir, "cluster", parameters, &loaded, outputs);
  return kOk;
}

int cmd_transition(const CommonOptions& opt, const ClusterOptions& copt,
                   const TransitionOptions& topt, const CLI::App* sub) {
  const int level = effective_level(sub, opt, 2);
  const auto loaded = load_inputs(opt, level);
  const auto dir = prepare_out(opt);
  const char d = loaded.format.delimiter;
  const auto linkage = cluster::parse_linkage(copt.linkage);
  const auto years = cluster_years(copt, opt);
  if (years.size() != 2) {
    throw ConfigError("transition needs exactly two cluster years");
  }
  const auto source =
      cluster::cluster_year(loaded.panel, years[0], copt.dc, linkage);
  const auto dest =
      cluster::cluster_year(loaded.panel, years[1], copt.dc, linkage);
  const auto report = transition::transition_table(loaded.panel, source, dest);

  reports::write_cluster_members(dir / "clusters_source.tsv", source, d);
  reports::write_cluster_members(dir / "clusters_dest.tsv", dest, d);
  reports::write_transition_matrix(dir / "transition_matrix.tsv", report, d);
  reports::write_transition_members(dir / "transitions.tsv", report, d);
  reports::write_transition_unmatched(dir / "transitions_unmatched.tsv",
                                      report, d);
  reports::write_transition_series(dir / "transition_gdp.tsv", loaded.panel,
                                   report, 1, d);
  reports::write_transition_series(dir / "transition_gdp_filtered.tsv", loaded.panel,
                                   report, topt.min_countries, d);
  const auto ranking =
      transition::growth_ranking(loaded.panel, dest, topt.growth_threshold);
  reports::write_growth_ranking(dir / "growth_ranking.tsv", ranking, d);

  json parameters = common_parameters(opt, level);
  parameters["dc"] = copt.dc;
  parameters["linkage"] = copt.linkage;
  parameters["years"] = years;
  parameters["min_countries"] = topt.min_countries;
  parameters["growth_threshold"] = topt.growth_threshold;
  write_manifest(dir, "transition", parameters, &loaded,
                 {"clusters_source.tsv", "clusters_dest.tsv", "transition_matrix.tsv",
                  "transitions.tsv", "transitions_unmatched.tsv",
                  "transition_gdp.tsv", "transition_gdp_filtered.tsv",
                  "growth_ranking.tsv"});
  return kOk;
}

int cmd_synth(const CommonOptions& opt, const SynthOptions& sopt) {
  synth::SynthConfig config;
  config.n_countries = sopt.countries;
  config.year_from = sopt.from_year;
  config.year_to = sopt.to_year;
  config.noise_scale = sopt.noise;
  config.seed = sopt.seed;
  if (!sopt.alphas.empty()) {
    config.true_alpha.assign(config.categories.size(), 0.0);
    for (const auto& spec : sopt.alphas) {
      const auto pos = spec.find('=');
      if (pos == std::string::npos) {
        throw ConfigError("--alpha expects CATEGORY=VALUE, got '" + spec +
                          "'");
      }
      const std::string category = spec.substr(0, pos);
      const auto it = std::find(config.categories.begin(),
                                config.categories.end(), category);
      if (it == config.categories.end()) {
        throw ConfigError("--alpha category '" + category +
                          "' is not a level-1 digit");
      }
      config.true_alpha[static_cast<std::size_t>(
          it - config.categories.begin())] =
          table::parse_double(spec.substr(pos + 1), 0, "alpha");
    }
  }
  const auto panel = synth::generate(config);
  const auto dir = prepare_out(opt);
  const auto format = resolve_format(opt);
  ingest::write_panel_files(panel, dir / "trade.tsv", dir / "gdp.tsv", format);
  json parameters;
  parameters["countries"] = sopt.countries;
  parameters["from_year"] = sopt.from_year;
  parameters["to_year"] = sopt.to_year;
  parameters["noise"] = sopt.noise;
  parameters["seed"] = sopt.seed;
  parameters["alphas"] = sopt.alphas;
  parameters["out"] = opt.out;
  write_manifest(dir, "synth", parameters, nullptr, {"trade.tsv", "gdp.tsv"},
                 json{{"rng", std::string(synth::kRngAlgorithm)}});
  return kOk;
}

int cmd_report(const CommonOptions& opt, const ClusterOptions& copt,
               const CorrelateOptions& ropt, const TransitionOptions& topt) {
  // full pipeline: level-2 build once, level-1 via aggregation
  const auto loaded = load_inputs(opt, 2);
  const auto dir = prepare_out(opt);
  const char d = loaded.format.delimiter;
  const auto level1 = loaded.panel.aggregated(1);
  const auto mode = correlate::parse_pvalue_mode(ropt.pvalue);
  const correlate::PermutationSpec spec{ropt.draws, ropt.perm_seed};
  std::vector<std::string> outputs;
  auto add = [&outputs](std::string name) { outputs.push_back(std::move(name)); };

  const auto recon = ingest::reconcile(loaded.trade, loaded.gdp,
                                       loaded.actions, loaded.window);
  ingest::write_reconciliation(dir / "reconciliation.tsv", recon, d);
  add("reconciliation.tsv");
  reports::write_panel_summary(dir / "panel_summary.tsv", level1, d);
  add("panel_summary.tsv");
  write_warnings(dir / "panel_warnings.tsv", level1, d);
  add("panel_warnings.tsv");

  // share tables
  reports::write_global_shares(dir / "global_shares.tsv", level1, d);
  add("global_shares.tsv");
  reports::write_sector_shares(dir / "sector_shares.tsv", level1, d);
  add("sector_shares.tsv");
  reports::write_local_shares(dir / "local_shares.tsv", level1, d);
  add("local_shares.tsv");
  reports::write_gdp_profiles(dir / "gdp_profiles.tsv", level1, d);
  add("gdp_profiles.tsv");

  // correlation and elasticity, both SITC levels
  reports::write_share_gdp_correlations(dir / "correlations.tsv", level1, mode,
                                        spec, d);
  add("correlations.tsv");
  reports::write_share_gdp_correlations(dir / "correlations_level2.tsv",
                                        loaded.panel, mode, spec, d);
  add("correlations_level2.tsv");
  reports::write_share_gdp_scatter(dir / "share_gdp_scatter.tsv", level1, d);
  add("share_gdp_scatter.tsv");
  reports::write_elasticities(dir / "elasticities.tsv", level1, d);
  add("elasticities.tsv");
  reports::write_elasticity_summary(dir / "elasticity_summary.tsv", level1, d);
  add("elasticity_summary.tsv");

  // multiplicative variation over the window
  const auto profile =
      correlate::variation_profile(level1, opt.from_year, opt.to_year);
  reports::write_variation_fractions(dir / "variation_fractions.tsv", profile,
                                     d);
  add("variation_fractions.tsv");
  reports::write_variation_scatter(dir / "variation_scatter.tsv", profile, d);
  add("variation_scatter.tsv");
  reports::write_variation_correlations(dir / "variation_correlations.tsv",
                                        profile, mode, spec, d);
  add("variation_correlations.tsv");

  // clustering at the window endpoints
  const auto linkage = cluster::parse_linkage(copt.linkage);
  const auto years = cluster_years(copt, opt);
  std::vector<cluster::ClusterSet> sets;
  for (const int year : years) {
    const auto matrix = cluster::portfolio_distances(loaded.panel, year);
    const auto tree = cluster::agglomerate(matrix, linkage);
    auto set = cluster::cut(tree, copt.dc);
    for (const auto& members : set.clusters) {
      set.names.push_back(
          cluster::name_cluster(cluster::cluster_stats(level1, members, year)));
    }
    const std::string suffix = std::to_string(year) + ".tsv";
    reports::write_dendrogram(dir / ("dendrogram_" + suffix), tree, d);
    add("dendrogram_" + suffix);
    reports::write_dendrogram_leaves(dir / ("dendrogram_leaves_" + suffix),
                                     tree, d);
    add("dendrogram_leaves_" + suffix);
    reports::write_cluster_members(dir / ("clusters_" + suffix), set, d);
    add("clusters_" + suffix);
    reports::write_cluster_stats(dir / ("cluster_stats_" + suffix), level1,
                                 set, d);
    add("cluster_stats_" + suffix);
    sets.push_back(std::move(set));
  }
  if (sets.size() == 2) {
    reports::write_cluster_cross_distances(dir / "cluster_distances.tsv", level1,
                                           sets[0], sets[1], d);
    add("cluster_distances.tsv");

    // cluster transitions
    const auto report =
        transition::transition_table(loaded.panel, sets[0], sets[1]);
    reports::write_transition_matrix(dir / "transition_matrix.tsv", report, d);
    add("transition_matrix.tsv");
    reports::write_transition_members(dir / "transitions.tsv", report, d);
    add("transitions.tsv");
    reports::write_transition_unmatched(dir / "transitions_unmatched.tsv",
                                        report, d);
    add("transitions_unmatched.tsv");
    reports::write_transition_series(dir / "transition_gdp.tsv", loaded.panel,
                                     report, 1, d);
    add("transition_gdp.tsv");
    reports::write_transition_series(dir / "transition_gdp_filtered.tsv", loaded.panel,
                                     report, topt.min_countries, d);
    add("transition_gdp_filtered.tsv");
    const auto ranking = transition::growth_ranking(loaded.panel, sets[1],
                                                    topt.growth_threshold);
    reports::write_growth_ranking(dir / "growth_ranking.tsv", ranking, d);
    add("growth_ranking.tsv");
  }

  json parameters = common_parameters(opt, 2);
  parameters["dc"] = copt.dc;
  parameters["linkage"] = copt.linkage;
  parameters["years"] = years;
  parameters["pvalue"] = ropt.pvalue;
  parameters["draws"] = ropt.draws;
  parameters["perm_seed"] = ropt.perm_seed;
  parameters["min_countries"] = topt.min_countries;
  parameters["growth_threshold"] = topt.growth_threshold;
  write_manifest(dir, "report", parameters, &loaded, outputs);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"Export-portfolio analytics over trade and GDP panels"};
  app.set_version_flag("--version", std::string(kVersion));
  app.set_config("--config", "", "INI config file; flags take precedence");
  app.require_subcommand(1);

  CommonOptions common;
  ClusterOptions cluster_opt;
  CorrelateOptions correlate_opt;
  TransitionOptions transition_opt;
  SynthOptions synth_opt;

  auto* sub_ingest = app.add_subcommand(
      "ingest", "Load, reconcile, and join the panel; emit audit reports");
  add_common(sub_ingest, common, true);

  auto* sub_shares = app.add_subcommand(
      "shares", "Global/local export shares and GDP profiles");
  add_common(sub_shares, common, true);

  auto* sub_correlate = app.add_subcommand(
      "correlate", "Share-GDP correlations and multiplicative variations");
  add_common(sub_correlate, common, true);
  add_correlate(sub_correlate, correlate_opt);

  auto* sub_elasticity = app.add_subcommand(
      "elasticity", "Log-log GDP-elasticity fits per category and year");
  add_common(sub_elasticity, common, true);

  auto* sub_cluster = app.add_subcommand(
      "cluster", "Agglomerative portfolio clustering with threshold cut");
  add_common(sub_cluster, common, true);
  add_cluster(sub_cluster, cluster_opt);

  auto* sub_transition = app.add_subcommand(
      "transition", "Cluster transitions, GDP ratios, and time series");
  add_common(sub_transition, common, true);
  add_cluster(sub_transition, cluster_opt);
  sub_transition->add_option("--min-countries", transition_opt.min_countries,
                             "Smallest cell in the plotted series")
      ->check(CLI::PositiveNumber);
  sub_transition->add_option("--growth-threshold",
                             transition_opt.growth_threshold,
                             "Gamma cutoff for the growth ranking");

  auto* sub_synth = app.add_subcommand(
      "synth", "Generate a synthetic panel with known structure");
  add_common(sub_synth, common, false);
  sub_synth->add_option("--countries", synth_opt.countries, "Country count")
      ->check(CLI::Range(3, 100000));
  sub_synth->add_option("--synth-from", synth_opt.from_year, "First year");
  sub_synth->add_option("--synth-to", synth_opt.to_year, "Last year");
  sub_synth->add_option("--noise", synth_opt.noise, "Log-normal noise scale")
      ->check(CLI::NonNegativeNumber);
  sub_synth->add_option("--seed", synth_opt.seed, "Generator seed");
  sub_synth->add_option("--alpha", synth_opt.alphas,
                        "CATEGORY=VALUE exponent (repeatable)");

  auto* sub_report = app.add_subcommand(
      "report", "Full pipeline: shares, correlations, elasticities, "
                "clusters, transitions");
  add_common(sub_report, common, true);
  add_cluster(sub_report, cluster_opt);
  add_correlate(sub_report, correlate_opt);
  sub_report->add_option("--min-countries", transition_opt.min_countries,
                         "Smallest cell in the plotted series")
      ->check(CLI::PositiveNumber);
  sub_report->add_option("--growth-threshold",
                         transition_opt.growth_threshold,
                         "Gamma cutoff for the growth ranking");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("tradeport");
  for (const auto& arg : args) {
    argv.push_back(arg.c_str());
  }
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (sub_ingest->parsed()) return cmd_ingest(common, sub_ingest);
    if (sub_shares->parsed()) return cmd_shares(common, sub_shares);
    if (sub_correlate->parsed())
      return cmd_correlate(common, correlate_opt, sub_correlate);
    if (sub_elasticity->parsed()) return cmd_elasticity(common, sub_elasticity);
    if (sub_cluster->parsed())
      return cmd_cluster(common, cluster_opt, sub_cluster);
    if (sub_transition->parsed())
      return cmd_transition(common, cluster_opt, transition_opt,
                            sub_transition);
    if (sub_synth->parsed()) return cmd_synth(common, synth_opt);
    if (sub_report->parsed())
      return cmd_report(common, cluster_opt, correlate_opt, transition_opt);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDataError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}

}  // namespace tradeport::cli
