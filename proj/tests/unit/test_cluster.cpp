#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "support/builders.hpp"
#include "support/oracles.hpp"
#include "tradeport/cluster.hpp"
#include "tradeport/errors.hpp"
#include "tradeport/synth.hpp"

using namespace tradeport;
using testsupport::gdp;
using testsupport::trade;

namespace {

shares::Portfolio level1_portfolio(const std::vector<double>& values) {
  shares::Portfolio portfolio;
  portfolio.level = 1;
  for (int digit = 0; digit <= 9; ++digit) {
    portfolio.categories.push_back(std::string(1, static_cast<char>('0' + digit)));
  }
  portfolio.values = values;
  return portfolio;
}

cluster::DistanceMatrix matrix_from(const std::vector<std::string>& items,
                                    const std::vector<double>& values) {
  return cluster::DistanceMatrix::from_values(1970, items, values);
}

}  // namespace

TEST_CASE("portfolio distance basics") {
  const auto a = level1_portfolio({0.6, 0, 0, 0, 0, 0, 0, 0.4, 0, 0});
  CHECK(cluster::portfolio_distance(a, a) == 0.0);

  shares::Portfolio unit_a;
  unit_a.level = 1;
  unit_a.categories = {"3"};
  unit_a.values = {1.0};
  shares::Portfolio unit_b;
  unit_b.level = 1;
  unit_b.categories = {"7"};
  unit_b.values = {1.0};
  // different unit vectors, dense union: sqrt(2)
  CHECK(cluster::portfolio_distance(unit_a, unit_b) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

  shares::Portfolio level2;
  level2.level = 2;
  level2.categories = {"33"};
  level2.values = {1.0};
  CHECK_THROWS_AS(cluster::portfolio_distance(unit_a, level2), ConfigError);
}

TEST_CASE("cross distances match hand-computed reference portfolios") {
  // level-1 portfolios of the 1962 clusters 0 and 3 and the 2000 clusters
  // 026 and 3
  const auto c0_1962 = level1_portfolio(
      {0.618, 0.018, 0.164, 0.032, 0.023, 0.024, 0.052, 0.044, 0.020, 0.004});
  const auto c026_2000 = level1_portfolio(
      {0.282, 0.016, 0.186, 0.149, 0.011, 0.048, 0.164, 0.073, 0.032, 0.038});
  const auto c3_1962 = level1_portfolio(
      {0.018, 0.000, 0.032, 0.932, 0.000, 0.001, 0.010, 0.003, 0.001, 0.002});
  const auto c3_2000 = level1_portfolio(
      {0.017, 0.001, 0.011, 0.873, 0.000, 0.033, 0.033, 0.020, 0.008, 0.003});
  CHECK(std::fabs(cluster::portfolio_distance(c0_1962, c026_2000) - 0.377) <
        0.002);
  CHECK(std::fabs(cluster::portfolio_distance(c3_1962, c3_2000) - 0.076) <
        0.002);
}

TEST_CASE("two points merge at their distance") {
  const auto matrix = matrix_from({"A", "B"}, {0, 0.3, 0.3, 0});
  const auto tree = cluster::agglomerate(matrix);
  REQUIRE(tree.merges.size() == 1);
  CHECK(tree.merges[0].distance == 0.3);
  CHECK(tree.merges[0].size == 2);
}

TEST_CASE("single linkage chains collinear points") {
  // points at 0, 1, 3 on a line
  const auto matrix = matrix_from({"A", "B", "C"},
                                  {0, 1, 3,
                                   1, 0, 2,
                                   3, 2, 0});
  const auto tree = cluster::agglomerate(matrix, cluster::Linkage::single);
  REQUIRE(tree.merges.size() == 2);
  CHECK(tree.merges[0].distance == 1.0);
  CHECK(tree.merges[1].distance == 2.0);
  // complete linkage sees the far pair instead
  const auto complete =
      cluster::agglomerate(matrix, cluster::Linkage::complete);
  CHECK(complete.merges[1].distance == 3.0);
  // average sits between
  const auto average = cluster::agglomerate(matrix, cluster::Linkage::average);
  CHECK(average.merges[1].distance == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("agglomerate validates its input") {
  CHECK_THROWS_AS(cluster::agglomerate(matrix_from({"A"}, {0})), DataError);
  CHECK_THROWS_AS(
      cluster::DistanceMatrix::from_values(1970, {"A", "B"}, {0, 1, 2, 0}),
      ConfigError);
  CHECK_THROWS_AS(
      cluster::DistanceMatrix::from_values(1970, {"A", "B"}, {0, -1, -1, 0}),
      ConfigError);
  CHECK_THROWS_AS(
      cluster::DistanceMatrix::from_values(1970, {"A", "B"}, {1, 0, 0, 1}),
      ConfigError);
}

TEST_CASE("agglomerate matches the exhaustive reference on small instances") {
  std::mt19937 engine(2024);
  std::uniform_real_distribution<double> continuous(0.05, 1.0);
  std::uniform_int_distribution<int> size_dist(2, 6);
  std::uniform_int_distribution<int> grid(1, 8);
  for (const auto linkage : {cluster::Linkage::single,
                             cluster::Linkage::complete,
                             cluster::Linkage::average}) {
    for (int trial = 0; trial < 120; ++trial) {
      const int n = size_dist(engine);
      std::vector<std::string> items;
      for (int i = 0; i < n; ++i) items.push_back(testsupport::country_name(i));
      std::vector<double> values(static_cast<std::size_t>(n * n), 0.0);
      // half the instances use a small integer grid to force exact ties
      const bool discrete = trial % 2 == 0;
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          const double d = discrete ? grid(engine) / 4.0 : continuous(engine);
          values[static_cast<std::size_t>(i * n + j)] = d;
          values[static_cast<std::size_t>(j * n + i)] = d;
        }
      }
      const auto matrix = matrix_from(items, values);
      const auto tree = cluster::agglomerate(matrix, linkage);
      const auto reference =
          testsupport::reference_agglomerate(items, values, linkage);
      REQUIRE(tree.merges.size() == reference.size());
      for (std::size_t k = 0; k < reference.size(); ++k) {
        CHECK(tree.merges[k].left == reference[k].left);
        CHECK(tree.merges[k].right == reference[k].right);
        CHECK(tree.merges[k].size == reference[k].size);
        CHECK(std::fabs(tree.merges[k].distance - reference[k].distance) <
              1e-12);
      }
    }
  }
}

TEST_CASE("merge heights are nondecreasing and permutation invariant") {
  std::mt19937 engine(99);
  std::uniform_real_distribution<double> dist(0.05, 1.0);
  for (const auto linkage : {cluster::Linkage::single,
                             cluster::Linkage::complete,
                             cluster::Linkage::average}) {
    const int n = 9;
    std::vector<double> values(n * n, 0.0);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const double d = dist(engine);
        values[static_cast<std::size_t>(i * n + j)] = d;
        values[static_cast<std::size_t>(j * n + i)] = d;
      }
    }
    std::vector<std::string> items;
    for (int i = 0; i < n; ++i) items.push_back(testsupport::country_name(i));
    const auto tree = cluster::agglomerate(matrix_from(items, values), linkage);
    for (std::size_t k = 1; k < tree.merges.size(); ++k) {
      CHECK(tree.merges[k].distance >= tree.merges[k - 1].distance);
    }

    // relabel the countries: the multiset of heights must not move
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), engine);
    std::vector<double> shuffled(n * n, 0.0);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        shuffled[static_cast<std::size_t>(perm[i] * n + perm[j])] =
            values[static_cast<std::size_t>(i * n + j)];
      }
    }
    const auto relabeled =
        cluster::agglomerate(matrix_from(items, shuffled), linkage);
    std::vector<double> heights_a, heights_b;
    for (const auto& merge : tree.merges) heights_a.push_back(merge.distance);
    for (const auto& merge : relabeled.merges)
      heights_b.push_back(merge.distance);
    std::sort(heights_a.begin(), heights_a.end());
    std::sort(heights_b.begin(), heights_b.end());
    for (std::size_t k = 0; k < heights_a.size(); ++k) {
      CHECK(heights_a[k] == doctest::Approx(heights_b[k]).epsilon(1e-12));
    }
  }
}

TEST_CASE("cut produces singletons, one cluster, and nested partitions") {
  std::mt19937 engine(7);
  std::uniform_real_distribution<double> dist(0.05, 1.0);
  const int n = 8;
  std::vector<double> values(n * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double d = dist(engine);
      values[static_cast<std::size_t>(i * n + j)] = d;
      values[static_cast<std::size_t>(j * n + i)] = d;
    }
  }
  std::vector<std::string> items;
  for (int i = 0; i < n; ++i) items.push_back(testsupport::country_name(i));
  const auto tree = cluster::agglomerate(matrix_from(items, values));

  const auto singletons = cluster::cut(tree, 0.0);
  CHECK(singletons.clusters.size() == static_cast<std::size_t>(n));

  const auto everything = cluster::cut(tree, tree.merges.back().distance);
  CHECK(everything.clusters.size() == 1);
  CHECK(everything.clusters[0].size() == static_cast<std::size_t>(n));

  // partitions coarsen monotonically with the threshold
  for (double low = 0.1; low < 1.0; low += 0.2) {
    const auto fine = cluster::cut(tree, low);
    const auto coarse = cluster::cut(tree, low + 0.2);
    CHECK(fine.clusters.size() >= coarse.clusters.size());
    for (const auto& small : fine.clusters) {
      int containers = 0;
      for (const auto& big : coarse.clusters) {
        if (std::includes(big.begin(), big.end(), small.begin(), small.end())) {
          ++containers;
        }
      }
      CHECK(containers == 1);
    }
    // every cut is a partition
    std::size_t covered = 0;
    for (const auto& members : fine.clusters) covered += members.size();
    CHECK(covered == static_cast<std::size_t>(n));
  }
}

TEST_CASE("cluster stats weight members by export value") {
  const auto panel = ingest::build_panel(
      std::vector<ingest::TradeRecord>{
          trade("A", 1970, "0", 30), trade("A", 1970, "7", 30),
          trade("B", 1970, "0", 10), trade("B", 1970, "7", 30),
          trade("C", 1970, "3", 10)},
      std::vector<ingest::GdpRecord>{gdp("A", 1970, 2), gdp("B", 1970, 3),
                                     gdp("C", 1970, 5)},
      1);

  SUBCASE("singleton equals the country's own shares") {
    const std::vector<std::string> solo = {"A"};
    const auto stats = cluster::cluster_stats(panel, solo, 1970);
    const auto local = shares::local_share(panel, "A", 1970);
    CHECK(stats.portfolio.values == local.values);
    CHECK(stats.count == 1);
    CHECK(stats.gdp == doctest::Approx(0.2).epsilon(1e-12));
  }

  SUBCASE("equal-total members average their share vectors") {
    // A and B both export 60 in total... A exports 60, B exports 40: use A
    // and a scaled copy instead
    const auto equal_panel = ingest::build_panel(
        std::vector<ingest::TradeRecord>{
            trade("A", 1970, "0", 30), trade("A", 1970, "7", 30),
            trade("B", 1970, "0", 15), trade("B", 1970, "7", 45)},
        std::vector<ingest::GdpRecord>{gdp("A", 1970, 2), gdp("B", 1970, 3)},
        1);
    const std::vector<std::string> both = {"A", "B"};
    const auto stats = cluster::cluster_stats(equal_panel, both, 1970);
    // mean of (0.5, 0.5) and (0.25, 0.75)
    CHECK(stats.portfolio.share("0") == doctest::Approx(0.375).epsilon(1e-12));
    CHECK(stats.portfolio.share("7") == doctest::Approx(0.625).epsilon(1e-12));
  }

  SUBCASE("unequal totals weight by value, not mean of shares") {
    const std::vector<std::string> pair = {"A", "C"};
    const auto stats = cluster::cluster_stats(panel, pair, 1970);
    // A exports 60 (half 0, half 7), C exports 10 of category 3
    CHECK(stats.portfolio.share("0") ==
          doctest::Approx(30.0 / 70.0).epsilon(1e-12));
    CHECK(stats.portfolio.share("3") ==
          doctest::Approx(10.0 / 70.0).epsilon(1e-12));
    CHECK(stats.gdp == doctest::Approx(0.7).epsilon(1e-12));
  }

  SUBCASE("empty cluster is an error") {
    const std::vector<std::string> none;
    CHECK_THROWS_AS(cluster::cluster_stats(panel, none, 1970), DataError);
  }
}

TEST_CASE("cluster names take the shortest majority prefix") {
  cluster::ClusterStats stats;
  stats.portfolio = level1_portfolio(
      {0.018, 0.000, 0.032, 0.932, 0.000, 0.001, 0.010, 0.003, 0.001, 0.002});
  CHECK(cluster::name_cluster(stats) == "3");

  // reference case: 0.282 + 0.186 < 0.5 < 0.282 + 0.186 + 0.164
  stats.portfolio = level1_portfolio(
      {0.282, 0.016, 0.186, 0.149, 0.011, 0.048, 0.164, 0.073, 0.032, 0.038});
  CHECK(cluster::name_cluster(stats) == "026");

  stats.portfolio = level1_portfolio(
      {0.1, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1});
  CHECK(cluster::name_cluster(stats) == "012345");

  stats.portfolio.level = 2;
  CHECK_THROWS_AS(cluster::name_cluster(stats), ConfigError);
}

TEST_CASE("naming is invariant under export rescaling") {
  const auto panel = ingest::build_panel(
      std::vector<ingest::TradeRecord>{
          trade("A", 1970, "7", 3), trade("A", 1970, "6", 2),
          trade("A", 1970, "0", 1), trade("B", 1970, "7", 6),
          trade("B", 1970, "6", 1)},
      std::vector<ingest::GdpRecord>{gdp("A", 1970, 1), gdp("B", 1970, 1)},
      1);
  const auto scaled = ingest::build_panel(
      std::vector<ingest::TradeRecord>{
          trade("A", 1970, "7", 300), trade("A", 1970, "6", 200),
          trade("A", 1970, "0", 100), trade("B", 1970, "7", 600),
          trade("B", 1970, "6", 100)},
      std::vector<ingest::GdpRecord>{gdp("A", 1970, 1), gdp("B", 1970, 1)},
      1);
  const std::vector<std::string> members = {"A", "B"};
  CHECK(cluster::name_cluster(cluster::cluster_stats(panel, members, 1970)) ==
        cluster::name_cluster(cluster::cluster_stats(scaled, members, 1970)));
}

TEST_CASE("cross distance of a cluster against itself is zero") {
  const auto panel = ingest::build_panel(
      std::vector<ingest::TradeRecord>{trade("A", 1970, "7", 3),
                                       trade("B", 1970, "7", 6)},
      std::vector<ingest::GdpRecord>{gdp("A", 1970, 1), gdp("B", 1970, 1)},
      1);
  const std::vector<std::string> members = {"A", "B"};
  const auto stats = cluster::cluster_stats(panel, members, 1970);
  CHECK(cluster::cluster_cross_distance(stats, stats) == 0.0);
}

TEST_CASE("cluster_year partitions the countries and names every cluster") {
  synth::SynthConfig config;
  config.n_countries = 20;
  config.year_to = config.year_from;
  config.noise_scale = 1.2;
  config.true_alpha = {0.5, 0, -0.4, 0, 0, 0, 0.2, 0.8, -0.2, 0};
  config.seed = 4;
  const auto panel = synth::generate(config);
  const int year = panel.years().front();
  const auto set = cluster::cluster_year(panel, year, 0.45);
  CHECK(set.names.size() == set.clusters.size());
  std::size_t covered = 0;
  for (std::size_t i = 0; i < set.clusters.size(); ++i) {
    covered += set.clusters[i].size();
    CHECK(!set.names[i].empty());
  }
  CHECK(covered == panel.countries(year).size());
}
