#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "mocap/stream_sync.hpp"
#include "support/oracles.hpp"

using namespace mocap;

namespace {

FlexionSeries series_of(const char* channel, std::initializer_list<std::pair<double, double>> tv) {
  FlexionSeries s;
  s.channel = channel;
  for (const auto& [t, v] : tv) s.samples.push_back({t, v});
  return s;
}

}  // namespace

TEST_CASE("pair_streams on identical grids pairs exactly with zero gaps") {
  const auto a = series_of("knee_right", {{0.0, 1.0}, {0.1, 2.0}, {0.2, 3.0}});
  const auto b = series_of("knee_right", {{0.0, 4.0}, {0.1, 5.0}, {0.2, 6.0}});
  for (auto method : {PairingMethod::exact, PairingMethod::nearest, PairingMethod::linear}) {
    const auto p = pair_streams(a, b, 0.1, method);
    REQUIRE(p.samples.size() == 3);
    CHECK(p.gaps == 0);
    CHECK(p.samples[1].a_deg == 2.0);
    CHECK(p.samples[1].b_deg == 5.0);
  }
}

TEST_CASE("pair_streams interpolates linearly at the midpoint") {
  const auto a = series_of("ch", {{0.5, 7.0}});
  const auto b = series_of("ch", {{0.0, 0.0}, {1.0, 10.0}});
  const auto p = pair_streams(a, b, 0.6, PairingMethod::linear);
  REQUIRE(p.samples.size() == 1);
  CHECK(p.samples[0].b_deg == doctest::Approx(5.0));
}

TEST_CASE("pair_streams raises NoOverlap for disjoint spans") {
  const auto a = series_of("ch", {{0.0, 1.0}, {1.0, 2.0}});
  const auto b = series_of("ch", {{5.0, 1.0}, {6.0, 2.0}});
  try {
    pair_streams(a, b, 0.1, PairingMethod::linear);
    FAIL("expected NoOverlap");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::no_overlap);
  }
}

TEST_CASE("pair_streams raises EmptySeries on empty inputs") {
  FlexionSeries empty;
  empty.channel = "void";
  const auto b = series_of("ch", {{0.0, 1.0}});
  CHECK_THROWS_AS(pair_streams(empty, b, 0.1, PairingMethod::linear), Error);
  CHECK_THROWS_AS(pair_streams(b, empty, 0.1, PairingMethod::linear), Error);
}

TEST_CASE("pair_streams counts out-of-span and beyond-gap samples as gaps") {
  const auto a = series_of("ch", {{-1.0, 0.0}, {0.5, 1.0}, {2.0, 2.0}});
  const auto b = series_of("ch", {{0.0, 0.0}, {1.0, 10.0}});
  const auto p = pair_streams(a, b, 0.6, PairingMethod::linear);
  CHECK(p.samples.size() == 1);
  CHECK(p.gaps == 2);

  // samples inside the span but far from every b-sample are gaps too
  const auto sparse_b = series_of("ch", {{0.0, 0.0}, {10.0, 10.0}});
  const auto mid = series_of("ch", {{5.0, 1.0}});
  const auto q = pair_streams(mid, sparse_b, 0.5, PairingMethod::linear);
  CHECK(q.samples.empty());
  CHECK(q.gaps == 1);
}

TEST_CASE("pair_streams with linear method reproduces affine signals exactly") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> coeff(-30.0, 30.0);
  for (int iter = 0; iter < 100; ++iter) {
    const double slope = coeff(rng), intercept = coeff(rng);
    FlexionSeries b;
    b.channel = "affine";
    double t = 0.0;
    while (t < 10.0) {
      b.samples.push_back({t, slope * t + intercept});
      t += std::uniform_real_distribution<double>(0.01, 0.09)(rng);
    }
    FlexionSeries a;
    a.channel = "affine";
    t = 0.37;
    while (t < 9.5) {
      a.samples.push_back({t, 0.0});
      t += std::uniform_real_distribution<double>(0.02, 0.12)(rng);
    }
    const auto p = pair_streams(a, b, kDefaultMaxGapSeconds, PairingMethod::linear);
    CHECK(p.gaps == 0);
    for (const auto& s : p.samples)
      CHECK(s.b_deg == doctest::Approx(slope * s.t + intercept).epsilon(1e-9));
  }
}

TEST_CASE("deviation_series is the element-wise absolute difference") {
  PairedSeries p;
  p.channel = "ch";
  p.samples = {{0.0, 10.0, 12.0}, {0.1, 20.0, 17.0}};
  const auto d = deviation_series(p);
  REQUIRE(d.size() == 2);
  CHECK(d[0].second == doctest::Approx(2.0));
  CHECK(d[1].second == doctest::Approx(3.0));

  PairedSeries same;
  same.samples = {{0.0, 5.0, 5.0}, {0.1, 6.0, 6.0}};
  for (const auto& [t, dev] : deviation_series(same)) CHECK(dev == 0.0);

  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> angle(0.0, 180.0);
  PairedSeries random;
  for (int k = 0; k < 500; ++k)
    random.samples.push_back({0.01 * k, angle(rng), angle(rng)});
  const auto devs = deviation_series(random);
  for (std::size_t k = 0; k < devs.size(); ++k) {
    const double brute = random.samples[k].a_deg >= random.samples[k].b_deg
                             ? random.samples[k].a_deg - random.samples[k].b_deg
                             : random.samples[k].b_deg - random.samples[k].a_deg;
    CHECK(devs[k].second == brute);
  }
}

TEST_CASE("aggregate matches hand-checked fixtures") {
  const std::vector<double> xs = {1, 2, 3, 4, 100};
  const auto s = aggregate(xs);
  CHECK(s.median_deg == 3.0);
  CHECK(s.average_deg == 22.0);
  CHECK(s.maximum_deg == 100.0);
  CHECK(s.samples == 5);

  const std::vector<double> one = {5};
  const auto s1 = aggregate(one);
  CHECK(s1.median_deg == 5.0);
  CHECK(s1.average_deg == 5.0);
  CHECK(s1.maximum_deg == 5.0);

  CHECK_THROWS_AS(aggregate(std::vector<double>{}), Error);
}

TEST_CASE("aggregate matches the sort-based oracle on random lists") {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> value(0.0, 90.0);
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<double> xs(1 + rng() % 10000);
    for (auto& x : xs) x = value(rng);
    const auto got = aggregate(xs);
    const auto want = oracle::stats(xs);
    CHECK(got.median_deg == want.median);
    CHECK(got.average_deg == want.mean);
    CHECK(got.maximum_deg == want.max);
  }
}

TEST_CASE("aggregate is permutation-invariant and bounded") {
  std::mt19937_64 rng(34);
  std::uniform_real_distribution<double> value(0.0, 50.0);
  for (int iter = 0; iter < 100; ++iter) {
    std::vector<double> xs(20 + rng() % 100);
    for (auto& x : xs) x = value(rng);
    const auto base = aggregate(xs);
    auto shuffled = xs;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const auto after = aggregate(shuffled);
    CHECK(base.median_deg == after.median_deg);
    CHECK(base.maximum_deg == after.maximum_deg);
    CHECK(base.average_deg == doctest::Approx(after.average_deg).epsilon(1e-12));

    const double min = *std::min_element(xs.begin(), xs.end());
    CHECK(base.median_deg >= min);
    CHECK(base.median_deg <= base.maximum_deg);
    CHECK(base.average_deg >= min);
    CHECK(base.average_deg <= base.maximum_deg);
  }
}

namespace {

RecordingDeviations recording(const char* channel, const char* exercise,
                              std::vector<double> devs, const char* clothing = "",
                              double perspective = 0.0) {
  RecordingDeviations r;
  r.meta.subject = "s";
  r.meta.exercise = Exercise::parse(exercise);
  r.meta.clothing = clothing;
  r.meta.camera_perspective_deg = perspective;
  r.channel = channel;
  r.deviations = std::move(devs);
  return r;
}

}  // namespace

TEST_CASE("group_report on a single recording equals aggregate") {
  const std::vector<RecordingDeviations> recs = {recording("knee_right", "squat", {1, 2, 3})};
  const std::vector<GroupKey> keys = {GroupKey::exercise};
  const auto report = group_report(recs, keys);
  REQUIRE(report.rows.size() == 1);
  CHECK(report.rows[0].channel == "knee_right");
  CHECK(report.rows[0].exercise == "squat");
  CHECK(report.rows[0].stats.median_deg == 2.0);
  CHECK(report.rows[0].stats.average_deg == 2.0);
  CHECK(report.rows[0].stats.maximum_deg == 3.0);
}

TEST_CASE("group_report pools raw samples across recordings") {
  const std::vector<RecordingDeviations> recs = {
      recording("knee_right", "squat", {1, 1}),
      recording("knee_right", "squat", {3}),
  };
  const std::vector<GroupKey> keys = {GroupKey::exercise};
  const auto report = group_report(recs, keys);
  REQUIRE(report.rows.size() == 1);
  CHECK(report.rows[0].stats.average_deg == doctest::Approx(5.0 / 3.0).epsilon(1e-12));
  CHECK(report.rows[0].stats.median_deg == 1.0);
  CHECK(report.rows[0].stats.maximum_deg == 3.0);
  CHECK(report.rows[0].stats.samples == 3);
}

TEST_CASE("group_report pooling identities hold on random partitions") {
  std::mt19937_64 rng(35);
  std::uniform_real_distribution<double> value(0.0, 30.0);
  for (int iter = 0; iter < 100; ++iter) {
    std::vector<RecordingDeviations> recs;
    double pooled_max = 0.0, weighted_sum = 0.0;
    std::size_t total = 0;
    const int parts = 2 + static_cast<int>(rng() % 4);
    for (int p = 0; p < parts; ++p) {
      std::vector<double> devs(1 + rng() % 50);
      for (auto& d : devs) d = value(rng);
      const auto s = oracle::stats(devs);
      pooled_max = std::max(pooled_max, s.max);
      weighted_sum += s.mean * static_cast<double>(devs.size());
      total += devs.size();
      recs.push_back(recording("ankle_left", "pushup", std::move(devs)));
    }
    const std::vector<GroupKey> keys = {GroupKey::exercise};
    const auto report = group_report(recs, keys);
    REQUIRE(report.rows.size() == 1);
    CHECK(report.rows[0].stats.maximum_deg == pooled_max);
    CHECK(report.rows[0].stats.average_deg ==
          doctest::Approx(weighted_sum / static_cast<double>(total)).epsilon(1e-12));
  }
}

TEST_CASE("group_report row order follows the standard joint order") {
  std::vector<RecordingDeviations> recs;
  for (const char* ch : {"elbow_left", "back_t8", "knee_right", "ankle_right", "zzz_custom"})
    recs.push_back(recording(ch, "squat", {1.0}));
  const std::vector<GroupKey> keys = {GroupKey::exercise};
  const auto report = group_report(recs, keys);
  REQUIRE(report.rows.size() == 5);
  CHECK(report.rows[0].channel == "knee_right");
  CHECK(report.rows[1].channel == "ankle_right");
  CHECK(report.rows[2].channel == "back_t8");
  CHECK(report.rows[3].channel == "elbow_left");
  CHECK(report.rows[4].channel == "zzz_custom");
}

TEST_CASE("group_report separates exercises and extra keys") {
  std::vector<RecordingDeviations> recs = {
      recording("knee_right", "squat", {1.0}, "loose", 0.0),
      recording("knee_right", "squat", {2.0}, "tight", 45.0),
      recording("knee_right", "situp", {3.0}, "loose", 0.0),
  };
  const std::vector<GroupKey> exercise_only = {GroupKey::exercise};
  CHECK(group_report(recs, exercise_only).rows.size() == 2);

  const std::vector<GroupKey> with_extras = {GroupKey::exercise, GroupKey::perspective,
                                             GroupKey::clothing};
  const auto detailed = group_report(recs, with_extras);
  CHECK(detailed.rows.size() == 3);
  CHECK(detailed.rows[0].exercise == "squat|perspective=0|clothing=loose");
}

TEST_CASE("group_report raises EmptyGroup when a requested key is absent") {
  std::vector<RecordingDeviations> recs = {recording("knee_right", "squat", {1.0})};
  const std::vector<GroupKey> keys = {GroupKey::exercise, GroupKey::clothing};
  try {
    group_report(recs, keys);
    FAIL("expected EmptyGroup");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::empty_group);
  }
  const std::vector<RecordingDeviations> none;
  const std::vector<GroupKey> just_exercise = {GroupKey::exercise};
  CHECK_THROWS_AS(group_report(none, just_exercise), Error);
}
