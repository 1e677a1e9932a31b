#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "core/errors.hpp"
#include "core/homography.hpp"
#include "core/pipeline.hpp"
#include "core/synth.hpp"
#include "util.hpp"

using namespace pv;

namespace {

// Entrywise relative error after aligning scale (both are unit Frobenius with
// m[8] >= 0, so alignment is only a possible global sign).
double matrix_rel_err(const Homography& a, const Homography& b) {
  double scale = 0.0;
  for (int i = 0; i < 9; ++i) scale = std::max(scale, std::abs(a.m[i]));
  double worst = 0.0;
  for (int i = 0; i < 9; ++i)
    worst = std::max(worst, std::abs(a.m[i] - b.m[i]) / scale);
  return worst;
}

std::vector<MatchPair> exact_pairs(const Homography& h, int n, Rng& rng) {
  std::vector<MatchPair> pts;
  while (static_cast<int>(pts.size()) < n) {
    const Vec2 p{rng.uniform(10.0, 990.0), rng.uniform(10.0, 990.0)};
    auto q = h.apply(p);
    if (!q) continue;
    pts.push_back({p, *q});
  }
  return pts;
}

}  // namespace

TEST_CASE("identity correspondences give the identity up to scale") {
  std::vector<MatchPair> pts;
  for (const Vec2 p : {Vec2{10, 10}, Vec2{800, 30}, Vec2{750, 700},
                       Vec2{60, 650}, Vec2{400, 350}})
    pts.push_back({p, p});
  const Homography h = estimate_homography(pts);
  const double s = h.m[0];  // diagonal entry
  CHECK(s > 0.0);
  for (int i = 0; i < 9; ++i) {
    const double expected = (i == 0 || i == 4 || i == 8) ? s : 0.0;
    CHECK(h.m[i] == doctest::Approx(expected).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("recovers a known homography from five exact pairs") {
  Rng rng(61);
  for (int t = 0; t < 50; ++t) {
    Homography truth = testutil::random_homography(rng);
    auto pts = exact_pairs(truth, 5, rng);
    Homography est;
    try {
      est = estimate_homography(pts);
    } catch (const std::runtime_error&) {
      continue;  // degenerate draw
    }
    CHECK(matrix_rel_err(truth, est) < 1e-8);
    for (const auto& mp : pts) {
      auto pred = est.apply(mp.p1);
      REQUIRE(pred.has_value());
      CHECK(dist(*pred, mp.p2) < 1e-6);
    }
  }
}

TEST_CASE("fewer than four pairs is degenerate") {
  std::vector<MatchPair> pts{{{0, 0}, {0, 0}},
                             {{1, 0}, {1, 0}},
                             {{0, 1}, {0, 1}}};
  CHECK_THROWS_AS((void)estimate_homography(pts), DegenerateConfiguration);
}

TEST_CASE("three collinear image-1 points is degenerate") {
  std::vector<MatchPair> pts{{{0, 0}, {3, 7}},
                             {{10, 0}, {20, 9}},
                             {{20, 0}, {37, 11}},
                             {{5, 30}, {8, 41}}};
  CHECK_THROWS_AS((void)estimate_homography(pts), DegenerateConfiguration);
}

TEST_CASE("fit_group_homographies on an exact plane") {
  SceneSpec spec;
  spec.extent1 = {900, 900};
  spec.extent2 = {1800, 1800};
  spec.planes.push_back({{}, {20, 20, 860, 860}, 10, true});
  spec.seed = 62;
  auto scene = generate(spec);

  PlanarGroup g;
  g.id = 0;
  g.pentagon_ids = {0};
  for (std::uint32_t i = 0; i < 5; ++i) g.member_matches.push_back(i);

  auto fitted = fit_group_homographies({g}, scene.match_set);
  REQUIRE(fitted.size() == 1);
  REQUIRE(fitted[0].homography.has_value());
  for (auto idx : fitted[0].member_matches) {
    const auto& m = scene.match_set.matches[idx];
    auto pred = fitted[0].homography->apply(m.p1);
    REQUIRE(pred.has_value());
    CHECK(dist(*pred, m.p2) < 1e-6);
  }
}

TEST_CASE("fit_group_homographies under 0.5 px noise") {
  SceneSpec spec;
  spec.extent1 = {900, 900};
  spec.extent2 = {1800, 1800};
  spec.planes.push_back({{}, {20, 20, 860, 860}, 20, true});
  spec.noise_sigma = 0.5;
  spec.seed = 63;
  auto scene = generate(spec);

  PlanarGroup g;
  g.id = 0;
  for (std::uint32_t i = 0; i < 20; ++i) g.member_matches.push_back(i);
  g.pentagon_ids = {0};

  auto fitted = fit_group_homographies({g}, scene.match_set);
  REQUIRE(fitted.size() == 1);
  double sq_sum = 0.0;
  for (auto idx : fitted[0].member_matches) {
    const auto& m = scene.match_set.matches[idx];
    auto pred = fitted[0].homography->apply(m.p1);
    REQUIRE(pred.has_value());
    sq_sum += dist(*pred, m.p2) * dist(*pred, m.p2);
  }
  const double rms = std::sqrt(sq_sum / 20.0);
  MESSAGE("member reprojection RMS: ", rms, " px");
  CHECK(rms < 2.0);
}

TEST_CASE("fit_group_homographies drops unfittable groups") {
  MatchSet ms;
  ms.extent1 = {100, 100};
  ms.extent2 = {100, 100};
  // All image-1 points on one line.
  for (int i = 0; i < 5; ++i)
    ms.matches.push_back({{10.0 * i + 1.0, 50.0}, {10.0 * i + 1.0, 60.0}});
  PlanarGroup g;
  g.id = 0;
  g.pentagon_ids = {0};
  for (std::uint32_t i = 0; i < 5; ++i) g.member_matches.push_back(i);
  std::vector<std::string> diags;
  auto fitted = fit_group_homographies({g}, ms, &diags);
  CHECK(fitted.empty());
  CHECK(diags.size() == 1);

  CHECK(fit_group_homographies({}, ms).empty());
}

TEST_CASE("classify_matches verdict semantics") {
  SceneSpec spec;
  spec.extent1 = {900, 900};
  spec.extent2 = {1800, 1800};
  spec.planes.push_back({{}, {20, 20, 860, 860}, 30, true});
  spec.seed = 64;
  auto scene = generate(spec);

  PlanarGroup g;
  g.id = 0;
  g.pentagon_ids = {0};
  for (std::uint32_t i = 0; i < 10; ++i) g.member_matches.push_back(i);
  auto groups = fit_group_homographies({g}, scene.match_set);
  REQUIRE(groups.size() == 1);

  SUBCASE("exact plane points are correct with near-zero error") {
    auto verdicts = classify_matches(scene.match_set, groups, 10.0);
    REQUIRE(verdicts.size() == scene.match_set.matches.size());
    for (const auto& v : verdicts) {
      CHECK(v.correct);
      CHECK(v.error < 1e-6);
    }
  }

  SUBCASE("a 20 px displacement is incorrect with error ~20") {
    auto displaced = scene.match_set;
    displaced.matches[3].p2 = displaced.matches[3].p2 + Vec2{20.0, 0.0};
    if (!displaced.extent2.contains(displaced.matches[3].p2))
      displaced.matches[3].p2 = displaced.matches[3].p2 + Vec2{-40.0, 0.0};
    auto verdicts = classify_matches(displaced, groups, 10.0);
    CHECK_FALSE(verdicts[3].correct);
    CHECK(verdicts[3].error == doctest::Approx(20.0).epsilon(1e-6));
  }
}

TEST_CASE("two-plane classification picks the oracle plane's group") {
  SceneSpec spec;
  spec.extent1 = {1000, 800};
  spec.extent2 = {2400, 2000};
  spec.planes.push_back({{}, {30, 30, 420, 740}, 40, true});
  spec.planes.push_back({{}, {550, 30, 420, 740}, 40, true});
  spec.seed = 65;
  auto scene = generate(spec);

  std::vector<PlanarGroup> groups(2);
  for (int k = 0; k < 2; ++k) {
    groups[k].id = k;
    groups[k].pentagon_ids = {static_cast<std::size_t>(k)};
  }
  for (std::size_t i = 0; i < scene.labels.size(); ++i)
    groups[static_cast<std::size_t>(scene.labels[i])].member_matches.push_back(
        static_cast<std::uint32_t>(i));
  auto fitted = fit_group_homographies(std::move(groups), scene.match_set);
  REQUIRE(fitted.size() == 2);

  auto verdicts = classify_matches(scene.match_set, fitted, 10.0);
  for (std::size_t i = 0; i < verdicts.size(); ++i) {
    REQUIRE(verdicts[i].correct);
    CHECK(verdicts[i].group_id == scene.labels[i]);
  }
}

TEST_CASE("threshold monotonicity of verdicts") {
  SceneSpec spec;
  spec.extent1 = {900, 900};
  spec.extent2 = {1800, 1800};
  spec.planes.push_back({{}, {20, 20, 860, 860}, 40, true});
  spec.outlier_count = 40;
  spec.near_miss_count = 20;
  spec.noise_sigma = 1.0;
  spec.seed = 66;
  auto scene = generate(spec);

  PlanarGroup g;
  g.id = 0;
  g.pentagon_ids = {0};
  for (std::size_t i = 0; i < scene.labels.size(); ++i)
    if (scene.labels[i] == 0)
      g.member_matches.push_back(static_cast<std::uint32_t>(i));
  auto groups = fit_group_homographies({g}, scene.match_set);
  REQUIRE(groups.size() == 1);

  std::size_t prev_correct = 0;
  for (double threshold : {2.0, 5.0, 10.0, 20.0, 40.0}) {
    auto verdicts = classify_matches(scene.match_set, groups, threshold);
    std::size_t correct = 0;
    for (const auto& v : verdicts)
      if (v.correct) ++correct;
    CHECK(correct >= prev_correct);
    prev_correct = correct;
  }
}

TEST_CASE("classification is invariant to homography rescaling") {
  SceneSpec spec;
  spec.extent1 = {900, 900};
  spec.extent2 = {1800, 1800};
  spec.planes.push_back({{}, {20, 20, 860, 860}, 30, true});
  spec.outlier_count = 30;
  spec.seed = 67;
  auto scene = generate(spec);

  PlanarGroup g;
  g.id = 0;
  g.pentagon_ids = {0};
  for (std::size_t i = 0; i < scene.labels.size(); ++i)
    if (scene.labels[i] == 0)
      g.member_matches.push_back(static_cast<std::uint32_t>(i));
  auto groups = fit_group_homographies({g}, scene.match_set);
  REQUIRE(groups.size() == 1);
  auto baseline = classify_matches(scene.match_set, groups, 10.0);

  for (double& e : groups[0].homography->m) e *= -3.75;
  groups[0].homography->normalize();
  auto rescaled = classify_matches(scene.match_set, groups, 10.0);
  REQUIRE(rescaled.size() == baseline.size());
  for (std::size_t i = 0; i < baseline.size(); ++i) {
    CHECK(rescaled[i].correct == baseline[i].correct);
    CHECK(rescaled[i].error == doctest::Approx(baseline[i].error));
  }
}
