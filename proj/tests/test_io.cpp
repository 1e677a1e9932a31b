#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <string>

#include "core/errors.hpp"
#include "core/io.hpp"
#include "core/pipeline.hpp"
#include "core/synth.hpp"
#include "util.hpp"

using namespace pv;

namespace {

// Count distinct stroke colors among polygon elements.
std::set<std::string> polygon_stroke_colors(const std::string& svg) {
  std::set<std::string> colors;
  std::size_t pos = 0;
  while ((pos = svg.find("<polygon", pos)) != std::string::npos) {
    const auto end = svg.find("/>", pos);
    const auto stroke = svg.find("stroke=\"", pos);
    REQUIRE(stroke != std::string::npos);
    REQUIRE(stroke < end);
    const auto start = stroke + 8;
    colors.insert(svg.substr(start, svg.find('"', start) - start));
    pos = end;
  }
  return colors;
}

struct SceneReport {
  LabeledMatchSet scene;
  VerificationReport report;
};

SceneReport run_scene(std::uint64_t scene_seed, int planes = 1) {
  SceneSpec spec;
  if (planes > 1) {
    spec = testutil::corner_scene_spec(scene_seed, 0.0, 80);
  } else {
    spec.extent1 = {1000, 800};
    spec.extent2 = {2400, 2000};
    spec.planes.push_back({{}, {30, 30, 420, 740}, 80, true});
    spec.outlier_count = 40;
    spec.seed = scene_seed;
  }
  SceneReport out;
  out.scene = generate(spec);
  Config cfg;
  cfg.seed = scene_seed + 1;
  out.report = run(out.scene.match_set, cfg);
  return out;
}

}  // namespace

TEST_CASE("minimal match file parses") {
  const auto ms =
      parse_matches("pentaverify-matches v1 100 100 200 200\n1.5 2 3 4\n");
  CHECK(ms.extent1.width == 100);
  CHECK(ms.extent2.height == 200);
  REQUIRE(ms.matches.size() == 1);
  CHECK(ms.matches[0].p1.x == 1.5);
  CHECK(ms.matches[0].p2.y == 4.0);
}

TEST_CASE("comments and blank lines are ignored") {
  const auto ms = parse_matches(
      "# header comment\npentaverify-matches v1 100 100 100 100\n\n"
      "1 2 3 4 # trailing comment\n");
  CHECK(ms.matches.size() == 1);
}

TEST_CASE("a point at x == width is out of bounds") {
  CHECK_THROWS_AS(
      (void)parse_matches("pentaverify-matches v1 100 100 100 100\n100 5 5 5\n"),
      BoundsError);
}

TEST_CASE("malformed documents raise ParseError") {
  CHECK_THROWS_AS((void)parse_matches(""), ParseError);
  CHECK_THROWS_AS((void)parse_matches("wrong-header v1 1 1 1 1\n"), ParseError);
  CHECK_THROWS_AS(
      (void)parse_matches("pentaverify-matches v1 100 100 100 100\n1 2 3\n"),
      ParseError);
  CHECK_THROWS_AS(
      (void)parse_matches("pentaverify-matches v1 100 100 100 100\n1 2 3 x\n"),
      ParseError);
}

TEST_CASE("match file round-trip on fuzzed files") {
  Rng rng(91);
  for (int t = 0; t < 100; ++t) {
    MatchSet ms;
    ms.extent1 = {static_cast<int>(rng.below(2000)) + 1,
                  static_cast<int>(rng.below(2000)) + 1};
    ms.extent2 = {static_cast<int>(rng.below(2000)) + 1,
                  static_cast<int>(rng.below(2000)) + 1};
    const int count = static_cast<int>(rng.below(20));
    for (int i = 0; i < count; ++i)
      ms.matches.push_back(
          {{rng.uniform(0.0, ms.extent1.width - 1e-3),
            rng.uniform(0.0, ms.extent1.height - 1e-3)},
           {rng.uniform(0.0, ms.extent2.width - 1e-3),
            rng.uniform(0.0, ms.extent2.height - 1e-3)}});
    // One serialize pass canonicalizes; thereafter serialize o parse is the
    // identity on the document.
    const auto canonical = serialize_matches(ms);
    CHECK(serialize_matches(parse_matches(canonical)) == canonical);
  }
}

TEST_CASE("label file round-trip") {
  const std::vector<int> labels{0, kOutlierLabel, 2, 1, kOutlierLabel};
  CHECK(parse_labels(serialize_labels(labels)) == labels);
  CHECK_THROWS_AS((void)parse_labels("pentaverify-labels v1\nbogus\n"),
                  ParseError);
}

TEST_CASE("scene file parses") {
  const auto spec = parse_scene(
      "pentaverify-scene v1\n"
      "extent1 900 900\nextent2 1800 1800\nseed 7\nnoise 0.5\n"
      "outliers 200\nnearmiss 10\n"
      "plane 20 20 860 860 200 random\n"
      "plane 30 30 100 100 50 homography 1 0 5 0 1 9 0 0 1\n");
  CHECK(spec.extent1.width == 900);
  CHECK(spec.seed == 7);
  CHECK(spec.noise_sigma == 0.5);
  CHECK(spec.outlier_count == 200);
  CHECK(spec.near_miss_count == 10);
  REQUIRE(spec.planes.size() == 2);
  CHECK(spec.planes[0].random_h);
  CHECK_FALSE(spec.planes[1].random_h);
  CHECK(spec.planes[1].inlier_count == 50);
  const auto spec2 = parse_scene(
      "pentaverify-scene v1\nextent1 10 10\nextent2 10 10\n");
  CHECK(spec2.planes.empty());
  CHECK_THROWS_AS((void)parse_scene("pentaverify-scene v1\nextent1 10 10\n"
                                    "extent2 10 10\nbogus 1\n"),
                  ParseError);
}

TEST_CASE("report round-trip equals the original") {
  auto report = run_scene(92, 2).report;
  const auto text = serialize_report(report);
  const auto parsed = parse_report(text);
  CHECK(reports_equal(report, parsed));
  CHECK(serialize_report(parsed) == text);
  CHECK(parsed.wall_time_ms == 0.0);  // wall time intentionally not persisted
}

TEST_CASE("no-plane report round-trips with infinite errors") {
  MatchSet ms;
  ms.extent1 = {100, 100};
  ms.extent2 = {100, 100};
  ms.matches = {{{1, 2}, {3, 4}}, {{5, 6}, {7, 8}}};
  Config cfg;
  auto report = run(ms, cfg);
  REQUIRE(report.no_plane_found);
  const auto parsed = parse_report(serialize_report(report));
  CHECK(reports_equal(report, parsed));
  CHECK(parsed.no_plane_found);
}

TEST_CASE("svg: empty report draws two empty panels") {
  MatchSet ms;
  ms.extent1 = {320, 240};
  ms.extent2 = {400, 300};
  VerificationReport report;
  const auto svg = render_report_svg(ms, report);
  CHECK(svg.find("width=\"730.00\"") != std::string::npos);  // 320+10+400
  CHECK(svg.find("height=\"300.00\"") != std::string::npos);
  CHECK(svg.find("<polygon") == std::string::npos);
  CHECK(svg.find("<circle") == std::string::npos);
  CHECK(polygon_stroke_colors(svg).empty());
}

TEST_CASE("svg: single-group report uses one pentagon color, no blue") {
  // Seed chosen so every kept pentagon joins the single group and nothing
  // is rejected; ungrouped or rejected pentagons would render in blue.
  auto [scene, report] = run_scene(97, 1);
  REQUIRE(report.groups.size() == 1);
  REQUIRE(report.rejected.empty());
  const auto svg = render_report_svg(scene.match_set, report);
  const auto colors = polygon_stroke_colors(svg);
  CHECK(colors.size() == 1);
  CHECK(colors.count("#377eb8") == 0);  // reserved rejected color absent
}

TEST_CASE("svg: two-group report uses two pentagon colors") {
  auto [scene, report] = run_scene(94, 2);
  REQUIRE(report.groups.size() == 2);
  const auto svg = render_report_svg(scene.match_set, report);
  std::set<std::string> colors = polygon_stroke_colors(svg);
  colors.erase("#377eb8");  // ignore any rejected pentagons
  CHECK(colors.size() == 2);
}

TEST_CASE("svg output is byte-deterministic") {
  auto [scene, report] = run_scene(95, 1);
  CHECK(render_report_svg(scene.match_set, report) ==
        render_report_svg(scene.match_set, report));
}
