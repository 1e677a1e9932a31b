#pragma once

#include <string>
#include <vector>

#include "core/pipeline.hpp"
#include "core/synth.hpp"

namespace pv {

// Match file: line-oriented text, '#' comments allowed.
//   pentaverify-matches v1 <w1> <h1> <w2> <h2>
//   x1 y1 x2 y2
// Coordinates carry up to 6 fractional digits in canonical form.
MatchSet parse_matches(const std::string& text);
std::string serialize_matches(const MatchSet& ms);

// Label file, parallel to a match file:
//   pentaverify-labels v1
//   inlier <plane> | outlier
std::vector<int> parse_labels(const std::string& text);
std::string serialize_labels(const std::vector<int>& labels);

// Scene spec file:
//   pentaverify-scene v1
//   extent1 <w> <h>
//   extent2 <w> <h>
//   seed <s>
//   noise <sigma>
//   outliers <count>
//   nearmiss <count>
//   plane <x> <y> <w> <h> <inliers> random
//   plane <x> <y> <w> <h> <inliers> homography <h00> ... <h22>
// "random" planes draw their homography from the scene seed.
SceneSpec parse_scene(const std::string& text);

// Report document with a stable schema; floats are printed with full
// precision so parse(serialize(r)) == r. Wall time is not serialized (it
// would break byte-identical reruns) and parses back as zero.
std::string serialize_report(const VerificationReport& report);
VerificationReport parse_report(const std::string& text);

bool reports_equal(const VerificationReport& a, const VerificationReport& b);

// Side-by-side SVG: kept pentagons per-group colors, rejected pentagons in
// the reserved blue, correct matches as group-colored circles, incorrect
// matches as gray crosses. Byte-deterministic for fixed inputs.
std::string render_report_svg(const MatchSet& ms,
                              const VerificationReport& report);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace pv
