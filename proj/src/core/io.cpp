#include "core/io.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "core/errors.hpp"

namespace pv {

namespace {

// ---- number formatting -----------------------------------------------------

// Canonical match-file coordinate: fixed 6 fractional digits, trailing zeros
// stripped.
std::string fmt_fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  std::string s(buf);
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  if (s == "-0") s = "0";
  return s;
}

// Full-precision float for report files (round-trips exactly).
std::string fmt_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return {buf};
}

// ---- tokenizing ------------------------------------------------------------

struct Line {
  int number;  // 1-based
  std::vector<std::string> tokens;
};

// Splits into lines, strips '#' comments, drops blank lines.
std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos)
      raw.erase(hash);
    std::istringstream ls(raw);
    Line line{number, {}};
    std::string tok;
    while (ls >> tok) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

double parse_double(const Line& line, const std::string& tok) {
  const char* begin = tok.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end != begin + tok.size())
    throw ParseError(line.number, "expected a number, got '" + tok + "'");
  return v;
}

long long parse_int(const Line& line, const std::string& tok) {
  const char* begin = tok.c_str();
  char* end = nullptr;
  long long v = std::strtoll(begin, &end, 10);
  if (end != begin + tok.size())
    throw ParseError(line.number, "expected an integer, got '" + tok + "'");
  return v;
}

std::uint64_t parse_u64(const Line& line, const std::string& tok) {
  const char* begin = tok.c_str();
  char* end = nullptr;
  std::uint64_t v = std::strtoull(begin, &end, 10);
  if (end != begin + tok.size())
    throw ParseError(line.number, "expected an integer, got '" + tok + "'");
  return v;
}

void expect_tokens(const Line& line, std::size_t n) {
  if (line.tokens.size() != n)
    throw ParseError(line.number, "expected " + std::to_string(n) +
                                      " fields, got " +
                                      std::to_string(line.tokens.size()));
}

}  // namespace

// ---- match files -----------------------------------------------------------

MatchSet parse_matches(const std::string& text) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, "empty match file");

  const Line& header = lines.front();
  expect_tokens(header, 6);
  if (header.tokens[0] != "pentaverify-matches" || header.tokens[1] != "v1")
    throw ParseError(header.number, "bad header, expected "
                                    "'pentaverify-matches v1 w1 h1 w2 h2'");
  MatchSet ms;
  ms.extent1 = {static_cast<int>(parse_int(header, header.tokens[2])),
                static_cast<int>(parse_int(header, header.tokens[3]))};
  ms.extent2 = {static_cast<int>(parse_int(header, header.tokens[4])),
                static_cast<int>(parse_int(header, header.tokens[5]))};
  if (ms.extent1.width < 1 || ms.extent1.height < 1 || ms.extent2.width < 1 ||
      ms.extent2.height < 1)
    throw ParseError(header.number, "extents must be positive");

  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& line = lines[i];
    expect_tokens(line, 4);
    MatchPair m{{parse_double(line, line.tokens[0]),
                 parse_double(line, line.tokens[1])},
                {parse_double(line, line.tokens[2]),
                 parse_double(line, line.tokens[3])}};
    if (!m.p1.finite() || !m.p2.finite())
      throw ParseError(line.number, "non-finite coordinate");
    if (!ms.extent1.contains(m.p1))
      throw BoundsError(line.number, "point outside image 1 extent");
    if (!ms.extent2.contains(m.p2))
      throw BoundsError(line.number, "point outside image 2 extent");
    ms.matches.push_back(m);
  }
  return ms;
}

std::string serialize_matches(const MatchSet& ms) {
  std::string out = "pentaverify-matches v1 " +
                    std::to_string(ms.extent1.width) + " " +
                    std::to_string(ms.extent1.height) + " " +
                    std::to_string(ms.extent2.width) + " " +
                    std::to_string(ms.extent2.height) + "\n";
  for (const auto& m : ms.matches)
    out += fmt_fixed6(m.p1.x) + " " + fmt_fixed6(m.p1.y) + " " +
           fmt_fixed6(m.p2.x) + " " + fmt_fixed6(m.p2.y) + "\n";
  return out;
}

// ---- label files -----------------------------------------------------------

std::vector<int> parse_labels(const std::string& text) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, "empty label file");
  const Line& header = lines.front();
  expect_tokens(header, 2);
  if (header.tokens[0] != "pentaverify-labels" || header.tokens[1] != "v1")
    throw ParseError(header.number, "bad header, expected "
                                    "'pentaverify-labels v1'");
  std::vector<int> labels;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& line = lines[i];
    if (line.tokens[0] == "outlier") {
      expect_tokens(line, 1);
      labels.push_back(kOutlierLabel);
    } else if (line.tokens[0] == "inlier") {
      expect_tokens(line, 2);
      labels.push_back(static_cast<int>(parse_int(line, line.tokens[1])));
    } else {
      throw ParseError(line.number, "expected 'inlier <plane>' or 'outlier'");
    }
  }
  return labels;
}

std::string serialize_labels(const std::vector<int>& labels) {
  std::string out = "pentaverify-labels v1\n";
  for (int label : labels)
    out += label == kOutlierLabel ? "outlier\n"
                                  : "inlier " + std::to_string(label) + "\n";
  return out;
}

// ---- scene files -----------------------------------------------------------

SceneSpec parse_scene(const std::string& text) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, "empty scene file");
  const Line& header = lines.front();
  expect_tokens(header, 2);
  if (header.tokens[0] != "pentaverify-scene" || header.tokens[1] != "v1")
    throw ParseError(header.number, "bad header, expected "
                                    "'pentaverify-scene v1'");
  SceneSpec spec;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& line = lines[i];
    const std::string& key = line.tokens[0];
    if (key == "extent1" || key == "extent2") {
      expect_tokens(line, 3);
      ImageExtent e{static_cast<int>(parse_int(line, line.tokens[1])),
                    static_cast<int>(parse_int(line, line.tokens[2]))};
      (key == "extent1" ? spec.extent1 : spec.extent2) = e;
    } else if (key == "seed") {
      expect_tokens(line, 2);
      spec.seed = parse_u64(line, line.tokens[1]);
    } else if (key == "noise") {
      expect_tokens(line, 2);
      spec.noise_sigma = parse_double(line, line.tokens[1]);
    } else if (key == "outliers") {
      expect_tokens(line, 2);
      spec.outlier_count = static_cast<int>(parse_int(line, line.tokens[1]));
    } else if (key == "nearmiss") {
      expect_tokens(line, 2);
      spec.near_miss_count = static_cast<int>(parse_int(line, line.tokens[1]));
    } else if (key == "plane") {
      if (line.tokens.size() < 7)
        throw ParseError(line.number, "plane needs rect, count and homography");
      PlaneSpec plane;
      plane.region = {parse_double(line, line.tokens[1]),
                      parse_double(line, line.tokens[2]),
                      parse_double(line, line.tokens[3]),
                      parse_double(line, line.tokens[4])};
      plane.inlier_count = static_cast<int>(parse_int(line, line.tokens[5]));
      if (line.tokens[6] == "random") {
        expect_tokens(line, 7);
        plane.random_h = true;
      } else if (line.tokens[6] == "homography") {
        expect_tokens(line, 16);
        for (int k = 0; k < 9; ++k)
          plane.h.m[k] = parse_double(line, line.tokens[7 + k]);
        plane.h.normalize();
      } else {
        throw ParseError(line.number,
                         "expected 'random' or 'homography <9 values>'");
      }
      spec.planes.push_back(plane);
    } else {
      throw ParseError(line.number, "unknown scene field '" + key + "'");
    }
  }
  if (spec.extent1.width < 1 || spec.extent1.height < 1 ||
      spec.extent2.width < 1 || spec.extent2.height < 1)
    throw ParseError(header.number, "scene needs positive extent1 and extent2");
  return spec;
}

// ---- report files ----------------------------------------------------------

namespace {

void serialize_pentagon_line(std::string& out, const char* tag,
                             const PentagonPair& p) {
  out += std::string("pentagon ") + tag + " block " +
         std::to_string(p.source_block.bx) + " " +
         std::to_string(p.source_block.by) + " indices";
  for (auto i : p.indices) out += " " + std::to_string(i);
  out += " pent1";
  for (const auto& v : p.pent1.v)
    out += " " + fmt_g17(v.x) + " " + fmt_g17(v.y);
  out += " pent2";
  for (const auto& v : p.pent2.v)
    out += " " + fmt_g17(v.x) + " " + fmt_g17(v.y);
  out += "\n";
}

PentagonPair parse_pentagon_line(const Line& line) {
  // pentagon <tag> block bx by indices i*5 pent1 (x y)*5 pent2 (x y)*5
  expect_tokens(line, 2 + 3 + 6 + 11 + 11);
  PentagonPair p;
  p.source_block = {static_cast<int>(parse_int(line, line.tokens[3])),
                    static_cast<int>(parse_int(line, line.tokens[4]))};
  for (int i = 0; i < 5; ++i)
    p.indices[i] =
        static_cast<std::uint32_t>(parse_u64(line, line.tokens[6 + i]));
  for (int i = 0; i < 5; ++i)
    p.pent1.v[i] = {parse_double(line, line.tokens[12 + 2 * i]),
                    parse_double(line, line.tokens[13 + 2 * i])};
  for (int i = 0; i < 5; ++i)
    p.pent2.v[i] = {parse_double(line, line.tokens[23 + 2 * i]),
                    parse_double(line, line.tokens[24 + 2 * i])};
  return p;
}

}  // namespace

std::string serialize_report(const VerificationReport& r) {
  std::string out = "pentaverify-report v1\n";
  out += std::string("status ") + (r.no_plane_found ? "no-plane-found" : "ok") +
         "\n";
  const Config& c = r.config;
  out += "config grid_n " + std::to_string(c.grid_n) + " cr_tau " +
         fmt_g17(c.cr_tau) + " trial_count " + std::to_string(c.trial_count) +
         " per_block_pentagons " + std::to_string(c.per_block_pentagons) +
         " merge_m " + std::to_string(c.merge_m) + " merge_mixes " +
         std::to_string(c.merge_mixes) + " second_mixed_pentagon " +
         std::to_string(c.second_mixed_pentagon ? 1 : 0) +
         " pixel_threshold " + fmt_g17(c.pixel_threshold) + " seed " +
         std::to_string(c.seed) + "\n";
  out += "counts matches " + std::to_string(r.verdicts.size()) + " correct " +
         std::to_string(r.correct_count) + " incorrect " +
         std::to_string(r.incorrect_count) + " eq3 " +
         std::to_string(r.eq3_evaluations) + "\n";
  for (const auto& p : r.kept) serialize_pentagon_line(out, "kept", p);
  for (const auto& p : r.rejected) serialize_pentagon_line(out, "rejected", p);
  for (const auto& g : r.groups) {
    out += "group " + std::to_string(g.id) + " pentagons " +
           std::to_string(g.pentagon_ids.size());
    for (auto pid : g.pentagon_ids) out += " " + std::to_string(pid);
    out += " matches " + std::to_string(g.member_matches.size());
    for (auto m : g.member_matches) out += " " + std::to_string(m);
    out += " homography";
    for (double e : g.homography ? g.homography->m : std::array<double, 9>{})
      out += " " + fmt_g17(e);
    out += " correct " +
           std::to_string(
               r.per_group_correct[static_cast<std::size_t>(g.id)]) +
           "\n";
  }
  for (const auto& v : r.verdicts) {
    out += "verdict " + std::to_string(v.match_index);
    if (v.correct)
      out += " correct " + std::to_string(v.group_id) + " " + fmt_g17(v.error);
    else
      out += " incorrect " + fmt_g17(v.error);
    out += "\n";
  }
  out += "end\n";
  return out;
}

VerificationReport parse_report(const std::string& text) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, "empty report file");
  const Line& header = lines.front();
  expect_tokens(header, 2);
  if (header.tokens[0] != "pentaverify-report" || header.tokens[1] != "v1")
    throw ParseError(header.number, "bad header, expected "
                                    "'pentaverify-report v1'");
  VerificationReport r;
  bool saw_end = false;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& line = lines[i];
    const std::string& key = line.tokens[0];
    if (key == "status") {
      expect_tokens(line, 2);
      r.no_plane_found = line.tokens[1] == "no-plane-found";
    } else if (key == "config") {
      expect_tokens(line, 19);
      Config& c = r.config;
      c.grid_n = static_cast<int>(parse_int(line, line.tokens[2]));
      c.cr_tau = parse_double(line, line.tokens[4]);
      c.trial_count = static_cast<int>(parse_int(line, line.tokens[6]));
      c.per_block_pentagons =
          static_cast<int>(parse_int(line, line.tokens[8]));
      c.merge_m = static_cast<int>(parse_int(line, line.tokens[10]));
      c.merge_mixes = static_cast<int>(parse_int(line, line.tokens[12]));
      c.second_mixed_pentagon = parse_int(line, line.tokens[14]) != 0;
      c.pixel_threshold = parse_double(line, line.tokens[16]);
      c.seed = parse_u64(line, line.tokens[18]);
    } else if (key == "counts") {
      expect_tokens(line, 9);
      r.correct_count = parse_u64(line, line.tokens[4]);
      r.incorrect_count = parse_u64(line, line.tokens[6]);
      r.eq3_evaluations = parse_u64(line, line.tokens[8]);
    } else if (key == "pentagon") {
      auto p = parse_pentagon_line(line);
      (line.tokens[1] == "kept" ? r.kept : r.rejected).push_back(p);
    } else if (key == "group") {
      std::size_t t = 1;
      auto need = [&](std::size_t more) {
        if (t + more > line.tokens.size())
          throw ParseError(line.number, "truncated group line");
      };
      PlanarGroup g;
      need(1);
      g.id = static_cast<int>(parse_int(line, line.tokens[t++]));
      need(2);
      if (line.tokens[t++] != "pentagons")
        throw ParseError(line.number, "expected 'pentagons'");
      auto np = parse_u64(line, line.tokens[t++]);
      need(np);
      for (std::uint64_t k = 0; k < np; ++k)
        g.pentagon_ids.push_back(
            static_cast<std::size_t>(parse_u64(line, line.tokens[t++])));
      need(2);
      if (line.tokens[t++] != "matches")
        throw ParseError(line.number, "expected 'matches'");
      auto nm = parse_u64(line, line.tokens[t++]);
      need(nm);
      for (std::uint64_t k = 0; k < nm; ++k)
        g.member_matches.push_back(
            static_cast<std::uint32_t>(parse_u64(line, line.tokens[t++])));
      need(10);
      if (line.tokens[t++] != "homography")
        throw ParseError(line.number, "expected 'homography'");
      Homography h;
      for (int k = 0; k < 9; ++k) h.m[k] = parse_double(line, line.tokens[t++]);
      g.homography = h;
      need(2);
      if (line.tokens[t++] != "correct")
        throw ParseError(line.number, "expected 'correct'");
      const auto correct = parse_u64(line, line.tokens[t++]);
      if (t != line.tokens.size())
        throw ParseError(line.number, "trailing fields on group line");
      if (r.per_group_correct.size() <= static_cast<std::size_t>(g.id))
        r.per_group_correct.resize(static_cast<std::size_t>(g.id) + 1, 0);
      r.per_group_correct[static_cast<std::size_t>(g.id)] = correct;
      r.groups.push_back(std::move(g));
    } else if (key == "verdict") {
      if (line.tokens.size() < 3)
        throw ParseError(line.number, "truncated verdict line");
      MatchVerdict v;
      v.match_index =
          static_cast<std::uint32_t>(parse_u64(line, line.tokens[1]));
      if (line.tokens[2] == "correct") {
        expect_tokens(line, 5);
        v.correct = true;
        v.group_id = static_cast<int>(parse_int(line, line.tokens[3]));
        v.error = parse_double(line, line.tokens[4]);
      } else if (line.tokens[2] == "incorrect") {
        expect_tokens(line, 4);
        v.error = parse_double(line, line.tokens[3]);
      } else {
        throw ParseError(line.number, "expected 'correct' or 'incorrect'");
      }
      r.verdicts.push_back(v);
    } else if (key == "end") {
      saw_end = true;
    } else {
      throw ParseError(line.number, "unknown report field '" + key + "'");
    }
  }
  if (!saw_end) throw ParseError(static_cast<int>(lines.size()),
                                 "missing 'end' line");
  return r;
}

bool reports_equal(const VerificationReport& a, const VerificationReport& b) {
  return serialize_report(a) == serialize_report(b);
}

// ---- SVG -------------------------------------------------------------------

namespace {

constexpr const char* kGroupColors[] = {"#e41a1c", "#ff7f00", "#4daf4a",
                                        "#984ea3", "#a65628", "#f781bf",
                                        "#00ced1", "#bcbd22"};
constexpr const char* kRejectedColor = "#377eb8";
constexpr const char* kIncorrectColor = "#888888";
constexpr double kPanelGap = 10.0;

std::string group_color(int id) {
  return kGroupColors[static_cast<std::size_t>(id) %
                      (sizeof(kGroupColors) / sizeof(kGroupColors[0]))];
}

std::string fmt2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return {buf};
}

void svg_pentagon(std::string& out, const Pentagon& p, double dx,
                  const std::string& color) {
  out += "  <polygon points=\"";
  for (int i = 0; i < 5; ++i) {
    if (i) out += " ";
    out += fmt2(p.v[i].x + dx) + "," + fmt2(p.v[i].y);
  }
  out += "\" fill=\"none\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
}

void svg_circle(std::string& out, Vec2 p, double dx,
                const std::string& color) {
  out += "  <circle cx=\"" + fmt2(p.x + dx) + "\" cy=\"" + fmt2(p.y) +
         "\" r=\"3\" fill=\"none\" stroke=\"" + color + "\"/>\n";
}

void svg_cross(std::string& out, Vec2 p, double dx, const std::string& color) {
  const double x = p.x + dx, y = p.y;
  out += "  <path d=\"M" + fmt2(x - 3) + " " + fmt2(y - 3) + " L" +
         fmt2(x + 3) + " " + fmt2(y + 3) + " M" + fmt2(x - 3) + " " +
         fmt2(y + 3) + " L" + fmt2(x + 3) + " " + fmt2(y - 3) +
         "\" stroke=\"" + color + "\"/>\n";
}

}  // namespace

std::string render_report_svg(const MatchSet& ms,
                              const VerificationReport& report) {
  const double w1 = ms.extent1.width, h1 = ms.extent1.height;
  const double w2 = ms.extent2.width, h2 = ms.extent2.height;
  const double dx2 = w1 + kPanelGap;
  const double total_w = w1 + kPanelGap + w2;
  const double total_h = std::max(h1, h2);

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt2(total_w) +
         "\" height=\"" + fmt2(total_h) + "\" viewBox=\"0 0 " + fmt2(total_w) +
         " " + fmt2(total_h) + "\">\n";
  out += "  <rect x=\"0\" y=\"0\" width=\"" + fmt2(w1) + "\" height=\"" +
         fmt2(h1) + "\" fill=\"white\" stroke=\"black\"/>\n";
  out += "  <rect x=\"" + fmt2(dx2) + "\" y=\"0\" width=\"" + fmt2(w2) +
         "\" height=\"" + fmt2(h2) + "\" fill=\"white\" stroke=\"black\"/>\n";

  // Pentagon id -> group color for the kept list.
  std::vector<std::string> pent_color(report.kept.size(), kRejectedColor);
  for (const auto& g : report.groups)
    for (auto pid : g.pentagon_ids)
      if (pid < pent_color.size()) pent_color[pid] = group_color(g.id);

  for (std::size_t i = 0; i < report.kept.size(); ++i) {
    svg_pentagon(out, report.kept[i].pent1, 0.0, pent_color[i]);
    svg_pentagon(out, report.kept[i].pent2, dx2, pent_color[i]);
  }
  for (const auto& p : report.rejected) {
    svg_pentagon(out, p.pent1, 0.0, kRejectedColor);
    svg_pentagon(out, p.pent2, dx2, kRejectedColor);
  }
  for (const auto& v : report.verdicts) {
    const auto& m = ms.matches[v.match_index];
    if (v.correct) {
      const auto color = group_color(v.group_id);
      svg_circle(out, m.p1, 0.0, color);
      svg_circle(out, m.p2, dx2, color);
    } else {
      svg_cross(out, m.p1, 0.0, kIncorrectColor);
      svg_cross(out, m.p2, dx2, kIncorrectColor);
    }
  }
  out += "</svg>\n";
  return out;
}

// ---- files -----------------------------------------------------------------

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write file: " + path);
  out << content;
}

}  // namespace pv
