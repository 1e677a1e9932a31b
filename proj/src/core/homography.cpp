#include "core/homography.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "core/errors.hpp"
#include "core/planar.hpp"

namespace pv {

void Homography::normalize() {
  double norm = 0.0;
  for (double e : m) norm += e * e;
  norm = std::sqrt(norm);
  double s = 1.0 / norm;
  if (m[8] < 0.0) s = -s;
  for (double& e : m) e *= s;
}

namespace {

struct Conditioner {
  // x' = s * (x - c)
  Vec2 c{};
  double s = 1.0;
  Vec2 apply(Vec2 p) const { return {s * (p.x - c.x), s * (p.y - c.y)}; }
};

Conditioner conditioner_for(std::span<const MatchPair> pts, bool first) {
  Conditioner t;
  for (const auto& m : pts) {
    const Vec2 p = first ? m.p1 : m.p2;
    t.c = t.c + p;
  }
  t.c = (1.0 / static_cast<double>(pts.size())) * t.c;
  double mean_dist = 0.0;
  for (const auto& m : pts) mean_dist += dist(first ? m.p1 : m.p2, t.c);
  mean_dist /= static_cast<double>(pts.size());
  t.s = mean_dist > 0.0 ? std::numbers::sqrt2 / mean_dist : 1.0;
  return t;
}

void check_noncollinear(std::span<const MatchPair> pts) {
  const std::size_t n = pts.size();
  double diam = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      diam = std::max(diam, dist(pts[i].p1, pts[j].p1));
  const double eps = kCollinearityRel * diam * diam;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        if (std::abs(cross(pts[j].p1 - pts[i].p1, pts[k].p1 - pts[i].p1)) < eps)
          throw DegenerateConfiguration(
              "three collinear image-1 points in homography estimation");
}

}  // namespace

Homography estimate_homography(std::span<const MatchPair> points) {
  const std::size_t n = points.size();
  if (n < 4)
    throw DegenerateConfiguration("homography needs at least 4 point pairs");
  check_noncollinear(points);

  const Conditioner t1 = conditioner_for(points, true);
  const Conditioner t2 = conditioner_for(points, false);

  Eigen::MatrixXd a(2 * n, 9);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 p = t1.apply(points[i].p1);
    const Vec2 q = t2.apply(points[i].p2);
    a.row(2 * i) << p.x, p.y, 1.0, 0.0, 0.0, 0.0, -q.x * p.x, -q.x * p.y, -q.x;
    a.row(2 * i + 1) << 0.0, 0.0, 0.0, p.x, p.y, 1.0, -q.y * p.x, -q.y * p.y,
        -q.y;
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  // Pad implicit zero singular values when the system has fewer than 9 rows.
  std::array<double, 9> sv{};
  const auto& s = svd.singularValues();
  for (int i = 0; i < s.size() && i < 9; ++i) sv[i] = s[i];

  const double smallest = sv[8];
  const double second = sv[7];
  if (second <= 0.0 || smallest / second > 0.99)
    throw NumericalFailure("homography null direction is not isolated");

  const Eigen::VectorXd h = svd.matrixV().col(8);
  Eigen::Matrix3d hn;
  hn << h(0), h(1), h(2), h(3), h(4), h(5), h(6), h(7), h(8);

  Eigen::Matrix3d m1, m2;
  m1 << t1.s, 0, -t1.s * t1.c.x, 0, t1.s, -t1.s * t1.c.y, 0, 0, 1;
  m2 << t2.s, 0, -t2.s * t2.c.x, 0, t2.s, -t2.s * t2.c.y, 0, 0, 1;
  Eigen::Matrix3d hm = m2.inverse() * hn * m1;

  Homography out;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) out.m[3 * r + c] = hm(r, c);
  out.normalize();
  if (std::abs(out.det()) < 1e-12)
    throw DegenerateConfiguration("estimated homography is singular");
  return out;
}

std::vector<PlanarGroup> fit_group_homographies(
    std::vector<PlanarGroup> groups, const MatchSet& ms,
    std::vector<std::string>* diagnostics) {
  std::vector<PlanarGroup> out;
  for (auto& g : groups) {
    std::vector<MatchPair> pts;
    pts.reserve(g.member_matches.size());
    for (auto idx : g.member_matches) {
      const auto& m = ms.matches[idx];
      bool dup = false;
      for (const auto& p : pts)
        if (p.p1 == m.p1 && p.p2 == m.p2) {
          dup = true;
          break;
        }
      if (!dup) pts.push_back(m);
    }
    try {
      g.homography = estimate_homography(pts);
    } catch (const std::runtime_error& e) {
      if (diagnostics)
        diagnostics->push_back("group " + std::to_string(g.id) +
                               " dropped: " + e.what());
      continue;
    }
    g.id = static_cast<int>(out.size());
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<MatchVerdict> classify_matches(const MatchSet& ms,
                                           const std::vector<PlanarGroup>& groups,
                                           double pixel_threshold) {
  std::vector<MatchVerdict> verdicts;
  verdicts.reserve(ms.matches.size());
  for (std::size_t i = 0; i < ms.matches.size(); ++i) {
    const auto& m = ms.matches[i];
    MatchVerdict v;
    v.match_index = static_cast<std::uint32_t>(i);
    double best = std::numeric_limits<double>::infinity();
    int best_group = -1;
    for (const auto& g : groups) {
      if (!g.homography) continue;
      auto pred = g.homography->apply(m.p1);
      const double err = pred ? dist(*pred, m.p2)
                              : std::numeric_limits<double>::infinity();
      if (err < best) {
        best = err;
        best_group = g.id;
      }
    }
    v.error = best;
    if (best_group >= 0 && best <= pixel_threshold) {
      v.correct = true;
      v.group_id = best_group;
    }
    verdicts.push_back(v);
  }
  return verdicts;
}

}  // namespace pv
