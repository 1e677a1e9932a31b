#include "core/geometry.hpp"

#include <algorithm>

namespace pv {

double pentagon_diameter(const Pentagon& p) {
  double d = 0.0;
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) d = std::max(d, dist(p.v[i], p.v[j]));
  return d;
}

std::optional<double> cross_ratio(Vec2 o, Vec2 a, Vec2 b, Vec2 c, Vec2 d,
                                  double eps_col) {
  const Vec2 va = a - o, vb = b - o, vc = c - o, vd = d - o;
  const double n1 = std::abs(cross(va, vc));
  const double n2 = std::abs(cross(vb, vd));
  const double d1 = std::abs(cross(vb, vc));
  const double d2 = std::abs(cross(va, vd));
  if (n1 < eps_col || n2 < eps_col || d1 < eps_col || d2 < eps_col)
    return std::nullopt;
  return (n1 * n2) / (d1 * d2);
}

std::optional<double> cross_ratio(Vec2 o, Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  Pentagon p{{o, a, b, c, d}};
  const double diam = pentagon_diameter(p);
  return cross_ratio(o, a, b, c, d, kCollinearityRel * diam * diam);
}

std::optional<CrossRatioVector> pentagon_cross_ratios(const Pentagon& p) {
  const double diam = pentagon_diameter(p);
  const double eps_col = kCollinearityRel * diam * diam;
  CrossRatioVector out{};
  for (int i = 0; i < 5; ++i) {
    auto cr = cross_ratio(p.v[i], p.v[(i + 1) % 5], p.v[(i + 2) % 5],
                          p.v[(i + 3) % 5], p.v[(i + 4) % 5], eps_col);
    if (!cr) return std::nullopt;
    out.values[i] = *cr;
  }
  return out;
}

bool cr_gate(double cr, double cr_prime, double tau) {
  return std::abs(cr - cr_prime) <= tau * (cr + cr_prime);
}

std::optional<bool> pentagons_shape_match(const Pentagon& p1,
                                          const Pentagon& p2, double tau,
                                          std::uint64_t* eq3_counter) {
  auto cr1 = pentagon_cross_ratios(p1);
  if (!cr1) return std::nullopt;
  auto cr2 = pentagon_cross_ratios(p2);
  if (!cr2) return std::nullopt;
  bool all = true;
  for (int i = 0; i < 5; ++i) {
    if (eq3_counter) ++*eq3_counter;
    all = cr_gate(cr1->values[i], cr2->values[i], tau) && all;
  }
  return all;
}

std::array<int, 5> canonical_order(const std::array<Vec2, 5>& pts) {
  Vec2 c{};
  for (const auto& p : pts) c = c + p;
  c = 0.2 * c;
  std::array<int, 5> order{0, 1, 2, 3, 4};
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    const Vec2 a = pts[i] - c, b = pts[j] - c;
    const double ta = std::atan2(a.y, a.x), tb = std::atan2(b.y, b.x);
    if (ta != tb) return ta < tb;
    const double ra = a.x * a.x + a.y * a.y, rb = b.x * b.x + b.y * b.y;
    if (ra != rb) return ra < rb;
    return i < j;
  });
  return order;
}

std::optional<Pentagon> make_pentagon(const std::array<Vec2, 5>& pts,
                                      double eps_sep) {
  for (const auto& p : pts)
    if (!p.finite()) return std::nullopt;
  Pentagon pent{pts};
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j)
      if (dist(pts[i], pts[j]) < eps_sep) return std::nullopt;
  const double diam = pentagon_diameter(pent);
  const double eps_col = kCollinearityRel * diam * diam;
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j)
      for (int k = j + 1; k < 5; ++k)
        if (std::abs(cross(pts[j] - pts[i], pts[k] - pts[i])) < eps_col)
          return std::nullopt;
  return pent;
}

}  // namespace pv
