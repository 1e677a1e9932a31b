#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>

namespace pv {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  bool finite() const { return std::isfinite(x) && std::isfinite(y); }

  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }
};

// Scalar 2D cross product.
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

inline double dist(Vec2 a, Vec2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

// Five vertices in canonical order (polar angle around the image-1 centroid;
// the order is inherited by the second view through the match indices).
struct Pentagon {
  std::array<Vec2, 5> v;
};

// One cross-ratio per pentagon vertex taken as origin.
struct CrossRatioVector {
  std::array<double, 5> values;
};

// Relative collinearity tolerance: 1e-9 x (diameter of the point set)^2.
inline constexpr double kCollinearityRel = 1e-9;
// Relative vertex-separation tolerance: 1e-6 x image diagonal.
inline constexpr double kSeparationRel = 1e-6;

double pentagon_diameter(const Pentagon& p);

// Cross-ratio of four points about origin o:
//   |a'xc'| |b'xd'| / (|b'xc'| |a'xd'|)  with  a' = a - o  etc.
// nullopt when some cross-product magnitude falls below eps_col (a collinear
// triple including o).
std::optional<double> cross_ratio(Vec2 o, Vec2 a, Vec2 b, Vec2 c, Vec2 d,
                                  double eps_col);

// Convenience overload: tolerance derived from the five points themselves.
std::optional<double> cross_ratio(Vec2 o, Vec2 a, Vec2 b, Vec2 c, Vec2 d);

// values[i] uses vertex i as origin and the remaining vertices in cyclic
// order starting at i+1 as (a, b, c, d).
std::optional<CrossRatioVector> pentagon_cross_ratios(const Pentagon& p);

// View-invariant acceptance gate: |cr - cr'| / (cr + cr') <= tau.
bool cr_gate(double cr, double cr_prime, double tau);

// All five origin-wise gates must hold; every gate is evaluated (no short
// circuit) so eq3_counter, when given, counts exactly 5 per completed
// comparison. nullopt when either pentagon is degenerate.
std::optional<bool> pentagons_shape_match(const Pentagon& p1,
                                          const Pentagon& p2, double tau,
                                          std::uint64_t* eq3_counter = nullptr);

// Permutation sorting five points by polar angle around their centroid.
std::array<int, 5> canonical_order(const std::array<Vec2, 5>& pts);

// Validates separation (eps_sep) and absence of collinear triples; the points
// are taken in the given order.
std::optional<Pentagon> make_pentagon(const std::array<Vec2, 5>& pts,
                                      double eps_sep);

}  // namespace pv
