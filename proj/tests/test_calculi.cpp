#include <gtest/gtest.h>

#include <numbers>
#include <set>

#include "scenesem/calculi.hpp"
#include "scenesem/error.hpp"

using namespace scenesem;

namespace {

AABox sq(double x0, double y0, double x1, double y1) { return AABox::rect(x0, y0, x1, y1); }

// Membership oracle on a 192 x 192 grid of cell centres plus vertex contact
// checks over the window [-2, 4]^2. The spacing 1/32 is exact in binary, so
// integer and half-integer edges fall on grid lines.
Rcc8 grid_rcc8(const AABox& a, const AABox& b) {
  const int n = 192;
  const double lo = -2.0, step = 1.0 / 32.0;
  auto inside = [](const AABox& r, double x, double y) { return x > r.min.x && x < r.max.x && y > r.min.y && y < r.max.y; };
  auto closed = [](const AABox& r, double x, double y) {
    return x >= r.min.x - 1e-12 && x <= r.max.x + 1e-12 && y >= r.min.y - 1e-12 && y <= r.max.y + 1e-12;
  };
  auto border = [&](const AABox& r, double x, double y) { return closed(r, x, y) && !inside(r, x, y); };
  bool inter = false, a_in_b = true, b_in_a = true, touch = false, shared = false;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double x = lo + (i + 0.5) * step, y = lo + (j + 0.5) * step;
      const bool ia = inside(a, x, y), ib = inside(b, x, y);
      inter |= ia && ib;
      if (ia && !ib) a_in_b = false;
      if (ib && !ia) b_in_a = false;
    }
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      const double x = lo + i * step, y = lo + j * step;
      touch |= closed(a, x, y) && closed(b, x, y);
      shared |= border(a, x, y) && border(b, x, y);
    }
  if (!touch) return Rcc8::dc;
  if (!inter) return Rcc8::ec;
  if (a_in_b && b_in_a) return Rcc8::eq;
  if (a_in_b) return shared ? Rcc8::tpp : Rcc8::ntpp;
  if (b_in_a) return shared ? Rcc8::tppi : Rcc8::ntppi;
  return Rcc8::po;
}

}  // namespace

TEST(Rcc8, SpecExamples) {
  EXPECT_EQ(rcc8(sq(0, 0, 1, 1), sq(2, 0, 3, 1)), Rcc8::dc);
  EXPECT_EQ(rcc8(sq(0, 0, 1, 1), sq(1, 0, 2, 1)), Rcc8::ec);
}

TEST(Rcc8, AgreesWithGridOracle) {
  const std::vector<std::pair<AABox, AABox>> cases{
      {sq(0, 0, 2, 2), sq(1, 1, 3, 3)},   {sq(0, 0, 1, 1), sq(-1, -1, 2, 2)}, {sq(0, 0, 1, 1), sq(0, 0, 2, 2)},
      {sq(0, 0, 1, 1), sq(0, 0, 1, 1)},   {sq(-1, -1, 2, 2), sq(0, 0, 1, 1)}, {sq(0, 0, 2, 2), sq(0, 0, 1, 1)},
      {sq(0, 0, 1, 1), sq(1, 1, 2, 2)},   {sq(0, 0, 1, 1), sq(1.5, 0, 2, 1)},
  };
  std::set<Rcc8> seen;
  for (const auto& [a, b] : cases) {
    const Rcc8 r = rcc8(a, b);
    seen.insert(r);
    EXPECT_EQ(r, grid_rcc8(a, b)) << label(r);
  }
  EXPECT_EQ(seen.size(), 8u);
}

TEST(Rcc8, ConverseAndCircles) {
  for (Rcc8 r : kAllRcc8) EXPECT_EQ(converse(converse(r)), r);
  EXPECT_EQ(rcc8(Sphere::circle(0, 0, 1), Sphere::circle(2, 0, 1)), Rcc8::ec);
  EXPECT_EQ(rcc8(Sphere::circle(0, 0, 1), Sphere::circle(0, 0, 3)), Rcc8::ntpp);
  EXPECT_EQ(rcc8(Sphere::circle(0, 0, 1), Sphere::circle(5, 0, 1)), Rcc8::dc);
}

TEST(Rcc8, RejectsNonRegions) {
  try {
    rcc8(Point3{0, 0, 0}, sq(0, 0, 1, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::UnsupportedEntityKind);
  }
}

TEST(Rcc8, PointsAgainstRegionsWhenExtended) {
  EXPECT_EQ(rcc8_extended(Point2{0.5, 0.5}, sq(0, 0, 1, 1)), Rcc8::ntpp);
  EXPECT_EQ(rcc8_extended(Point2{1, 0.5}, sq(0, 0, 1, 1)), Rcc8::tpp);
  EXPECT_EQ(rcc8_extended(Point2{3, 0.5}, sq(0, 0, 1, 1)), Rcc8::dc);
}

TEST(Rcc5, Coarsening) {
  EXPECT_EQ(rcc5_coarsen(Rcc8::ec), Rcc5::dr);
  EXPECT_EQ(rcc5_coarsen(Rcc8::dc), Rcc5::dr);
  EXPECT_EQ(rcc5_coarsen(Rcc8::ntpp), Rcc5::pp);
  EXPECT_EQ(rcc5_coarsen(Rcc8::tppi), Rcc5::ppi);
  EXPECT_EQ(rcc5_coarsen(Rcc8::po), Rcc5::po);
  EXPECT_EQ(rcc5_coarsen(Rcc8::eq), Rcc5::eq);
}

TEST(Allen, Examples) {
  EXPECT_EQ(allen({1, 2}, {3, 4}), Allen::before);
  EXPECT_EQ(allen({1, 3}, {3, 5}), Allen::meets);
  EXPECT_EQ(allen({1, 3}, {3 + 5e-7, 5}), Allen::meets);  // within eps_t
  EXPECT_EQ(allen({1, 3}, {3 + 1e-3, 5}), Allen::before);
}

TEST(Allen, LabelsRoundTrip) {
  for (Allen a : kAllAllen) {
    auto p = parse_allen(label(a));
    ASSERT_TRUE(p.has_value());
    EXPECT_EQ(*p, a);
    EXPECT_EQ(converse(converse(a)), a);
  }
}

TEST(RectAlgebra, Examples) {
  EXPECT_EQ(rect_algebra(sq(0, 0, 1, 1), sq(2, 2, 3, 3)).axes, (std::vector<Allen>{Allen::before, Allen::before}));
  EXPECT_EQ(rect_algebra(sq(0, 0, 1, 1), sq(0, 0, 1, 1)).axes, (std::vector<Allen>{Allen::equals, Allen::equals}));
  EXPECT_EQ(rect_algebra(sq(0, 0, 2, 1), sq(1, 0, 3, 1)).axes, (std::vector<Allen>{Allen::overlaps, Allen::equals}));
  EXPECT_EQ(rect_algebra(AABox::cuboid({0, 0, 0}, {1, 1, 1}), AABox::cuboid({0, 0, 1}, {1, 1, 2})).axes.size(), 3u);
}

TEST(Lr, Examples) {
  EXPECT_EQ(lr({0, 1}, {0, 0}, {1, 0}), Lr::left);
  EXPECT_EQ(lr({0, -1}, {0, 0}, {1, 0}), Lr::right);
  EXPECT_EQ(lr({2, 0}, {0, 0}, {1, 0}), Lr::front);
  EXPECT_EQ(lr({0.5, 0}, {0, 0}, {1, 0}), Lr::on);
  EXPECT_EQ(lr({-1, 0}, {0, 0}, {1, 0}), Lr::back);
}

TEST(Orientation, Examples) {
  const OrientedPoint a{{0, 0, 0}, {1, 0, 0}};
  const OrientedPoint head_on{{5, 0, 0}, {-1, 0, 0}};
  auto r = orient_pair(a, head_on);
  EXPECT_TRUE(r.facing_towards);
  EXPECT_TRUE(r.opposite_direction);
  EXPECT_FALSE(r.same_direction);

  auto s = orient_pair(a, {{5, 0, 0}, {1, 0, 0}});
  EXPECT_TRUE(s.same_direction);
  EXPECT_FALSE(s.facing_towards);

  auto back = orient_pair({{0, 0, 0}, {-1, 0, 0}}, {{5, 0, 0}, {1, 0, 0}});
  EXPECT_TRUE(back.facing_away);
  EXPECT_TRUE(back.opposite_direction);
}

TEST(Qdc, Examples) {
  QdcConfig c{0.1, 1.0, 1.2};
  EXPECT_EQ(qdc_distance(0.05, c), QdcDistance::adjacent);
  EXPECT_EQ(qdc_distance(0.5, c), QdcDistance::near);
  EXPECT_EQ(qdc_distance(2.0, c), QdcDistance::far);
  EXPECT_EQ(qdc_size(1.0, 1.0, c), QdcSize::equi_sized);
  EXPECT_EQ(qdc_size(1.0, 2.0, c), QdcSize::smaller);
  EXPECT_EQ(qdc_size(2.0, 1.0, c), QdcSize::larger);
  const auto q = qdc(sq(0, 0, 1, 1), sq(1.05, 0, 2.05, 1), c);
  EXPECT_EQ(q.distance, QdcDistance::adjacent);
  EXPECT_EQ(q.size, QdcSize::equi_sized);
}
