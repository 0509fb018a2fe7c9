#include "lorentz/geometry.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"

using namespace lorentz;
using namespace lorentz::oracle;

TEST(Geometry, LiftedCenters) {
    const BilliardTable t2(2, 0.1);
    EXPECT_EQ(lifted_center(t2, {0, 0, 0}), Vec2(0.0, 0.0));
    EXPECT_EQ(lifted_center(t2, {1, 0, 0}), Vec2(0.5, 0.0));
    const BilliardTable t4(4, 0.05);
    EXPECT_EQ(lifted_center(t4, {3, -1, 2}), Vec2(-0.25, 2.0));
    EXPECT_THROW(lifted_center(t4, {4, 0, 0}), std::out_of_range);
    EXPECT_THROW(lifted_center(t4, {-1, 0, 0}), std::out_of_range);
}

TEST(Geometry, TableValidation) {
    EXPECT_THROW(BilliardTable(0, 0.1), std::invalid_argument);
    EXPECT_THROW(BilliardTable(2, 0.25), std::invalid_argument);
    EXPECT_THROW(BilliardTable(2, 0.0), std::invalid_argument);
    EXPECT_NO_THROW(BilliardTable(2, 0.2499));
}

TEST(Geometry, ColumnAddressing) {
    const BilliardTable t(3, 0.05);
    for (std::int64_t j = -7; j <= 7; ++j) {
        const auto d = t.disk_at_column(j, 4);
        EXPECT_EQ(t.column_of(d), j);
        EXPECT_EQ(d.q, 4);
        EXPECT_NEAR(t.center(d).x, static_cast<double>(j) / 3.0, 1e-15);
    }
}

TEST(Geometry, RayDiskExamples) {
    auto t = ray_disk_first_hit({0.5, 0.5}, {0, -1}, {0.5, 0}, 0.1);
    ASSERT_TRUE(t);
    EXPECT_NEAR(*t, 0.4, 1e-15);
    EXPECT_FALSE(ray_disk_first_hit({0.5, 0.5}, {0, 1}, {0.5, 0}, 0.1));
    EXPECT_FALSE(ray_disk_first_hit({0, 0.5}, {1, 0}, {0.5, 0}, 0.1));
    EXPECT_THROW(ray_disk_first_hit({0.5, 0.02}, {0, 1}, {0.5, 0}, 0.1), InsideObstacle);
}

TEST(Geometry, RayDiskHitLiesOnCircle) {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int hits = 0;
    for (int i = 0; i < 2000; ++i) {
        const Vec2 c{u(gen), u(gen)};
        const double r = 0.05 + 0.1 * std::abs(u(gen));
        Vec2 o{u(gen) * 3, u(gen) * 3};
        if ((o - c).norm() <= r) continue;
        const Vec2 dir = (c + Vec2{u(gen) * 0.2, u(gen) * 0.2} - o).normalized();
        const auto t = ray_disk_first_hit(o, dir, c, r);
        if (!t) continue;
        ++hits;
        const Vec2 p = o + *t * dir;
        EXPECT_NEAR((p - c).norm(), r, 1e-12);
        // Reversing from the hit point along -dir traces the same chord back.
        const Vec2 m = (p - c).normalized();
        const Vec2 out = reflect(dir, m);
        EXPECT_NEAR(reflect(out, -m).dot(m), dir.dot(m), 1e-12);
        EXPECT_FALSE(ray_disk_first_hit(p, -dir, c, r));
    }
    EXPECT_GT(hits, 500);
}

TEST(Geometry, ReflectExamples) {
    EXPECT_EQ(reflect({0, -1}, {0, 1}), Vec2(0, 1));
    EXPECT_THROW(reflect({1, 0}, {0, 1}), GrazingCollision);
    const double h = std::sqrt(2.0) / 2.0;
    const Vec2 v = reflect({h, -h}, {0, 1});
    EXPECT_NEAR(v.x, h, 1e-15);
    EXPECT_NEAR(v.y, h, 1e-15);
    EXPECT_THROW(reflect({0, 1}, {0, 1}), std::invalid_argument);
}

TEST(Geometry, ReflectIsInvolution) {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> ang(0.0, 2 * std::numbers::pi);
    for (int i = 0; i < 1000; ++i) {
        const Vec2 m = unit_from_angle(ang(gen));
        Vec2 v = unit_from_angle(ang(gen));
        if (std::abs(v.dot(m)) < 1e-6) continue;
        if (v.dot(m) > 0) v = -v;
        const Vec2 w = reflect(v, m);
        EXPECT_NEAR(w.norm(), 1.0, 1e-12);
        EXPECT_GT(w.dot(m), 0.0);
        // The normal component flips back; reflecting -w returns -v.
        const Vec2 back = reflect(-w, m);
        EXPECT_NEAR(back.x, -v.x, 1e-12);
        EXPECT_NEAR(back.y, -v.y, 1e-12);
    }
}

TEST(Geometry, StadiumExamples) {
    EXPECT_TRUE(disk_meets_stadium({0.5, 0}, {0, 0}, {1, 0}, 0.1));
    EXPECT_FALSE(disk_meets_stadium({0.5, 1}, {0, 0}, {1, 0}, 0.1));
    EXPECT_TRUE(disk_meets_stadium({0.5, 0.19}, {0, 0}, {1, 0}, 0.1));
    // Tangency is not an intersection.
    EXPECT_FALSE(disk_meets_stadium({0.5, 0.2}, {0, 0}, {1, 0}, 0.1));
}

TEST(Geometry, StadiumAgreesWithSamplingOracle) {
    std::mt19937_64 gen(2024);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int checked = 0, positive = 0;
    while (checked < 1000) {
        const double r = 0.03 + 0.07 * u(gen);
        const Vec2 c1{u(gen), u(gen)};
        const Vec2 c2{u(gen), u(gen)};
        if ((c2 - c1).norm() < 1e-3) continue;
        const Vec2 mid = 0.5 * (c1 + c2);
        const Vec2 other{mid.x + (u(gen) - 0.5) * 0.8, mid.y + (u(gen) - 0.5) * 0.8};
        // Skip configurations within sampling resolution of tangency.
        const double dist = point_segment_distance(other, c1, c2);
        if (std::abs(dist - 2 * r) < 1e-5) continue;
        const bool hit = oracle::sampled_meets_stadium(other, c1, c2, r, gen);
        EXPECT_EQ(disk_meets_stadium(other, c1, c2, r), hit);
        positive += hit;
        ++checked;
    }
    EXPECT_GT(positive, 100);
    EXPECT_LT(positive, 900);
}

TEST(Geometry, ObstacleLookup) {
    const BilliardTable t(4, 0.05);
    EXPECT_TRUE(t.inside_obstacle({1.25, -3.01}));
    EXPECT_FALSE(t.inside_obstacle({1.125, -3.0}));
    const auto d = t.disk_containing({-0.75 + 0.05, 2.0});
    ASSERT_TRUE(d);
    EXPECT_EQ(*d, (LiftedDisk{1, -1, 2}));
    const auto box = t.disks_with_centers_in(-0.01, 1.01, -0.01, 0.01);
    EXPECT_EQ(box.size(), 5u);
}
