#include "lorentz/admissibility.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace lorentz;

namespace {

// Distance from c to segment [p, q] by dense parameter sampling refined with a
// local ternary search.
double sampled_distance(Vec2 c, Vec2 p, Vec2 q) {
    const auto at = [&](double s) { return (p + s * (q - p) - c).norm(); };
    double best_s = 0.0;
    double best = at(0.0);
    for (int k = 1; k <= 200; ++k) {
        const double s = k / 200.0;
        if (at(s) < best) {
            best = at(s);
            best_s = s;
        }
    }
    double lo = std::max(0.0, best_s - 0.005);
    double hi = std::min(1.0, best_s + 0.005);
    for (int it = 0; it < 200; ++it) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (at(m1) < at(m2)) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    return std::min(best, at(0.5 * (lo + hi)));
}

// Every disk whose centre lies in the bounding box of the pair, inflated by 3r.
bool brute_pair(const BilliardTable& t, const LiftedDisk& a, const LiftedDisk& b, bool& borderline) {
    const Vec2 p = t.center(a);
    const Vec2 q = t.center(b);
    const double r = t.r();
    const double pad = 3.0 * r;
    borderline = false;
    bool ok = true;
    for (auto row = static_cast<std::int64_t>(std::floor(std::min(p.y, q.y) - pad));
         row <= static_cast<std::int64_t>(std::ceil(std::max(p.y, q.y) + pad)); ++row) {
        for (auto j = static_cast<std::int64_t>(std::floor((std::min(p.x, q.x) - pad) * t.n()));
             j <= static_cast<std::int64_t>(std::ceil((std::max(p.x, q.x) + pad) * t.n())); ++j) {
            const LiftedDisk d = t.disk_at_column(j, row);
            if (d == a || d == b) continue;
            const double dist = sampled_distance(t.center(d), p, q);
            if (std::abs(dist - 2.0 * r) < 1e-7) borderline = true;
            if (dist < 2.0 * r) ok = false;
        }
    }
    return ok;
}

LiftedDisk random_disk_near(const BilliardTable& t, const LiftedDisk& from, Rng& rng, double reach) {
    const Vec2 c = t.center(from);
    for (;;) {
        const double x = c.x + rng.uniform(-reach, reach);
        const double y = c.y + rng.uniform(-reach, reach);
        const LiftedDisk d =
            t.disk_at_column(static_cast<std::int64_t>(std::lround(x * t.n())), static_cast<std::int64_t>(std::lround(y)));
        if (!(d == from)) return d;
    }
}

}  // namespace

TEST(Admissibility, PairExamples) {
    const BilliardTable t(4, 0.05);
    // Neighbours in a row are always fine.
    EXPECT_TRUE(check_pair(t, {0, 0, 0}, {1, 0, 0}));
    // Two steps along the row pass straight through the disk between them.
    EXPECT_FALSE(check_pair(t, {0, 0, 0}, {2, 0, 0}));
    // Vertical neighbours across the open gap.
    EXPECT_TRUE(check_pair(t, {0, 0, 0}, {0, 0, 1}));
    // Two rows apart the middle row blocks.
    EXPECT_FALSE(check_pair(t, {0, 0, 0}, {0, 0, 2}));
}

TEST(Admissibility, PairMatchesBruteForce) {
    const BilliardTable t(6, 0.05);
    Rng rng(11);
    int admissible = 0;
    int compared = 0;
    for (int i = 0; i < 1000; ++i) {
        const LiftedDisk a = t.disk_at_column(static_cast<std::int64_t>(rng.below(12)) - 6, static_cast<std::int64_t>(rng.below(3)) - 1);
        const LiftedDisk b = random_disk_near(t, a, rng, 1.5);
        bool borderline = false;
        const bool oracle = brute_pair(t, a, b, borderline);
        if (borderline) continue;
        ++compared;
        admissible += oracle;
        EXPECT_EQ(check_pair(t, a, b), oracle) << to_string(a) << " " << to_string(b);
    }
    EXPECT_GT(compared, 900);
    EXPECT_GT(admissible, 50);
    EXPECT_LT(admissible, compared - 50);
}

TEST(Admissibility, TripleExamples) {
    const BilliardTable t(4, 0.05);
    EXPECT_TRUE(check_triple(t, {0, 0, 0}, {2, 0, 0}, {0, 0, 1}));
    // The middle disk sits on the segment joining its neighbours.
    EXPECT_FALSE(check_triple(t, {0, 0, 0}, {1, 0, 0}, {2, 0, 0}));
    EXPECT_FALSE(check_triple(t, {0, 0, 0}, {0, 0, 1}, {0, 0, 2}));
    // Back and forth is allowed.
    EXPECT_TRUE(check_triple(t, {0, 0, 0}, {0, 0, 1}, {0, 0, 0}));
}

TEST(Admissibility, SequenceCertificate) {
    const BilliardTable t(4, 0.05);
    const auto good = check_sequence(t, {{0, 0, 0}, {2, 0, 1}, {0, 1, 0}, {2, 1, 1}});
    EXPECT_TRUE(good.admissible());
    EXPECT_EQ(good.certificate.pair_ok.size(), 3u);
    EXPECT_EQ(good.certificate.triple_ok.size(), 2u);
    EXPECT_EQ(good.certificate.first_failure(), "");
    const auto bad = check_sequence(t, {{0, 0, 0}, {1, 0, 0}, {2, 0, 0}});
    EXPECT_FALSE(bad.admissible());
    EXPECT_FALSE(bad.certificate.first_failure().empty());
    EXPECT_THROW(check_sequence(t, {{0, 0, 0}}), std::invalid_argument);
}

TEST(Admissibility, ReversalAndTranslationInvariance) {
    const BilliardTable t(5, 0.04);
    Rng rng(3);
    for (int i = 0; i < 50; ++i) {
        auto seq = random_admissible_sequence(t, 12, rng);
        ASSERT_TRUE(check_sequence(t, seq).admissible());
        auto rev = seq;
        std::reverse(rev.begin(), rev.end());
        EXPECT_TRUE(check_sequence(t, rev).admissible());
        const auto a = static_cast<std::int64_t>(rng.below(7)) - 3;
        const auto b = static_cast<std::int64_t>(rng.below(7)) - 3;
        for (auto& d : seq) d = d.translated(a, b);
        EXPECT_TRUE(check_sequence(t, seq).admissible());
    }
    // Invariance of failures too.
    const std::vector<LiftedDisk> bad{{0, 0, 0}, {1, 0, 0}, {2, 0, 0}};
    std::vector<LiftedDisk> moved;
    for (const auto& d : bad) moved.push_back(d.translated(4, -2));
    EXPECT_FALSE(check_sequence(t, moved).admissible());
}

TEST(Admissibility, CyclicSeam) {
    const BilliardTable t(4, 0.05);
    // Zigzag between floor and ceiling of successive cells.
    const std::vector<LiftedDisk> period{{0, 0, 0}, {2, 0, 1}};
    EXPECT_TRUE(check_cyclic_sequence(t, period, 1, 0).admissible());
    // Back and forth between row neighbours closes up.
    EXPECT_TRUE(check_cyclic_sequence(t, {{0, 0, 0}, {1, 0, 0}}, 0, 0).admissible());
    // Shifting by one cell makes the seam chord run along the row.
    EXPECT_FALSE(check_cyclic_sequence(t, {{0, 0, 0}, {1, 0, 0}}, 1, 0).admissible());
}

TEST(Admissibility, CellPath) {
    const auto cells = cell_path(parse_letters("a b1 A B2", 3));
    ASSERT_EQ(cells.size(), 5u);
    EXPECT_EQ(cells[0], std::make_pair(std::int64_t{0}, std::int64_t{0}));
    EXPECT_EQ(cells[1], std::make_pair(std::int64_t{1}, std::int64_t{0}));
    EXPECT_EQ(cells[2], std::make_pair(std::int64_t{1}, std::int64_t{1}));
    EXPECT_EQ(cells[3], std::make_pair(std::int64_t{0}, std::int64_t{1}));
    EXPECT_EQ(cells[4], std::make_pair(std::int64_t{0}, std::int64_t{0}));
}

TEST(Admissibility, RealizeShortWords) {
    const BilliardTable t(10, 0.01);
    for (const char* text : {"", "a", "A", "b1", "B10", "b1 B10", "a a", "b5 a B3"}) {
        const ReducedWord w = parse_word(text, 10);
        const auto real = realize_word(t, w);
        EXPECT_TRUE(real.sequence.admissible()) << text;
        EXPECT_GE(real.sequence.disks.size(), 2u) << text;
        EXPECT_EQ(real.cell_index.size(), real.sequence.disks.size()) << text;
    }
}

TEST(Admissibility, IdleRuns) {
    const BilliardTable t(10, 0.01);
    const auto real = realize_word(t, parse_word("a b3 a", 10));
    const auto base = real.sequence.disks;
    const auto longer = insert_idle_runs(t, base, 3);
    EXPECT_EQ(longer.size(), base.size() + 6);
    EXPECT_TRUE(check_sequence(t, longer).admissible());
}

TEST(Admissibility, RandomWalkIsAdmissible) {
    const BilliardTable t(6, 0.05);
    Rng rng(8);
    const auto seq = random_admissible_sequence(t, 200, rng);
    ASSERT_EQ(seq.size(), 200u);
    EXPECT_TRUE(check_sequence(t, seq).admissible());
    for (std::size_t i = 2; i < seq.size(); ++i) EXPECT_NE(seq[i], seq[i - 2]);
}

TEST(Admissibility, JsonRoundTrip) {
    const std::vector<LiftedDisk> seq{{0, 0, 0}, {3, -2, 1}, {5, 7, -4}};
    EXPECT_EQ(sequence_from_json(sequence_to_json(seq)), seq);
    EXPECT_THROW(sequence_from_json("[[1, 2]]"), std::exception);
}
