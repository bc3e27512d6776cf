#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "bnkit/partition.hpp"

using namespace bnkit;

TEST_SUITE_BEGIN("partition");

TEST_CASE("partition level tracks the dyadic schedule") {
    CHECK(partition_level(2.0, 1.0) == 1);      // (2^1)^1 <= 2 < (2^2)^1
    CHECK(partition_level(1024.0, 0.1) == 1);   // t^eps = 2
    CHECK(partition_level(1.0, 0.5) == 0);
    CHECK(partition_level(1023.9, 0.1) == 0);
    CHECK_THROWS_AS(partition_level(0.5, 1.0), std::invalid_argument);

    // monotone nondecreasing in t
    int prev = 0;
    for (double t = 1.0; t < 1e6; t *= 1.7) {
        const int n = partition_level(t, 0.3);
        CHECK(n >= prev);
        prev = n;
    }
}

TEST_CASE("cell partition tiles the support with conserved mass") {
    CutoffSchedule sched(1.25, 0.8, 1.0, 0.5, 1.0);  // epsilon = 1
    DispersionModel disp;
    WavePacket h = default_wavepacket();

    CellPartition part(h, 2.0, sched, disp);
    CHECK(part.level() == 1);
    CHECK(part.size() == 8);  // N = 2^{3n} for the cubic support
    CHECK(std::abs(part.mass_sum() - h.norm2()) <= 1e-8 * h.norm2());
    for (const Cell& cell : part.cells()) {
        CHECK(cell.mass > 0.0);
        CHECK(h.support().contains(cell.center));
        CHECK(cell.center.norm() > disp.r_alpha());
        CHECK(cell.center.norm() < kMomentumBallRadius);
    }

    CellPartition coarse(h, 1.0, sched, disp);
    CHECK(coarse.level() == 0);
    CHECK(coarse.size() == 1);

    CHECK_THROWS_AS(CellPartition(h, 0.5, sched, disp), std::invalid_argument);
}

TEST_CASE("cell count scales like 2^{3n}") {
    CutoffSchedule sched(1.25, 0.8, 0.3, 0.5, 1.0);
    DispersionModel disp;
    WavePacket h = default_wavepacket();
    for (double t : {1e2, 1e3, 1e4}) {
        CellPartition part(h, t, sched, disp);
        CHECK(part.size() == static_cast<std::size_t>(1) << (3 * part.level()));
    }
}

TEST_CASE("refinement nests children exactly and splits masses") {
    CutoffSchedule sched(1.25, 0.8, 1.0, 0.5, 1.0);
    DispersionModel disp;
    WavePacket h = default_wavepacket();

    Refinement ref = refine(h, 2.0, 4.0, sched, disp);
    CHECK(ref.parent.level() == 1);
    CHECK(ref.child.level() == 2);
    CHECK(ref.child.size() == 64);

    for (std::size_t p = 0; p < ref.parent.size(); ++p) {
        const auto kids = ref.children_of(p);
        CHECK(kids.size() == 8);  // one dyadic level
        double mass = 0.0;
        for (std::size_t c : kids) {
            const Cell& child = ref.child.cells()[c];
            CHECK(ref.parent.cells()[p].bounds.contains(child.center));
            mass += child.mass;
        }
        CHECK(std::abs(mass - ref.parent.cells()[p].mass) <=
              1e-10 * ref.parent.cells()[p].mass);
    }

    CHECK_THROWS_AS(refine(h, 4.0, 2.0, sched, disp), std::invalid_argument);
}

TEST_CASE("partition csv dump lists one row per cell") {
    CutoffSchedule sched(1.25, 0.8, 1.0, 0.5, 1.0);
    DispersionModel disp;
    WavePacket h = default_wavepacket();
    CellPartition part(h, 2.0, sched, disp);
    const std::string csv = partition_to_csv(part);
    CHECK(csv.rfind("j,px,py,pz,side,mass,vx,vy,vz\n", 0) == 0);
    CHECK(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')) ==
          1 + part.size());
}

TEST_CASE("child-parent velocity gaps obey the smooth-dispersion bound") {
    CutoffSchedule sched(1.25, 0.8, 1.0, 0.5, 1.0);
    DispersionModel disp = DispersionModel::renormalized(1.1);
    WavePacket h = default_wavepacket();
    Refinement ref = refine(h, 2.0, 4.0, sched, disp);

    // |grad E(P1) - grad E(P2)| = |P1 - P2| / m_ren for these models, and
    // center-to-center distances are at most sqrt(3)/2 (side1 - side2).
    const double side1 = ref.parent.cell_side();
    const double side2 = ref.child.cell_side();
    const double lipschitz = std::sqrt(3.0) / 2.0 * (side1 - side2) / 1.1;
    // sigma-dependent factors are off here, so the bound is exact up to
    // roundoff.
    double worst = 0.0;
    for (std::size_t c = 0; c < ref.child.size(); ++c) {
        const Cell& child = ref.child.cells()[c];
        const Cell& parent = ref.parent.cells()[ref.parent_of[c]];
        worst = std::max(worst, (child.velocity - parent.velocity).norm());
    }
    CHECK(worst <= lipschitz * (1.0 + 1e-12));
    CHECK(worst > 0.5 * lipschitz);  // the corner samples do reach the bound
}

TEST_SUITE_END();
