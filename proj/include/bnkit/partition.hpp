#ifndef BNKIT_PARTITION_HPP
#define BNKIT_PARTITION_HPP

#include <vector>

#include "bnkit/dispersion.hpp"
#include "bnkit/softphoton.hpp"
#include "bnkit/vec3.hpp"

namespace bnkit {

/// Dyadic level of the cell partition at time t: n with
/// (2^n)^{1/epsilon} <= t < (2^{n+1})^{1/epsilon}.
int partition_level(double t, double epsilon);

struct Cell {
    std::size_t index = 0;
    Vec3 center;
    Box bounds;
    double mass = 0.0;   // int_cell |h|^2 d^3P
    Vec3 velocity;       // grad E^{sigma_t}(center)
};

/// Time-indexed dyadic partition of the wave-packet support into cubes of
/// side L / 2^n. Immutable after construction.
class CellPartition {
public:
    CellPartition(const WavePacket& h, double t, const CutoffSchedule& schedule,
                  const DispersionModel& dispersion);

    double t() const { return t_; }
    int level() const { return level_; }
    double cell_side() const { return cell_side_; }
    const std::vector<Cell>& cells() const { return cells_; }
    std::size_t size() const { return cells_.size(); }
    double mass_sum() const;
    double sigma() const { return sigma_; }

private:
    double t_ = 1.0;
    int level_ = 0;
    double cell_side_ = 0.0;
    double sigma_ = 0.0;
    std::vector<Cell> cells_;
};

/// Containment bookkeeping between a partition at t1 and its refinement at
/// t2 > t1: child cell -> parent cell, exact by dyadic construction.
struct Refinement {
    CellPartition parent;
    CellPartition child;
    std::vector<std::size_t> parent_of;  // indexed by child cell

    std::vector<std::size_t> children_of(std::size_t parent_index) const;
};

Refinement refine(const WavePacket& h, double t1, double t2, const CutoffSchedule& schedule,
                  const DispersionModel& dispersion);

/// CSV dump: j, center, side, mass, velocity per cell.
std::string partition_to_csv(const CellPartition& partition);

}  // namespace bnkit

#endif
