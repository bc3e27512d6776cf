#include "bnkit/partition.hpp"

#include <cmath>
#include <stdexcept>

#include "bnkit/io.hpp"
#include "bnkit/numerics.hpp"

namespace bnkit {

int partition_level(double t, double epsilon) {
    if (!(t >= 1.0)) throw std::invalid_argument("partition_level: need t >= 1");
    // n = floor(log2 t^epsilon); nudge against representation error at the
    // dyadic thresholds t = 2^{n/epsilon}.
    const double x = epsilon * std::log2(t);
    int n = static_cast<int>(std::floor(x + 1e-12));
    return n < 0 ? 0 : n;
}

CellPartition::CellPartition(const WavePacket& h, double t, const CutoffSchedule& schedule,
                             const DispersionModel& dispersion)
    : t_(t) {
    level_ = partition_level(t, schedule.epsilon);
    sigma_ = schedule.sigma_t(t);
    const Box& support = h.support();
    const double side = h.side();
    const int n_per_axis = 1 << level_;
    cell_side_ = side / n_per_axis;
    cells_.reserve(static_cast<std::size_t>(n_per_axis) * n_per_axis * n_per_axis);
    std::size_t index = 0;
    for (int i = 0; i < n_per_axis; ++i)
        for (int j = 0; j < n_per_axis; ++j)
            for (int k = 0; k < n_per_axis; ++k) {
                Cell cell;
                cell.bounds.lo = support.lo + Vec3{i * cell_side_, j * cell_side_, k * cell_side_};
                cell.bounds.hi = cell.bounds.lo + Vec3{cell_side_, cell_side_, cell_side_};
                cell.center = (cell.bounds.lo + cell.bounds.hi) * 0.5;
                cell.mass = h.mass_in_box(cell.bounds);
                if (cell.mass <= 0.0) continue;  // cube outside supp h
                cell.velocity = dispersion.grad_energy(cell.center, sigma_);
                cell.index = index++;
                cells_.push_back(cell);
            }
}

double CellPartition::mass_sum() const {
    std::vector<double> m(cells_.size());
    for (std::size_t i = 0; i < cells_.size(); ++i) m[i] = cells_[i].mass;
    return pairwise_sum(m);
}

std::vector<std::size_t> Refinement::children_of(std::size_t parent_index) const {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < parent_of.size(); ++c)
        if (parent_of[c] == parent_index) out.push_back(c);
    return out;
}

Refinement refine(const WavePacket& h, double t1, double t2, const CutoffSchedule& schedule,
                  const DispersionModel& dispersion) {
    if (!(t2 > t1)) throw std::invalid_argument("refine: need t2 > t1");
    Refinement ref{CellPartition(h, t1, schedule, dispersion),
                   CellPartition(h, t2, schedule, dispersion),
                   {}};
    if (ref.child.level() < ref.parent.level())
        throw std::invalid_argument("refine: partitions are not nested");
    const Box& support = h.support();
    const double parent_side = ref.parent.cell_side();
    const int parent_axis = 1 << ref.parent.level();
    ref.parent_of.resize(ref.child.size());
    for (std::size_t c = 0; c < ref.child.size(); ++c) {
        const Vec3 center = ref.child.cells()[c].center;
        auto axis_index = [&](double x, double lo) {
            int i = static_cast<int>((x - lo) / parent_side);
            return std::min(std::max(i, 0), parent_axis - 1);
        };
        const int i = axis_index(center.x, support.lo.x);
        const int j = axis_index(center.y, support.lo.y);
        const int k = axis_index(center.z, support.lo.z);
        // Parent cells are stored in lexicographic (i, j, k) order with no
        // holes for the cubic default packet; fall back to a search if the
        // packet has dropped empty cubes.
        const std::size_t flat = (static_cast<std::size_t>(i) * parent_axis + j) * parent_axis + k;
        if (flat < ref.parent.size() &&
            ref.parent.cells()[flat].bounds.contains(center)) {
            ref.parent_of[c] = flat;
        } else {
            bool found = false;
            for (std::size_t pidx = 0; pidx < ref.parent.size(); ++pidx)
                if (ref.parent.cells()[pidx].bounds.contains(center)) {
                    ref.parent_of[c] = pidx;
                    found = true;
                    break;
                }
            if (!found) throw std::logic_error("refine: child cell has no parent");
        }
    }
    return ref;
}

std::string partition_to_csv(const CellPartition& partition) {
    CsvWriter csv({"j", "px", "py", "pz", "side", "mass", "vx", "vy", "vz"});
    for (const Cell& cell : partition.cells()) {
        csv.cell(cell.index).cell(cell.center.x).cell(cell.center.y).cell(cell.center.z)
            .cell(partition.cell_side()).cell(cell.mass).cell(cell.velocity.x)
            .cell(cell.velocity.y).cell(cell.velocity.z);
        csv.end_row();
    }
    return csv.str();
}

}  // namespace bnkit
