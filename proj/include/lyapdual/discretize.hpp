#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lyapdual/flow_graph.hpp"
#include "lyapdual/node_set.hpp"

namespace lyapdual {

// Smooth vector field on the 2- or 3-torus, from a small named catalog.
// Kinds:
//   linear        constant field (a, b[, c])
//   gradient      descent field of a trigonometric Morse potential,
//                 V = scale * (sin 2 pi x, sin 2 pi y); four rest points
//   homoclinic    rest point p = (0, 1/2) on the invariant circle y = 1/2,
//                 which is a loop leaving p, winding once in x, and
//                 returning; off the circle the field drifts toward the
//                 attracting circle y = 0
//   slowed_minimal irrational-slope linear field times a smooth factor that
//                 vanishes exactly on a closed disk
struct TorusField {
    uint32_t dim = 2;  // 2 or 3
    std::string kind;
    std::map<std::string, double> params;

    std::array<double, 3> eval(const std::array<double, 3>& x) const;
};

// Field by catalog name with defaulted parameters (overridable).
TorusField catalog_field(const std::string& name, uint32_t dim = 2,
                         const std::map<std::string, double>& params = {});

struct GridSpec {
    std::vector<uint32_t> resolution;  // cells per axis, each >= 8
    double step = 0.0;                 // integration step h > 0
    uint32_t samples = 5;              // sample points per cell, >= 4
    double epsilon = 0.0;              // box inflation, cell-diameter units
};

// One RK4 step from x in [0,1)^d: returns the wrapped endpoint and the
// integer lattice displacement of the lift.
struct FlowStep {
    std::array<double, 3> point{};
    std::array<int64_t, 3> displacement{};
};
FlowStep flow_step(const TorusField& field, const std::array<double, 3>& x, double h);

// Outer approximation of the time-h map: one node per cell, and an edge to
// every cell intersected by the inflated bounding box of the advanced sample
// points. Edge weights are the integer lattice displacements of the lifted
// motion; basis_rank = dim. Throws StepTooLarge if any sample moves more than
// half the fundamental domain along some axis.
FlowGraph build_graph(const TorusField& field, const GridSpec& grid);

// Cells whose sampled field magnitude stays <= threshold everywhere.
NodeSet mark_zero_set(const TorusField& field, const GridSpec& grid, double threshold);

}  // namespace lyapdual
