#include "lyapdual/discretize.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "lyapdual/errors.hpp"
#include "lyapdual/rational.hpp"

namespace lyapdual {

namespace {

constexpr double TAU = 6.283185307179586476925286766559;

double param(const std::map<std::string, double>& p, const std::string& name, double fallback) {
    auto it = p.find(name);
    return it == p.end() ? fallback : it->second;
}

double wrap01(double x) { return x - std::floor(x); }

// distance on the torus, per-axis shortest representative
double periodic_dist(const std::array<double, 3>& x, const std::array<double, 3>& c,
                     uint32_t dim) {
    double sum = 0.0;
    for (uint32_t i = 0; i < dim; ++i) {
        double d = std::fabs(x[i] - c[i]);
        d = std::min(d, 1.0 - d);
        sum += d * d;
    }
    return std::sqrt(sum);
}

}  // namespace

std::array<double, 3> TorusField::eval(const std::array<double, 3>& pt) const {
    std::array<double, 3> x{wrap01(pt[0]), wrap01(pt[1]), dim == 3 ? wrap01(pt[2]) : 0.0};
    std::array<double, 3> v{0.0, 0.0, 0.0};
    if (kind == "linear") {
        v[0] = param(params, "a", 1.0);
        v[1] = param(params, "b", 0.0);
        if (dim == 3) v[2] = param(params, "c", 0.0);
    } else if (kind == "gradient") {
        double s = param(params, "scale", 1.0);
        v[0] = s * std::sin(TAU * x[0]);
        v[1] = s * std::sin(TAU * x[1]);
        if (dim == 3) v[2] = s * std::sin(TAU * x[2]);
    } else if (kind == "homoclinic") {
        // rest point (0, 1/2); the circle y = 1/2 is an invariant loop
        // winding once in x, and y = 0 attracts everything off it
        double c = param(params, "c", 1.0);
        v[0] = 1.0 - std::cos(TAU * x[0]) * (1.0 - std::cos(TAU * x[1])) * 0.5;
        v[1] = -c * std::sin(TAU * x[1]);
    } else if (kind == "slowed_minimal") {
        std::array<double, 3> dir{param(params, "a", 1.0),
                                  param(params, "b", 0.61803398874989484820),
                                  param(params, "c", 0.0)};
        std::array<double, 3> center{param(params, "cx", 0.5), param(params, "cy", 0.5),
                                     param(params, "cz", 0.5)};
        double radius = param(params, "radius", 0.25);
        double width = param(params, "width", 0.15);
        double t = (periodic_dist(x, center, dim) - radius) / width;
        t = std::clamp(t, 0.0, 1.0);
        double factor = t * t * (3.0 - 2.0 * t);  // 0 exactly on the disk
        for (uint32_t i = 0; i < dim; ++i) v[i] = factor * dir[i];
    } else {
        throw std::invalid_argument("unknown field kind: " + kind);
    }
    return v;
}

TorusField catalog_field(const std::string& name, uint32_t dim,
                         const std::map<std::string, double>& params) {
    static const std::map<std::string, std::set<std::string>> allowed = {
        {"linear", {"a", "b", "c"}},
        {"gradient", {"scale"}},
        {"homoclinic", {"c"}},
        {"slowed_minimal", {"a", "b", "c", "cx", "cy", "cz", "radius", "width"}},
    };
    auto it = allowed.find(name);
    if (it == allowed.end()) throw std::invalid_argument("unknown catalog field: " + name);
    if (dim != 2 && dim != 3) throw std::invalid_argument("field dimension must be 2 or 3");
    if (name == "homoclinic" && dim != 2)
        throw std::invalid_argument("the homoclinic field is planar (dim 2)");
    for (const auto& [key, ignored] : params) {
        (void)ignored;
        if (!it->second.count(key))
            throw std::invalid_argument("field " + name + " has no parameter " + key);
    }
    if (name == "slowed_minimal" && param(params, "width", 0.15) <= 0.0)
        throw std::invalid_argument("slowed_minimal width must be positive");
    TorusField f;
    f.dim = dim;
    f.kind = name;
    f.params = params;
    return f;
}

FlowStep flow_step(const TorusField& field, const std::array<double, 3>& x, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("step must be positive");
    auto add = [&](const std::array<double, 3>& p, const std::array<double, 3>& d, double c) {
        std::array<double, 3> r{};
        for (uint32_t i = 0; i < field.dim; ++i) r[i] = p[i] + c * d[i];
        return r;
    };
    std::array<double, 3> k1 = field.eval(x);
    std::array<double, 3> k2 = field.eval(add(x, k1, h * 0.5));
    std::array<double, 3> k3 = field.eval(add(x, k2, h * 0.5));
    std::array<double, 3> k4 = field.eval(add(x, k3, h));
    FlowStep out;
    for (uint32_t i = 0; i < field.dim; ++i) {
        double raw = x[i] + h * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) / 6.0;
        double fl = std::floor(raw);
        out.displacement[i] = static_cast<int64_t>(fl);
        out.point[i] = raw - fl;
    }
    return out;
}

namespace {

void check_grid(const TorusField& field, const GridSpec& grid) {
    if (grid.resolution.size() != field.dim)
        throw std::invalid_argument("resolution must list one entry per axis");
    for (uint32_t r : grid.resolution)
        if (r < 8) throw std::invalid_argument("resolution must be at least 8 per axis");
    if (!(grid.step > 0.0)) throw std::invalid_argument("step must be positive");
    if (grid.samples < 4) throw std::invalid_argument("at least 4 samples per cell");
    if (grid.epsilon < 0.0) throw std::invalid_argument("epsilon must be nonnegative");
}

// Deterministic sample points of the closed cell [lo, lo+size]: corners in
// lexicographic order, then the center, then interior diagonal points.
std::vector<std::array<double, 3>> cell_samples(const std::array<double, 3>& lo,
                                                const std::array<double, 3>& size, uint32_t dim,
                                                uint32_t samples) {
    std::vector<std::array<double, 3>> pts;
    uint32_t corners = 1u << dim;
    for (uint32_t mask = 0; mask < corners && pts.size() < samples; ++mask) {
        std::array<double, 3> p{};
        for (uint32_t i = 0; i < dim; ++i) p[i] = lo[i] + ((mask >> i) & 1 ? size[i] : 0.0);
        pts.push_back(p);
    }
    uint32_t extra = samples > pts.size() ? samples - static_cast<uint32_t>(pts.size()) : 0;
    for (uint32_t j = 1; j <= extra; ++j) {
        double t = static_cast<double>(j) / (extra + 1.0);
        std::array<double, 3> p{};
        for (uint32_t i = 0; i < dim; ++i) p[i] = lo[i] + t * size[i];
        pts.push_back(p);
    }
    return pts;
}

int64_t floordiv(int64_t a, int64_t b) {
    int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace

FlowGraph build_graph(const TorusField& field, const GridSpec& grid) {
    check_grid(field, grid);
    const uint32_t d = field.dim;
    std::array<int64_t, 3> res{1, 1, 1};
    std::array<double, 3> size{0.0, 0.0, 0.0};
    uint64_t total = 1;
    for (uint32_t i = 0; i < d; ++i) {
        res[i] = grid.resolution[i];
        size[i] = 1.0 / static_cast<double>(res[i]);
        total *= grid.resolution[i];
    }
    double diam2 = 0.0;
    for (uint32_t i = 0; i < d; ++i) diam2 += size[i] * size[i];
    const double inflate = grid.epsilon * std::sqrt(diam2);

    auto cell_id = [&](const std::array<int64_t, 3>& idx) {
        int64_t id = 0;
        for (uint32_t i = 0; i < d; ++i) id = id * res[i] + idx[i];
        return id;
    };

    FlowGraph g(d);
    std::array<int64_t, 3> idx{0, 0, 0};
    for (uint64_t n = 0; n < total; ++n) {
        uint64_t rest = n;
        for (uint32_t i = d; i-- > 0;) {
            idx[i] = static_cast<int64_t>(rest % static_cast<uint64_t>(res[i]));
            rest /= static_cast<uint64_t>(res[i]);
        }
        std::vector<int64_t> coords(idx.begin(), idx.begin() + d);
        g.add_node(static_cast<NodeId>(n), coords);
    }

    for (uint64_t n = 0; n < total; ++n) {
        uint64_t rest = n;
        for (uint32_t i = d; i-- > 0;) {
            idx[i] = static_cast<int64_t>(rest % static_cast<uint64_t>(res[i]));
            rest /= static_cast<uint64_t>(res[i]);
        }
        std::array<double, 3> lo{0.0, 0.0, 0.0};
        for (uint32_t i = 0; i < d; ++i) lo[i] = static_cast<double>(idx[i]) * size[i];

        std::array<double, 3> bb_lo{}, bb_hi{};
        bool first = true;
        for (const auto& s : cell_samples(lo, size, d, grid.samples)) {
            // lift bookkeeping: feed the wrapped point to the integrator and
            // restore the sample's own integer offset afterwards
            std::array<double, 3> wrapped{};
            std::array<double, 3> base{};
            for (uint32_t i = 0; i < d; ++i) {
                base[i] = std::floor(s[i]);
                wrapped[i] = s[i] - base[i];
            }
            FlowStep st = flow_step(field, wrapped, grid.step);
            for (uint32_t i = 0; i < d; ++i) {
                double raw = base[i] + st.point[i] + static_cast<double>(st.displacement[i]);
                if (std::fabs(raw - s[i]) > 0.5)
                    throw StepTooLarge("a sample moved more than half the domain along axis " +
                                       std::to_string(i) + "; reduce the step");
                if (first || raw < bb_lo[i]) bb_lo[i] = raw;
                if (first || raw > bb_hi[i]) bb_hi[i] = raw;
            }
            first = false;
        }

        std::array<int64_t, 3> k_lo{0, 0, 0}, k_hi{0, 0, 0};
        for (uint32_t i = 0; i < d; ++i) {
            double a = (bb_lo[i] - inflate) * static_cast<double>(res[i]);
            double b = (bb_hi[i] + inflate) * static_cast<double>(res[i]);
            k_lo[i] = static_cast<int64_t>(std::floor(a));
            k_hi[i] = static_cast<int64_t>(std::ceil(b)) - 1;
            if (k_hi[i] < k_lo[i]) k_hi[i] = k_lo[i];
        }

        std::array<int64_t, 3> k = k_lo;
        for (;;) {
            std::array<int64_t, 3> target{0, 0, 0};
            std::vector<Rat> weight(d);
            for (uint32_t i = 0; i < d; ++i) {
                int64_t q = floordiv(k[i], res[i]);
                target[i] = k[i] - q * res[i];
                weight[i] = Rat(static_cast<long>(q));
            }
            g.add_edge(static_cast<NodeId>(n), cell_id(target), weight);
            uint32_t axis = d;
            while (axis-- > 0) {
                if (k[axis] < k_hi[axis]) {
                    ++k[axis];
                    break;
                }
                k[axis] = k_lo[axis];
            }
            if (axis == UINT32_MAX) break;
        }
    }
    g.canonicalize_edges();
    return g;
}

NodeSet mark_zero_set(const TorusField& field, const GridSpec& grid, double threshold) {
    check_grid(field, grid);
    if (!(threshold > 0.0)) throw std::invalid_argument("threshold must be positive");
    const uint32_t d = field.dim;
    std::array<int64_t, 3> res{1, 1, 1};
    std::array<double, 3> size{0.0, 0.0, 0.0};
    uint64_t total = 1;
    for (uint32_t i = 0; i < d; ++i) {
        res[i] = grid.resolution[i];
        size[i] = 1.0 / static_cast<double>(res[i]);
        total *= grid.resolution[i];
    }
    NodeSet out(static_cast<uint32_t>(total));
    std::array<int64_t, 3> idx{0, 0, 0};
    for (uint64_t n = 0; n < total; ++n) {
        uint64_t rest = n;
        for (uint32_t i = d; i-- > 0;) {
            idx[i] = static_cast<int64_t>(rest % static_cast<uint64_t>(res[i]));
            rest /= static_cast<uint64_t>(res[i]);
        }
        std::array<double, 3> lo{0.0, 0.0, 0.0};
        for (uint32_t i = 0; i < d; ++i) lo[i] = static_cast<double>(idx[i]) * size[i];
        double worst = 0.0;
        for (const auto& s : cell_samples(lo, size, d, grid.samples)) {
            std::array<double, 3> v = field.eval(s);
            double mag2 = 0.0;
            for (uint32_t i = 0; i < d; ++i) mag2 += v[i] * v[i];
            worst = std::max(worst, std::sqrt(mag2));
        }
        if (worst <= threshold) out.insert(static_cast<uint32_t>(n));
    }
    return out;
}

}  // namespace lyapdual
