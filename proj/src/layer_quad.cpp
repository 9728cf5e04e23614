#include "layer_quad.hpp"

#include <cmath>

namespace flowlab {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
}  // namespace

std::vector<double> arclength_coords(const BoundaryFrame& frame) {
    std::vector<double> s(frame.ds.size(), 0.0);
    for (std::size_t c = 0; c < frame.per_component.size(); ++c) {
        const std::size_t off = frame.offset[c];
        const std::size_t n = frame.per_component[c].size();
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            s[off + i] = acc;
            acc += frame.ds[off + i];
        }
    }
    return s;
}

LayerQuadrature LayerQuadrature::build(const BoundaryFrame& frame, const GreensEvaluator& g) {
    const std::size_t n = frame.ds.size();
    LayerQuadrature out;
    out.a.resize(n, n);
    const auto s = arclength_coords(frame);
    const double reg = g.coincidence_regular();

    std::vector<double> log_row_sum(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double gij = g.value_fast_diff(wrap_diff(frame.points[i], frame.points[j]));
            out.a(i, j) = frame.ds[j] * gij;
            out.a(j, i) = frame.ds[i] * gij;
            if (frame.component_of[i] == frame.component_of[j]) {
                const double len = frame.per_component[frame.component_of[i]].length;
                const double rho =
                    std::log(len / kPi * std::abs(std::sin(kPi * (s[i] - s[j]) / len)));
                log_row_sum[i] += frame.ds[j] * rho;
                log_row_sum[j] += frame.ds[i] * rho;
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double len = frame.per_component[frame.component_of[i]].length;
        const double exact_log = len * std::log(len / kTwoPi);
        out.a(i, i) = frame.ds[i] * reg - (exact_log - log_row_sum[i]) / kTwoPi;
    }
    return out;
}

}  // namespace flowlab
