#include <algorithm>
#include <cmath>
#include <string>

#include "fdrum/errors.hpp"
#include "fdrum/spectral.hpp"

namespace fdrum::spectral {

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

CountingSeries counting_series(const std::vector<double>& eigenvalues,
                               double area, double dimension, double t_max) {
    if (eigenvalues.empty()) throw ConfigError("empty spectrum");
    if (!(area > 0.0)) throw ConfigError("area must be positive");
    if (!(dimension >= 1.0 && dimension <= 2.0))
        throw ConfigError("dimension must lie in [1, 2]");
    if (!(t_max > 0.0)) throw ConfigError("t_max must be positive");

    std::vector<double> evs = eigenvalues;
    std::sort(evs.begin(), evs.end());

    CountingSeries out;
    out.beta = dimension / 2.0;
    out.truncated = t_max > evs.back();
    const double t_end = std::min(t_max, evs.back());

    std::vector<double> grid;
    grid.push_back(0.0);
    grid.push_back(t_end);
    for (std::size_t i = 0; i < evs.size(); ++i) {
        if (evs[i] < 0.0 || evs[i] > t_end) continue;
        grid.push_back(evs[i]);
        const double prev = i == 0 ? 0.0 : std::max(evs[i - 1], 0.0);
        if (prev < evs[i]) grid.push_back(0.5 * (prev + evs[i]));
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    out.t = grid;
    const std::size_t m = grid.size();
    out.n.resize(m);
    out.weyl.resize(m);
    out.d1.resize(m);
    out.d2.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double t = grid[i];
        out.n[i] = static_cast<int>(
            std::upper_bound(evs.begin(), evs.end(), t) - evs.begin());
        out.weyl[i] = area * t / (4.0 * kPi);
        out.d1[i] = out.n[i] - out.weyl[i];
        out.d2[i] = t > 0.0 ? out.d1[i] / std::pow(t, out.beta) : 0.0;
    }
    return out;
}

CountingSeries counting_series(const fem::Spectrum& spec, double area,
                               double dimension, double t_max) {
    return counting_series(spec.eigenvalues, area, dimension, t_max);
}

std::vector<LabeledValue> union_spectrum(
    const std::vector<UnionPart>& parts) {
    if (parts.empty()) throw ConfigError("no spectra to merge");
    for (const UnionPart& p : parts) {
        if (p.spectrum == nullptr) throw ConfigError("null spectrum part");
        if (p.multiplicity < 1)
            throw ConfigError("multiplicity must be at least 1");
        if (!p.spectrum->meta.bc.empty() && p.spectrum->meta.bc != "dirichlet")
            throw ConfigError("union parts must be Dirichlet spectra");
    }

    std::vector<LabeledValue> merged;
    for (const UnionPart& p : parts)
        for (int rep = 0; rep < p.multiplicity; ++rep)
            for (double ev : p.spectrum->eigenvalues)
                merged.push_back({ev, p.label});
    std::stable_sort(merged.begin(), merged.end(),
                     [](const LabeledValue& a, const LabeledValue& b) {
                         return a.eigenvalue < b.eigenvalue;
                     });
    return merged;
}

}  // namespace fdrum::spectral
