#include "schedlab/random_instance.hpp"

#include <random>
#include <stdexcept>

namespace schedlab {

namespace {

Rational draw_time(std::mt19937_64& rng, const RandomSpec& spec) {
    if (spec.gamma_band) {
        const long long gamma = *spec.gamma_band;
        return Rational(gamma + static_cast<long long>(rng() % (2 * gamma + 1)));
    }
    return Rational(1 + static_cast<int>(rng() % spec.p_max));
}

} // namespace

Instance random_instance(const RandomSpec& spec) {
    if (spec.machines <= 0 || spec.jobs <= 0) throw std::invalid_argument("empty instance");
    if (spec.density_permille <= 0 || spec.density_permille > 1000)
        throw std::invalid_argument("density must lie in (0, 1]");
    if (!spec.gamma_band && spec.p_max <= 0) throw std::invalid_argument("p_max must be positive");
    if (spec.gamma_band && *spec.gamma_band <= 0)
        throw std::invalid_argument("gamma must be positive");

    std::mt19937_64 rng(spec.seed);
    std::vector<std::vector<Instance::Entry>> rows(spec.jobs);

    for (int j = 0; j < spec.jobs; ++j) {
        auto& row = rows[j];
        if (spec.balancing) {
            const int first = static_cast<int>(rng() % spec.machines);
            row.emplace_back(first, draw_time(rng, spec));
            const bool two = spec.machines > 1 &&
                             rng() % 1000 < static_cast<std::uint64_t>(spec.density_permille);
            if (two) {
                const int second =
                    (first + 1 + static_cast<int>(rng() % (spec.machines - 1))) % spec.machines;
                row.emplace_back(second, draw_time(rng, spec));
            }
        } else {
            while (row.empty()) { // resample until the job is schedulable
                for (int i = 0; i < spec.machines; ++i) {
                    if (rng() % 1000 < static_cast<std::uint64_t>(spec.density_permille))
                        row.emplace_back(i, draw_time(rng, spec));
                }
            }
        }
    }
    return Instance(spec.machines, spec.jobs, std::move(rows));
}

} // namespace schedlab
