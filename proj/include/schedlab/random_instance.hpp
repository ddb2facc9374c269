#pragma once

#include <cstdint>
#include <optional>

#include "schedlab/instance.hpp"

namespace schedlab {

/// Seeded test-instance generator; identical inputs give identical
/// instances on every platform (raw mt19937_64 draws, no distributions).
struct RandomSpec {
    int machines = 3;
    int jobs = 8;
    int p_max = 9;             // times uniform in 1..p_max
    int density_permille = 700; // eligibility probability per (machine, job)
    std::uint64_t seed = 0;
    bool balancing = false;     // cap eligibility at two machines per job
    std::optional<long long> gamma_band; // times uniform in [gamma, 3*gamma]
};

Instance random_instance(const RandomSpec& spec);

} // namespace schedlab
