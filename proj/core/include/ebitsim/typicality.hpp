#pragma once

#include <cstdint>
#include <vector>

#include "ebitsim/spectra.hpp"

namespace ebitsim {

/// Typical/atypical split of the k-classes of psi^N. A class is typical
/// when NS - c*sqrt(N) <= log2 C(N,k) <= NS + c*sqrt(N), boundaries
/// inclusive.
struct TypicalityPartition {
    std::int64_t N = 0;
    double S = 0.0;
    double c = 0.0;
    std::vector<bool> typical;  // indexed like the class list
    double typical_mass = 0.0;
    double atypical_mass = 0.0;
};

TypicalityPartition classify(const std::vector<TypeClass>& classes, double S, double c);

double atypical_mass(const TypicalityPartition& partition);

}  // namespace ebitsim
