#include "ebitsim/typicality.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace ebitsim {

namespace {

// log2(2^a + 2^b), stable for widely separated magnitudes
double log2_add(double a, double b) {
    if (a == -std::numeric_limits<double>::infinity()) return b;
    if (b == -std::numeric_limits<double>::infinity()) return a;
    if (a < b) std::swap(a, b);
    return a + std::log2(1.0 + std::exp2(b - a));
}

}  // namespace

TypicalityPartition classify(const std::vector<TypeClass>& classes, double S, double c) {
    if (classes.empty()) throw std::invalid_argument("classify: empty class list");
    if (c <= 0.0) throw std::invalid_argument("classify: window coefficient must be positive");

    TypicalityPartition part;
    // every class's composition sums to N copies; read it off the first
    std::int64_t N = 0;
    for (auto n : classes.front().composition) N += n;

    part.N = N;
    part.S = S;
    part.c = c;
    part.typical.resize(classes.size());

    const double lo = static_cast<double>(N) * S - c * std::sqrt(static_cast<double>(N));
    const double hi = static_cast<double>(N) * S + c * std::sqrt(static_cast<double>(N));

    double log2_typ = -std::numeric_limits<double>::infinity();
    double log2_atyp = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < classes.size(); ++i) {
        const auto& tc = classes[i];
        const bool typ = tc.log2_multiplicity >= lo && tc.log2_multiplicity <= hi;
        part.typical[i] = typ;
        const double log2_mass = tc.log2_multiplicity + tc.log2_weight;
        if (typ)
            log2_typ = log2_add(log2_typ, log2_mass);
        else
            log2_atyp = log2_add(log2_atyp, log2_mass);
    }
    part.typical_mass = std::exp2(log2_typ);
    part.atypical_mass = std::exp2(log2_atyp);
    return part;
}

double atypical_mass(const TypicalityPartition& partition) { return partition.atypical_mass; }

}  // namespace ebitsim
