#pragma once

#include "crnparam/linalg.hpp"

#include <cstddef>
#include <vector>

namespace crnparam {

struct Ray {
    std::vector<mpz_class> coordinates;  // nonnegative, primitive
    std::vector<std::size_t> support;    // sorted reaction indices

    bool operator==(const Ray&) const = default;
};

struct FluxModeSet {
    std::vector<Ray> modes;  // sorted by support
    std::size_t reactions = 0;
    bool unitary = false;
    bool covers = false;
};

// Extreme rays of {v >= 0 : N v = 0}.
FluxModeSet compute_efms(const RationalMatrix& n);
void efm_properties(FluxModeSet& set);

}  // namespace crnparam
