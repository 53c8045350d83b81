#pragma once

#include <vector>

namespace iss {

// One executed deal: the secret and each participant's share tuple.
// shares[p] holds participant p's components in a scheme-defined order.
struct Dealing {
    double secret = 0.0;
    std::vector<std::vector<double>> shares;

    // Scheme-specific annotations.
    int realized_k = 0;          // degree actually drawn, where applicable
    double truncation_gap = 0.0; // bound on the effect of finite truncation
};

} // namespace iss
