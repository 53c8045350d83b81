#pragma once

#include <set>
#include <utility>
#include <vector>

#include "iss/access.hpp"
#include "iss/dealing.hpp"
#include "iss/rng.hpp"

namespace iss {

// Everyone's shares are iid uniform on [0,1); the secret is the mod-1 sum,
// so only the full set learns anything at all.
struct ModSumScheme {
    int n = 2;
};

Dealing modsum_deal(const ModSumScheme&, Stream& rng);
double modsum_recover(const ModSumScheme&, const std::vector<double>& all_shares);

// One independent mod-sum dealing of the same secret per base element of a
// finite-base structure. A participant's share tuple has one component per
// base element it belongs to, in base order.
struct CompositeScheme {
    AccessStructure structure;
};

Dealing composite_deal(const CompositeScheme&, Stream& rng);
double composite_recover(const CompositeScheme&, const std::set<int>& subset,
                         const std::vector<std::vector<double>>& shares);

// Share of the participant labeled p is r + s*p mod 1; two labels solve for s.
struct SlopeScheme {
    std::vector<double> labels; // distinct reals in (0,1)
};

Dealing slope_deal(const SlopeScheme&, Stream& rng);
double slope_recover(const SlopeScheme&, std::pair<double, double> share_p,
                     std::pair<double, double> share_q);

// Secret assembled from binary-weighted uniform digits h_i / 2^i. Finite
// truncation at n participants; the dealt record carries the 2^-n gap bound.
struct DyadicRampScheme {
    int n = 2;
};

Dealing ramp_deal(const DyadicRampScheme&, Stream& rng);
double ramp_recover(const DyadicRampScheme&, const std::vector<double>& all_shares);

// Interval the secret is pinned to when every share except missing_index is
// on the table: [low, low + 2^-(missing_index+1)).
std::pair<double, double> ramp_interval(const DyadicRampScheme&,
                                        const std::vector<double>& shares,
                                        int missing_index);

} // namespace iss
