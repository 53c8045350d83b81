#include "iss/schemes_uniform.hpp"

#include <cmath>

#include "iss/errors.hpp"
#include "iss/numerics.hpp"

namespace iss {

Dealing modsum_deal(const ModSumScheme& s, Stream& rng) {
    if (s.n < 2)
        throw BadParameter("modsum needs n >= 2");
    Dealing d;
    d.shares.resize(s.n);
    double sum = 0.0;
    for (int i = 0; i < s.n; ++i) {
        const double h = rng.uniform01();
        d.shares[i] = {h};
        sum += h;
    }
    d.secret = mod1(sum);
    return d;
}

double modsum_recover(const ModSumScheme& s, const std::vector<double>& all_shares) {
    if (int(all_shares.size()) != s.n)
        throw WrongShareCount("modsum recovery needs all n shares");
    double sum = 0.0;
    for (double h : all_shares)
        sum += h;
    return mod1(sum);
}

namespace {

// Positions of participant p's tuple components: one per base element
// containing p, ordered by base index.
std::vector<std::set<int>> composite_base(const CompositeScheme& s) {
    if (s.structure.rule() != AccessStructure::Rule::Base)
        throw BadParameter("composite scheme requires a base-given structure");
    return s.structure.minimal_elements();
}

} // namespace

Dealing composite_deal(const CompositeScheme& s, Stream& rng) {
    const auto base = composite_base(s);
    const int n = s.structure.participants();
    Dealing d;
    d.secret = rng.uniform01();
    d.shares.resize(n);
    for (const auto& elem : base) {
        // Deal the secret among elem: all but the last member draw fresh
        // uniforms, the last takes up the slack mod 1.
        double partial = 0.0;
        std::size_t seen = 0;
        for (int p : elem) {
            seen += 1;
            double h;
            if (seen < elem.size()) {
                h = rng.uniform01();
                partial += h;
            } else {
                h = mod1(d.secret - partial);
            }
            d.shares[p].push_back(h);
        }
    }
    return d;
}

double composite_recover(const CompositeScheme& s, const std::set<int>& subset,
                         const std::vector<std::vector<double>>& shares) {
    const auto base = composite_base(s);
    // Find the first base element inside the subset and sum its components.
    for (std::size_t b = 0; b < base.size(); ++b) {
        bool inside = true;
        for (int p : base[b])
            if (!subset.count(p)) {
                inside = false;
                break;
            }
        if (!inside)
            continue;
        double sum = 0.0;
        for (int p : base[b]) {
            // Component position = rank of b among base elements containing p.
            std::size_t pos = 0;
            for (std::size_t c = 0; c < b; ++c)
                if (base[c].count(p))
                    pos += 1;
            if (p >= int(shares.size()) || pos >= shares[p].size())
                throw WrongShareCount("missing share component for participant " +
                                      std::to_string(p));
            sum += shares[p][pos];
        }
        return mod1(sum);
    }
    throw NotQualified("subset contains no minimal qualified set");
}

Dealing slope_deal(const SlopeScheme& s, Stream& rng) {
    if (s.labels.size() < 2)
        throw BadParameter("slope scheme needs at least 2 labels");
    for (std::size_t i = 0; i < s.labels.size(); ++i) {
        if (!(s.labels[i] > 0.0 && s.labels[i] < 1.0))
            throw BadParameter("slope labels must lie in (0,1)");
        for (std::size_t j = i + 1; j < s.labels.size(); ++j)
            if (s.labels[i] == s.labels[j])
                throw BadParameter("slope labels must be distinct");
    }
    Dealing d;
    d.secret = rng.uniform01();
    const double r = rng.uniform01();
    d.shares.resize(s.labels.size());
    for (std::size_t i = 0; i < s.labels.size(); ++i)
        d.shares[i] = {mod1(r + d.secret * s.labels[i])};
    return d;
}

double slope_recover(const SlopeScheme&, std::pair<double, double> share_p,
                     std::pair<double, double> share_q) {
    if (share_p.first == share_q.first)
        throw DegeneratePair("slope recovery needs two distinct labels");
    if (share_p.first > share_q.first)
        std::swap(share_p, share_q);
    // s*(q-p) lands in [0,1), so the mod-1 difference is exact.
    return mod1(share_q.second - share_p.second) / (share_q.first - share_p.first);
}

Dealing ramp_deal(const DyadicRampScheme& s, Stream& rng) {
    if (s.n < 2)
        throw BadParameter("ramp scheme needs n >= 2");
    Dealing d;
    d.shares.resize(s.n);
    double secret = 0.0;
    double w = 1.0;
    for (int i = 0; i < s.n; ++i) {
        w *= 0.5;
        const double h = rng.uniform01();
        d.shares[i] = {h};
        secret += h * w;
    }
    d.secret = secret;
    d.truncation_gap = w; // 2^-n
    return d;
}

double ramp_recover(const DyadicRampScheme& s, const std::vector<double>& all_shares) {
    if (int(all_shares.size()) != s.n)
        throw WrongShareCount("ramp recovery needs all n shares");
    double secret = 0.0;
    double w = 1.0;
    for (int i = 0; i < s.n; ++i) {
        w *= 0.5;
        secret += all_shares[i] * w;
    }
    return secret;
}

std::pair<double, double> ramp_interval(const DyadicRampScheme& s,
                                        const std::vector<double>& shares,
                                        int missing_index) {
    if (int(shares.size()) != s.n)
        throw WrongShareCount("interval needs the full share vector");
    if (missing_index < 0 || missing_index >= s.n)
        throw BadParameter("missing index out of range");
    double low = 0.0;
    double w = 1.0;
    for (int i = 0; i < s.n; ++i) {
        w *= 0.5;
        if (i != missing_index)
            low += shares[i] * w;
    }
    return {low, low + std::ldexp(1.0, -(missing_index + 1))};
}

} // namespace iss
