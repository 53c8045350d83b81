#include "iss/access.hpp"

#include <algorithm>
#include <istream>
#include <sstream>

#include "iss/errors.hpp"

namespace iss {
namespace {

bool contains(const std::set<int>& big, const std::set<int>& small) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

void check_members(int n, const std::set<int>& subset) {
    for (int p : subset)
        if (p < 0 || p >= n)
            throw UnknownParticipant("participant " + std::to_string(p) +
                                     " outside 0.." + std::to_string(n - 1));
}

} // namespace

AccessStructure::AccessStructure(int n, Rule rule, int k,
                                 std::vector<std::set<int>> base)
    : n_(n), rule_(rule), k_(k), base_(std::move(base)) {}

AccessStructure AccessStructure::from_base(int n_participants,
                                           std::vector<std::set<int>> base) {
    if (n_participants < 2)
        throw BadParameter("need at least 2 participants");
    if (base.empty())
        throw Trivial("empty base");
    for (const auto& a : base) {
        if (a.size() < 2)
            throw Trivial("base element must have at least 2 members");
        check_members(n_participants, a);
    }
    for (std::size_t i = 0; i < base.size(); ++i)
        for (std::size_t j = 0; j < base.size(); ++j)
            if (i != j && contains(base[i], base[j]))
                throw SpernerViolation("one base element contains another");
    return AccessStructure(n_participants, Rule::Base, 0, std::move(base));
}

AccessStructure AccessStructure::threshold(int n_participants, int k) {
    if (n_participants < 2 || k < 2 || k > n_participants)
        throw BadParameter("threshold k must be in 2..n");
    return AccessStructure(n_participants, Rule::Threshold, k, {});
}

AccessStructure AccessStructure::all_or_nothing(int n_participants) {
    if (n_participants < 2)
        throw BadParameter("need at least 2 participants");
    return AccessStructure(n_participants, Rule::AllOrNothing, 0, {});
}

AccessStructure AccessStructure::min_size(int n_participants, int m) {
    if (n_participants < 2 || m < 2 || m > n_participants)
        throw BadParameter("minsize m must be in 2..n");
    return AccessStructure(n_participants, Rule::MinSize, m, {});
}

bool AccessStructure::is_qualified(const std::set<int>& subset) const {
    check_members(n_, subset);
    switch (rule_) {
    case Rule::Threshold:
        return int(subset.size()) >= k_;
    case Rule::MinSize:
        return int(subset.size()) >= k_;
    case Rule::AllOrNothing:
        return int(subset.size()) == n_;
    case Rule::Base:
        for (const auto& a : base_)
            if (contains(subset, a))
                return true;
        return false;
    }
    return false;
}

std::vector<std::set<int>> AccessStructure::minimal_elements() const {
    std::vector<std::set<int>> out;
    switch (rule_) {
    case Rule::Base:
        return base_;
    case Rule::AllOrNothing: {
        std::set<int> all;
        for (int i = 0; i < n_; ++i)
            all.insert(i);
        out.push_back(std::move(all));
        return out;
    }
    case Rule::Threshold:
    case Rule::MinSize: {
        // all k-subsets of 0..n-1
        std::vector<int> pick(k_);
        for (int i = 0; i < k_; ++i)
            pick[i] = i;
        for (;;) {
            out.emplace_back(pick.begin(), pick.end());
            int i = k_ - 1;
            while (i >= 0 && pick[i] == n_ - k_ + i)
                --i;
            if (i < 0)
                break;
            pick[i] += 1;
            for (int j = i + 1; j < k_; ++j)
                pick[j] = pick[j - 1] + 1;
        }
        return out;
    }
    }
    return out;
}

std::vector<std::set<int>> AccessStructure::maximal_unqualified() const {
    if (n_ > 20)
        throw BadParameter("maximal_unqualified limited to 20 participants");
    std::vector<std::set<int>> out;
    for (unsigned long mask = 0; mask < (1ul << n_); ++mask) {
        std::set<int> f;
        for (int i = 0; i < n_; ++i)
            if (mask & (1ul << i))
                f.insert(i);
        if (is_qualified(f))
            continue;
        bool maximal = true;
        for (int p = 0; p < n_ && maximal; ++p) {
            if (f.count(p))
                continue;
            std::set<int> g = f;
            g.insert(p);
            if (!is_qualified(g))
                maximal = false;
        }
        if (maximal)
            out.push_back(std::move(f));
    }
    return out;
}

std::string AccessStructure::serialize() const {
    std::ostringstream out;
    switch (rule_) {
    case Rule::Threshold:
        out << "threshold:" << k_ << "\n";
        break;
    case Rule::MinSize:
        out << "minsize:" << k_ << "\n";
        break;
    case Rule::AllOrNothing:
        out << "all\n";
        break;
    case Rule::Base:
        for (const auto& a : base_) {
            bool first = true;
            for (int p : a) {
                if (!first)
                    out << ",";
                out << p;
                first = false;
            }
            out << "\n";
        }
        break;
    }
    return out.str();
}

AccessStructure AccessStructure::parse(std::istream& in, int n_participants) {
    std::vector<std::set<int>> base;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        lineno += 1;
        // trim
        while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
            line.pop_back();
        std::size_t start = line.find_first_not_of(' ');
        if (start == std::string::npos)
            continue;
        line = line.substr(start);
        if (line == "all") {
            return all_or_nothing(n_participants);
        }
        if (line.rfind("threshold:", 0) == 0 || line.rfind("minsize:", 0) == 0) {
            const bool thr = line[0] == 't';
            int value = 0;
            try {
                value = std::stoi(line.substr(line.find(':') + 1));
            } catch (const std::exception&) {
                throw ParseError("bad rule parameter", lineno);
            }
            return thr ? threshold(n_participants, value)
                       : min_size(n_participants, value);
        }
        std::set<int> elem;
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                elem.insert(std::stoi(tok));
            } catch (const std::exception&) {
                throw ParseError("bad participant index '" + tok + "'", lineno);
            }
        }
        if (elem.empty())
            throw ParseError("empty base element", lineno);
        base.push_back(std::move(elem));
    }
    return from_base(n_participants, std::move(base));
}

} // namespace iss
