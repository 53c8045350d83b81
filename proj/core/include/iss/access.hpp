#pragma once

#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace iss {

struct ParticipantId {
    int index = 0;
    std::optional<double> label; // scheme-specific tag, e.g. a real position
};

// Monotone family of qualified subsets over participants 0..n-1, given
// either by a Sperner base of minimal qualified sets or by a rule.
class AccessStructure {
  public:
    enum class Rule { Base, Threshold, AllOrNothing, MinSize };

    static AccessStructure from_base(int n_participants,
                                     std::vector<std::set<int>> base);
    static AccessStructure threshold(int n_participants, int k);
    static AccessStructure all_or_nothing(int n_participants);
    static AccessStructure min_size(int n_participants, int m);

    int participants() const { return n_; }
    Rule rule() const { return rule_; }
    int rule_parameter() const { return k_; }

    bool is_qualified(const std::set<int>& subset) const;
    std::vector<std::set<int>> minimal_elements() const;

    // Inclusion-maximal unqualified subsets, by exhaustive scan. The scan is
    // exponential in n; callers keep n small (guarded at 20).
    std::vector<std::set<int>> maximal_unqualified() const;

    // One base element per line with comma-separated indices, or a single
    // rule line: threshold:k, all, minsize:m.
    std::string serialize() const;
    static AccessStructure parse(std::istream& in, int n_participants);

  private:
    AccessStructure(int n, Rule rule, int k, std::vector<std::set<int>> base);

    int n_;
    Rule rule_;
    int k_; // threshold / min-size parameter
    std::vector<std::set<int>> base_;
};

} // namespace iss
