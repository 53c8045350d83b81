#include "doctest.h"

#include <set>
#include <sstream>
#include <vector>

#include "iss/access.hpp"
#include "iss/errors.hpp"

using namespace iss;

TEST_SUITE("access") {

TEST_CASE("threshold structure qualifies by size") {
    AccessStructure st = AccessStructure::threshold(5, 3);
    CHECK_FALSE(st.is_qualified({}));
    CHECK_FALSE(st.is_qualified({0, 4}));
    CHECK(st.is_qualified({0, 2, 4}));
    CHECK(st.is_qualified({0, 1, 2, 3, 4}));
}

TEST_CASE("threshold minimal elements are all k-subsets") {
    AccessStructure st = AccessStructure::threshold(5, 2);
    CHECK(st.minimal_elements().size() == 10);
}

TEST_CASE("all-or-nothing qualifies only the full set") {
    AccessStructure st = AccessStructure::all_or_nothing(4);
    CHECK(st.is_qualified({0, 1, 2, 3}));
    CHECK_FALSE(st.is_qualified({0, 1, 2}));
    auto maximal = st.maximal_unqualified();
    CHECK(maximal.size() == 4);
    for (const auto& s : maximal) CHECK(s.size() == 3);
}

TEST_CASE("base structure qualifies supersets of base elements") {
    AccessStructure st = AccessStructure::from_base(4, {{0, 1}, {2, 3}});
    CHECK(st.is_qualified({0, 1}));
    CHECK(st.is_qualified({0, 1, 2}));
    CHECK(st.is_qualified({2, 3}));
    CHECK_FALSE(st.is_qualified({0, 2}));
    CHECK_FALSE(st.is_qualified({1, 3}));
}

TEST_CASE("base must be an antichain") {
    CHECK_THROWS_AS(AccessStructure::from_base(4, {{0, 1}, {0, 1, 2}}), SpernerViolation);
}

TEST_CASE("maximal unqualified sets of a threshold structure") {
    AccessStructure st = AccessStructure::threshold(4, 2);
    auto maximal = st.maximal_unqualified();
    CHECK(maximal.size() == 4);
    for (const auto& s : maximal) CHECK(s.size() == 1);
}

TEST_CASE("serialize and parse round-trip preserves qualification") {
    std::vector<AccessStructure> cases;
    cases.push_back(AccessStructure::threshold(5, 2));
    cases.push_back(AccessStructure::min_size(6, 4));
    cases.push_back(AccessStructure::all_or_nothing(3));
    cases.push_back(AccessStructure::from_base(5, {{0, 1}, {1, 2}, {3, 4}}));
    for (const auto& st : cases) {
        std::istringstream in(st.serialize());
        AccessStructure back = AccessStructure::parse(in, st.participants());
        for (unsigned mask = 0; mask < (1u << st.participants()); ++mask) {
            std::set<int> s;
            for (int i = 0; i < st.participants(); ++i) {
                if (mask & (1u << i)) s.insert(i);
            }
            CHECK(st.is_qualified(s) == back.is_qualified(s));
        }
    }
}

}
