#include "doctest.h"

#include <cmath>
#include <map>
#include <sstream>
#include <vector>

#include "iss/errors.hpp"
#include "iss/hilbert.hpp"
#include "iss/rng.hpp"
#include "iss/schemes_gauss.hpp"

using namespace iss;

namespace {

HilbertProgram plane_program() {
    return make_program(2, {1.0, 0.0}, {{0, {{1.0, 1.0}}}, {1, {{0.0, 1.0}}}});
}

} // namespace

TEST_SUITE("hilbert") {

TEST_CASE("plane example splits the goal as expected") {
    HilbertProgram prog = plane_program();

    auto [alone_ok, alone] = qualify(prog, {0});
    CHECK_FALSE(alone_ok);
    CHECK(alone.v[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(alone.v[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(alone.w[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(alone.w[1] == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(alone.residual_variance == doctest::Approx(0.5).epsilon(1e-12));

    auto [both_ok, both] = qualify(prog, {0, 1});
    CHECK(both_ok);
    CHECK(both.residual_variance <= 1e-12);
}

TEST_CASE("plane example recovery is the difference of the shares") {
    HilbertProgram prog = plane_program();
    std::map<int, std::vector<double>> shares{{0, {3.25}}, {1, {1.5}}};
    CHECK(recover(prog, {0, 1}, shares) == doctest::Approx(1.75).epsilon(1e-12));
    CHECK_THROWS_AS(recover(prog, {0}, shares), NotQualified);
}

TEST_CASE("linear estimate works without the qualification gate") {
    HilbertProgram prog = plane_program();
    std::map<int, std::vector<double>> shares{{0, {3.0}}, {1, {1.5}}};
    // Best coefficient on the single spanning vector (1,1) is 1/2.
    CHECK(linear_estimate(prog, {0}, shares) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(linear_estimate(prog, {0, 1}, shares) ==
          doctest::Approx(recover(prog, {0, 1}, shares)).epsilon(1e-12));
}

TEST_CASE("threshold program residual matches the conditional law") {
    std::vector<double> labels{0.7, 1.9, 2.4};
    HilbertProgram prog = program_from_threshold(3, labels);

    auto [full_ok, full] = qualify(prog, {0, 1, 2});
    CHECK(full_ok);
    CHECK(full.residual_variance <= 1e-12);

    auto [two_ok, two] = qualify(prog, {0, 1});
    CHECK_FALSE(two_ok);
    GaussThresholdScheme sch = make_gauss_threshold(3, 1.0, labels, false);
    GaussConditional cond = gauss_conditional(sch, {{0.7, 0.0}, {1.9, 0.0}});
    CHECK(two.residual_variance == doctest::Approx(cond.law.variance).epsilon(1e-8));
}

TEST_CASE("compiled dealing hands one component per spanning vector") {
    HilbertProgram prog = program_from_noisy(4);
    prog.subspaces[2].push_back(std::vector<double>(prog.dim, 0.0));
    prog.subspaces[2].back()[3] = 1.0;
    Stream rng(77, 0);
    Dealing d = compile_to_scheme(prog, rng);
    REQUIRE(d.shares.size() == 4);
    CHECK(d.shares[0].size() == 1);
    CHECK(d.shares[1].size() == 1);
    CHECK(d.shares[2].size() == 2);
    CHECK(d.shares[3].size() == 1);
}

TEST_CASE("compiled shares recover the compiled secret") {
    std::vector<double> r{1.5, 3.0, 7.5};
    HilbertProgram prog = program_from_obfuscated(r);
    Stream rng(78, 0);
    Dealing d = compile_to_scheme(prog, rng);
    // The full set is unqualified here, so only the gateless estimate applies.
    std::map<int, std::vector<double>> shares;
    for (int i = 0; i < 3; ++i) shares[i] = d.shares[static_cast<std::size_t>(i)];
    double est = linear_estimate(prog, {0, 1, 2}, shares);
    CHECK(std::isfinite(est));

    HilbertProgram sum = program_from_l2({2.0, 0.5, 0.25});
    Dealing sd = compile_to_scheme(sum, rng);
    std::map<int, std::vector<double>> sshares;
    for (int i = 0; i < 3; ++i) sshares[i] = sd.shares[static_cast<std::size_t>(i)];
    CHECK(recover(sum, {0, 1, 2}, sshares) == doctest::Approx(sd.secret).epsilon(1e-9));
}

TEST_CASE("serialization round trips") {
    HilbertProgram prog = program_from_threshold(3, {0.7, 1.9, 2.4});
    std::stringstream ss;
    serialize_program(ss, prog);
    HilbertProgram back = parse_program(ss);
    REQUIRE(back.dim == prog.dim);
    REQUIRE(back.goal.size() == prog.goal.size());
    for (std::size_t i = 0; i < prog.goal.size(); ++i) {
        CHECK(back.goal[i] == doctest::Approx(prog.goal[i]).epsilon(1e-12));
    }
    REQUIRE(back.subspaces.size() == prog.subspaces.size());
    for (const auto& [p, vecs] : prog.subspaces) {
        REQUIRE(back.subspaces.count(p) == 1);
        REQUIRE(back.subspaces.at(p).size() == vecs.size());
        for (std::size_t i = 0; i < vecs.size(); ++i) {
            for (std::size_t j = 0; j < vecs[i].size(); ++j) {
                CHECK(back.subspaces.at(p)[i][j] == doctest::Approx(vecs[i][j]).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("malformed program text is rejected") {
    std::stringstream ss("dim 2\ngoal 1 0\n0 1 nonsense\n");
    CHECK_THROWS_AS(parse_program(ss), ParseError);
}

}
