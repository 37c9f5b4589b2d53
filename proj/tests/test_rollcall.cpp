#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "svdkit/rollcall.hpp"
#include "svdkit/svd.hpp"
#include "test_support.hpp"

using namespace svdkit;
using namespace svdkit::rollcall;
using namespace testsupport;

namespace {

VoteRecord rec(const std::string& who, const std::string& party, const std::string& bill,
               Vote vote) {
    return VoteRecord{who, party, bill, vote};
}

/// Two blocs, every bill split along bloc lines: bloc 1 votes yea on
/// everything, bloc 2 votes nay. Rank-1 by construction.
VotingMatrix perfect_two_bloc(std::size_t bloc1, std::size_t bloc2, std::size_t bills) {
    std::vector<VoteRecord> records;
    for (std::size_t j = 0; j < bills; ++j)
        for (std::size_t i = 0; i < bloc1 + bloc2; ++i)
            records.push_back(rec("M" + std::to_string(i), i < bloc1 ? "R" : "L",
                                  "B" + std::to_string(j), i < bloc1 ? Vote::Yea : Vote::Nay));
    return build_matrix(records);
}

} // namespace

TEST_SUITE_BEGIN("rollcall");

TEST_CASE("build_matrix codes votes and orders by first appearance") {
    const auto vm = build_matrix({rec("L1", "D", "B1", Vote::Yea), rec("L2", "R", "B1", Vote::Nay)});
    REQUIRE(vm.a.rows() == 2);
    REQUIRE(vm.a.cols() == 1);
    CHECK(vm.a(0, 0) == 1.0);
    CHECK(vm.a(1, 0) == -1.0);
    CHECK(vm.legislators[0].id == "L1");
    CHECK(vm.legislators[1].party == "R");
}

TEST_CASE("build_matrix fills absences and missing pairs with zero") {
    const auto vm = build_matrix({rec("L1", "D", "B1", Vote::Yea),
                                  rec("L1", "D", "B2", Vote::Absent),
                                  rec("L2", "R", "B2", Vote::Nay)});
    CHECK(vm.a(0, 1) == 0.0);  // explicit absence
    CHECK(vm.a(1, 0) == 0.0);  // missing pair
}

TEST_CASE("build_matrix rejects duplicates and empty input") {
    CHECK_THROWS_AS(
        build_matrix({rec("L1", "D", "B1", Vote::Yea), rec("L1", "D", "B1", Vote::Nay)}),
        DuplicateVote);
    CHECK_THROWS_AS(build_matrix({}), EmptyInput);
}

TEST_CASE("a party switcher occupies two rows") {
    const auto vm = build_matrix({rec("J", "R", "B1", Vote::Yea), rec("J", "I", "B2", Vote::Nay)});
    REQUIRE(vm.a.rows() == 2);
    CHECK(vm.legislators[0].party == "R");
    CHECK(vm.legislators[1].party == "I");
    CHECK(vm.a(0, 0) == 1.0);
    CHECK(vm.a(1, 1) == -1.0);
}

TEST_CASE("projection of a perfect two-bloc matrix") {
    const auto vm = perfect_two_bloc(4, 3, 5);
    const auto p = project(vm);
    for (std::size_t i = 1; i < 4; ++i)
        CHECK(p.partisan[i] == doctest::Approx(p.partisan[0]).epsilon(1e-10));
    for (std::size_t i = 5; i < 7; ++i)
        CHECK(p.partisan[i] == doctest::Approx(p.partisan[4]).epsilon(1e-10));
    CHECK(p.partisan[0] * p.partisan[4] < 0.0);
}

TEST_CASE("unanimity gives identical partisan coordinates") {
    std::vector<VoteRecord> records;
    for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t i = 0; i < 5; ++i)
            records.push_back(rec("M" + std::to_string(i), "X", "B" + std::to_string(j), Vote::Yea));
    const auto p = project(build_matrix(records));
    for (std::size_t i = 1; i < 5; ++i)
        CHECK(p.partisan[i] == doctest::Approx(p.partisan[0]).epsilon(1e-12));
}

TEST_CASE("project rejects degenerate inputs") {
    const auto zero = build_matrix({rec("L1", "D", "B1", Vote::Absent),
                                    rec("L1", "D", "B2", Vote::Absent),
                                    rec("L2", "R", "B1", Vote::Absent)});
    CHECK_THROWS_AS(project(zero), DegenerateMatrix);

    const auto tiny = build_matrix({rec("L1", "D", "B1", Vote::Yea)});
    CHECK_THROWS_AS(project(tiny), ShapeError);
}

TEST_CASE("orient flips the partisan axis when the right party has negative mean") {
    const auto vm = perfect_two_bloc(3, 3, 4);
    auto p = project(vm);
    // force the "R" mean negative, then orient must flip every partisan sign
    double r_mean = (p.partisan[0] + p.partisan[1] + p.partisan[2]) / 3.0;
    if (r_mean > 0.0) {
        for (double& x : p.partisan) x = -x;
        for (auto& bc : p.bill_coords) bc[0] = -bc[0];
    }
    const auto oriented = orient(p, vm, "R");
    CHECK(oriented.oriented);
    double oriented_mean = (oriented.partisan[0] + oriented.partisan[1] + oriented.partisan[2]) / 3.0;
    CHECK(oriented_mean > 0.0);
    for (std::size_t i = 0; i < 6; ++i)
        CHECK(std::abs(oriented.partisan[i]) == doctest::Approx(std::abs(p.partisan[i])));
}

TEST_CASE("orient is idempotent") {
    const auto vm = perfect_two_bloc(3, 2, 4);
    const auto once = orient(project(vm), vm, "R");
    const auto twice = orient(once, vm, "R");
    CHECK(once.partisan == twice.partisan);
    CHECK(once.bipartisan == twice.bipartisan);
    CHECK(once.bill_coords == twice.bill_coords);
}

TEST_CASE("orient rejects unknown parties") {
    const auto vm = perfect_two_bloc(2, 2, 3);
    CHECK_THROWS_AS(orient(project(vm), vm, "Z"), UnknownParty);
}

TEST_CASE("three-mode projection exposes the third coordinate") {
    const auto model = planted_two_bloc(1, 20, 30);
    const auto vm = build_matrix(model.records);
    const auto p2 = project(vm, 2);
    CHECK(p2.north_south.empty());
    const auto p3 = project(vm, 3);
    CHECK(p3.north_south.size() == vm.a.rows());
    CHECK(p3.sigma.size() == 3);
}

TEST_CASE("predictability is exactly 1 on rank-<=2 matrices") {
    const auto vm = perfect_two_bloc(4, 3, 6);
    for (const auto& value : predictability(vm)) {
        REQUIRE(value.has_value());
        CHECK(*value == 1.0);
    }
}

TEST_CASE("a legislator with no recorded votes is undefined, not zero") {
    const auto vm = build_matrix({rec("L1", "D", "B1", Vote::Yea),
                                  rec("L1", "D", "B2", Vote::Nay),
                                  rec("L2", "D", "B1", Vote::Yea),
                                  rec("L2", "D", "B2", Vote::Yea),
                                  rec("L3", "R", "B1", Vote::Absent),
                                  rec("L3", "R", "B2", Vote::Absent)});
    const auto result = predictability(vm);
    CHECK(result[0].has_value());
    CHECK(result[1].has_value());
    CHECK_FALSE(result[2].has_value());
}

TEST_CASE("predictability rejects out-of-range k") {
    const auto vm = perfect_two_bloc(2, 2, 3);
    CHECK_THROWS_AS(predictability(vm, 4), RankOutOfRange);
    CHECK_THROWS_AS(predictability(vm, -1), RankOutOfRange);
}

TEST_CASE("vote_scores basics") {
    // two-bloc matrix plus one unanimous-yea bill and one all-absent bill
    std::vector<VoteRecord> records;
    for (std::size_t i = 0; i < 6; ++i) {
        const std::string who = "M" + std::to_string(i);
        const std::string party = i < 4 ? "R" : "L";
        for (std::size_t j = 0; j < 3; ++j)
            records.push_back(rec(who, party, "B" + std::to_string(j),
                                  i < 4 ? Vote::Yea : Vote::Nay));
        records.push_back(rec(who, party, "BU", Vote::Yea));
        records.push_back(rec(who, party, "BZ", Vote::Absent));
    }
    const auto vm = build_matrix(records);
    const auto scores = vote_scores(vm);
    CHECK(scores[3] > 0.0);                                   // unanimous yea
    CHECK(std::abs(scores[4]) <= 1e-9);                       // all-absent column
}

TEST_CASE("outcomes on a perfect two-bloc matrix with a larger bloc 1") {
    const auto vm = perfect_two_bloc(5, 3, 6);
    for (Scheme scheme :
         {Scheme::ScoreSum, Scheme::ScoreSumKnownVotesOnly, Scheme::SignMajority}) {
        const auto report = reconstruct_outcomes(vm, scheme);
        CHECK(report.correct_count == report.total);
        for (std::size_t j = 0; j < report.total; ++j) CHECK(report.actual[j]);
    }
}

TEST_CASE("an all-abstain bill fails and is predicted to fail (tie rule)") {
    std::vector<VoteRecord> records;
    for (std::size_t i = 0; i < 4; ++i) {
        const std::string who = "M" + std::to_string(i);
        const std::string party = i < 3 ? "R" : "L";
        for (std::size_t j = 0; j < 2; ++j)
            records.push_back(rec(who, party, "B" + std::to_string(j),
                                  i < 3 ? Vote::Yea : Vote::Nay));
        records.push_back(rec(who, party, "BZ", Vote::Absent));
    }
    const auto report = reconstruct_outcomes(build_matrix(records), Scheme::ScoreSum);
    CHECK_FALSE(report.actual[2]);
    CHECK_FALSE(report.predicted[2]);
}

TEST_CASE("planted model: partisan sign recovers the blocs") {
    const auto model = planted_two_bloc(0);
    const auto vm = build_matrix(model.records);
    const auto p = orient(project(vm), vm, "R");
    std::size_t recovered = 0;
    for (std::size_t i = 0; i < model.bloc.size(); ++i)
        if ((p.partisan[i] > 0.0 ? +1 : -1) == model.bloc[i]) ++recovered;
    const double fraction = static_cast<double>(recovered) / static_cast<double>(model.bloc.size());
    CHECK(fraction >= 0.95);
}

TEST_CASE("planted model: mean predictability lands in [0.85, 1.0]") {
    const auto model = planted_two_bloc(0);
    const auto vm = build_matrix(model.records);
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& value : predictability(vm)) {
        if (!value.has_value()) continue;
        sum += *value;
        ++count;
    }
    REQUIRE(count > 0);
    const double mean = sum / static_cast<double>(count);
    CHECK(mean >= 0.85);
    CHECK(mean <= 1.0);
}

TEST_CASE("planted model: score signs agree with the planted majority") {
    const auto model = planted_two_bloc(0);
    const auto vm = build_matrix(model.records);
    const auto scores = vote_scores(vm);
    std::size_t agree = 0;
    for (std::size_t j = 0; j < scores.size(); ++j)
        if ((scores[j] > 0.0 ? 1.0 : -1.0) == model.majority_stance[j]) ++agree;
    CHECK(static_cast<double>(agree) / static_cast<double>(scores.size()) >= 0.90);
}

TEST_CASE("planted model: ScoreSum outcome accuracy is at least 0.90") {
    const auto model = planted_two_bloc(0);
    const auto vm = build_matrix(model.records);
    const auto report = reconstruct_outcomes(vm, Scheme::ScoreSum);
    const double accuracy =
        static_cast<double>(report.correct_count) / static_cast<double>(report.total);
    CHECK(accuracy >= 0.90);
}

TEST_CASE("all three schemes are deterministic and total") {
    const auto model = planted_two_bloc(2, 30, 40);
    const auto vm = build_matrix(model.records);
    for (Scheme scheme :
         {Scheme::ScoreSum, Scheme::ScoreSumKnownVotesOnly, Scheme::SignMajority}) {
        const auto r1 = reconstruct_outcomes(vm, scheme);
        const auto r2 = reconstruct_outcomes(vm, scheme);
        CHECK(r1.predicted == r2.predicted);
        CHECK(r1.actual == r2.actual);
        CHECK(r1.correct_count == r2.correct_count);
        CHECK(r1.total == vm.a.cols());
        CHECK(r1.predicted.size() == r1.total);
    }
}

TEST_CASE("permuting legislators permutes coordinates and preserves counts") {
    const auto model = planted_two_bloc(3, 30, 40);
    const auto vm = build_matrix(model.records);

    // reverse the legislator order by re-emitting records in reversed blocks
    std::vector<VoteRecord> reversed;
    for (std::size_t i = vm.legislators.size(); i-- > 0;)
        for (const auto& record : model.records)
            if (record.legislator_id == vm.legislators[i].id) reversed.push_back(record);
    const auto vm_rev = build_matrix(reversed);
    REQUIRE(vm_rev.a.rows() == vm.a.rows());

    const auto p = orient(project(vm), vm, "R");
    const auto p_rev = orient(project(vm_rev), vm_rev, "R");
    const std::size_t m = vm.a.rows();
    for (std::size_t i = 0; i < m; ++i) {
        CHECK(p_rev.partisan[m - 1 - i] == doctest::Approx(p.partisan[i]).epsilon(1e-9));
        CHECK(p_rev.bipartisan[m - 1 - i] == doctest::Approx(p.bipartisan[i]).epsilon(1e-9));
    }

    for (Scheme scheme :
         {Scheme::ScoreSum, Scheme::ScoreSumKnownVotesOnly, Scheme::SignMajority}) {
        CHECK(reconstruct_outcomes(vm, scheme).correct_count ==
              reconstruct_outcomes(vm_rev, scheme).correct_count);
    }
}

TEST_SUITE_END();
