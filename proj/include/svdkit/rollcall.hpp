#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "svdkit/matrix.hpp"

namespace svdkit::rollcall {

enum class Vote { Yea, Nay, Absent };

struct VoteRecord {
    std::string legislator_id;
    std::string party;
    std::string bill_id;
    Vote vote = Vote::Absent;
};

struct Legislator {
    std::string id;
    std::string party;
};

/// Legislators x bills matrix over {+1, -1, 0}: yea, nay, absent/no record.
/// Row and column order follow first appearance in the record stream.
/// A legislator who changes party gets one row per (id, party) pair.
struct VotingMatrix {
    std::vector<Legislator> legislators;
    std::vector<std::string> bills;
    Matrix<double> a;
};

/// Coordinates along the leading singular directions, scaled by the
/// singular values. north_south is filled only for k = 3 projections.
struct Projection {
    std::vector<double> partisan;
    std::vector<double> bipartisan;
    std::vector<double> north_south;
    std::vector<std::array<double, 2>> bill_coords;
    std::vector<double> sigma;
    bool oriented = false;
};

enum class Scheme { ScoreSum, ScoreSumKnownVotesOnly, SignMajority };

struct OutcomeReport {
    Scheme scheme = Scheme::ScoreSum;
    std::vector<bool> predicted;  // per bill: pass?
    std::vector<bool> actual;
    std::size_t correct_count = 0;
    std::size_t total = 0;
};

/// Yea -> +1, Nay -> -1, Absent and missing pairs -> 0.
/// Throws DuplicateVote on a repeated (legislator, bill) pair, EmptyInput
/// on an empty record list.
VotingMatrix build_matrix(const std::vector<VoteRecord>& records);

/// Two-mode (or three-mode, k = 3) projection of the voting matrix.
/// partisan[i] = sigma1 * U[i,1], bipartisan[i] = sigma2 * U[i,2];
/// bill coordinates analogously from V.
Projection project(const VotingMatrix& vm, int k = 2);

/// Sign-normalizes the axes: the mean partisan coordinate of right_party
/// members becomes nonnegative, the mean bipartisan coordinate over all
/// legislators becomes nonnegative, bill coordinates flip consistently.
/// Idempotent.
Projection orient(const Projection& p, const VotingMatrix& vm,
                  const std::string& right_party);

/// Per legislator: fraction of recorded votes (A[i,j] != 0) whose sign is
/// reproduced by the k-mode truncation; sign 0 counts as a miss. Legislators
/// with no recorded votes report nullopt.
std::vector<std::optional<double>> predictability(const VotingMatrix& vm, long k = 2);

/// Per bill: column sums of the k-mode truncation.
std::vector<double> vote_scores(const VotingMatrix& vm, long k = 2);

/// Predicts pass/fail per bill from the two-mode truncation under the given
/// counting scheme and compares with the recorded outcome (pass iff strictly
/// more yeas than nays). Ties predict fail.
OutcomeReport reconstruct_outcomes(const VotingMatrix& vm, Scheme scheme);

} // namespace svdkit::rollcall
