#include "svdkit/rollcall.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "svdkit/svd.hpp"

namespace svdkit::rollcall {

namespace {

int sign_of(double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); }

Matrix<double> truncated(const VotingMatrix& vm, long k) {
    return truncate(svd(vm.a), k).approx;
}

double mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

} // namespace

VotingMatrix build_matrix(const std::vector<VoteRecord>& records) {
    if (records.empty()) throw EmptyInput("build_matrix: no vote records");

    VotingMatrix vm;
    std::map<std::pair<std::string, std::string>, std::size_t> row_of;   // (id, party)
    std::map<std::string, std::size_t> col_of;
    std::map<std::pair<std::string, std::string>, Vote> seen;            // (id, bill)

    for (const VoteRecord& rec : records) {
        const auto row_key = std::make_pair(rec.legislator_id, rec.party);
        if (row_of.emplace(row_key, vm.legislators.size()).second)
            vm.legislators.push_back({rec.legislator_id, rec.party});
        if (col_of.emplace(rec.bill_id, vm.bills.size()).second)
            vm.bills.push_back(rec.bill_id);
        if (!seen.emplace(std::make_pair(rec.legislator_id, rec.bill_id), rec.vote).second)
            throw DuplicateVote("duplicate vote by '" + rec.legislator_id + "' on bill '" +
                                rec.bill_id + "'");
    }

    vm.a = Matrix<double>(vm.legislators.size(), vm.bills.size());
    for (const VoteRecord& rec : records) {
        const std::size_t i = row_of.at({rec.legislator_id, rec.party});
        const std::size_t j = col_of.at(rec.bill_id);
        switch (rec.vote) {
            case Vote::Yea: vm.a(i, j) = 1.0; break;
            case Vote::Nay: vm.a(i, j) = -1.0; break;
            case Vote::Absent: vm.a(i, j) = 0.0; break;
        }
    }
    return vm;
}

Projection project(const VotingMatrix& vm, int k) {
    const std::size_t m = vm.a.rows();
    const std::size_t n = vm.a.cols();
    if (m < 2 || n < 2)
        throw ShapeError("project: voting matrix must be at least 2x2");
    if (k != 2 && k != 3)
        throw RankOutOfRange("project: k must be 2 or 3");
    if (static_cast<std::size_t>(k) > std::min(m, n))
        throw RankOutOfRange("project: k exceeds min(m, n)");

    const SvdFactors<double> f = svd(vm.a);
    if (f.sigma[0] == 0.0)
        throw DegenerateMatrix("project: voting matrix is identically zero");

    Projection p;
    p.sigma.assign(f.sigma.begin(), f.sigma.begin() + k);
    p.partisan.resize(m);
    p.bipartisan.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        p.partisan[i] = f.sigma[0] * f.u(i, 0);
        p.bipartisan[i] = f.sigma[1] * f.u(i, 1);
    }
    p.bill_coords.resize(n);
    for (std::size_t j = 0; j < n; ++j)
        p.bill_coords[j] = {f.sigma[0] * f.v(j, 0), f.sigma[1] * f.v(j, 1)};
    if (k == 3) {
        p.north_south.resize(m);
        for (std::size_t i = 0; i < m; ++i) p.north_south[i] = f.sigma[2] * f.u(i, 2);
    }
    return p;
}

Projection orient(const Projection& p, const VotingMatrix& vm,
                  const std::string& right_party) {
    if (p.partisan.size() != vm.legislators.size())
        throw ShapeError("orient: projection does not match the voting matrix");

    std::vector<double> right_coords;
    for (std::size_t i = 0; i < vm.legislators.size(); ++i)
        if (vm.legislators[i].party == right_party) right_coords.push_back(p.partisan[i]);
    if (right_coords.empty())
        throw UnknownParty("orient: no legislator with party '" + right_party + "'");

    Projection out = p;
    out.oriented = true;
    if (mean(right_coords) < 0.0) {
        for (double& x : out.partisan) x = -x;
        for (auto& bc : out.bill_coords) bc[0] = -bc[0];
    }
    if (mean(out.bipartisan) < 0.0) {
        for (double& x : out.bipartisan) x = -x;
        for (auto& bc : out.bill_coords) bc[1] = -bc[1];
    }
    return out;
}

std::vector<std::optional<double>> predictability(const VotingMatrix& vm, long k) {
    const Matrix<double> ak = truncated(vm, k);
    std::vector<std::optional<double>> result(vm.a.rows());
    for (std::size_t i = 0; i < vm.a.rows(); ++i) {
        std::size_t recorded = 0;
        std::size_t matched = 0;
        for (std::size_t j = 0; j < vm.a.cols(); ++j) {
            const int actual = sign_of(vm.a(i, j));
            if (actual == 0) continue;
            ++recorded;
            if (sign_of(ak(i, j)) == actual) ++matched;
        }
        if (recorded > 0)
            result[i] = static_cast<double>(matched) / static_cast<double>(recorded);
    }
    return result;
}

std::vector<double> vote_scores(const VotingMatrix& vm, long k) {
    const Matrix<double> ak = truncated(vm, k);
    std::vector<double> scores(vm.a.cols(), 0.0);
    for (std::size_t j = 0; j < vm.a.cols(); ++j)
        for (std::size_t i = 0; i < vm.a.rows(); ++i) scores[j] += ak(i, j);
    return scores;
}

OutcomeReport reconstruct_outcomes(const VotingMatrix& vm, Scheme scheme) {
    const long k = static_cast<long>(std::min<std::size_t>(2, std::min(vm.a.rows(), vm.a.cols())));
    const Matrix<double> a2 = truncated(vm, k);

    OutcomeReport report;
    report.scheme = scheme;
    report.total = vm.a.cols();
    report.predicted.resize(report.total);
    report.actual.resize(report.total);

    for (std::size_t j = 0; j < vm.a.cols(); ++j) {
        std::size_t yeas = 0;
        std::size_t nays = 0;
        double score = 0.0;
        double score_known = 0.0;
        std::size_t pos = 0;
        std::size_t neg = 0;
        for (std::size_t i = 0; i < vm.a.rows(); ++i) {
            const int actual = sign_of(vm.a(i, j));
            if (actual > 0) ++yeas;
            if (actual < 0) ++nays;
            score += a2(i, j);
            if (actual != 0) {
                score_known += a2(i, j);
                if (a2(i, j) > 0.0) ++pos;
                if (a2(i, j) < 0.0) ++neg;
            }
        }
        report.actual[j] = yeas > nays;
        switch (scheme) {
            case Scheme::ScoreSum: report.predicted[j] = score > 0.0; break;
            case Scheme::ScoreSumKnownVotesOnly: report.predicted[j] = score_known > 0.0; break;
            case Scheme::SignMajority: report.predicted[j] = pos > neg; break;
        }
        if (report.predicted[j] == report.actual[j]) ++report.correct_count;
    }
    return report;
}

} // namespace svdkit::rollcall
