#include "loopkit/errors.hpp"
#include "loopkit/miner.hpp"
#include "loopkit/rng.hpp"

#include <doctest.h>

#include <string>
#include <vector>

using namespace loopkit;

namespace {

std::vector<ShotRecord> shots_from_identities(const std::vector<std::string>& ids) {
    std::vector<ShotRecord> shots;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        ShotRecord rec;
        rec.shot_id = "s" + std::to_string(i);
        rec.start_frame = static_cast<std::int64_t>(i) * 10;
        rec.end_frame = rec.start_frame + 10;
        rec.identity = ids[i];
        shots.push_back(std::move(rec));
    }
    return shots;
}

// exhaustively checks every index triple instead of scanning a sliding window
std::vector<AbaTriple> brute_force_loops(const std::vector<std::string>& ids) {
    std::vector<AbaTriple> out;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        for (std::size_t j = 0; j < ids.size(); ++j) {
            for (std::size_t k = 0; k < ids.size(); ++k) {
                if (j == i + 1 && k == j + 1 && ids[i] == ids[k] && ids[i] != ids[j]) {
                    out.push_back({i, j, k});
                }
            }
        }
    }
    return out;
}

} // namespace

TEST_CASE("cut detection on flat and stepped inputs") {
    TensorF32 flat({10, 3}, std::vector<float>(30, 1.0f));
    CHECK(detect_cuts(flat, 0.5).empty());

    std::vector<float> stepped(20 * 2, 0.0f);
    for (std::size_t i = 10 * 2; i < stepped.size(); ++i) stepped[i] = 10.0f;
    std::vector<std::size_t> cuts = detect_cuts(TensorF32({20, 2}, stepped), 1.0);
    REQUIRE(cuts.size() == 1);
    CHECK(cuts[0] == 10);

    CHECK_THROWS_AS(detect_cuts(TensorF32({1, 2}), 1.0), ParamError);
    CHECK_THROWS_AS(detect_cuts(flat, 0.0), ParamError);
    CHECK_THROWS_AS(detect_cuts(TensorF32({4}), 1.0), ShapeError);
}

TEST_CASE("small random walk stays below the cut threshold") {
    SeededRng rng(314);
    const std::size_t frames = 200;
    const std::size_t dim = 4;
    std::vector<float> data(frames * dim);
    for (std::size_t d = 0; d < dim; ++d) data[d] = 0.0f;
    for (std::size_t f = 1; f < frames; ++f) {
        for (std::size_t d = 0; d < dim; ++d) {
            data[f * dim + d] = data[(f - 1) * dim + d] +
                                static_cast<float>(rng.next_normal() * 0.01);
        }
    }
    CHECK(detect_cuts(TensorF32({frames, dim}, data), 1.0).empty());
}

TEST_CASE("aba loop detection on fixtures") {
    auto simple = shots_from_identities({"A", "B", "A"});
    std::vector<AbaTriple> loops = find_aba_loops(simple);
    REQUIRE(loops.size() == 1);
    CHECK(loops[0] == AbaTriple{0, 1, 2});

    auto longer = shots_from_identities({"A", "B", "A", "C", "B", "C", "B"});
    std::vector<AbaTriple> more = find_aba_loops(longer);
    REQUIRE(more.size() == 3);
    CHECK(more[0] == AbaTriple{0, 1, 2});
    CHECK(more[1] == AbaTriple{3, 4, 5});
    CHECK(more[2] == AbaTriple{4, 5, 6});

    CHECK(find_aba_loops(shots_from_identities({"A", "A", "A"})).empty());
    CHECK(find_aba_loops(shots_from_identities({"A", "B"})).empty());
    CHECK(find_aba_loops({}).empty());
}

TEST_CASE("aba loops agree with the exhaustive scan on random sequences") {
    SeededRng rng(555);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t alphabet = 2 + rng.next_below(4); // 2..5
        const std::size_t length = 3 + rng.next_below(48);  // 3..50
        std::vector<std::string> ids(length);
        for (auto& id : ids) {
            id = std::string(1, static_cast<char>('A' + rng.next_below(alphabet)));
        }
        CHECK(find_aba_loops(shots_from_identities(ids)) == brute_force_loops(ids));
    }
}

TEST_CASE("pair extraction keeps the B-A order") {
    auto shots = shots_from_identities({"A", "B", "A", "C", "B", "C", "B"});
    std::vector<AbaTriple> loops = find_aba_loops(shots);
    std::vector<AbaPair> pairs = extract_pairs(shots, loops);
    REQUIRE(pairs.size() == loops.size());

    CHECK(pairs[0].first.shot_id == "s1");
    CHECK(pairs[0].second.shot_id == "s2");
    CHECK(pairs[1].first.shot_id == "s4");
    CHECK(pairs[1].second.shot_id == "s5");
    CHECK(pairs[2].first.shot_id == "s5");
    CHECK(pairs[2].second.shot_id == "s6");
    for (const AbaPair& p : pairs) CHECK(p.first.identity != p.second.identity);

    CHECK(extract_pairs(shots, {}).empty());
    CHECK_THROWS_AS(extract_pairs(shots, {{5, 6, 7}}), ParamError);
}

TEST_CASE("shot ordering by shoulder side") {
    auto make_pair = [](ShoulderSide s1, ShoulderSide s2) {
        AbaPair pair;
        pair.first = {"p1", 0, 10, "B", s1};
        pair.second = {"p2", 10, 20, "A", s2};
        return pair;
    };

    OrderOutcome swapped = order_shots(make_pair(ShoulderSide::left, ShoulderSide::right));
    REQUIRE(swapped.accepted);
    CHECK(swapped.shot1.shot_id == "p2"); // right-shouldered goes first
    CHECK(swapped.shot2.shot_id == "p1");

    OrderOutcome kept = order_shots(make_pair(ShoulderSide::right, ShoulderSide::left));
    REQUIRE(kept.accepted);
    CHECK(kept.shot1.shot_id == "p1");
    CHECK(kept.shot2.shot_id == "p2");

    OrderOutcome same = order_shots(make_pair(ShoulderSide::right, ShoulderSide::right));
    CHECK_FALSE(same.accepted);
    CHECK(same.reason == "same-side shoulders");

    OrderOutcome flat = order_shots(make_pair(ShoulderSide::none, ShoulderSide::left));
    CHECK_FALSE(flat.accepted);
    CHECK(flat.reason == "not an over-the-shoulder pair");

    AbaPair unannotated;
    unannotated.first = {"p1", 0, 10, "B", std::nullopt};
    unannotated.second = {"p2", 10, 20, "A", ShoulderSide::left};
    CHECK_THROWS_AS(order_shots(unannotated), ValidationError);

    // idempotent on an already ordered pair
    AbaPair ordered;
    ordered.first = kept.shot1;
    ordered.second = kept.shot2;
    OrderOutcome again = order_shots(ordered);
    REQUIRE(again.accepted);
    CHECK(again.shot1.shot_id == kept.shot1.shot_id);
    CHECK(again.shot2.shot_id == kept.shot2.shot_id);
}

TEST_CASE("shot record validation") {
    ShotRecord bad_range{"x", 10, 10, "A", std::nullopt};
    CHECK_THROWS_AS(bad_range.validate(), ValidationError);
    ShotRecord no_identity{"x", 0, 10, "", std::nullopt};
    CHECK_THROWS_AS(no_identity.validate(), ValidationError);
}
