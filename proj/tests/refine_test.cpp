#include <doctest.h>

#include <random>

#include "autota/error.hpp"
#include "autota/metrics.hpp"
#include "autota/refine.hpp"
#include "synth.hpp"

using namespace autota;

namespace {

QuoteId q(int p, int s) { return QuoteId{p, s}; }

Transcript corpus_of(int utterances) {
    std::string raw;
    for (int i = 1; i <= utterances; ++i) {
        raw += format_quote_id(1, i) + " anxiety insurance surgery token" + std::to_string(i) + "\n";
    }
    return parse_transcript(raw, "corpus");
}

/// Feedback that plays back a scripted score sequence and fixed proposals.
class ScriptedFeedback final : public refine::FeedbackSource {
public:
    ScriptedFeedback(std::vector<ScoreVector> scores, std::vector<EditProposal> proposals = {})
        : scores_(std::move(scores)), proposals_(std::move(proposals)) {}

    ScoreVector score(const ThemeSet&) override {
        ScoreVector s = scores_[std::min(call_, scores_.size() - 1)];
        ++call_;
        return s;
    }
    std::vector<EditProposal> propose(const ThemeSet&, const ScoreVector&,
                                      std::vector<AgentExchange>& exchanges) override {
        AgentExchange ex;
        ex.identity = "Feedback Agent";
        ex.stage = "critique";
        ex.prompt = "scripted";
        ex.response = "scripted";
        exchanges.push_back(ex);
        return proposals_;
    }

private:
    std::vector<ScoreVector> scores_;
    std::vector<EditProposal> proposals_;
    std::size_t call_ = 0;
};

EditProposal some_add() {
    EditProposal e;
    e.kind = EditKind::Add;
    ThemeDraft d;
    d.title = "filler";
    d.quote_ids = {q(1, 1)};
    e.payload = {d};
    return e;
}

} // namespace

TEST_CASE("add fires exactly when normalized credibility crosses the threshold") {
    Transcript corpus = corpus_of(10);
    ThemeSet ts = synth::make_theme_set({synth::make_theme("t1", "alpha toneway", {q(1, 1)})});
    refine::RefineConfig cfg;

    ScoreVector below{60.0, 1.0, 1.0}; // 0.60 < 0.7
    std::vector<EditProposal> fired = refine::heuristic_proposals(ts, below, {corpus}, cfg);
    int adds = 0;
    for (const EditProposal& p : fired) adds += p.kind == EditKind::Add ? 1 : 0;
    CHECK(adds == 1);

    ScoreVector at{70.0, 1.0, 1.0}; // 0.70 is not < 0.7
    for (const EditProposal& p : refine::heuristic_proposals(ts, at, {corpus}, cfg)) {
        CHECK(p.kind != EditKind::Add);
    }
    ScoreVector above{99.0, 1.0, 1.0};
    for (const EditProposal& p : refine::heuristic_proposals(ts, above, {corpus}, cfg)) {
        CHECK(p.kind != EditKind::Add);
    }
}

TEST_CASE("the add draft points at the dominant uncited token") {
    Transcript corpus = parse_transcript(
        "[P1_S001] anxiety anxiety waiting\n"
        "[P1_S002] anxiety waiting\n"
        "[P1_S003] insurance billing\n",
        "c");
    ThemeSet ts = synth::make_theme_set({synth::make_theme("t1", "covered", {q(1, 3)})});
    refine::RefineConfig cfg;
    ScoreVector s{100.0 / 3.0, 1.0, 1.0};
    std::vector<EditProposal> proposals = refine::heuristic_proposals(ts, s, {corpus}, cfg);
    REQUIRE(proposals.size() == 1);
    REQUIRE(proposals[0].kind == EditKind::Add);
    const ThemeDraft& draft = proposals[0].payload.front();
    CHECK(draft.title.find("anxiety") != std::string::npos);
    CHECK(draft.quote_ids == std::set<QuoteId>{q(1, 1), q(1, 2)});
}

TEST_CASE("combine fires exactly above the similarity threshold") {
    Transcript corpus = corpus_of(4);
    refine::RefineConfig cfg; // combine when similarity > 0.8
    ScoreVector healthy{100.0, 1.0, 1.0};

    // 10-char titles, 1 substitution apart: similarity 0.9 > 0.8
    ThemeSet close = synth::make_theme_set({synth::make_theme("t1", "abcdefghij", {q(1, 1)}),
                                            synth::make_theme("t2", "abcdefghiX", {q(1, 2)})});
    std::vector<EditProposal> fired = refine::heuristic_proposals(close, healthy, {corpus}, cfg);
    REQUIRE(fired.size() == 1);
    CHECK(fired[0].kind == EditKind::Combine);
    CHECK(fired[0].target_theme_ids == std::vector<std::string>{"t1", "t2"});

    // exactly 2 substitutions: similarity 0.8 is not > 0.8
    ThemeSet at = synth::make_theme_set({synth::make_theme("t1", "abcdefghij", {q(1, 1)}),
                                         synth::make_theme("t2", "abcdefghXY", {q(1, 2)})});
    CHECK(refine::heuristic_proposals(at, healthy, {corpus}, cfg).empty());
}

TEST_CASE("combine pairs are deduplicated greedily by similarity") {
    Transcript corpus = corpus_of(4);
    refine::RefineConfig cfg;
    ScoreVector healthy{100.0, 1.0, 1.0};
    // t1/t2 identical (sim 1.0), t1/t3 and t2/t3 one edit apart (sim 0.9):
    // greedy takes {t1,t2}; t3 stays unclaimed.
    ThemeSet ts = synth::make_theme_set({synth::make_theme("t1", "abcdefghij", {q(1, 1)}),
                                         synth::make_theme("t2", "abcdefghij", {q(1, 2)}),
                                         synth::make_theme("t3", "abcdefghiX", {q(1, 3)})});
    std::vector<EditProposal> fired = refine::heuristic_proposals(ts, healthy, {corpus}, cfg);
    REQUIRE(fired.size() == 1);
    CHECK(fired[0].target_theme_ids == std::vector<std::string>{"t1", "t2"});
}

TEST_CASE("delete fires for quoteless themes and split for sprawling oversize themes") {
    Transcript a = corpus_of(30);
    Transcript b = parse_transcript("[P2_S001] other transcript text\n", "other");
    refine::RefineConfig cfg;
    ScoreVector healthy{100.0, 1.0, 1.0};

    std::string sixty_one_words;
    for (int i = 0; i < 61; ++i) sixty_one_words += "w ";
    ThemeSet ts = synth::make_theme_set(
        {synth::make_theme("t1", "empty theme", {}),
         synth::make_theme("t2", "sprawler", {q(1, 1), q(1, 2), q(2, 1)}, sixty_one_words),
         synth::make_theme("t3", "compact", {q(1, 3)})});

    std::vector<EditProposal> fired = refine::heuristic_proposals(ts, healthy, {a, b}, cfg);
    REQUIRE(fired.size() == 2);
    CHECK(fired[0].kind == EditKind::Delete);
    CHECK(fired[0].target_theme_ids == std::vector<std::string>{"t1"});
    CHECK(fired[1].kind == EditKind::Split);
    CHECK(fired[1].target_theme_ids == std::vector<std::string>{"t2"});
    REQUIRE(fired[1].payload.size() == 2);
    // quote partition covers the original set
    std::set<QuoteId> merged = fired[1].payload[0].quote_ids;
    merged.insert(fired[1].payload[1].quote_ids.begin(), fired[1].payload[1].quote_ids.end());
    CHECK(merged == std::set<QuoteId>{q(1, 1), q(1, 2), q(2, 1)});

    // same oversize theme citing a single transcript: 1 of 2 is not > half
    ThemeSet narrow = synth::make_theme_set(
        {synth::make_theme("t2", "sprawler", {q(1, 1), q(1, 2)}, sixty_one_words)});
    for (const EditProposal& p : refine::heuristic_proposals(narrow, healthy, {a, b}, cfg)) {
        CHECK(p.kind != EditKind::Split);
    }
}

TEST_CASE("no rule fires on a healthy distinct fully-cited set") {
    Transcript corpus = corpus_of(2);
    ThemeSet ts = synth::make_theme_set({synth::make_theme("t1", "anxiety journeys", {q(1, 1)}),
                                         synth::make_theme("t2", "insurance battles", {q(1, 2)})});
    refine::RefineConfig cfg;
    ScoreVector s{100.0, 1.0, 1.0};
    CHECK(refine::heuristic_proposals(ts, s, {corpus}, cfg).empty());
}

TEST_CASE("apply_proposals applies in Delete, Combine, Split, Add order and skips stale targets") {
    ThemeSet ts = synth::make_theme_set({synth::make_theme("t1", "a", {q(1, 1)}),
                                         synth::make_theme("t2", "b", {q(1, 2)}),
                                         synth::make_theme("t3", "c", {q(1, 3)})});
    EditProposal del;
    del.kind = EditKind::Delete;
    del.target_theme_ids = {"t1"};
    EditProposal combine;
    combine.kind = EditKind::Combine;
    combine.target_theme_ids = {"t1", "t2"}; // t1 vanishes first: skipped
    EditProposal add = some_add();

    refine::ApplyResult result = refine::apply_proposals(ts, {add, combine, del});
    CHECK(result.theme_set.themes.size() == 3); // 3 - 1 + 1
    REQUIRE(result.applied.size() == 2);
    CHECK(result.applied[0].kind == EditKind::Delete); // fixed order, not input order
    CHECK(result.applied[1].kind == EditKind::Add);
    REQUIRE(result.skipped.size() == 1);
    CHECK(result.skipped[0].kind == EditKind::Combine);
}

TEST_CASE("refine_loop converges when consecutive scores are close") {
    // s(0)=(0.80,0.40,0.30), s(1)=(0.81,0.41,0.31): L1 = 0.03 < 0.05
    ScriptedFeedback feedback({{80.0, 0.40, 0.30}, {81.0, 0.41, 0.31}}, {some_add()});
    ThemeSet initial = synth::make_theme_set({synth::make_theme("t1", "seed", {q(1, 1)})});
    refine::RefineConfig cfg;
    AuditTrail trail;
    refine::RefineResult result = refine::refine_loop(initial, cfg, feedback, trail);
    CHECK(result.converged);
    CHECK(result.rounds == 1);
    CHECK(result.final_theme_set.iteration == 1);
    REQUIRE(trail.iterations.size() == 2);
    CHECK(trail.iterations[0].iteration == 0);
    CHECK_FALSE(trail.iterations[0].converged);
    CHECK(trail.iterations[1].converged);
    CHECK(l1_distance(trail.iterations[0].score, trail.iterations[1].score) < cfg.convergence_epsilon);
    // the final snapshot is the last record's theme set
    CHECK(trail.iterations.back().theme_set.themes.size() == result.final_theme_set.themes.size());
    CHECK(!trail.final_theme_set_id.empty());
}

TEST_CASE("a fixed point stops after exactly one refinement round") {
    ScriptedFeedback feedback({{90.0, 0.5, 0.5}});
    ThemeSet initial = synth::make_theme_set({synth::make_theme("t1", "seed", {q(1, 1)})});
    refine::RefineConfig cfg;
    AuditTrail trail;
    refine::RefineResult result = refine::refine_loop(initial, cfg, feedback, trail);
    CHECK(result.converged);
    CHECK(result.rounds == 1);
    REQUIRE(trail.iterations.size() == 2);
    CHECK(trail.iterations[0].proposals.empty());
    CHECK(trail.iterations[0].applied_edits.empty());
}

TEST_CASE("the iteration cap is a hard bound") {
    // scores far apart every round: never converges
    std::vector<ScoreVector> wild;
    for (int i = 0; i < 20; ++i) {
        wild.push_back(i % 2 == 0 ? ScoreVector{10.0, 0.1, 0.1} : ScoreVector{90.0, 0.9, 0.9});
    }
    ScriptedFeedback feedback(wild, {some_add()});
    ThemeSet initial = synth::make_theme_set({synth::make_theme("t1", "seed", {q(1, 1)})});
    refine::RefineConfig cfg;
    cfg.max_iterations = 3;
    AuditTrail trail;
    refine::RefineResult result = refine::refine_loop(initial, cfg, feedback, trail);
    CHECK_FALSE(result.converged);
    CHECK(result.rounds == 3);
    CHECK(result.final_theme_set.iteration == 3);
    CHECK(trail.iterations.size() == 4); // records 0..3
    for (std::size_t i = 0; i < trail.iterations.size(); ++i) {
        CHECK(trail.iterations[i].iteration == static_cast<int>(i));
    }
}

TEST_CASE("refine_loop rejects a non-zero starting iteration") {
    ScriptedFeedback feedback({{50.0, 0.5, 0.5}});
    ThemeSet initial = synth::make_theme_set({synth::make_theme("t1", "seed", {q(1, 1)})}, 2);
    refine::RefineConfig cfg;
    AuditTrail trail;
    CHECK_THROWS_WITH_AS(refine::refine_loop(initial, cfg, feedback, trail),
                         doctest::Contains("iteration-0"), Error);
}

TEST_CASE("refine config validation") {
    refine::RefineConfig bad;
    bad.max_iterations = 0;
    CHECK_THROWS_AS(bad.validate(), Error);
    bad = {};
    bad.credibility_add_threshold = 1.5;
    CHECK_THROWS_AS(bad.validate(), Error);
    bad = {};
    bad.convergence_epsilon = 0.0;
    CHECK_THROWS_AS(bad.validate(), Error);
    refine::RefineConfig good;
    CHECK_NOTHROW(good.validate());
}

TEST_CASE("scripted loops never exceed the cap under random score walks" * doctest::timeout(30)) {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> c(0.0, 100.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> cap(1, 6);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<ScoreVector> walk;
        for (int i = 0; i < 12; ++i) walk.push_back({c(rng), unit(rng), unit(rng)});
        ScriptedFeedback feedback(walk, {some_add()});
        ThemeSet initial = synth::make_theme_set({synth::make_theme("t1", "seed", {q(1, 1)})});
        refine::RefineConfig cfg;
        cfg.max_iterations = cap(rng);
        AuditTrail trail;
        refine::RefineResult result = refine::refine_loop(initial, cfg, feedback, trail);
        CHECK(result.final_theme_set.iteration <= cfg.max_iterations);
        if (result.converged) {
            std::size_t last = trail.iterations.size() - 1;
            CHECK(l1_distance(trail.iterations[last - 1].score, trail.iterations[last].score) <
                  cfg.convergence_epsilon);
        }
    }
}
