#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "sentiframes/errors.hpp"
#include "sentiframes/pipeline.hpp"

#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace sentiframes;
using namespace sentiframes::testing;

namespace {

// One-frame lexicon plus the inflection table used by most corpus tests.
EntryIndex condemn_index(const LemmaTable& lemmas) {
    return EntryIndex::build(make_lexicon({condemn_frame()}), &lemmas);
}

const LemmaTable kLemmas = {{"осудил", "осудить"}, {"осудила", "осудить"}};

PipelineResult run_on(const std::string& corpus_text, const EntryIndex& index,
                      std::string* attitudes_out = nullptr, std::string* diagnostics_out = nullptr,
                      std::size_t workers = 1) {
    std::istringstream corpus(corpus_text);
    std::ostringstream attitudes;
    std::ostringstream diagnostics;
    PipelineConfig config;
    config.lemmas = &kLemmas;
    config.workers = workers;
    PipelineResult result = run_pipeline(index, corpus, attitudes, &diagnostics, config);
    if (attitudes_out) *attitudes_out = attitudes.str();
    if (diagnostics_out) *diagnostics_out = diagnostics.str();
    return result;
}

const char* kCondemnRecord =
    R"({"doc_id": "d1", "sentences": [{"id": "s1", "text": "Израиль осудил Дамаск.", )"
    R"("entities": [{"start_char": 0, "end_char": 7, "text": "Израиль", "type": "LOC"}, )"
    R"({"start_char": 15, "end_char": 21, "text": "Дамаск", "type": "LOC"}]}]})";

} // namespace

TEST_CASE("corpus record parsing") {
    CorpusDocument doc = parse_corpus_record(kCondemnRecord);
    CHECK(doc.doc_id == "d1");
    REQUIRE(doc.sentences.size() == 1);
    CHECK(doc.sentences[0].id == "s1");
    REQUIRE(doc.sentences[0].entities.size() == 2);
    CHECK(doc.sentences[0].entities[1].start_char == 15);

    SUBCASE("missing doc_id") {
        CHECK_THROWS_AS(parse_corpus_record(R"({"sentences": []})"), ParseError);
    }
    SUBCASE("bad json") { CHECK_THROWS_AS(parse_corpus_record("{"), ParseError); }
    SUBCASE("duplicate sentence ids") {
        CHECK_THROWS_AS(parse_corpus_record(
                            R"({"doc_id": "d", "sentences": [)"
                            R"({"id": "s", "text": "a"}, {"id": "s", "text": "b"}]})"),
                        ParseError);
    }
    SUBCASE("entity without offsets") {
        CHECK_THROWS_AS(parse_corpus_record(
                            R"({"doc_id": "d", "sentences": [)"
                            R"({"id": "s", "text": "a", "entities": [{"text": "a"}]}]})"),
                        ParseError);
    }
}

TEST_CASE("the one-sentence corpus yields one fully negative pair") {
    std::string attitudes;
    PipelineResult result = run_on(std::string(kCondemnRecord) + "\n", condemn_index(kLemmas),
                                   &attitudes);

    CHECK(result.counters.documents == 1);
    CHECK(result.counters.sentences == 1);
    CHECK(result.counters.attitude_records == 1);
    CHECK(result.counters.malformed_records == 0);

    REQUIRE(result.stats.size() == 1);
    const PairStats& row = result.stats.at({"израиль", "дамаск"});
    CHECK(row.total == 1);
    CHECK(row.positive == 0);
    CHECK(row.negative == 1);

    // the attitude record is a single JSON line with full evidence
    AttitudeRecord record = parse_attitude_record(attitudes.substr(0, attitudes.find('\n')));
    CHECK(record.doc_id == "d1");
    CHECK(record.attitude.source == "израиль");
    CHECK(record.attitude.target == "дамаск");
    CHECK(record.attitude.sentiment == Sign::Neg);
    REQUIRE(record.attitude.evidence.size() == 1);
    CHECK(record.attitude.evidence[0].begin == 1);
    CHECK(record.attitude.evidence[0].frame_ids == std::vector<std::string>{"осудить"});
}

TEST_CASE("corpus with no mentions produces a valid empty result") {
    const char* record = R"({"doc_id": "d", "sentences": [{"id": "s", "text": "тихий день"}]})";
    std::string attitudes;
    PipelineResult result = run_on(std::string(record) + "\n", condemn_index(kLemmas), &attitudes);
    CHECK(result.counters.documents == 1);
    CHECK(result.counters.attitude_records == 0);
    CHECK(result.stats.empty());
    CHECK(attitudes.empty());
    CHECK(render_pair_counts_tsv(result.stats) == "source\ttarget\ttotal\tpositive\tnegative\n");
}

TEST_CASE("malformed records are skipped, counted, and reported") {
    std::string corpus = std::string(kCondemnRecord) + "\n" + "{broken\n" +
                         std::string(kCondemnRecord) + "\n";
    // the second valid line duplicates d1/s1 ids, which is fine across records
    std::string diagnostics;
    PipelineResult result = run_on(corpus, condemn_index(kLemmas), nullptr, &diagnostics);
    CHECK(result.counters.documents == 2);
    CHECK(result.counters.malformed_records == 1);
    CHECK(result.counters.attitude_records == 2);
    CHECK(diagnostics.find("line 2") != std::string::npos);
}

TEST_CASE("mention char spans that cut a token are expanded with a counter") {
    // span [15,19) covers "Дамас" inside the token "Дамаск"
    const char* record =
        R"({"doc_id": "d", "sentences": [{"id": "s", "text": "Израиль осудил Дамаск", )"
        R"("entities": [{"start_char": 0, "end_char": 7, "text": "Израиль"}, )"
        R"({"start_char": 15, "end_char": 19, "text": "Дамас"}]}]})";
    PipelineResult result = run_on(std::string(record) + "\n", condemn_index(kLemmas));
    CHECK(result.counters.expanded_mentions == 1);
    REQUIRE(result.stats.size() == 1);
    // the mention's own surface is kept for aggregation
    CHECK(result.stats.begin()->first == PairKey{"израиль", "дамас"});
}

TEST_CASE("unmappable and overlapping mentions are dropped with counters") {
    const char* record =
        R"({"doc_id": "d", "sentences": [{"id": "s", "text": "Израиль осудил Дамаск", )"
        R"("entities": [{"start_char": 0, "end_char": 7, "text": "Израиль"}, )"
        R"({"start_char": 2, "end_char": 7, "text": "раиль"}, )"
        R"({"start_char": 100, "end_char": 105, "text": "нигде"}, )"
        R"({"start_char": 15, "end_char": 21, "text": "Дамаск"}]}]})";
    PipelineResult result = run_on(std::string(record) + "\n", condemn_index(kLemmas));
    CHECK(result.counters.unmapped_mentions == 1);    // [100,105) is past the text
    CHECK(result.counters.overlapping_mentions == 1); // "раиль" collides with "Израиль"
    CHECK(result.counters.attitude_records == 1);     // the clean pair still extracts
}

TEST_CASE("pre-tokenized sentences use the provided tokens") {
    const char* record =
        R"({"doc_id": "d", "sentences": [{"id": "s", "text": "Израиль осудил Дамаск", )"
        R"("tokens": ["Израиль", "осудил", "Дамаск"], )"
        R"("entities": [{"start_char": 0, "end_char": 7, "text": "Израиль"}, )"
        R"({"start_char": 15, "end_char": 21, "text": "Дамаск"}]}]})";
    PipelineResult result = run_on(std::string(record) + "\n", condemn_index(kLemmas));
    CHECK(result.counters.attitude_records == 1);
    CHECK(result.counters.skipped_sentences == 0);

    SUBCASE("tokens that cannot be aligned skip the sentence with a counter") {
        const char* bad =
            R"({"doc_id": "d", "sentences": [{"id": "s", "text": "Израиль осудил Дамаск", )"
            R"("tokens": ["Израиль", "поддержал", "Дамаск"], "entities": []}]})";
        std::string diagnostics;
        PipelineResult r = run_on(std::string(bad) + "\n", condemn_index(kLemmas), nullptr,
                                  &diagnostics);
        CHECK(r.counters.skipped_sentences == 1);
        CHECK(diagnostics.find("pre-tokenization") != std::string::npos);
    }
}

TEST_CASE("aggregation counts and shares for a skewed 245-attitude pair") {
    std::vector<PairAttitude> attitudes;
    for (int i = 0; i < 19; ++i) attitudes.push_back({"россия", "игил", Sign::Pos, {}, "s"});
    for (int i = 0; i < 226; ++i) attitudes.push_back({"россия", "игил", Sign::Neg, {}, "s"});
    PairStatsMap stats = aggregate_attitudes(attitudes);
    REQUIRE(stats.size() == 1);
    const PairStats& row = stats.at({"россия", "игил"});
    CHECK(row.total == 245);
    CHECK(row.positive == 19);
    CHECK(row.negative == 226);
    CHECK(format_share(row.positive, row.total) == "7.8");
    CHECK(format_share(row.negative, row.total) == "92.2");
}

TEST_CASE("aggregating an empty stream yields an empty map") {
    CHECK(aggregate_attitudes({}).empty());
}

TEST_CASE("aggregation is a mergeable monoid") {
    Rng rng(11);
    auto random_attitude = [&]() {
        PairAttitude a;
        a.source = "s" + std::to_string(pick(rng, 0, 4));
        a.target = "t" + std::to_string(pick(rng, 0, 4));
        a.sentiment = chance(rng, 0.5) ? Sign::Pos : Sign::Neg;
        return a;
    };
    for (int round = 0; round < 50; ++round) {
        std::vector<PairAttitude> stream;
        std::size_t n = pick(rng, 0, 60);
        for (std::size_t i = 0; i < n; ++i) stream.push_back(random_attitude());

        std::size_t cut = n == 0 ? 0 : pick(rng, 0, n);
        std::vector<PairAttitude> left(stream.begin(), stream.begin() + cut);
        std::vector<PairAttitude> right(stream.begin() + cut, stream.end());

        PairStatsMap merged = aggregate_attitudes(left);
        merge_stats(merged, aggregate_attitudes(right));
        CHECK(merged == aggregate_attitudes(stream));

        // commutativity and identity
        PairStatsMap swapped = aggregate_attitudes(right);
        merge_stats(swapped, aggregate_attitudes(left));
        CHECK(swapped == merged);
        PairStatsMap with_identity = aggregate_attitudes(stream);
        merge_stats(with_identity, {});
        CHECK(with_identity == merged);

        // conservation: record count equals the sum of totals
        std::uint64_t total = 0;
        for (const auto& [key, row] : merged) total += row.total;
        CHECK(total == stream.size());
    }
}

TEST_CASE("ranking filters, sorts by share, and breaks ties deterministically") {
    PairStatsMap stats;
    stats[{"шойгу", "путин"}] = {"шойгу", "путин", 44, 44, 0};
    stats[{"россия", "игил"}] = {"россия", "игил", 245, 19, 226};
    stats[{"киев", "госдума"}] = {"киев", "госдума", 158, 3, 155};
    stats[{"редкая", "пара"}] = {"редкая", "пара", 2, 1, 1};

    SUBCASE("most positive puts the 100% pair first") {
        auto rows = rank_pairs(stats, RankDirection::MostPositive, 1, 10);
        REQUIRE(!rows.empty());
        CHECK(rows[0].source == "шойгу");
        CHECK(format_share(rows[0].positive, rows[0].total) == "100.0");
    }
    SUBCASE("min_total filters rare pairs") {
        auto rows = rank_pairs(stats, RankDirection::MostNegative, 3, 10);
        CHECK(rows.size() == 3);
        for (const PairStats& row : rows) CHECK(row.total >= 3);
    }
    SUBCASE("top_k truncates") {
        CHECK(rank_pairs(stats, RankDirection::MostNegative, 1, 2).size() == 2);
    }
    SUBCASE("ordering agrees with a naive sort oracle") {
        auto rows = rank_pairs(stats, RankDirection::MostNegative, 1, 10);
        auto naive = rows;
        std::sort(naive.begin(), naive.end(), [](const PairStats& a, const PairStats& b) {
            double sa = static_cast<double>(a.negative) / static_cast<double>(a.total);
            double sb = static_cast<double>(b.negative) / static_cast<double>(b.total);
            if (sa != sb) return sa > sb;
            if (a.total != b.total) return a.total > b.total;
            return std::tie(a.source, a.target) < std::tie(b.source, b.target);
        });
        CHECK(rows == naive);
        // 98.1% (kiev), 92.2% (russia), 50%, then the 0% pair
        CHECK(rows[0].source == "киев");
        CHECK(rows[1].source == "россия");
        CHECK(rows[2].source == "редкая");
        CHECK(rows.back().source == "шойгу");
    }
}

TEST_CASE("pipeline output is byte-identical across worker counts") {
    Rng rng(808);
    Lexicon lexicon = random_lexicon(rng, 8);
    EntryIndex index = EntryIndex::build(lexicon);

    // synthetic corpus whose tokens overlap the lexicon vocabulary
    std::ostringstream corpus;
    for (int d = 0; d < 40; ++d) {
        std::string text;
        std::vector<std::pair<std::size_t, std::size_t>> entity_spans;
        std::size_t cp = 0;
        for (int w = 0; w < 10; ++w) {
            std::string word = chance(rng, 0.3) ? ("ent" + std::to_string(pick(rng, 0, 3)))
                                                : random_word(rng);
            if (!text.empty()) {
                text += ' ';
                ++cp;
            }
            std::size_t begin = cp;
            cp += codepoint_count(word);
            if (word.rfind("ent", 0) == 0) entity_spans.emplace_back(begin, cp);
            text += word;
        }
        std::ostringstream entities;
        for (std::size_t i = 0; i < entity_spans.size(); ++i) {
            if (i > 0) entities << ", ";
            entities << R"({"start_char": )" << entity_spans[i].first << R"(, "end_char": )"
                     << entity_spans[i].second << "}";
        }
        corpus << R"({"doc_id": "d)" << d << R"(", "sentences": [{"id": "s", "text": ")" << text
               << R"(", "entities": [)" << entities.str() << "]}]}\n";
    }
    std::string corpus_text = corpus.str();

    std::string attitudes_1, attitudes_2, attitudes_8;
    std::string diag;
    PipelineResult r1 = run_on(corpus_text, index, &attitudes_1, &diag, 1);
    PipelineResult r2 = run_on(corpus_text, index, &attitudes_2, &diag, 2);
    PipelineResult r8 = run_on(corpus_text, index, &attitudes_8, &diag, 8);

    CHECK(attitudes_1 == attitudes_2);
    CHECK(attitudes_1 == attitudes_8);
    CHECK(r1.stats == r2.stats);
    CHECK(r1.stats == r8.stats);
    CHECK(r1.counters == r8.counters);
    CHECK(render_pipeline_report(r1, 1, 10) == render_pipeline_report(r8, 1, 10));

    // conservation across the whole run
    std::uint64_t total = 0;
    for (const auto& [key, row] : r1.stats) total += row.total;
    CHECK(total == r1.counters.attitude_records);
}

TEST_CASE("pipeline output equals the generator's own bookkeeping") {
    // 200 synthetic sentences built from templates with known outcomes; the
    // generator tallies what it plants and the pipeline must agree exactly.
    Rng rng(606);
    Lexicon lexicon = make_lexicon(
        {simple_frame("хвалить", Sign::Pos, {word_entry("хвалить")}),
         simple_frame("ругать", Sign::Neg, {word_entry("ругать")}),
         simple_frame("мутный_а", Sign::Pos, {word_entry("мутить")}),
         simple_frame("мутный_б", Sign::Neg, {word_entry("мутить")})});
    EntryIndex index = EntryIndex::build(lexicon);

    std::ostringstream corpus;
    PairStatsMap expected;
    PipelineCounters expected_counters;
    for (int s = 0; s < 200; ++s) {
        std::string source = "субъект" + std::to_string(pick(rng, 0, 4));
        std::string target = "объект" + std::to_string(pick(rng, 0, 4));

        std::string middle;
        std::optional<Sign> outcome;
        bool trailing_verb = false;
        switch (pick(rng, 0, 6)) {
            case 0: middle = "хвалить"; outcome = Sign::Pos; break;
            case 1: middle = "ругать"; outcome = Sign::Neg; break;
            case 2: middle = "не хвалить"; outcome = Sign::Neg; break;
            case 3: middle = "не ругать"; outcome = Sign::Pos; break;
            case 4: middle = "мутить"; outcome = Sign::Neg; break; // ambiguous -> negative
            case 5: middle = "тихо молчать"; break;               // no entry
            case 6: middle = "тихо молчать"; trailing_verb = true; break;
        }

        std::string text = source + " " + middle + " " + target;
        if (trailing_verb) text += " хвалить"; // after the pair, never internal
        std::size_t source_len = codepoint_count(source);
        std::size_t target_begin = codepoint_count(text) -
                                   codepoint_count(target) -
                                   (trailing_verb ? codepoint_count(" хвалить") : 0);
        corpus << R"({"doc_id": "g)" << s << R"(", "sentences": [{"id": "s", "text": ")" << text
               << R"(", "entities": [{"start_char": 0, "end_char": )" << source_len
               << R"(, "text": ")" << source << R"("}, {"start_char": )" << target_begin
               << R"(, "end_char": )" << target_begin + codepoint_count(target)
               << R"(, "text": ")" << target << R"("}]}]})" << "\n";

        ++expected_counters.documents;
        ++expected_counters.sentences;
        if (outcome) {
            ++expected_counters.attitude_records;
            accumulate_attitude(expected, source, target, *outcome);
        }
    }

    std::istringstream in(corpus.str());
    std::ostringstream attitudes;
    PipelineConfig config;
    PipelineResult result = run_pipeline(index, in, attitudes, nullptr, config);
    CHECK(result.stats == expected);
    CHECK(result.counters == expected_counters);
}

TEST_CASE("attitude records round-trip through their JSON line") {
    AttitudeRecord record;
    record.doc_id = "d9";
    record.attitude.source = "израиль";
    record.attitude.target = "дамаск";
    record.attitude.sentiment = Sign::Neg;
    record.attitude.sentence_id = "s3";
    EntryMatch match;
    match.begin = 1;
    match.end = 2;
    match.frame_ids = {"осудить"};
    match.negated = true;
    match.base_polarities = SignSet{true, false};
    match.effective_polarities = SignSet{false, true};
    record.attitude.evidence.push_back(match);

    AttitudeRecord reparsed = parse_attitude_record(render_attitude_record(record));
    CHECK(reparsed.doc_id == record.doc_id);
    CHECK(reparsed.attitude == record.attitude);
}

TEST_CASE("atomic file writing replaces the target in one step") {
    std::string path = "test_atomic_out.txt";
    write_file_atomic(path, "first\n");
    write_file_atomic(path, "second\n");
    std::ifstream in(path);
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(content == "second\n");
    std::remove(path.c_str());
    CHECK(!std::ifstream(path + ".tmp").good()); // no temp residue
}
