// sentiframes: sentiment-frame lexicon tooling and entity-pair attitude
// extraction over annotated news corpora.
//
// Exit codes: 0 success, 1 usage error, 2 input validation failure,
// 3 I/O failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "sentiframes/agreement.hpp"
#include "sentiframes/errors.hpp"
#include "sentiframes/lexicon.hpp"
#include "sentiframes/matcher.hpp"
#include "sentiframes/pipeline.hpp"
#include "sentiframes/text.hpp"

namespace sf = sentiframes;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;

std::string plural(std::uint64_t n, const char* one, const char* many) {
    return std::to_string(n) + " " + (n == 1 ? one : many);
}

sf::LexiconFormat parse_format(const std::string& name) {
    if (name == "canonical") return sf::LexiconFormat::Canonical;
    if (name == "rusentiframes") return sf::LexiconFormat::RuSentiFrames;
    return sf::LexiconFormat::Auto;
}

void print_import_notes(const sf::ImportReport& report) {
    for (const auto& [field, count] : report.unmapped_fields) {
        std::cerr << "import: unmapped field \"" << field << "\" seen " << count << " time(s)\n";
    }
    for (const std::string& note : report.repairs) std::cerr << "import: " << note << "\n";
}

sf::Lexicon load_lexicon_cli(const std::string& path, const std::string& format) {
    sf::ImportReport report;
    sf::Lexicon lexicon = sf::load_lexicon_any_file(path, parse_format(format), report);
    print_import_notes(report);
    return lexicon;
}

std::string sign_set_to_string(const sf::SignSet& signs) {
    std::string out;
    if (signs.neg) out += "neg";
    if (signs.pos) out += out.empty() ? "pos" : ",pos";
    return out;
}

struct LexiconArgs {
    std::string path;
    std::string format = "auto";
    std::string reference;
};

int cmd_lexicon_validate(const LexiconArgs& args) {
    sf::Lexicon lexicon = load_lexicon_cli(args.path, args.format);
    std::cout << plural(lexicon.size(), "frame", "frames") << ", 0 violations\n";
    return kExitOk;
}

int cmd_lexicon_stats(const LexiconArgs& args) {
    sf::Lexicon lexicon = load_lexicon_cli(args.path, args.format);
    sf::LexiconStats stats = sf::lexicon_stats(lexicon);
    std::cout << sf::render_stats_tsv(stats);
    if (!args.reference.empty()) {
        std::ifstream ref_in(args.reference, std::ios::binary);
        if (!ref_in) throw sf::IoError("cannot open stats reference: " + args.reference);
        auto reference = sf::load_stats_reference(ref_in);
        std::cout << "\n" << sf::render_stats_diff_tsv(sf::diff_stats(stats, reference));
    }
    return kExitOk;
}

struct MatchArgs {
    std::string lexicon;
    std::string format = "auto";
    std::string text;
    std::string lemmas;
    std::size_t negation_window = 1;
    std::vector<std::string> particles;
};

int cmd_match(const MatchArgs& args) {
    sf::Lexicon lexicon = load_lexicon_cli(args.lexicon, args.format);
    sf::LemmaTable lemmas;
    if (!args.lemmas.empty()) lemmas = sf::load_lemma_table_file(args.lemmas);
    sf::EntryIndex index = sf::EntryIndex::build(lexicon, args.lemmas.empty() ? nullptr : &lemmas);

    sf::TokenStream stream = sf::tokenize(args.text);
    if (!args.lemmas.empty()) sf::apply_lemma_table(stream, lemmas);

    sf::NegationConfig negation;
    negation.window = args.negation_window;
    if (!args.particles.empty()) negation.particles = args.particles;

    std::cout << "tokens:";
    for (const sf::Token& tok : stream.tokens) std::cout << " " << tok.lemma;
    std::cout << "\n";
    for (const sf::EntryMatch& match : sf::find_matches(index, stream, negation)) {
        std::cout << "match [" << match.begin << "," << match.end << "]";
        std::cout << " text=\"";
        for (std::size_t i = match.begin; i <= match.end; ++i) {
            if (i > match.begin) std::cout << ' ';
            std::cout << stream.tokens[i].lemma;
        }
        std::cout << "\" frames=";
        for (std::size_t i = 0; i < match.frame_ids.size(); ++i) {
            if (i > 0) std::cout << ',';
            std::cout << match.frame_ids[i];
        }
        std::cout << " negated=" << (match.negated ? "true" : "false");
        std::cout << " base=" << sign_set_to_string(match.base_polarities);
        std::cout << " effective=" << sign_set_to_string(match.effective_polarities) << "\n";
    }
    return kExitOk;
}

struct ExtractArgs {
    std::string lexicon;
    std::string format = "auto";
    std::string corpus;
    std::string out_dir;
    std::string lemmas;
    std::string aliases;
    std::string pairing = "all";
    std::size_t negation_window = 1;
    std::vector<std::string> particles;
    std::size_t workers = 1;
    std::uint64_t min_total = 1;
    std::size_t top_k = 10;
};

int cmd_extract(const ExtractArgs& args) {
    sf::Lexicon lexicon = load_lexicon_cli(args.lexicon, args.format);

    sf::LemmaTable lemmas;
    sf::AliasTable aliases;
    sf::PipelineConfig config;
    if (!args.lemmas.empty()) {
        lemmas = sf::load_lemma_table_file(args.lemmas);
        config.lemmas = &lemmas;
    }
    if (!args.aliases.empty()) {
        aliases = sf::load_alias_table_file(args.aliases);
        config.aliases = &aliases;
    }
    config.negation.window = args.negation_window;
    if (!args.particles.empty()) config.negation.particles = args.particles;
    config.pairing = args.pairing == "adjacent" ? sf::PairingMode::AdjacentOnly
                                                : sf::PairingMode::AllPairs;
    config.workers = args.workers;

    sf::EntryIndex index = sf::EntryIndex::build(lexicon, config.lemmas);

    std::ifstream corpus(args.corpus, std::ios::binary);
    if (!corpus) throw sf::IoError("cannot open corpus: " + args.corpus);

    std::error_code ec;
    fs::create_directories(args.out_dir, ec);
    if (ec) throw sf::IoError("cannot create output directory: " + args.out_dir);

    const std::string attitudes_path = (fs::path(args.out_dir) / "attitudes.jsonl").string();
    const std::string attitudes_tmp = attitudes_path + ".tmp";

    sf::PipelineResult result;
    {
        std::ofstream attitudes(attitudes_tmp, std::ios::binary | std::ios::trunc);
        if (!attitudes) throw sf::IoError("cannot open for writing: " + attitudes_tmp);
        result = sf::run_pipeline(index, corpus, attitudes, &std::cerr, config);
        attitudes.flush();
        if (!attitudes) throw sf::IoError("write failed: " + attitudes_tmp);
    }
    if (std::rename(attitudes_tmp.c_str(), attitudes_path.c_str()) != 0) {
        std::remove(attitudes_tmp.c_str());
        throw sf::IoError("cannot rename " + attitudes_tmp + " to " + attitudes_path);
    }

    sf::write_file_atomic((fs::path(args.out_dir) / "pairs.tsv").string(),
                          sf::render_pair_counts_tsv(result.stats));
    sf::write_file_atomic((fs::path(args.out_dir) / "report.txt").string(),
                          sf::render_pipeline_report(result, args.min_total, args.top_k));
    sf::write_file_atomic(
        (fs::path(args.out_dir) / "report_negative.tsv").string(),
        sf::render_pair_table_tsv(sf::rank_pairs(result.stats, sf::RankDirection::MostNegative,
                                                 args.min_total, args.top_k)));
    sf::write_file_atomic(
        (fs::path(args.out_dir) / "report_positive.tsv").string(),
        sf::render_pair_table_tsv(sf::rank_pairs(result.stats, sf::RankDirection::MostPositive,
                                                 args.min_total, args.top_k)));

    const sf::PipelineCounters& c = result.counters;
    std::cout << "processed " << plural(c.documents, "document", "documents") << " ("
              << plural(c.sentences, "sentence", "sentences") << "), "
              << plural(c.attitude_records, "attitude record", "attitude records") << ", "
              << plural(c.malformed_records, "malformed record", "malformed records")
              << " skipped\n";
    return kExitOk;
}

struct AggregateArgs {
    std::string attitudes;
    std::string direction = "neg";
    std::uint64_t min_total = 1;
    std::size_t top_k = 10;
    bool tsv = false;
};

int cmd_aggregate(const AggregateArgs& args) {
    std::ifstream in(args.attitudes, std::ios::binary);
    if (!in) throw sf::IoError("cannot open attitudes file: " + args.attitudes);

    sf::PairStatsMap stats;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            sf::AttitudeRecord record = sf::parse_attitude_record(line);
            sf::accumulate_attitude(stats, record.attitude.source, record.attitude.target,
                                    record.attitude.sentiment);
        } catch (const sf::ParseError& e) {
            throw sf::ParseError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }

    sf::RankDirection direction = args.direction == "pos" ? sf::RankDirection::MostPositive
                                                          : sf::RankDirection::MostNegative;
    std::vector<sf::PairStats> rows = sf::rank_pairs(stats, direction, args.min_total, args.top_k);
    std::cout << (args.tsv ? sf::render_pair_table_tsv(rows) : sf::render_pair_table_text(rows));
    return kExitOk;
}

struct AgreeArgs {
    std::string a;
    std::string b;
    std::string format = "auto";
    bool ids_must_match = true;
};

int cmd_agree(const AgreeArgs& args) {
    auto connotations_of = [&](const std::string& path) {
        sf::Lexicon lexicon = load_lexicon_cli(path, args.format);
        std::vector<sf::SentimentFrame> frames;
        frames.reserve(lexicon.size());
        for (const auto& [id, frame] : lexicon.frames) frames.push_back(frame);
        sf::ConnotationSet set = sf::connotation_set(frames);
        return args.ids_must_match ? set : sf::strip_ids(set);
    };

    sf::ConnotationSet e1 = connotations_of(args.a);
    sf::ConnotationSet e2 = connotations_of(args.b);
    sf::AgreementRatios ratios = sf::agreement_ratios(e1, e2);

    std::cout << "R1=" << sf::format_ratio_2dp(ratios.r1) << " R2="
              << sf::format_ratio_2dp(ratios.r2) << " HM=" << sf::format_ratio_2dp(ratios.hm)
              << "\n";
    char full[128];
    std::snprintf(full, sizeof(full), "R1=%.17g R2=%.17g HM=%.17g (full precision)\n", ratios.r1,
                  ratios.r2, ratios.hm);
    std::cout << full;
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"sentiment-frame lexicon tooling and entity-pair attitude extraction"};
    app.require_subcommand(1);

    const std::vector<std::string> formats = {"auto", "canonical", "rusentiframes"};

    // lexicon validate | stats
    LexiconArgs lexicon_args;
    CLI::App* lexicon_cmd = app.add_subcommand("lexicon", "inspect a frame lexicon");
    lexicon_cmd->require_subcommand(1);
    CLI::App* validate_cmd =
        lexicon_cmd->add_subcommand("validate", "load a lexicon and report violations");
    validate_cmd->add_option("file", lexicon_args.path, "lexicon file")->required();
    validate_cmd->add_option("--format", lexicon_args.format, "input format")
        ->check(CLI::IsMember(formats))
        ->capture_default_str();
    CLI::App* stats_cmd =
        lexicon_cmd->add_subcommand("stats", "entry and connotation distribution statistics");
    stats_cmd->add_option("file", lexicon_args.path, "lexicon file")->required();
    stats_cmd->add_option("--format", lexicon_args.format, "input format")
        ->check(CLI::IsMember(formats))
        ->capture_default_str();
    stats_cmd->add_option("--reference", lexicon_args.reference,
                          "reference counts TSV; emits a per-cell reconciliation diff");

    // match
    MatchArgs match_args;
    CLI::App* match_cmd = app.add_subcommand("match", "debug: show entry matches in a text");
    match_cmd->add_option("--lexicon", match_args.lexicon, "lexicon file")->required();
    match_cmd->add_option("--format", match_args.format, "lexicon format")
        ->check(CLI::IsMember(formats))
        ->capture_default_str();
    match_cmd->add_option("--text", match_args.text, "text to scan")->required();
    match_cmd->add_option("--lemmas", match_args.lemmas, "lemma table TSV (surface<TAB>lemma)");
    match_cmd->add_option("--negation-window", match_args.negation_window,
                          "tokens before a match checked for negation particles")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    match_cmd->add_option("--particles", match_args.particles,
                          "negation particles (default: не ни)");

    // extract
    ExtractArgs extract_args;
    CLI::App* extract_cmd =
        app.add_subcommand("extract", "run the corpus attitude-extraction pipeline");
    extract_cmd->add_option("--lexicon", extract_args.lexicon, "lexicon file")->required();
    extract_cmd->add_option("--format", extract_args.format, "lexicon format")
        ->check(CLI::IsMember(formats))
        ->capture_default_str();
    extract_cmd->add_option("--corpus", extract_args.corpus, "JSONL corpus file")->required();
    extract_cmd->add_option("--out", extract_args.out_dir, "output directory")->required();
    extract_cmd->add_option("--negation-window", extract_args.negation_window,
                            "tokens before a match checked for negation particles")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    extract_cmd->add_option("--lemmas", extract_args.lemmas,
                            "lemma table TSV (surface<TAB>lemma)");
    extract_cmd->add_option("--aliases", extract_args.aliases,
                            "entity alias TSV (surface<TAB>canonical)");
    extract_cmd->add_option("--pairing", extract_args.pairing, "entity pairing mode")
        ->check(CLI::IsMember({"adjacent", "all"}))
        ->capture_default_str();
    extract_cmd->add_option("--particles", extract_args.particles,
                            "negation particles (default: не ни)");
    extract_cmd->add_option("--workers", extract_args.workers, "parallel workers")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    extract_cmd->add_option("--min-total", extract_args.min_total,
                            "minimum pair frequency in the report tables")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    extract_cmd->add_option("--top", extract_args.top_k, "rows per report table")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    // aggregate
    AggregateArgs aggregate_args;
    CLI::App* aggregate_cmd =
        app.add_subcommand("aggregate", "rank aggregated pair attitudes from an attitudes file");
    aggregate_cmd->add_option("--attitudes", aggregate_args.attitudes, "attitudes JSONL file")
        ->required();
    aggregate_cmd->add_option("--direction", aggregate_args.direction, "ranking direction")
        ->check(CLI::IsMember({"pos", "neg"}))
        ->capture_default_str();
    aggregate_cmd->add_option("--min-total", aggregate_args.min_total, "minimum pair frequency")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    aggregate_cmd->add_option("--top", aggregate_args.top_k, "rows to print")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    aggregate_cmd->add_flag("--tsv", aggregate_args.tsv, "TSV output instead of aligned text");

    // agree
    AgreeArgs agree_args;
    CLI::App* agree_cmd =
        app.add_subcommand("agree", "agreement ratios between two connotation sets");
    agree_cmd->add_option("--a", agree_args.a, "first lexicon file")->required();
    agree_cmd->add_option("--b", agree_args.b, "second lexicon file")->required();
    agree_cmd->add_option("--format", agree_args.format, "lexicon format")
        ->check(CLI::IsMember(formats))
        ->capture_default_str();
    agree_cmd
        ->add_option("--ids-must-match", agree_args.ids_must_match,
                     "intersect per frame id; false compares dimension+sign only")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (validate_cmd->parsed()) return cmd_lexicon_validate(lexicon_args);
        if (stats_cmd->parsed()) return cmd_lexicon_stats(lexicon_args);
        if (match_cmd->parsed()) return cmd_match(match_args);
        if (extract_cmd->parsed()) return cmd_extract(extract_args);
        if (aggregate_cmd->parsed()) return cmd_aggregate(aggregate_args);
        if (agree_cmd->parsed()) return cmd_agree(agree_args);
        std::cerr << "no subcommand given\n";
        return kExitUsage;
    } catch (const sf::ValidationError& e) {
        for (const std::string& detail : e.details()) std::cerr << detail << "\n";
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const sf::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const sf::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
}
