// swipegan: corpus generation, adversarial style transfer, recognizer
// training/evaluation and path rendering behind one seeded CLI.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "swipegan/corpus.hpp"
#include "swipegan/error.hpp"
#include "swipegan/eval.hpp"
#include "swipegan/gan.hpp"
#include "swipegan/svg.hpp"
#include "swipegan/synth.hpp"

namespace {

using swipegan::Corpus;
using swipegan::KeyboardLayout;

constexpr int kExitRuntime = 1;
constexpr int kExitValidation = 2;

nlohmann::json load_config_json(const std::string& file) {
    if (file.empty()) return nlohmann::json::object();
    std::ifstream in(file);
    if (!in) throw swipegan::InvalidArgumentError("cannot open config file \"" + file + "\"");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw swipegan::InvalidArgumentError("config file \"" + file + "\": " + e.what());
    }
    if (!j.is_object()) throw swipegan::InvalidArgumentError("config file must hold a JSON object");
    return j;
}

// Explicit flags win over config values, which win over defaults.
template <class T>
void merge_option(const CLI::App& app, const std::string& flag, const nlohmann::json& cfg,
                  const std::string& key, T& value) {
    const CLI::Option* opt = app.get_option_no_throw(flag);
    if (opt && opt->count() > 0) return;
    if (cfg.contains(key)) value = cfg[key].get<T>();
}

KeyboardLayout load_layout(const std::string& file) {
    if (file.empty()) return swipegan::reference_qwerty();
    std::ifstream in(file);
    if (!in) throw swipegan::InvalidArgumentError("cannot open layout file \"" + file + "\"");
    std::stringstream ss;
    ss << in.rdbuf();
    KeyboardLayout layout = KeyboardLayout::from_json(ss.str());
    layout.set_name(file);
    return layout;
}

int uniform_corpus_length(const Corpus& corpus, const std::string& name) {
    if (corpus.paths.empty())
        throw swipegan::InvalidArgumentError("corpus \"" + name + "\" is empty");
    const int len = static_cast<int>(corpus.paths.front().points.size());
    for (const swipegan::Path& p : corpus.paths)
        if (static_cast<int>(p.points.size()) != len)
            throw swipegan::LengthMismatchError("corpus \"" + name +
                                                "\" has paths of differing lengths");
    return len;
}

const char* kStyleFlagHelp = "overrides the matching \"style\" config entry";

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"desk-scale continuous-path keyboard lab: synthesize gesture corpora, "
                 "style-transfer them with a multi-task GAN, and measure recognizer accuracy"};
    app.require_subcommand(1);

    // ---- synth ----------------------------------------------------------
    auto* synth = app.add_subcommand("synth", "generate a spline or user-style corpus");
    std::string sy_layout, sy_lexicon, sy_mode = "synthetic", sy_out, sy_config;
    int sy_per_word = 30, sy_points = 64;
    std::uint64_t sy_seed = 1;
    swipegan::StyleParams sy_style = swipegan::default_user_style();
    synth->add_option("--layout", sy_layout, "layout JSON (default: reference qwerty)");
    synth->add_option("--lexicon", sy_lexicon, "word list, one per line")->required();
    synth->add_option("--per-word", sy_per_word, "paths per word");
    synth->add_option("--mode", sy_mode, "synthetic|user")
        ->check(CLI::IsMember({"synthetic", "user"}));
    synth->add_option("--seed", sy_seed, "base seed");
    synth->add_option("--points", sy_points, "points per path");
    synth->add_option("--out", sy_out, "output corpus JSONL")->required();
    synth->add_option("--config", sy_config, "JSON config merged under explicit flags");
    synth->add_option("--overshoot", sy_style.overshoot_scale, kStyleFlagHelp);
    synth->add_option("--excursion-amplitude", sy_style.excursion_amplitude, kStyleFlagHelp);
    synth->add_option("--excursion-wavelength", sy_style.excursion_wavelength, kStyleFlagHelp);
    synth->add_option("--corner-cut", sy_style.corner_cut, kStyleFlagHelp);
    synth->add_option("--speed-warp", sy_style.speed_warp, kStyleFlagHelp);

    // ---- train-gan ------------------------------------------------------
    auto* train_gan = app.add_subcommand("train-gan", "train the style-transfer GAN");
    std::string tg_synth, tg_user, tg_out, tg_curve, tg_config;
    swipegan::GanConfig tg_cfg;
    bool tg_literal = false;
    train_gan->add_option("--synthetic", tg_synth, "synthetic corpus JSONL")->required();
    train_gan->add_option("--user", tg_user, "user-style corpus JSONL")->required();
    train_gan->add_option("--out", tg_out, "output model checkpoint JSON")->required();
    train_gan->add_option("--curve", tg_curve, "loss curve CSV (default: <out>.curve.csv)");
    train_gan->add_option("--config", tg_config, "JSON config merged under explicit flags");
    train_gan->add_option("--iterations", tg_cfg.iterations, "adversarial steps");
    train_gan->add_option("--pretrain-steps", tg_cfg.pretrain_steps, "classifier warm-up steps");
    train_gan->add_option("--hidden", tg_cfg.hidden, "LSTM hidden size");
    train_gan->add_option("--depth", tg_cfg.depth, "bi-LSTM layers");
    train_gan->add_option("--lambda", tg_cfg.lambda, "adversarial/classification weight");
    train_gan->add_option("--lr", tg_cfg.lr_g, "learning rate for all three networks");
    train_gan->add_option("--batch", tg_cfg.batch, "batch size");
    train_gan->add_option("--seed", tg_cfg.seed, "training seed");
    train_gan->add_option("--checkpoint-every", tg_cfg.checkpoint_every,
                          "write <out>.step<N>.json periodically (0 = off)");
    train_gan->add_flag("--literal-minimax", tg_literal,
                        "generator descends log(1-D(G(X))) verbatim");

    // ---- transfer -------------------------------------------------------
    auto* transfer_cmd = app.add_subcommand("transfer", "map a corpus through the generator");
    std::string tr_model, tr_in, tr_out;
    transfer_cmd->add_option("--model", tr_model, "GAN checkpoint JSON")->required();
    transfer_cmd->add_option("--in", tr_in, "input corpus JSONL")->required();
    transfer_cmd->add_option("--out", tr_out, "output corpus JSONL")->required();

    // ---- train-rec ------------------------------------------------------
    auto* train_rec = app.add_subcommand("train-rec", "train a CTC recognizer");
    std::string rc_train, rc_lexicon, rc_out, rc_config;
    swipegan::RecognizerConfig rc_cfg;
    train_rec->add_option("--train", rc_train, "training corpus JSONL")->required();
    train_rec->add_option("--lexicon", rc_lexicon, "word list")->required();
    train_rec->add_option("--out", rc_out, "output checkpoint JSON")->required();
    train_rec->add_option("--config", rc_config, "JSON config merged under explicit flags");
    train_rec->add_option("--seq-len", rc_cfg.seq_len, "model input length");
    train_rec->add_option("--hidden", rc_cfg.hidden, "LSTM hidden size");
    train_rec->add_option("--depth", rc_cfg.depth, "bi-LSTM layers");
    train_rec->add_option("--lr", rc_cfg.lr, "Adam learning rate");
    train_rec->add_option("--batch", rc_cfg.batch, "batch size");
    train_rec->add_option("--epochs", rc_cfg.epochs, "epochs over the corpus");
    train_rec->add_option("--seed", rc_cfg.seed, "training seed");

    // ---- eval -----------------------------------------------------------
    auto* eval_cmd = app.add_subcommand("eval", "Top-1 accuracy of a recognizer on a corpus");
    std::string ev_model, ev_test, ev_lexicon, ev_out;
    eval_cmd->add_option("--model", ev_model, "recognizer checkpoint JSON")->required();
    eval_cmd->add_option("--test", ev_test, "test corpus JSONL")->required();
    eval_cmd->add_option("--lexicon", ev_lexicon, "word list")->required();
    eval_cmd->add_option("--out", ev_out, "optional CSV output (top1)");

    // ---- compositions ---------------------------------------------------
    auto* comps = app.add_subcommand("compositions", "train one recognizer per data composition");
    std::string cp_user, cp_synth, cp_gan, cp_test, cp_lexicon, cp_out, cp_config;
    std::vector<std::string> cp_specs;
    swipegan::RecognizerConfig cp_cfg;
    comps->add_option("--user", cp_user, "user-style corpus JSONL")->required();
    comps->add_option("--synthetic", cp_synth, "synthetic corpus JSONL")->required();
    comps->add_option("--gan", cp_gan, "GAN corpus JSONL")->required();
    comps->add_option("--test", cp_test, "held-out test corpus JSONL")->required();
    comps->add_option("--lexicon", cp_lexicon, "word list")->required();
    comps->add_option("--spec", cp_specs, "composition, e.g. U1+G5=U:300+G:1500 (repeatable)")
        ->required();
    comps->add_option("--out", cp_out, "report CSV")->required();
    comps->add_option("--config", cp_config, "JSON config merged under explicit flags");
    comps->add_option("--seq-len", cp_cfg.seq_len, "model input length");
    comps->add_option("--hidden", cp_cfg.hidden, "LSTM hidden size");
    comps->add_option("--depth", cp_cfg.depth, "bi-LSTM layers");
    comps->add_option("--lr", cp_cfg.lr, "Adam learning rate");
    comps->add_option("--batch", cp_cfg.batch, "batch size");
    comps->add_option("--epochs", cp_cfg.epochs, "epochs over each mixture");
    comps->add_option("--seed", cp_cfg.seed, "training seed");

    // ---- curve ----------------------------------------------------------
    auto* curve = app.add_subcommand("curve", "log-log learning-curve slope from a size,error CSV");
    std::string cv_in, cv_out;
    curve->add_option("--in", cv_in, "CSV with size,error per line")->required();
    curve->add_option("--out", cv_out, "optional output file for the slope");

    // ---- render ---------------------------------------------------------
    auto* render = app.add_subcommand("render", "render one corpus path as an SVG");
    std::string rd_in, rd_out, rd_layout;
    int rd_index = 0;
    render->add_option("--in", rd_in, "corpus JSONL")->required();
    render->add_option("--index", rd_index, "path index within the corpus");
    render->add_option("--layout", rd_layout, "layout JSON (default: reference qwerty)");
    render->add_option("--out", rd_out, "output SVG")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        if (synth->parsed()) {
            const nlohmann::json cfg = load_config_json(sy_config);
            merge_option(*synth, "--layout", cfg, "layout", sy_layout);
            merge_option(*synth, "--lexicon", cfg, "lexicon", sy_lexicon);
            merge_option(*synth, "--per-word", cfg, "per_word", sy_per_word);
            merge_option(*synth, "--points", cfg, "seq_len", sy_points);
            merge_option(*synth, "--seed", cfg, "seed", sy_seed);
            if (cfg.contains("style")) {
                merge_option(*synth, "--overshoot", cfg["style"], "overshoot_scale",
                             sy_style.overshoot_scale);
                merge_option(*synth, "--excursion-amplitude", cfg["style"], "excursion_amplitude",
                             sy_style.excursion_amplitude);
                merge_option(*synth, "--excursion-wavelength", cfg["style"], "excursion_wavelength",
                             sy_style.excursion_wavelength);
                merge_option(*synth, "--corner-cut", cfg["style"], "corner_cut", sy_style.corner_cut);
                merge_option(*synth, "--speed-warp", cfg["style"], "speed_warp", sy_style.speed_warp);
            }
            const KeyboardLayout layout = load_layout(sy_layout);
            const auto lexicon = swipegan::read_lexicon(sy_lexicon);
            const auto mode = sy_mode == "user" ? swipegan::CorpusMode::USER_STYLE
                                                : swipegan::CorpusMode::SYNTHETIC;
            const Corpus corpus = swipegan::generate_corpus(layout, lexicon, sy_per_word, mode,
                                                            sy_style, sy_seed, sy_points);
            swipegan::corpus_write_file(corpus, sy_out);
            std::cout << "wrote " << corpus.paths.size() << " paths (mode=" << sy_mode
                      << ", layout=" << corpus.metadata.layout << ", seed=" << sy_seed << ") to "
                      << sy_out << "\n";
        } else if (train_gan->parsed()) {
            const nlohmann::json cfg = load_config_json(tg_config);
            merge_option(*train_gan, "--iterations", cfg, "iterations", tg_cfg.iterations);
            merge_option(*train_gan, "--pretrain-steps", cfg, "pretrain_steps", tg_cfg.pretrain_steps);
            merge_option(*train_gan, "--hidden", cfg, "hidden", tg_cfg.hidden);
            merge_option(*train_gan, "--depth", cfg, "depth", tg_cfg.depth);
            merge_option(*train_gan, "--lambda", cfg, "lambda", tg_cfg.lambda);
            merge_option(*train_gan, "--lr", cfg, "lr", tg_cfg.lr_g);
            merge_option(*train_gan, "--batch", cfg, "batch", tg_cfg.batch);
            merge_option(*train_gan, "--seed", cfg, "seed", tg_cfg.seed);
            merge_option(*train_gan, "--checkpoint-every", cfg, "checkpoint_every",
                         tg_cfg.checkpoint_every);
            if (cfg.contains("literal_minimax") &&
                train_gan->get_option("--literal-minimax")->count() == 0)
                tg_literal = cfg["literal_minimax"].get<bool>();
            tg_cfg.lr_d = tg_cfg.lr_c = tg_cfg.lr_g;
            tg_cfg.literal_minimax = tg_literal;

            const Corpus synth_corpus = swipegan::corpus_read_file(tg_synth);
            const Corpus user_corpus = swipegan::corpus_read_file(tg_user);
            if (synth_corpus.metadata.layout != user_corpus.metadata.layout)
                throw swipegan::InvalidArgumentError(
                    "corpus layouts differ: \"" + synth_corpus.metadata.layout + "\" vs \"" +
                    user_corpus.metadata.layout + "\"");
            const int len_s = uniform_corpus_length(synth_corpus, tg_synth);
            const int len_u = uniform_corpus_length(user_corpus, tg_user);
            if (len_s != len_u)
                throw swipegan::LengthMismatchError("corpus path lengths differ: " +
                                                    std::to_string(len_s) + " vs " +
                                                    std::to_string(len_u));
            tg_cfg.seq_len = len_s;

            swipegan::GanModel model = swipegan::GanModel::init(tg_cfg);
            const auto rows = swipegan::gan_train(
                model, synth_corpus, user_corpus, tg_cfg.iterations,
                [&](int step, const swipegan::GanModel& m) {
                    m.save(tg_out + ".step" + std::to_string(step) + ".json");
                });
            model.save(tg_out);
            const std::string curve_file = tg_curve.empty() ? tg_out + ".curve.csv" : tg_curve;
            swipegan::atomic_write_file(curve_file, swipegan::loss_curve_csv(rows));
            std::cout << "trained " << tg_cfg.iterations << " steps (L=" << tg_cfg.seq_len
                      << ", lambda=" << tg_cfg.lambda << "); model -> " << tg_out << ", curve -> "
                      << curve_file << "\n";
        } else if (transfer_cmd->parsed()) {
            const swipegan::GanModel model = swipegan::GanModel::load(tr_model);
            const Corpus input = swipegan::corpus_read_file(tr_in);
            uniform_corpus_length(input, tr_in);
            Corpus output;
            output.metadata = input.metadata;
            output.metadata.generator = "gan";
            output.paths.reserve(input.paths.size());
            for (const swipegan::Path& p : input.paths)
                output.paths.push_back(swipegan::transfer(model, p));
            swipegan::corpus_write_file(output, tr_out);
            std::cout << "transferred " << output.paths.size() << " paths to " << tr_out << "\n";
        } else if (train_rec->parsed()) {
            const nlohmann::json cfg = load_config_json(rc_config);
            merge_option(*train_rec, "--seq-len", cfg, "seq_len", rc_cfg.seq_len);
            merge_option(*train_rec, "--hidden", cfg, "hidden", rc_cfg.hidden);
            merge_option(*train_rec, "--depth", cfg, "depth", rc_cfg.depth);
            merge_option(*train_rec, "--lr", cfg, "lr", rc_cfg.lr);
            merge_option(*train_rec, "--batch", cfg, "batch", rc_cfg.batch);
            merge_option(*train_rec, "--epochs", cfg, "epochs", rc_cfg.epochs);
            merge_option(*train_rec, "--seed", cfg, "seed", rc_cfg.seed);
            const Corpus corpus = swipegan::corpus_read_file(rc_train);
            const auto lexicon = swipegan::read_lexicon(rc_lexicon);
            int skipped = 0;
            const swipegan::Recognizer rec =
                swipegan::train_recognizer(corpus, lexicon, rc_cfg, &skipped);
            rec.save(rc_out);
            std::cout << "trained on " << corpus.paths.size() << " paths (" << skipped
                      << " infeasible skipped); model -> " << rc_out << "\n";
        } else if (eval_cmd->parsed()) {
            const swipegan::Recognizer rec = swipegan::Recognizer::load(ev_model);
            const Corpus test = swipegan::corpus_read_file(ev_test);
            const auto lexicon = swipegan::read_lexicon(ev_lexicon);
            const double top1 = swipegan::evaluate_top1(rec, test, lexicon);
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.6f", top1);
            std::cout << "top1 " << buf << " (" << test.paths.size() << " paths)\n";
            if (!ev_out.empty())
                swipegan::atomic_write_file(ev_out, std::string("top1\n") + buf + "\n");
        } else if (comps->parsed()) {
            const nlohmann::json cfg = load_config_json(cp_config);
            merge_option(*comps, "--seq-len", cfg, "seq_len", cp_cfg.seq_len);
            merge_option(*comps, "--hidden", cfg, "hidden", cp_cfg.hidden);
            merge_option(*comps, "--depth", cfg, "depth", cp_cfg.depth);
            merge_option(*comps, "--lr", cfg, "lr", cp_cfg.lr);
            merge_option(*comps, "--batch", cfg, "batch", cp_cfg.batch);
            merge_option(*comps, "--epochs", cfg, "epochs", cp_cfg.epochs);
            merge_option(*comps, "--seed", cfg, "seed", cp_cfg.seed);
            std::vector<swipegan::CompositionSpec> specs;
            for (const std::string& s : cp_specs) specs.push_back(swipegan::parse_composition(s));
            const Corpus user = swipegan::corpus_read_file(cp_user);
            const Corpus synth_c = swipegan::corpus_read_file(cp_synth);
            const Corpus gan_c = swipegan::corpus_read_file(cp_gan);
            const Corpus test = swipegan::corpus_read_file(cp_test);
            const auto lexicon = swipegan::read_lexicon(cp_lexicon);
            const swipegan::ExperimentReport report =
                swipegan::run_compositions(specs, user, synth_c, gan_c, test, lexicon, cp_cfg);
            swipegan::atomic_write_file(cp_out, report.csv());
            std::cout << report.table();
            for (const auto& row : report.rows)
                std::cerr << row.spec.label << ": " << row.seconds << "s\n";
        } else if (curve->parsed()) {
            std::ifstream in(cv_in);
            if (!in) throw swipegan::InvalidArgumentError("cannot open \"" + cv_in + "\"");
            std::vector<std::pair<double, double>> points;
            std::string line;
            std::size_t lineno = 0;
            while (std::getline(in, line)) {
                ++lineno;
                if (line.empty()) continue;
                double size = 0.0, error = 0.0;
                if (std::sscanf(line.c_str(), "%lf,%lf", &size, &error) != 2) {
                    if (lineno == 1) continue;  // header
                    throw swipegan::ParseError(lineno, "expected \"size,error\"");
                }
                points.emplace_back(size, error);
            }
            const double slope = swipegan::learning_curve_slope(points);
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.4f", slope);
            std::cout << "slope " << buf << "\n";
            if (!cv_out.empty()) {
                char full[64];
                std::snprintf(full, sizeof(full), "%.10g\n", slope);
                swipegan::atomic_write_file(cv_out, full);
            }
        } else if (render->parsed()) {
            const Corpus corpus = swipegan::corpus_read_file(rd_in);
            if (rd_index < 0 || rd_index >= static_cast<int>(corpus.paths.size()))
                throw swipegan::InvalidArgumentError(
                    "--index " + std::to_string(rd_index) + " out of range (corpus has " +
                    std::to_string(corpus.paths.size()) + " paths)");
            const KeyboardLayout layout = load_layout(rd_layout);
            const std::string svg = swipegan::render_svg(layout, corpus.paths[rd_index]);
            swipegan::atomic_write_file(rd_out, svg);
            std::cout << "rendered path " << rd_index << " (\"" << corpus.paths[rd_index].word
                      << "\") to " << rd_out << "\n";
        }
    } catch (const swipegan::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return 0;
}
