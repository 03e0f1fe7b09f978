#include "swipegan/gan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "swipegan/error.hpp"

namespace swipegan {

namespace {

constexpr double kCoordMin = -0.25;
constexpr double kCoordMax = 1.25;

// log(sigmoid(u)) without overflow.
double log_sigmoid(double u) {
    if (u >= 0.0) return -std::log1p(std::exp(-u));
    return u - std::log1p(std::exp(u));
}

void check_batch(const std::vector<const Path*>& batch, int seq_len, const char* what) {
    if (batch.empty()) throw InvalidArgumentError(std::string(what) + ": empty batch");
    for (const Path* p : batch)
        if (static_cast<int>(p->points.size()) != seq_len)
            throw LengthMismatchError(std::string(what) + ": path of length " +
                                      std::to_string(p->points.size()) + ", model expects " +
                                      std::to_string(seq_len));
}

// Reshuffled pass over [0, n) after each epoch; Fisher-Yates on a private
// stream so batch composition is reproducible.
class EpochSampler {
public:
    EpochSampler(std::size_t n, std::uint64_t seed) : rng_(seed), indices_(n) {
        for (std::size_t i = 0; i < n; ++i) indices_[i] = i;
        shuffle();
    }

    std::size_t next() {
        if (pos_ == indices_.size()) {
            shuffle();
            pos_ = 0;
        }
        return indices_[pos_++];
    }

    std::vector<std::size_t> next_batch(std::size_t count) {
        std::vector<std::size_t> out(count);
        for (auto& i : out) i = next();
        return out;
    }

private:
    void shuffle() {
        for (std::size_t i = indices_.size(); i > 1; --i)
            std::swap(indices_[i - 1], indices_[rng_.index(i)]);
    }

    Rng rng_;
    std::vector<std::size_t> indices_;
    std::size_t pos_ = 0;
};

nlohmann::ordered_json config_to_json(const GanConfig& c) {
    nlohmann::ordered_json j;
    j["seq_len"] = c.seq_len;
    j["hidden"] = c.hidden;
    j["depth"] = c.depth;
    j["lr_g"] = c.lr_g;
    j["lr_d"] = c.lr_d;
    j["lr_c"] = c.lr_c;
    j["batch"] = c.batch;
    j["iterations"] = c.iterations;
    j["pretrain_steps"] = c.pretrain_steps;
    j["checkpoint_every"] = c.checkpoint_every;
    j["literal_minimax"] = c.literal_minimax;
    j["seed"] = c.seed;
    return j;
}

GanConfig config_from_json(const nlohmann::json& j, double lambda) {
    GanConfig c;
    c.lambda = lambda;
    c.seq_len = j.value("seq_len", c.seq_len);
    c.hidden = j.value("hidden", c.hidden);
    c.depth = j.value("depth", c.depth);
    c.lr_g = j.value("lr_g", c.lr_g);
    c.lr_d = j.value("lr_d", c.lr_d);
    c.lr_c = j.value("lr_c", c.lr_c);
    c.batch = j.value("batch", c.batch);
    c.iterations = j.value("iterations", c.iterations);
    c.pretrain_steps = j.value("pretrain_steps", c.pretrain_steps);
    c.checkpoint_every = j.value("checkpoint_every", c.checkpoint_every);
    c.literal_minimax = j.value("literal_minimax", c.literal_minimax);
    c.seed = j.value("seed", c.seed);
    c.validate();
    return c;
}

}  // namespace

void GanConfig::validate() const {
    if (seq_len < 2) throw InvalidArgumentError("gan config: seq_len must be >= 2");
    if (hidden < 1 || depth < 1) throw InvalidArgumentError("gan config: hidden/depth must be >= 1");
    if (lambda < 0.0 || lambda > 1.0) throw InvalidArgumentError("gan config: lambda outside [0, 1]");
    if (lr_g < 0.0 || lr_d < 0.0 || lr_c < 0.0) throw InvalidArgumentError("gan config: negative learning rate");
    if (batch < 1) throw InvalidArgumentError("gan config: batch must be >= 1");
    if (iterations < 0 || pretrain_steps < 0 || checkpoint_every < 0)
        throw InvalidArgumentError("gan config: negative step count");
}

GanModel GanModel::init(const GanConfig& config, const std::string& characters) {
    config.validate();
    GanModel m{config, CtcAlphabet(characters), {}, {}, {}};
    Rng rng(derive_seed(config.seed, "gan-init"));
    m.gen = Generator::init(config.hidden, config.depth, rng);
    m.disc = Discriminator::init(config.hidden, config.depth, rng);
    m.cls = Classifier::init(config.hidden, config.depth, m.alphabet.num_symbols(), rng);
    return m;
}

std::string GanModel::to_json() const {
    nlohmann::ordered_json j;
    j["version"] = 1;
    j["lambda"] = config.lambda;
    j["alphabet"] = alphabet.chars;
    j["config"] = config_to_json(config);
    GanModel& self = const_cast<GanModel&>(*this);
    j["generator"] = checkpoint_to_json(named_params(self.gen));
    j["discriminator"] = checkpoint_to_json(named_params(self.disc));
    j["classifier"] = checkpoint_to_json(named_params(self.cls));
    return j.dump();
}

GanModel GanModel::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(1, std::string("gan checkpoint: ") + e.what());
    }
    if (!j.contains("config") || !j.contains("lambda"))
        throw ShapeError("gan checkpoint: missing \"config\" or \"lambda\"");
    const GanConfig config = config_from_json(j["config"], j["lambda"].get<double>());
    const std::string characters = j.value("alphabet", std::string("abcdefghijklmnopqrstuvwxyz"));
    GanModel m = init(config, characters);
    for (const char* net : {"generator", "discriminator", "classifier"})
        if (!j.contains(net)) throw ShapeError(std::string("gan checkpoint: missing \"") + net + "\"");
    checkpoint_from_json(j["generator"], named_params(m.gen));
    checkpoint_from_json(j["discriminator"], named_params(m.disc));
    checkpoint_from_json(j["classifier"], named_params(m.cls));
    return m;
}

void GanModel::save(const std::string& file) const { atomic_write_file(file, to_json() + "\n"); }

GanModel GanModel::load(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw InvalidArgumentError("cannot open checkpoint \"" + file + "\"");
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json(ss.str());
}

double compute_gan_cost(double d_real, double d_fake, double delta, bool* clamped) {
    if (delta < 0.0) throw InvalidArgumentError("compute_gan_cost: delta must be >= 0");
    if (d_real < 0.0 || d_real > 1.0 || d_fake < 0.0 || d_fake > 1.0)
        throw InvalidArgumentError("compute_gan_cost: probability outside [0, 1]");
    bool hit = false;
    auto clamp_open = [&hit](double p) {
        if (p <= 0.0 || p >= 1.0) {
            hit = true;
            return std::clamp(p, 1e-12, 1.0 - 1e-12);
        }
        return p;
    };
    d_real = clamp_open(d_real);
    d_fake = clamp_open(d_fake);
    if (clamped) *clamped = hit;
    return std::log(d_real) + std::log1p(-d_fake) + delta;
}

double combined_loss(double k_cost, double ctc_cost, double lambda) {
    if (lambda < 0.0 || lambda > 1.0) throw InvalidArgumentError("combined_loss: lambda outside [0, 1]");
    return lambda * k_cost + (1.0 - lambda) * ctc_cost;
}

Path transfer(const GanModel& model, const Path& path) {
    if (static_cast<int>(path.points.size()) != model.config.seq_len)
        throw LengthMismatchError("transfer: path length " + std::to_string(path.points.size()) +
                                  ", model expects " + std::to_string(model.config.seq_len));
    Path out;
    out.word = path.word;
    out.source = Source::GAN;
    out.points = generator_forward(model.gen, path.points, nullptr);
    for (Point& p : out.points) {
        p.x = std::clamp(p.x, kCoordMin, kCoordMax);
        p.y = std::clamp(p.y, kCoordMin, kCoordMax);
    }
    return out;
}

StepReport GanTrainer::train_step(const std::vector<const Path*>& batch_x,
                                  const std::vector<const Path*>& batch_p) {
    const GanConfig& cfg = model_.config;
    check_batch(batch_x, cfg.seq_len, "train_step: synthetic batch");
    check_batch(batch_p, cfg.seq_len, "train_step: user batch");
    const double lambda = cfg.lambda;
    const std::size_t bx = batch_x.size();
    const std::size_t bp = batch_p.size();
    const int L = cfg.seq_len;
    StepReport report;

    // Generator forward pass on the synthetic batch.
    std::vector<GenCache> gen_caches(bx);
    std::vector<std::vector<Point>> ys(bx);
    parallel_for(bx, [&](std::size_t i) {
        ys[i] = generator_forward(model_.gen, batch_x[i]->points, &gen_caches[i]);
    });
    double delta_sum = 0.0;
    for (std::size_t i = 0; i < bx; ++i) delta_sum += path_distance(batch_x[i]->points, ys[i]);
    report.delta_mean = delta_sum / static_cast<double>(bx);

    if (lambda > 0.0) {
        // Discriminator ascent on E[log D(P)] + E[log(1 - D(Y))], G frozen.
        std::vector<DiscCache> real_caches(bp), fake_caches(bx);
        parallel_for(bp + bx, [&](std::size_t i) {
            if (i < bp)
                discriminator_forward(model_.disc, batch_p[i]->points, &real_caches[i]);
            else
                discriminator_forward(model_.disc, ys[i - bp], &fake_caches[i - bp]);
        });
        discriminator_evals_ += static_cast<long>(bp + bx);

        double obj = 0.0, mean_real = 0.0, mean_fake = 0.0;
        for (const DiscCache& c : real_caches) {
            obj += log_sigmoid(c.logit) / static_cast<double>(bp);
            mean_real += c.prob / static_cast<double>(bp);
        }
        for (const DiscCache& c : fake_caches) {
            obj += (-c.logit + log_sigmoid(c.logit)) / static_cast<double>(bx);  // log(1 - p)
            mean_fake += c.prob / static_cast<double>(bx);
        }
        report.d_loss = -obj;
        report.gan_cost = compute_gan_cost(mean_real, mean_fake, report.delta_mean);

        std::vector<Discriminator> dgrads(bp + bx, zeroed_copy(model_.disc));
        parallel_for(bp + bx, [&](std::size_t i) {
            if (i < bp) {
                const double d_logit = (real_caches[i].prob - 1.0) / static_cast<double>(bp);
                discriminator_backward(model_.disc, real_caches[i], d_logit, dgrads[i], nullptr);
            } else {
                const double d_logit = fake_caches[i - bp].prob / static_cast<double>(bx);
                discriminator_backward(model_.disc, fake_caches[i - bp], d_logit, dgrads[i], nullptr);
            }
        });
        Discriminator dsum = zeroed_copy(model_.disc);
        for (const Discriminator& g : dgrads) accumulate(dsum, g);
        adam_step(param_list(model_.disc), param_list_const(dsum), state_d_, cfg.lr_d);
    }

    // Joint generator + classifier descent on
    // lambda * (adversarial + delta) + (1 - lambda) * CTC.
    std::vector<std::vector<Point>> d_y(bx, std::vector<Point>(static_cast<std::size_t>(L)));
    double adv_sum = 0.0;

    if (lambda > 0.0) {
        std::vector<DiscCache> caches(bx);
        std::vector<std::vector<Point>> adv_grads(bx);
        std::vector<Discriminator> scratch(bx, zeroed_copy(model_.disc));
        parallel_for(bx, [&](std::size_t i) {
            discriminator_forward(model_.disc, ys[i], &caches[i]);
            double d_logit;
            if (cfg.literal_minimax) {
                d_logit = -caches[i].prob;  // d/du log(1 - sigmoid(u))
            } else {
                d_logit = caches[i].prob - 1.0;  // d/du of -log sigmoid(u)
            }
            discriminator_backward(model_.disc, caches[i], d_logit * lambda / static_cast<double>(bx),
                                   scratch[i], &adv_grads[i]);
        });
        discriminator_evals_ += static_cast<long>(bx);
        for (std::size_t i = 0; i < bx; ++i) {
            adv_sum += cfg.literal_minimax ? (-caches[i].logit + log_sigmoid(caches[i].logit))
                                           : -log_sigmoid(caches[i].logit);
            const double dscale = lambda * 2.0 / (static_cast<double>(L) * static_cast<double>(bx));
            for (int t = 0; t < L; ++t)
                d_y[i][static_cast<std::size_t>(t)] =
                    adv_grads[i][static_cast<std::size_t>(t)] +
                    (ys[i][static_cast<std::size_t>(t)] - batch_x[i]->points[static_cast<std::size_t>(t)]) * dscale;
        }
    }

    double ctc_sum = 0.0;
    int feasible = 0;
    Classifier cls_grads;
    if (lambda < 1.0) {
        cls_grads = zeroed_copy(model_.cls);
        struct CtcItem {
            bool ok = false;
            double loss = 0.0;
            Classifier grad;
            std::vector<Point> d_in;
        };
        std::vector<CtcItem> items(bx);
        parallel_for(bx, [&](std::size_t i) {
            const std::string& word = batch_x[i]->word;
            if (ctc_min_length(word) > L) return;
            items[i].ok = true;
            ClsCache cache;
            const Matrix probs = classifier_forward(model_.cls, ys[i], &cache);
            items[i].loss = ctc_loss(probs, word, model_.alphabet);
            const Matrix d_logits = ctc_grad(probs, word, model_.alphabet);
            items[i].grad = zeroed_copy(model_.cls);
            classifier_backward(model_.cls, cache, d_logits, items[i].grad, &items[i].d_in);
        });
        for (const CtcItem& it : items)
            if (it.ok) ++feasible;
        classifier_evals_ += feasible;
        report.ctc_skipped = static_cast<int>(bx) - feasible;
        if (feasible > 0) {
            const double scale = (1.0 - lambda) / static_cast<double>(feasible);
            for (std::size_t i = 0; i < bx; ++i) {
                if (!items[i].ok) continue;
                ctc_sum += items[i].loss;
                std::vector<Matrix*> dst = param_list(cls_grads);
                std::vector<Matrix*> src = param_list(items[i].grad);
                for (std::size_t m = 0; m < dst.size(); ++m)
                    for (std::size_t k = 0; k < dst[m]->size(); ++k)
                        dst[m]->v[k] += scale * src[m]->v[k];
                for (int t = 0; t < L; ++t)
                    d_y[i][static_cast<std::size_t>(t)] =
                        d_y[i][static_cast<std::size_t>(t)] + items[i].d_in[static_cast<std::size_t>(t)] * scale;
            }
        }
    }

    std::vector<Generator> ggrads(bx, zeroed_copy(model_.gen));
    parallel_for(bx, [&](std::size_t i) {
        generator_backward(model_.gen, batch_x[i]->points, gen_caches[i], d_y[i], ggrads[i]);
    });
    Generator gsum = zeroed_copy(model_.gen);
    for (const Generator& g : ggrads) accumulate(gsum, g);
    adam_step(param_list(model_.gen), param_list_const(gsum), state_g_, cfg.lr_g);
    if (lambda < 1.0 && feasible > 0)
        adam_step(param_list(model_.cls), param_list_const(cls_grads), state_c_, cfg.lr_c);

    const double ctc_mean = feasible > 0 ? ctc_sum / feasible : 0.0;
    const double adv_mean = adv_sum / static_cast<double>(bx);
    report.ctc_loss = ctc_mean;
    report.g_loss = lambda * (adv_mean + report.delta_mean) + (1.0 - lambda) * ctc_mean;
    report.discriminator_evals = discriminator_evals_;
    report.classifier_evals = classifier_evals_;
    return report;
}

std::string loss_curve_csv(const std::vector<TrainLogRow>& rows) {
    std::string out = "step,d_loss,g_loss,ctc_loss,delta_mean\n";
    char buf[160];
    for (const TrainLogRow& r : rows) {
        std::snprintf(buf, sizeof(buf), "%d,%.6f,%.6f,%.6f,%.6f\n", r.step, r.d_loss, r.g_loss,
                      r.ctc_loss, r.delta_mean);
        out += buf;
    }
    return out;
}

std::vector<TrainLogRow> gan_train(GanModel& model, const Corpus& synthetic, const Corpus& user,
                                   int iterations,
                                   const std::function<void(int, const GanModel&)>& checkpoint_sink) {
    const GanConfig& cfg = model.config;
    if (iterations < 0) throw InvalidArgumentError("gan_train: negative iterations");
    if (synthetic.paths.empty() || user.paths.empty())
        throw InvalidArgumentError("gan_train: empty corpus");
    for (const Corpus* c : {&synthetic, &user})
        for (const Path& p : c->paths)
            if (static_cast<int>(p.points.size()) != cfg.seq_len)
                throw LengthMismatchError("gan_train: corpus path length " +
                                          std::to_string(p.points.size()) + ", model expects " +
                                          std::to_string(cfg.seq_len));

    std::vector<TrainLogRow> rows;
    if (iterations == 0) return rows;

    // Classifier warm-up on raw synthetic + user paths so the CTC term is
    // informative when joint training starts.
    if (cfg.pretrain_steps > 0 && cfg.lambda < 1.0) {
        std::vector<const Path*> pool;
        for (const Path& p : synthetic.paths) pool.push_back(&p);
        for (const Path& p : user.paths) pool.push_back(&p);
        EpochSampler sampler(pool.size(), derive_seed(cfg.seed, "gan-pretrain"));
        AdamState state;
        for (int step = 0; step < cfg.pretrain_steps; ++step) {
            std::vector<const Path*> batch;
            for (const std::size_t i : sampler.next_batch(static_cast<std::size_t>(cfg.batch)))
                batch.push_back(pool[i]);
            Classifier grads = zeroed_copy(model.cls);
            int skipped = 0;
            classifier_ctc_batch(model.cls, batch, model.alphabet, 1.0, &grads, &skipped);
            adam_step(param_list(model.cls), param_list_const(grads), state, cfg.lr_c);
        }
    }

    GanTrainer trainer(model);
    EpochSampler sample_x(synthetic.paths.size(), derive_seed(cfg.seed, "gan-batch-x"));
    EpochSampler sample_p(user.paths.size(), derive_seed(cfg.seed, "gan-batch-p"));
    for (int step = 1; step <= iterations; ++step) {
        std::vector<const Path*> bx, bp;
        for (const std::size_t i : sample_x.next_batch(static_cast<std::size_t>(cfg.batch)))
            bx.push_back(&synthetic.paths[i]);
        for (const std::size_t i : sample_p.next_batch(static_cast<std::size_t>(cfg.batch)))
            bp.push_back(&user.paths[i]);
        const StepReport rep = trainer.train_step(bx, bp);
        rows.push_back({step, rep.d_loss, rep.g_loss, rep.ctc_loss, rep.delta_mean});
        if (checkpoint_sink && cfg.checkpoint_every > 0 && step % cfg.checkpoint_every == 0)
            checkpoint_sink(step, model);
    }
    return rows;
}

}  // namespace swipegan
