#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "swipegan/adam.hpp"
#include "swipegan/corpus.hpp"
#include "swipegan/ctc.hpp"
#include "swipegan/networks.hpp"

namespace swipegan {

struct GanConfig {
    int seq_len = 64;
    int hidden = 64;
    int depth = 2;
    double lambda = 0.5;
    double lr_g = 1e-3;
    double lr_d = 1e-3;
    double lr_c = 1e-3;
    int batch = 16;
    int iterations = 2000;
    int pretrain_steps = 300;
    int checkpoint_every = 0;       // 0 disables periodic checkpoints
    bool literal_minimax = false;   // generator uses log(1 - D(Y)) verbatim
    std::uint64_t seed = 1;

    void validate() const;
};

// Generator, discriminator and classifier around one path length L, plus the
// interpolation weight between the adversarial and classification tasks.
struct GanModel {
    GanConfig config;
    CtcAlphabet alphabet;
    Generator gen;
    Discriminator disc;
    Classifier cls;

    static GanModel init(const GanConfig& config,
                         const std::string& characters = "abcdefghijklmnopqrstuvwxyz");

    std::string to_json() const;
    static GanModel from_json(const std::string& text);
    void save(const std::string& file) const;
    static GanModel load(const std::string& file);
};

// log(dP) + log(1 - dY) + delta on batch means; probabilities at {0, 1} are
// clamped to [1e-12, 1 - 1e-12] and flagged.
double compute_gan_cost(double d_real, double d_fake, double delta, bool* clamped = nullptr);

// lambda * k_cost + (1 - lambda) * ctc_cost.
double combined_loss(double k_cost, double ctc_cost, double lambda);

// Runs the generator on one path; word kept, source becomes GAN.
Path transfer(const GanModel& model, const Path& path);

struct StepReport {
    double d_loss = 0.0;        // discriminator descent objective
    double g_loss = 0.0;        // joint generator+classifier objective
    double ctc_loss = 0.0;      // mean CTC over feasible batch paths
    double delta_mean = 0.0;    // mean content distance between X and G(X)
    double gan_cost = 0.0;      // literal minimax cost on batch means
    int ctc_skipped = 0;
    long discriminator_evals = 0;
    long classifier_evals = 0;
};

// Owns the optimizer state; one train_step = one discriminator ascent step
// followed by one joint generator+classifier descent step.
class GanTrainer {
public:
    explicit GanTrainer(GanModel& model) : model_(model) {}

    StepReport train_step(const std::vector<const Path*>& batch_x,
                          const std::vector<const Path*>& batch_p);

    long discriminator_evals() const { return discriminator_evals_; }
    long classifier_evals() const { return classifier_evals_; }

private:
    GanModel& model_;
    AdamState state_g_, state_d_, state_c_;
    long discriminator_evals_ = 0;
    long classifier_evals_ = 0;
};

struct TrainLogRow {
    int step = 0;
    double d_loss = 0.0, g_loss = 0.0, ctc_loss = 0.0, delta_mean = 0.0;
};

std::string loss_curve_csv(const std::vector<TrainLogRow>& rows);

// Pre-trains the classifier on synthetic+user batches, then alternates
// adversarial steps over seeded shuffled batches. Iterations = 0 leaves the
// model untouched.
std::vector<TrainLogRow> gan_train(
    GanModel& model, const Corpus& synthetic, const Corpus& user, int iterations,
    const std::function<void(int, const GanModel&)>& checkpoint_sink = {});

}  // namespace swipegan
