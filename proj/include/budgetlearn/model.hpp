#pragma once

#include "budgetlearn/dataset.hpp"
#include "budgetlearn/rng.hpp"

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace budgetlearn {

struct Hyper {
    double learning_rate = 0.1;
    double l2 = 1e-3;
    int epochs = 200;
};

// Weights (C x d, row-major) and bias of the multinomial classifier.
struct ModelParams {
    int num_classes = 0;
    int dim = 0;
    std::vector<double> weights;
    std::vector<double> bias;

    static ModelParams zeros(int num_classes, int dim);
    std::span<const double> class_weights(int c) const {
        return {weights.data() + static_cast<std::size_t>(c) * static_cast<std::size_t>(dim),
                static_cast<std::size_t>(dim)};
    }
    bool shape_matches(const Dataset& dataset) const {
        return num_classes == dataset.num_classes() &&
               static_cast<std::size_t>(dim) == dataset.dim();
    }
};

std::string params_to_json(const ModelParams& params);
ModelParams params_from_json(const std::string& json_text);

struct ClassDistribution {
    std::vector<double> probs;

    // argmax with lowest-class tie-break
    int top_class() const;
    double top_prob() const;
    double entropy() const; // natural log, 0 log 0 == 0
};

// Training/inference event counts for the cost accounting. One train event
// per train call, one infer event per sample scored.
struct CostCounters {
    std::uint64_t train_count = 0;
    std::uint64_t infer_count = 0;

    friend bool operator==(const CostCounters&, const CostCounters&) = default;
};

// Per-run mutable context. Each run owns one; runs never share.
struct RunContext {
    CostCounters counters;
};

// Weighted cross-entropy with L2 penalty on weights (not bias):
//   (sum_i w_i * CE_i) / (sum_i w_i) + l2/2 * ||W||^2
double model_loss(const ModelParams& params, const LabeledSet& labeled,
                  const Dataset& dataset, double l2);

// Analytic gradient of model_loss; grad has the same shape as params.
void model_loss_gradient(const ModelParams& params, const LabeledSet& labeled,
                         const Dataset& dataset, double l2, double* loss_out,
                         ModelParams* grad_out);

// Full-batch gradient descent for hyper.epochs steps, from init when given,
// else from zeros. rng is unused by this deterministic trainer but part of
// the trainer contract. loss_history, when non-null, receives the loss after
// each epoch.
ModelParams train(const LabeledSet& labeled, const Dataset& dataset, const Hyper& hyper,
                  const ModelParams* init, RngStream& rng, RunContext& ctx,
                  std::vector<double>* loss_history = nullptr);

std::vector<ClassDistribution> predict_proba(const ModelParams& params,
                                             std::span<const int> sample_ids,
                                             const Dataset& dataset, RunContext& ctx);

std::vector<int> predict(const ModelParams& params, std::span<const int> sample_ids,
                         const Dataset& dataset, RunContext& ctx);

// Anything that yields class posteriors can drive the annotation loops.
class ProbabilisticClassifier {
public:
    virtual ~ProbabilisticClassifier() = default;

    virtual void fit(const LabeledSet& labeled, const Dataset& dataset, RngStream& rng,
                     RunContext& ctx) = 0;
    // Continue training from the current state for a reduced budget.
    virtual void refit(const LabeledSet& labeled, const Dataset& dataset, int epochs,
                       RngStream& rng, RunContext& ctx) = 0;
    virtual std::vector<ClassDistribution> predict_proba(std::span<const int> sample_ids,
                                                         const Dataset& dataset,
                                                         RunContext& ctx) const = 0;
    virtual std::vector<int> predict(std::span<const int> sample_ids, const Dataset& dataset,
                                     RunContext& ctx) const = 0;
    virtual std::unique_ptr<ProbabilisticClassifier> clone() const = 0;
};

class LogisticClassifier final : public ProbabilisticClassifier {
public:
    explicit LogisticClassifier(Hyper hyper) : hyper_(hyper) {}

    void fit(const LabeledSet& labeled, const Dataset& dataset, RngStream& rng,
             RunContext& ctx) override;
    void refit(const LabeledSet& labeled, const Dataset& dataset, int epochs, RngStream& rng,
               RunContext& ctx) override;
    std::vector<ClassDistribution> predict_proba(std::span<const int> sample_ids,
                                                 const Dataset& dataset,
                                                 RunContext& ctx) const override;
    std::vector<int> predict(std::span<const int> sample_ids, const Dataset& dataset,
                             RunContext& ctx) const override;
    std::unique_ptr<ProbabilisticClassifier> clone() const override {
        return std::make_unique<LogisticClassifier>(*this);
    }

    bool fitted() const { return fitted_; }
    const ModelParams& params() const;
    const Hyper& hyper() const { return hyper_; }

private:
    Hyper hyper_;
    ModelParams params_;
    bool fitted_ = false;
};

} // namespace budgetlearn
