#include "budgetlearn/model.hpp"

#include "budgetlearn/errors.hpp"
#include "budgetlearn/kernels.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>

namespace budgetlearn {

ModelParams ModelParams::zeros(int num_classes, int dim) {
    ModelParams p;
    p.num_classes = num_classes;
    p.dim = dim;
    p.weights.assign(static_cast<std::size_t>(num_classes) * static_cast<std::size_t>(dim), 0.0);
    p.bias.assign(static_cast<std::size_t>(num_classes), 0.0);
    return p;
}

std::string params_to_json(const ModelParams& params) {
    nlohmann::json j;
    j["num_classes"] = params.num_classes;
    j["dim"] = params.dim;
    j["weights"] = params.weights; // row-major C x d
    j["bias"] = params.bias;
    return j.dump();
}

ModelParams params_from_json(const std::string& json_text) {
    const auto j = nlohmann::json::parse(json_text);
    ModelParams p;
    p.num_classes = j.at("num_classes").get<int>();
    p.dim = j.at("dim").get<int>();
    p.weights = j.at("weights").get<std::vector<double>>();
    p.bias = j.at("bias").get<std::vector<double>>();
    if (p.weights.size() != static_cast<std::size_t>(p.num_classes) * static_cast<std::size_t>(p.dim) ||
        p.bias.size() != static_cast<std::size_t>(p.num_classes))
        throw ParseError("model json: shape mismatch");
    return p;
}

int ClassDistribution::top_class() const {
    int best = 0;
    for (std::size_t c = 1; c < probs.size(); ++c) {
        if (probs[c] > probs[static_cast<std::size_t>(best)]) best = static_cast<int>(c);
    }
    return best;
}

double ClassDistribution::top_prob() const {
    return probs[static_cast<std::size_t>(top_class())];
}

double ClassDistribution::entropy() const {
    double h = 0.0;
    for (const double p : probs) {
        if (p > 0.0) h -= p * std::log(p);
    }
    return h;
}

namespace {

// softmax(W x + b) with max-subtraction; returns log-sum-exp-normalized
// probabilities into out[0..C).
void softmax_row(const ModelParams& params, std::span<const double> x, double* out) {
    const int c_count = params.num_classes;
    for (int c = 0; c < c_count; ++c) {
        const auto w = params.class_weights(c);
        out[c] = kernels::dot(w.data(), x.data(), x.size()) + params.bias[static_cast<std::size_t>(c)];
    }
    double zmax = out[0];
    for (int c = 1; c < c_count; ++c) zmax = std::max(zmax, out[c]);
    double denom = 0.0;
    for (int c = 0; c < c_count; ++c) {
        out[c] = std::exp(out[c] - zmax);
        denom += out[c];
    }
    for (int c = 0; c < c_count; ++c) out[c] /= denom;
}

double total_weight(const LabeledSet& labeled) {
    double t = 0.0;
    for (const auto& e : labeled.entries()) t += e.weight;
    return t;
}

void check_labeled(const LabeledSet& labeled, const Dataset& dataset) {
    if (labeled.empty()) throw ContractError("train: labeled set is empty");
    for (const auto& e : labeled.entries()) {
        if (e.sample_id < 0 || static_cast<std::size_t>(e.sample_id) >= dataset.num_samples())
            throw ContractError("train: labeled id " + std::to_string(e.sample_id) +
                                " not in dataset");
        if (e.label < 0 || e.label >= dataset.num_classes())
            throw ContractError("train: label out of range for sample " +
                                std::to_string(e.sample_id));
    }
}

} // namespace

double model_loss(const ModelParams& params, const LabeledSet& labeled,
                  const Dataset& dataset, double l2) {
    check_labeled(labeled, dataset);
    const double wsum = total_weight(labeled);
    if (wsum <= 0.0) throw ContractError("model_loss: total sample weight must be positive");

    std::vector<double> probs(static_cast<std::size_t>(params.num_classes));
    double ce = 0.0;
    for (const auto& e : labeled.entries()) {
        if (e.weight == 0.0) continue;
        softmax_row(params, dataset.row(e.sample_id), probs.data());
        const double p = std::max(probs[static_cast<std::size_t>(e.label)], 1e-300);
        ce -= e.weight * std::log(p);
    }
    const double reg =
        0.5 * l2 * kernels::dot(params.weights.data(), params.weights.data(), params.weights.size());
    return ce / wsum + reg;
}

void model_loss_gradient(const ModelParams& params, const LabeledSet& labeled,
                         const Dataset& dataset, double l2, double* loss_out,
                         ModelParams* grad_out) {
    check_labeled(labeled, dataset);
    const double wsum = total_weight(labeled);
    if (wsum <= 0.0) throw ContractError("model_loss_gradient: total sample weight must be positive");
    const double inv_wsum = 1.0 / wsum;

    ModelParams grad = ModelParams::zeros(params.num_classes, params.dim);
    std::vector<double> probs(static_cast<std::size_t>(params.num_classes));
    double ce = 0.0;
    const std::size_t d = dataset.dim();
    for (const auto& e : labeled.entries()) {
        const auto x = dataset.row(e.sample_id);
        softmax_row(params, x, probs.data());
        if (e.weight != 0.0) {
            const double p = std::max(probs[static_cast<std::size_t>(e.label)], 1e-300);
            ce -= e.weight * std::log(p);
        }
        for (int c = 0; c < params.num_classes; ++c) {
            const double indicator = (c == e.label) ? 1.0 : 0.0;
            const double coeff = e.weight * (probs[static_cast<std::size_t>(c)] - indicator) * inv_wsum;
            if (coeff == 0.0) continue;
            kernels::axpy(coeff, x.data(),
                          grad.weights.data() + static_cast<std::size_t>(c) * d, d);
            grad.bias[static_cast<std::size_t>(c)] += coeff;
        }
    }
    // L2 on the weights only
    if (l2 != 0.0) {
        kernels::axpy(l2, params.weights.data(), grad.weights.data(), grad.weights.size());
    }
    if (loss_out != nullptr) {
        const double reg = 0.5 * l2 *
            kernels::dot(params.weights.data(), params.weights.data(), params.weights.size());
        *loss_out = ce * inv_wsum + reg;
    }
    if (grad_out != nullptr) *grad_out = std::move(grad);
}

ModelParams train(const LabeledSet& labeled, const Dataset& dataset, const Hyper& hyper,
                  const ModelParams* init, RngStream& rng, RunContext& ctx,
                  std::vector<double>* loss_history) {
    (void)rng;
    check_labeled(labeled, dataset);
    if (hyper.epochs < 1) throw ContractError("train: epochs must be >= 1");
    if (hyper.learning_rate <= 0.0) throw ContractError("train: learning_rate must be > 0");
    if (hyper.l2 < 0.0) throw ContractError("train: l2 must be >= 0");

    ModelParams params;
    if (init != nullptr) {
        if (!init->shape_matches(dataset)) throw ContractError("train: init shape mismatch");
        params = *init;
    } else {
        params = ModelParams::zeros(dataset.num_classes(), static_cast<int>(dataset.dim()));
    }

    ModelParams grad;
    double loss = 0.0;
    for (int epoch = 0; epoch < hyper.epochs; ++epoch) {
        model_loss_gradient(params, labeled, dataset, hyper.l2, &loss, &grad);
        if (!std::isfinite(loss))
            throw NumericError("train: non-finite loss at epoch " + std::to_string(epoch));
        kernels::axpy(-hyper.learning_rate, grad.weights.data(), params.weights.data(),
                      params.weights.size());
        kernels::axpy(-hyper.learning_rate, grad.bias.data(), params.bias.data(),
                      params.bias.size());
        if (loss_history != nullptr) loss_history->push_back(loss);
    }
    ctx.counters.train_count += 1;
    return params;
}

std::vector<ClassDistribution> predict_proba(const ModelParams& params,
                                             std::span<const int> sample_ids,
                                             const Dataset& dataset, RunContext& ctx) {
    if (!params.shape_matches(dataset))
        throw ContractError("predict_proba: model shape does not match dataset");
    std::vector<ClassDistribution> out;
    out.reserve(sample_ids.size());
    for (const int id : sample_ids) {
        if (id < 0 || static_cast<std::size_t>(id) >= dataset.num_samples())
            throw ContractError("predict_proba: unknown sample id " + std::to_string(id));
        ClassDistribution dist;
        dist.probs.resize(static_cast<std::size_t>(params.num_classes));
        softmax_row(params, dataset.row(id), dist.probs.data());
        out.push_back(std::move(dist));
    }
    ctx.counters.infer_count += sample_ids.size();
    return out;
}

std::vector<int> predict(const ModelParams& params, std::span<const int> sample_ids,
                         const Dataset& dataset, RunContext& ctx) {
    const auto dists = predict_proba(params, sample_ids, dataset, ctx);
    std::vector<int> labels;
    labels.reserve(dists.size());
    for (const auto& d : dists) labels.push_back(d.top_class());
    return labels;
}

void LogisticClassifier::fit(const LabeledSet& labeled, const Dataset& dataset, RngStream& rng,
                             RunContext& ctx) {
    params_ = train(labeled, dataset, hyper_, nullptr, rng, ctx);
    fitted_ = true;
}

void LogisticClassifier::refit(const LabeledSet& labeled, const Dataset& dataset, int epochs,
                               RngStream& rng, RunContext& ctx) {
    if (!fitted_) throw ContractError("refit: classifier has not been fit");
    Hyper h = hyper_;
    h.epochs = epochs;
    params_ = train(labeled, dataset, h, &params_, rng, ctx);
}

std::vector<ClassDistribution> LogisticClassifier::predict_proba(
    std::span<const int> sample_ids, const Dataset& dataset, RunContext& ctx) const {
    if (!fitted_) throw ContractError("predict_proba: classifier has not been fit");
    return budgetlearn::predict_proba(params_, sample_ids, dataset, ctx);
}

std::vector<int> LogisticClassifier::predict(std::span<const int> sample_ids,
                                             const Dataset& dataset, RunContext& ctx) const {
    if (!fitted_) throw ContractError("predict: classifier has not been fit");
    return budgetlearn::predict(params_, sample_ids, dataset, ctx);
}

const ModelParams& LogisticClassifier::params() const {
    if (!fitted_) throw ContractError("params: classifier has not been fit");
    return params_;
}

} // namespace budgetlearn
