#include "budgetlearn/dataset.hpp"

#include "budgetlearn/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

namespace budgetlearn {

Dataset Dataset::make(std::vector<double> features, std::size_t num_samples,
                      std::size_t dim, std::vector<int> labels, int num_classes) {
    if (dim < 1) throw ContractError("Dataset: feature dimension must be >= 1");
    if (features.size() != num_samples * dim)
        throw ContractError("Dataset: features size does not match num_samples x dim");
    if (labels.empty()) {
        labels.assign(num_samples, kNoLabel);
    }
    if (labels.size() != num_samples)
        throw ContractError("Dataset: labels size does not match num_samples");

    int max_label = -1;
    for (const int y : labels) {
        if (y == kNoLabel) continue;
        if (y < 0) throw ContractError("Dataset: negative label");
        max_label = std::max(max_label, y);
    }
    int c = num_classes;
    if (c <= 0) c = std::max(max_label + 1, 2);
    if (c < 2) throw ContractError("Dataset: num_classes must be >= 2");
    if (max_label >= c)
        throw RangeError("Dataset: label " + std::to_string(max_label) +
                         " outside [0, " + std::to_string(c) + ")");
    for (const double v : features) {
        if (!std::isfinite(v)) throw ContractError("Dataset: non-finite feature value");
    }

    Dataset d;
    d.features_ = std::move(features);
    d.labels_ = std::move(labels);
    d.num_samples_ = num_samples;
    d.dim_ = dim;
    d.num_classes_ = c;
    return d;
}

bool Dataset::fully_labeled() const {
    return std::none_of(labels_.begin(), labels_.end(),
                        [](int y) { return y == kNoLabel; });
}

std::vector<int> Dataset::all_ids() const {
    std::vector<int> ids(num_samples_);
    std::iota(ids.begin(), ids.end(), 0);
    return ids;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_double_field(const std::string& raw, std::size_t line_no, std::size_t col) {
    const std::string s = trim(raw);
    double value = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw ParseError("csv line " + std::to_string(line_no) + ": column " +
                         std::to_string(col) + " is not numeric: '" + s + "'");
    }
    return value;
}

} // namespace

Dataset load_csv(const std::string& path, int num_classes_override) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open dataset file: " + path);

    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty dataset file: " + path);
    const auto header = split_csv_line(line);
    if (header.size() < 2 || trim(header.back()) != "label")
        throw ParseError(path + ": header must name feature columns followed by 'label'");
    const std::size_t dim = header.size() - 1;

    std::vector<double> features;
    std::vector<int> labels;
    std::size_t rows = 0;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != dim + 1) {
            throw ParseError("csv line " + std::to_string(line_no) + ": expected " +
                             std::to_string(dim + 1) + " columns, got " +
                             std::to_string(fields.size()));
        }
        for (std::size_t j = 0; j < dim; ++j) {
            features.push_back(parse_double_field(fields[j], line_no, j));
        }
        const std::string label_field = trim(fields[dim]);
        if (label_field.empty()) {
            labels.push_back(kNoLabel);
        } else {
            int y = 0;
            const auto [ptr, ec] =
                std::from_chars(label_field.data(), label_field.data() + label_field.size(), y);
            if (ec != std::errc{} || ptr != label_field.data() + label_field.size())
                throw ParseError("csv line " + std::to_string(line_no) +
                                 ": label is not an integer: '" + label_field + "'");
            if (y < 0 || (num_classes_override > 0 && y >= num_classes_override))
                throw RangeError("csv line " + std::to_string(line_no) + ": label " +
                                 std::to_string(y) + " outside [0, " +
                                 std::to_string(num_classes_override) + ")");
            labels.push_back(y);
        }
        ++rows;
    }
    if (rows == 0) throw ParseError(path + ": no data rows");
    return Dataset::make(std::move(features), rows, dim, std::move(labels),
                         num_classes_override);
}

void save_csv(const Dataset& dataset, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write dataset file: " + path);
    for (std::size_t j = 0; j < dataset.dim(); ++j) out << 'f' << j << ',';
    out << "label\n";
    char buf[32];
    for (std::size_t i = 0; i < dataset.num_samples(); ++i) {
        const auto row = dataset.row(static_cast<int>(i));
        for (std::size_t j = 0; j < dataset.dim(); ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", row[j]);
            out << buf << ',';
        }
        const int y = dataset.label(static_cast<int>(i));
        if (y != kNoLabel) out << y;
        out << '\n';
    }
    if (!out) throw IoError("write failed: " + path);
}

void LabeledSet::add(const LabeledEntry& entry) {
    if (entry.weight < 0.0) throw ContractError("LabeledSet: negative weight");
    if (contains(entry.sample_id))
        throw ContractError("LabeledSet: sample " + std::to_string(entry.sample_id) +
                            " already present");
    entries_.push_back(entry);
}

bool LabeledSet::contains(int sample_id) const {
    return std::any_of(entries_.begin(), entries_.end(),
                       [&](const LabeledEntry& e) { return e.sample_id == sample_id; });
}

void LabeledSet::remove(int sample_id) {
    const auto it = std::find_if(entries_.begin(), entries_.end(),
                                 [&](const LabeledEntry& e) { return e.sample_id == sample_id; });
    if (it == entries_.end())
        throw ContractError("LabeledSet: sample " + std::to_string(sample_id) + " not present");
    entries_.erase(it);
}

std::size_t LabeledSet::human_count() const {
    return static_cast<std::size_t>(
        std::count_if(entries_.begin(), entries_.end(),
                      [](const LabeledEntry& e) { return e.provenance == Provenance::human; }));
}

std::vector<int> LabeledSet::human_ids() const {
    std::vector<int> ids;
    for (const auto& e : entries_) {
        if (e.provenance == Provenance::human) ids.push_back(e.sample_id);
    }
    return ids;
}

std::vector<double> LabeledSet::human_class_distribution(int num_classes) const {
    std::vector<double> dist(static_cast<std::size_t>(num_classes), 0.0);
    double total = 0.0;
    for (const auto& e : entries_) {
        if (e.provenance != Provenance::human) continue;
        dist[static_cast<std::size_t>(e.label)] += 1.0;
        total += 1.0;
    }
    if (total == 0.0) throw ContractError("human_class_distribution: no human entries");
    for (double& v : dist) v /= total;
    return dist;
}

bool UnlabeledPool::contains(int sample_id) const {
    return std::find(ids_.begin(), ids_.end(), sample_id) != ids_.end();
}

void UnlabeledPool::remove(int sample_id) {
    const auto it = std::find(ids_.begin(), ids_.end(), sample_id);
    if (it == ids_.end())
        throw ContractError("UnlabeledPool: sample " + std::to_string(sample_id) +
                            " not in pool");
    ids_.erase(it);
}

std::vector<int> FoldSplit::training_ids(int validation_fold) const {
    std::vector<int> ids;
    for (int f = 0; f < kNumFolds; ++f) {
        if (f == validation_fold) continue;
        const auto& fold = folds[static_cast<std::size_t>(f)];
        ids.insert(ids.end(), fold.begin(), fold.end());
    }
    return ids;
}

FoldSplit make_folds(const Dataset& dataset, RngStream& rng) {
    const std::size_t n = dataset.num_samples();
    if (n < FoldSplit::kNumFolds)
        throw ConfigError("make_folds: need at least 5 samples, got " + std::to_string(n));

    // Deal shuffled ids one at a time into folds cycling a single cursor.
    // With class-grouped dealing the cursor carries across classes, which
    // bounds both the per-class and the total per-fold imbalance by one.
    std::vector<int> order;
    order.reserve(n);
    if (dataset.fully_labeled()) {
        std::vector<std::vector<int>> by_class(static_cast<std::size_t>(dataset.num_classes()));
        for (std::size_t i = 0; i < n; ++i)
            by_class[static_cast<std::size_t>(dataset.label(static_cast<int>(i)))].push_back(
                static_cast<int>(i));
        for (auto& group : by_class) {
            rng.shuffle(group);
            order.insert(order.end(), group.begin(), group.end());
        }
    } else {
        order = dataset.all_ids();
        rng.shuffle(order);
    }

    FoldSplit split;
    std::size_t cursor = rng.uniform_below(FoldSplit::kNumFolds);
    for (const int id : order) {
        split.folds[cursor].push_back(id);
        cursor = (cursor + 1) % FoldSplit::kNumFolds;
    }
    return split;
}

double accuracy(std::span<const int> predictions, std::span<const int> truth) {
    if (predictions.size() != truth.size())
        throw ContractError("accuracy: prediction/truth length mismatch");
    if (predictions.empty()) throw ContractError("accuracy: empty input");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        if (predictions[i] == truth[i]) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(predictions.size());
}

Standardizer Standardizer::fit(const Dataset& dataset, std::span<const int> ids) {
    if (ids.empty()) throw ContractError("Standardizer: empty id set");
    const std::size_t d = dataset.dim();
    Standardizer s;
    s.mean_.assign(d, 0.0);
    s.scale_.assign(d, 1.0);

    for (const int id : ids) {
        const auto row = dataset.row(id);
        for (std::size_t j = 0; j < d; ++j) s.mean_[j] += row[j];
    }
    const double inv_n = 1.0 / static_cast<double>(ids.size());
    for (double& m : s.mean_) m *= inv_n;

    std::vector<double> var(d, 0.0);
    for (const int id : ids) {
        const auto row = dataset.row(id);
        for (std::size_t j = 0; j < d; ++j) {
            const double c = row[j] - s.mean_[j];
            var[j] += c * c;
        }
    }
    for (std::size_t j = 0; j < d; ++j) {
        const double sd = std::sqrt(var[j] * inv_n);
        if (sd > 0.0) {
            s.scale_[j] = sd;
        } else {
            // constant feature: leave it untouched
            s.mean_[j] = 0.0;
            s.scale_[j] = 1.0;
        }
    }
    return s;
}

Dataset Standardizer::apply(const Dataset& dataset) const {
    if (mean_.size() != dataset.dim())
        throw ContractError("Standardizer: dimension mismatch");
    std::vector<double> features = dataset.features();
    const std::size_t d = dataset.dim();
    for (std::size_t i = 0; i < dataset.num_samples(); ++i) {
        double* row = features.data() + i * d;
        for (std::size_t j = 0; j < d; ++j) row[j] = (row[j] - mean_[j]) / scale_[j];
    }
    return Dataset::make(std::move(features), dataset.num_samples(), d, dataset.labels(),
                         dataset.num_classes());
}

} // namespace budgetlearn
