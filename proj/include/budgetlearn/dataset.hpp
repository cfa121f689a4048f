#pragma once

#include "budgetlearn/rng.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace budgetlearn {

inline constexpr int kNoLabel = -1;

// Dense sample matrix with optional per-row labels. Sample ids are the row
// indices 0..num_samples-1; every partition, fold, and selection below
// speaks in these ids.
class Dataset {
public:
    Dataset() = default;

    // features is row-major num_samples x dim. labels uses kNoLabel for
    // missing entries and may be empty (fully unlabeled). num_classes <= 0
    // infers C as 1 + max label.
    static Dataset make(std::vector<double> features, std::size_t num_samples,
                        std::size_t dim, std::vector<int> labels, int num_classes = 0);

    std::size_t num_samples() const { return num_samples_; }
    std::size_t dim() const { return dim_; }
    int num_classes() const { return num_classes_; }

    std::span<const double> row(int id) const {
        return {features_.data() + static_cast<std::size_t>(id) * dim_, dim_};
    }
    bool has_label(int id) const { return labels_[static_cast<std::size_t>(id)] != kNoLabel; }
    int label(int id) const { return labels_[static_cast<std::size_t>(id)]; }
    bool fully_labeled() const;

    const std::vector<double>& features() const { return features_; }
    const std::vector<int>& labels() const { return labels_; }
    std::vector<int> all_ids() const;

private:
    std::vector<double> features_;
    std::vector<int> labels_;
    std::size_t num_samples_ = 0;
    std::size_t dim_ = 0;
    int num_classes_ = 0;
};

// CSV format: header "f0,...,f{d-1},label", one sample per row, empty label
// field means unlabeled. LF or CRLF. num_classes_override > 0 pins C and
// makes out-of-range labels a RangeError.
Dataset load_csv(const std::string& path, int num_classes_override = 0);
void save_csv(const Dataset& dataset, const std::string& path);

enum class Provenance { human, pseudo };

struct LabeledEntry {
    int sample_id;
    int label;
    Provenance provenance;
    double weight;
};

// The labeled set L. Insertion-ordered; a sample id may appear at most once.
class LabeledSet {
public:
    void add(const LabeledEntry& entry);
    void add_human(int sample_id, int label) { add({sample_id, label, Provenance::human, 1.0}); }
    void add_pseudo(int sample_id, int label, double weight) {
        add({sample_id, label, Provenance::pseudo, weight});
    }
    bool contains(int sample_id) const;
    void remove(int sample_id);

    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    std::size_t human_count() const;
    const std::vector<LabeledEntry>& entries() const { return entries_; }
    std::vector<int> human_ids() const;

    // Class frequencies of the human-labeled entries, normalized.
    std::vector<double> human_class_distribution(int num_classes) const;

private:
    std::vector<LabeledEntry> entries_;
};

// The unlabeled pool U; ordered, disjoint from the paired LabeledSet.
class UnlabeledPool {
public:
    UnlabeledPool() = default;
    explicit UnlabeledPool(std::vector<int> ids) : ids_(std::move(ids)) {}

    bool contains(int sample_id) const;
    void remove(int sample_id);

    std::size_t size() const { return ids_.size(); }
    bool empty() const { return ids_.empty(); }
    const std::vector<int>& ids() const { return ids_; }

private:
    std::vector<int> ids_;
};

// 5-fold partition of the sample universe; round r validates on fold r.
struct FoldSplit {
    static constexpr int kNumFolds = 5;
    std::array<std::vector<int>, kNumFolds> folds;

    std::vector<int> training_ids(int validation_fold) const;
    const std::vector<int>& validation_ids(int validation_fold) const {
        return folds[static_cast<std::size_t>(validation_fold)];
    }
};

// Near-equal seeded folds, stratified by class when every sample is labeled
// (per-class fold counts then differ by at most one).
FoldSplit make_folds(const Dataset& dataset, RngStream& rng);

double accuracy(std::span<const int> predictions, std::span<const int> truth);

// Per-feature z-scoring fit on one id set (a training fold) and applied to
// arbitrary rows. Features with zero standard deviation pass through
// unchanged.
class Standardizer {
public:
    static Standardizer fit(const Dataset& dataset, std::span<const int> ids);
    Dataset apply(const Dataset& dataset) const;

    const std::vector<double>& mean() const { return mean_; }
    const std::vector<double>& scale() const { return scale_; }

private:
    std::vector<double> mean_;
    std::vector<double> scale_;
};

} // namespace budgetlearn
