#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "dmoea/dmop.hpp"

namespace dmoea {

/// Gaussian kernel parameters and the box constraint of the soft-margin
/// dual problem (every alpha lies in [0, regularization]).
struct KernelConfig {
  double scale = 1.0;          // Gaussian width sigma
  double regularization = 10.0;
};

/// exp(-|a-b|^2 / (2 scale^2)).
double kernel_eval(const KernelConfig& config, const DecisionVector& a,
                   const DecisionVector& b);

struct LabeledSample {
  DecisionVector x;
  int y = 1;  // +1 or -1
};

/// KKT case of one training sample in the dual solution:
///   Margin:    0 < alpha < regularization, g == 0   (set S)
///   Bounded:   alpha == regularization,    g <= 0   (set E)
///   Remaining: alpha == 0,                 g >= 0   (set R)
enum class KktSet : unsigned char { Margin, Bounded, Remaining };

/// Margin functions recomputed from scratch:
///   g_i = sum_j y_i y_j K(x_i,x_j) alpha_j + y_i b - 1,
///   h   = sum_j y_j alpha_j.
struct KktReport {
  std::vector<double> g;
  double h = 0.0;
  std::vector<KktSet> tags;  // the machine's maintained partition
};

/// A binary classifier over decision vectors, trained one sample at a time.
/// Each insertion restores the exact KKT conditions of the dual problem over
/// all samples seen so far, so the state after n insertions matches a batch
/// solve on the same n samples.
class KernelMachine {
 public:
  explicit KernelMachine(KernelConfig config);

  /// Inserts one training sample and restores the KKT conditions.
  void increment(const LabeledSample& sample);

  /// f(x) = sum_i alpha_i y_i K(x_i, x) + b over samples with alpha > 0.
  double decision_value(const DecisionVector& x) const;

  /// +1 if decision_value(x) > 0, else -1.
  int classify(const DecisionVector& x) const;

  std::size_t size() const { return samples_.size(); }
  const std::vector<LabeledSample>& samples() const { return samples_; }
  const std::vector<double>& alphas() const { return alpha_; }
  double bias() const { return bias_; }
  const KernelConfig& config() const { return config_; }
  const std::vector<KktSet>& tags() const { return tag_; }

  /// Serializes samples, alphas, bias, and kernel parameters as JSON.
  std::string to_json() const;

 private:
  std::vector<double> kernel_column(const DecisionVector& x) const;
  bool margin_insert(std::size_t u, std::vector<double> column);
  void margin_erase(std::size_t position);
  bool rebuild_inverse();
  bool restore_kkt(std::size_t c, const std::vector<double>& column_c);
  void normalize_margin_set();
  void recenter_bias();
  void retrain_from_scratch();

  KernelConfig config_;
  std::vector<LabeledSample> samples_;
  std::vector<double> alpha_;
  std::vector<double> g_;  // maintained margin function per sample
  std::vector<KktSet> tag_;
  double bias_ = 0.0;

  // Margin-set state: sample indices in bordered-inverse order, one kernel
  // column (over all samples) per member, and the (|S|+1)^2 row-major
  // inverse of the bordered margin matrix.
  std::vector<std::size_t> margin_;
  std::vector<std::vector<double>> margin_columns_;
  std::vector<double> inverse_;
  bool retraining_ = false;
  std::uint64_t rebuild_epoch_ = 0;  // bumped when state is rebuilt wholesale
};

/// Recomputes g and h from scratch and returns them with the maintained tags.
KktReport kkt_partition(const KernelMachine& machine);

/// Trains a machine by inserting `samples` in the given order into an empty
/// machine. Errors if fewer than two samples or only one label is present.
KernelMachine train_batch(const std::vector<LabeledSample>& samples,
                          const KernelConfig& config);

/// Picks a kernel scale by stratified k-fold cross-validation accuracy over
/// `grid`; ties resolve to the smallest scale. Requires 2 <= folds <= n.
double grid_search_scale(const std::vector<LabeledSample>& samples,
                         const std::vector<double>& grid, int folds,
                         double regularization);

/// The candidate scales used when no explicit scale is given:
/// {2^k * median pairwise distance : k = -2..2}, the standard search range
/// around the median heuristic (the median itself sits at index 2).
std::vector<double> default_scale_grid(const std::vector<LabeledSample>& samples);

}  // namespace dmoea
