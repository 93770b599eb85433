#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace lgp {

using Logits = std::array<double, 6>;

struct LcpSample {
  std::vector<Logits> logits;  // one row per [LGMASK]
  std::vector<int> gold;       // category codes, same length
};

using LcpBatch = std::vector<LcpSample>;

enum class Reduction {
  kSum,        // sum over samples of the per-sample mean CE
  kBatchMean,  // the same, divided by the number of samples with masks
};

struct LossConfig {
  double lambda = 0.8;
  Reduction reduction = Reduction::kSum;

  void validate() const;
};

struct LcpLoss {
  double value = 0.0;
  bool empty_batch = false;  // set when there was nothing to average
};

// -log softmax(logits)[gold], via log-sum-exp.
double softmax_cross_entropy(const Logits& logits, int gold);

// Throws NumericError on non-finite logits, ValidationError on bad shapes or
// codes. Samples without masks contribute exactly zero.
LcpLoss lcp_loss(std::span<const LcpSample> batch, const LossConfig& config = {});

// lambda * lcp + (1 - lambda) * mlm
double idol_loss(double lcp, double mlm, const LossConfig& config = {});

// Neumaier compensated accumulator.
class CompensatedSum {
 public:
  void add(double x) noexcept;
  double value() const noexcept { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace lgp
