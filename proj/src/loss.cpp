#include "lgp/loss.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lgp/error.hpp"

namespace lgp {

void CompensatedSum::add(double x) noexcept {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    compensation_ += (sum_ - t) + x;
  } else {
    compensation_ += (x - t) + sum_;
  }
  sum_ = t;
}

void LossConfig::validate() const {
  if (!std::isfinite(lambda) || lambda < 0.0 || lambda > 1.0) {
    throw ConfigError("loss", "lambda must lie in [0, 1], got " + std::to_string(lambda));
  }
}

double softmax_cross_entropy(const Logits& logits, int gold) {
  if (gold < 0 || gold >= static_cast<int>(logits.size())) {
    throw ValidationError("loss", "gold code " + std::to_string(gold) + " not in 0..5");
  }
  for (double x : logits) {
    if (!std::isfinite(x)) throw NumericError("loss", "non-finite logit");
  }
  const double peak = *std::max_element(logits.begin(), logits.end());
  CompensatedSum total;
  for (double x : logits) total.add(std::exp(x - peak));
  return peak + std::log(total.value()) - logits[static_cast<std::size_t>(gold)];
}

LcpLoss lcp_loss(std::span<const LcpSample> batch, const LossConfig& config) {
  config.validate();
  CompensatedSum sum;
  std::size_t with_masks = 0;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const LcpSample& sample = batch[i];
    if (sample.logits.size() != sample.gold.size()) {
      throw ValidationError("loss", "sample " + std::to_string(i) + " has " +
                                        std::to_string(sample.logits.size()) + " logit rows but " +
                                        std::to_string(sample.gold.size()) + " gold labels");
    }
    if (sample.logits.empty()) continue;
    CompensatedSum per_sample;
    for (std::size_t j = 0; j < sample.logits.size(); ++j) {
      per_sample.add(softmax_cross_entropy(sample.logits[j], sample.gold[j]));
    }
    sum.add(per_sample.value() / static_cast<double>(sample.logits.size()));
    ++with_masks;
  }
  LcpLoss result;
  if (with_masks == 0) {
    result.empty_batch = true;
    return result;
  }
  result.value = sum.value();
  if (config.reduction == Reduction::kBatchMean) {
    result.value /= static_cast<double>(with_masks);
  }
  return result;
}

double idol_loss(double lcp, double mlm, const LossConfig& config) {
  config.validate();
  if (!std::isfinite(lcp) || !std::isfinite(mlm)) {
    throw NumericError("loss", "component losses must be finite");
  }
  if (lcp < 0.0 || mlm < 0.0) throw NumericError("loss", "component losses must be non-negative");
  return config.lambda * lcp + (1.0 - config.lambda) * mlm;
}

}  // namespace lgp
