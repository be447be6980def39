#pragma once

// Single-class detection metrics: IoU, greedy score-ordered matching,
// all-points average precision and the coverage success rate.

#include "lesioncam/boxes.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lesioncam {

double iou(const Box& a, const Box& b);

/// Fraction of `gt` covered by `pred`: area(gt ∩ pred) / area(gt).
double coverage(const Box& gt, const Box& pred);

enum class Outcome { TP, FP };

struct MatchRecord {
  std::string image_id;
  std::size_t pred_index = 0;             ///< index into the predictions passed in
  std::optional<std::size_t> gt_index;    ///< index into the ground truth passed in
  double iou = 0.0;                       ///< best IoU against unmatched GT of the image
  Outcome outcome = Outcome::FP;
};

struct EvalConfig {
  double iou_threshold = 0.001;
  double coverage_frac = 1.0;

  void validate() const;
};

struct EvalReport {
  double ap = 0.0;
  double success_rate = 0.0;
  std::size_t n_gt = 0;
  std::size_t n_pred = 0;
  std::size_t n_tp = 0;
  std::size_t n_captured = 0;
  std::vector<MatchRecord> per_image;  ///< in descending score order
  EvalConfig config;
};

/// Predictions ranked by descending score (stable on ties); each claims the
/// highest-IoU still-unmatched GT of its image if that IoU reaches the
/// threshold. Throws FormatError if a prediction has no score.
std::vector<MatchRecord> match_detections(std::span<const BoxRecord> preds, std::span<const BoxRecord> gts,
                                          double iou_threshold);

/// Area under the monotone precision envelope (all-points interpolation).
/// Throws NoGroundTruth when `gts` is empty.
double average_precision(std::span<const BoxRecord> preds, std::span<const BoxRecord> gts, double iou_threshold);

/// Fraction of GT boxes with coverage >= coverage_frac by some prediction in
/// the same image. One prediction may capture any number of GT boxes.
double success_rate(std::span<const BoxRecord> preds, std::span<const BoxRecord> gts, double coverage_frac = 1.0);

EvalReport evaluate(std::span<const BoxRecord> preds, std::span<const BoxRecord> gts, const EvalConfig& config = {});

}  // namespace lesioncam
