#include "lesioncam/eval.hpp"

#include "lesioncam/errors.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace lesioncam {
namespace {

using GtIndex = std::unordered_map<std::string, std::vector<std::size_t>>;

GtIndex index_by_image(std::span<const BoxRecord> gts) {
  GtIndex by_image;
  for (std::size_t i = 0; i < gts.size(); ++i) by_image[gts[i].image_id].push_back(i);
  return by_image;
}

std::size_t count_captured(std::span<const BoxRecord> preds, std::span<const BoxRecord> gts, double coverage_frac) {
  std::unordered_map<std::string, std::vector<const Box*>> preds_by_image;
  for (const auto& p : preds) preds_by_image[p.image_id].push_back(&p.box);
  std::size_t captured = 0;
  for (const auto& g : gts) {
    const auto it = preds_by_image.find(g.image_id);
    if (it == preds_by_image.end()) continue;
    const bool hit = std::any_of(it->second.begin(), it->second.end(),
                                 [&](const Box* p) { return coverage(g.box, *p) >= coverage_frac; });
    captured += hit ? 1 : 0;
  }
  return captured;
}

// Recall rises by exactly 1/n_gt at every TP, so the envelope integral is
// the sum of envelope precisions at TP ranks divided by n_gt.
double envelope_area(const std::vector<MatchRecord>& ranked, std::size_t n_gt) {
  const std::size_t n = ranked.size();
  std::vector<double> precision(n);
  std::size_t tp = 0;
  for (std::size_t i = 0; i < n; ++i) {
    tp += ranked[i].outcome == Outcome::TP ? 1 : 0;
    precision[i] = static_cast<double>(tp) / static_cast<double>(i + 1);
  }
  for (std::size_t i = n; i-- > 1;) precision[i - 1] = std::max(precision[i - 1], precision[i]);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (ranked[i].outcome == Outcome::TP) sum += precision[i];
  }
  return sum / static_cast<double>(n_gt);
}

}  // namespace

double iou(const Box& a, const Box& b) {
  const auto inter = intersection_area(a, b);
  if (inter == 0) return 0.0;
  return static_cast<double>(inter) / static_cast<double>(a.area() + b.area() - inter);
}

double coverage(const Box& gt, const Box& pred) {
  return static_cast<double>(intersection_area(gt, pred)) / static_cast<double>(gt.area());
}

void EvalConfig::validate() const {
  if (!(iou_threshold >= 0.0 && iou_threshold <= 1.0)) throw std::invalid_argument("iou_threshold must be in [0,1]");
  if (!(coverage_frac > 0.0 && coverage_frac <= 1.0)) throw std::invalid_argument("coverage_frac must be in (0,1]");
}

std::vector<MatchRecord> match_detections(std::span<const BoxRecord> preds, std::span<const BoxRecord> gts,
                                          double iou_threshold) {
  std::vector<std::size_t> order(preds.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (const auto& p : preds) {
    if (!p.score) {
      throw FormatError(FormatError::Kind::MissingScore, "prediction for image '" + p.image_id + "' has no score");
    }
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return *preds[a].score > *preds[b].score; });

  const auto gt_by_image = index_by_image(gts);
  std::vector<bool> matched(gts.size(), false);
  std::vector<MatchRecord> records;
  records.reserve(preds.size());
  for (const auto pi : order) {
    const auto& pred = preds[pi];
    MatchRecord rec{pred.image_id, pi, std::nullopt, 0.0, Outcome::FP};
    std::optional<std::size_t> best;
    if (const auto it = gt_by_image.find(pred.image_id); it != gt_by_image.end()) {
      for (const auto gi : it->second) {
        if (matched[gi]) continue;
        const double v = iou(pred.box, gts[gi].box);
        if (!best || v > rec.iou) {
          best = gi;
          rec.iou = v;
        }
      }
    }
    if (best && rec.iou >= iou_threshold) {
      matched[*best] = true;
      rec.gt_index = best;
      rec.outcome = Outcome::TP;
    }
    records.push_back(std::move(rec));
  }
  return records;
}

double average_precision(std::span<const BoxRecord> preds, std::span<const BoxRecord> gts, double iou_threshold) {
  if (gts.empty()) throw NoGroundTruth();
  return envelope_area(match_detections(preds, gts, iou_threshold), gts.size());
}

double success_rate(std::span<const BoxRecord> preds, std::span<const BoxRecord> gts, double coverage_frac) {
  if (gts.empty()) throw NoGroundTruth();
  return static_cast<double>(count_captured(preds, gts, coverage_frac)) / static_cast<double>(gts.size());
}

EvalReport evaluate(std::span<const BoxRecord> preds, std::span<const BoxRecord> gts, const EvalConfig& config) {
  config.validate();
  if (gts.empty()) throw NoGroundTruth();
  EvalReport report;
  report.config = config;
  report.n_gt = gts.size();
  report.n_pred = preds.size();
  report.per_image = match_detections(preds, gts, config.iou_threshold);
  report.n_tp = static_cast<std::size_t>(std::count_if(report.per_image.begin(), report.per_image.end(),
                                                       [](const MatchRecord& m) { return m.outcome == Outcome::TP; }));
  report.ap = envelope_area(report.per_image, gts.size());
  report.n_captured = count_captured(preds, gts, config.coverage_frac);
  report.success_rate = static_cast<double>(report.n_captured) / static_cast<double>(gts.size());
  return report;
}

}  // namespace lesioncam
