#include "lesioncam/report.hpp"

#include <json.hpp>

#include <cstdio>

namespace lesioncam {

std::string report_json(const EvalReport& report) {
  nlohmann::ordered_json doc;
  doc["ap"] = report.ap;
  doc["success_rate"] = report.success_rate;
  doc["n_gt"] = report.n_gt;
  doc["n_pred"] = report.n_pred;
  doc["n_tp"] = report.n_tp;
  doc["n_captured"] = report.n_captured;
  doc["iou_threshold"] = report.config.iou_threshold;
  doc["coverage_frac"] = report.config.coverage_frac;
  auto& matches = doc["per_image"] = nlohmann::ordered_json::array();
  for (const auto& m : report.per_image) {
    nlohmann::ordered_json rec;
    rec["image_id"] = m.image_id;
    rec["pred_index"] = m.pred_index;
    rec["gt_index"] = m.gt_index ? nlohmann::ordered_json(*m.gt_index) : nlohmann::ordered_json(nullptr);
    rec["iou"] = m.iou;
    rec["outcome"] = m.outcome == Outcome::TP ? "TP" : "FP";
    matches.push_back(std::move(rec));
  }
  return doc.dump(2) + "\n";
}

std::string report_table(const EvalReport& report) {
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "metric          value\n"
                "--------------  ----------\n"
                "mAP@%-10g  %.4f\n"
                "success_rate    %.4f\n"
                "n_gt            %zu\n"
                "n_pred          %zu\n"
                "true_pos        %zu\n"
                "captured_gt     %zu\n"
                "coverage_frac   %g\n",
                report.config.iou_threshold, report.ap, report.success_rate, report.n_gt, report.n_pred, report.n_tp,
                report.n_captured, report.config.coverage_frac);
  return buf;
}

}  // namespace lesioncam
