#pragma once

#include "lesioncam/eval.hpp"

#include <string>

namespace lesioncam {

/// JSON document with stable keys: ap, success_rate, n_gt, n_pred,
/// iou_threshold, coverage_frac, plus n_tp, n_captured and per_image matches.
std::string report_json(const EvalReport& report);

/// Short aligned text table for terminals.
std::string report_table(const EvalReport& report);

}  // namespace lesioncam
