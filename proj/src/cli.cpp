#include "lesioncam/cli.hpp"

#include "lesioncam/camt.hpp"
#include "lesioncam/eval.hpp"
#include "lesioncam/netpbm.hpp"
#include "lesioncam/pipeline.hpp"
#include "lesioncam/report.hpp"
#include "io_util.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <future>
#include <ostream>

namespace lesioncam::cli {
namespace {

namespace fs = std::filesystem;

struct RunConfig {
  std::string features, grads, weights, map, out, gt, det, masks_dir, image, image_id;
  DetectConfig detect;
  bool relu = false;
  Index width = kDefaultInputSize;
  Index height = kDefaultInputSize;
  EvalConfig eval;
  std::vector<double> t_floor_grid;
  std::vector<std::int64_t> min_area_grid;
};

std::string shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return {buf, res.ptr};
}

// Sorted list of regular files with the given extension, or the path itself
// if it names a file.
std::vector<fs::path> list_inputs(const std::string& path, const std::string& ext) {
  std::error_code ec;
  if (!fs::is_directory(path, ec)) {
    if (!fs::exists(path, ec)) throw IoError("no such file or directory: " + path);
    return {fs::path(path)};
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(path, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ext) files.push_back(entry.path());
  }
  if (ec) throw IoError("cannot list " + path + ": " + ec.message());
  std::sort(files.begin(), files.end());
  return files;
}

struct LoadedMap {
  std::string image_id;
  Heatmap<double> values;
};

std::vector<LoadedMap> load_maps(const std::string& path) {
  std::vector<LoadedMap> maps;
  for (const auto& file : list_inputs(path, ".camt")) {
    const auto tensor = camt::read_file(file.string());
    maps.push_back({file.stem().string(), heatmap_from_camt<double>(tensor, file.string())});
  }
  return maps;
}

// Per-image detection runs concurrently; results are merged in input order.
std::vector<BoxRecord> detect_all(const std::vector<LoadedMap>& maps, const DetectConfig& cfg) {
  std::vector<std::future<std::vector<BoxRecord>>> jobs;
  jobs.reserve(maps.size());
  for (const auto& m : maps) {
    jobs.push_back(std::async(std::launch::async, [&m, &cfg] { return detect_lesions(m.values, m.image_id, cfg); }));
  }
  std::vector<BoxRecord> all;
  for (auto& j : jobs) {
    auto boxes = j.get();
    all.insert(all.end(), std::make_move_iterator(boxes.begin()), std::make_move_iterator(boxes.end()));
  }
  return all;
}

void write_map(const std::string& path, const Heatmap<double>& map) { camt::write_file(path, heatmap_to_camt(map)); }

int cmd_cam(const RunConfig& cfg) {
  const auto features = feature_tensor_from_camt<double>(camt::read_file(cfg.features), cfg.features);
  const auto weights = class_weights_from_camt<double>(camt::read_file(cfg.weights), cfg.weights);
  if (weights.size() != features.channels()) {
    throw FormatError(FormatError::Kind::ShapeMismatch,
                      cfg.weights + ": " + std::to_string(weights.size()) + " weights for " +
                          std::to_string(features.channels()) + " channels in " + cfg.features);
  }
  write_map(cfg.out, activation_map(features, weights, cfg.relu, cfg.height, cfg.width));
  return kOk;
}

int cmd_gradcam(const RunConfig& cfg) {
  const auto features = feature_tensor_from_camt<double>(camt::read_file(cfg.features), cfg.features);
  const auto grads = feature_tensor_from_camt<double>(camt::read_file(cfg.grads), cfg.grads);
  if (!features.same_shape(grads)) {
    throw FormatError(FormatError::Kind::ShapeMismatch, cfg.grads + ": shape differs from " + cfg.features);
  }
  write_map(cfg.out, gradcam_map(features, grads, cfg.relu, cfg.height, cfg.width));
  return kOk;
}

int cmd_detect(const RunConfig& cfg) {
  write_boxes_file(cfg.out, detect_all(load_maps(cfg.map), cfg.detect));
  return kOk;
}

int cmd_convert_masks(const RunConfig& cfg) {
  std::error_code ec;
  if (!fs::is_directory(cfg.masks_dir, ec)) throw IoError("not a directory: " + cfg.masks_dir);
  std::vector<BoxRecord> all;
  for (const auto& file : list_inputs(cfg.masks_dir, ".pgm")) {
    const auto boxes = mask_to_gt_boxes(netpbm::to_mask(netpbm::read_pgm(file.string())), file.stem().string());
    all.insert(all.end(), boxes.begin(), boxes.end());
  }
  write_boxes_file(cfg.out, all);
  return kOk;
}

int cmd_eval(const RunConfig& cfg, std::ostream& out) {
  const auto gts = read_boxes_file(cfg.gt);
  const auto preds = read_boxes_file(cfg.det);
  const auto report = evaluate(preds, gts, cfg.eval);
  out << report_table(report);
  if (!cfg.out.empty()) detail::write_text(cfg.out, report_json(report));
  return kOk;
}

void draw_outline(netpbm::Rgb8& img, const Box& b, std::uint8_t r, std::uint8_t g, std::uint8_t bl) {
  const auto plot = [&](std::int64_t y, std::int64_t x) {
    if (y >= 0 && x >= 0 && y < img.rows() && x < img.cols()) img.set(y, x, r, g, bl);
  };
  for (auto x = b.x_min; x < b.x_max; ++x) {
    plot(b.y_min, x);
    plot(b.y_max - 1, x);
  }
  for (auto y = b.y_min; y < b.y_max; ++y) {
    plot(y, b.x_min);
    plot(y, b.x_max - 1);
  }
}

int cmd_overlay(const RunConfig& cfg) {
  auto canvas = netpbm::gray_to_rgb(netpbm::read_pgm(cfg.image));
  const std::string id = cfg.image_id.empty() ? fs::path(cfg.image).stem().string() : cfg.image_id;
  const auto draw_file = [&](const std::string& path, std::uint8_t r, std::uint8_t g) {
    if (path.empty()) return;
    for (const auto& rec : read_boxes_file(path)) {
      if (rec.image_id == id) draw_outline(canvas, rec.box, r, g, 0);
    }
  };
  draw_file(cfg.gt, 0, 255);
  draw_file(cfg.det, 255, 0);
  netpbm::write_ppm(cfg.out, canvas);
  return kOk;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  const auto gts = read_boxes_file(cfg.gt);
  if (gts.empty()) throw NoGroundTruth();
  const auto maps = load_maps(cfg.map);

  auto floors = cfg.t_floor_grid.empty() ? std::vector<double>{cfg.detect.threshold.t_floor} : cfg.t_floor_grid;
  auto areas = cfg.min_area_grid.empty() ? std::vector<std::int64_t>{cfg.detect.size.min_area_px} : cfg.min_area_grid;
  std::sort(floors.begin(), floors.end());
  floors.erase(std::unique(floors.begin(), floors.end()), floors.end());
  std::sort(areas.begin(), areas.end());
  areas.erase(std::unique(areas.begin(), areas.end()), areas.end());

  std::string table = "t_floor,min_area,ap,success_rate\n";
  for (const double t : floors) {
    for (const auto a : areas) {
      DetectConfig dc = cfg.detect;
      dc.threshold.t_floor = t;
      dc.size.min_area_px = a;
      const auto preds = detect_all(maps, dc);
      const auto report = evaluate(preds, gts, cfg.eval);
      table += shortest(t) + "," + std::to_string(a) + "," + shortest(report.ap) + "," +
               shortest(report.success_rate) + "\n";
    }
  }
  out << table;
  if (!cfg.out.empty()) detail::write_text(cfg.out, table);
  return kOk;
}

void add_size_flags(CLI::App* app, RunConfig& cfg, bool with_min_area) {
  auto& th = cfg.detect.threshold;
  app->add_option("--t-floor", th.t_floor, "Minimum normalized activation for foreground")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  app->add_option("--open-kernel", th.open_kernel, "Odd side of the opening structuring element")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app->add_option("--open-iters", th.open_iterations, "Opening iterations")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  if (with_min_area) {
    app->add_option("--min-area", cfg.detect.size.min_area_px, "Minimum box area in pixels")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
  }
  app->add_option("--max-area-frac", cfg.detect.size.max_area_frac, "Maximum box area as a fraction of the image")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
}

void add_eval_flags(CLI::App* app, RunConfig& cfg) {
  app->add_option("--iou", cfg.eval.iou_threshold, "IoU threshold for a true positive")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  app->add_option("--coverage", cfg.eval.coverage_frac, "GT fraction a prediction must cover")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
}

void add_map_flags(CLI::App* app, RunConfig& cfg) {
  app->add_option("--features", cfg.features, "Feature tensor A (CAMT, [C,H,W])")->required();
  app->add_option("--out", cfg.out, "Output map (CAMT, [H,W])")->required();
  app->add_flag("--relu", cfg.relu, "Clamp negative evidence to zero");
  app->add_option("--width", cfg.width, "Output width")->check(CLI::PositiveNumber)->capture_default_str();
  app->add_option("--height", cfg.height, "Output height")->check(CLI::PositiveNumber)->capture_default_str();
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lesion boxes from class activation maps, and their evaluation"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* cam = app.add_subcommand("cam", "Weighted channel sum with given class weights");
  add_map_flags(cam, cfg);
  cam->add_option("--weights", cfg.weights, "Class weights w (CAMT, [C])")->required();

  auto* gradcam = app.add_subcommand("gradcam", "Class map with gradient-averaged weights");
  add_map_flags(gradcam, cfg);
  gradcam->add_option("--grads", cfg.grads, "Gradients dY/dA (CAMT, same shape as features)")->required();

  auto* detect = app.add_subcommand("detect", "Threshold a map (or directory of maps) into scored boxes");
  detect->add_option("--map", cfg.map, "Map file or directory of .camt maps")->required();
  detect->add_option("--out", cfg.out, "Detections CSV")->required();
  add_size_flags(detect, cfg, true);

  auto* convert = app.add_subcommand("convert-masks", "Ground-truth boxes from PGM lesion masks");
  convert->add_option("--masks-dir", cfg.masks_dir, "Directory of .pgm masks")->required();
  convert->add_option("--out", cfg.out, "Ground-truth CSV")->required();

  auto* eval = app.add_subcommand("eval", "AP at an IoU threshold plus coverage success rate");
  eval->add_option("--gt", cfg.gt, "Ground-truth CSV")->required();
  eval->add_option("--det", cfg.det, "Detections CSV")->required();
  eval->add_option("--out", cfg.out, "Also write the JSON report here");
  add_eval_flags(eval, cfg);

  auto* overlay = app.add_subcommand("overlay", "Draw GT (green) and predicted (red) boxes on an image");
  overlay->add_option("--image", cfg.image, "Base PGM image")->required();
  overlay->add_option("--gt", cfg.gt, "Ground-truth CSV");
  overlay->add_option("--det", cfg.det, "Detections CSV");
  overlay->add_option("--image-id", cfg.image_id, "Boxes to draw (default: image file stem)");
  overlay->add_option("--out", cfg.out, "Output PPM")->required();

  auto* sweep = app.add_subcommand("sweep", "Grid over t_floor x min_area");
  sweep->add_option("--map", cfg.map, "Map file or directory of .camt maps")->required();
  sweep->add_option("--gt", cfg.gt, "Ground-truth CSV")->required();
  sweep->add_option("--out", cfg.out, "Also write the table here");
  sweep->add_option("--t-floor", cfg.t_floor_grid, "Floor values")->delimiter(',')->check(CLI::Range(0.0, 1.0));
  sweep->add_option("--min-area", cfg.min_area_grid, "Minimum areas")->delimiter(',')->check(CLI::NonNegativeNumber);
  {
    auto& th = cfg.detect.threshold;
    sweep->add_option("--open-kernel", th.open_kernel)->check(CLI::PositiveNumber)->capture_default_str();
    sweep->add_option("--open-iters", th.open_iterations)->check(CLI::NonNegativeNumber)->capture_default_str();
    sweep->add_option("--max-area-frac", cfg.detect.size.max_area_frac)->check(CLI::Range(0.0, 1.0))->capture_default_str();
  }
  add_eval_flags(sweep, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*cam) return cmd_cam(cfg);
    if (*gradcam) return cmd_gradcam(cfg);
    if (*detect) return cmd_detect(cfg);
    if (*convert) return cmd_convert_masks(cfg);
    if (*eval) return cmd_eval(cfg, out);
    if (*overlay) return cmd_overlay(cfg);
    if (*sweep) return cmd_sweep(cfg, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << "\n";
    return kFormatError;
  } catch (const NoGroundTruth& e) {
    err << "error: " << e.what() << "\n";
    return kNoGroundTruth;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kFormatError;
  }
  return kOk;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.emplace_back("lesioncam");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace lesioncam::cli
