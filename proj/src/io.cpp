#include "pnn/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "pnn/errors.hpp"
#include "pnn/format.hpp"

namespace pnn::io {

namespace {

// CSV cells: shortest round-trip doubles; NaN written as an empty cell.
std::string cell(double v) { return std::isnan(v) ? std::string() : format_double(v); }

}  // namespace

json model_to_json(const ModelDocument& doc) {
  json w = json::array();
  for (double v : doc.params.w) w.push_back(v);
  return {{"format", "pnn-model"},
          {"version", 1},
          {"n_features", doc.params.n_features()},
          {"w", std::move(w)},
          {"b", doc.params.b},
          {"lambda", doc.lambda},
          {"solver", doc.solver}};
}

ModelDocument model_from_json(const json& j) {
  try {
    if (j.value("format", "") != "pnn-model") throw InputError("not a pnn-model document");
    ModelDocument doc;
    const auto d = j.at("n_features").get<std::size_t>();
    const auto& w = j.at("w");
    if (!w.is_array() || w.size() != d)
      throw InputError("model: w has " + std::to_string(w.size()) + " entries, n_features is " +
                       std::to_string(d));
    doc.params = ModelParams::zeros(d);
    for (std::size_t k = 0; k < d; ++k) doc.params.w[static_cast<Eigen::Index>(k)] = w[k].get<double>();
    doc.params.b = j.at("b").get<double>();
    doc.lambda = j.at("lambda").get<double>();
    doc.solver = j.value("solver", json::object());
    if (!doc.params.all_finite()) throw InputError("model: non-finite parameters");
    return doc;
  } catch (const json::exception& e) {
    throw InputError(std::string("model: ") + e.what());
  }
}

json config_to_json(const SolverConfig& c) {
  json j = {{"tol", c.tol},
            {"max_iters", c.max_iters},
            {"init", to_string(c.init)},
            {"seed", c.seed},
            {"line_search", c.line_search},
            {"record_trace", c.record_trace},
            {"trace_stride", c.trace_stride},
            {"trace_params", c.trace_params}};
  j["alpha_step"] = c.alpha_step ? json(*c.alpha_step) : json(nullptr);
  return j;
}

json solve_summary(const SolveResult& r) {
  return {{"iterations", r.iterations},
          {"objective", r.objective},
          {"kkt_residual", r.kkt_residual},
          {"terminated", to_string(r.terminated)},
          {"step", r.step}};
}

json eval_to_json(const EvalReport& r) {
  json roc = json::array();
  for (const auto& p : r.roc_points) roc.push_back({p.fpr, p.tpr});
  return {{"accuracy", r.accuracy}, {"auroc", r.auroc},   {"l1_norm", r.l1_norm},
          {"nnz", r.nnz},           {"threshold", r.threshold}, {"roc_points", std::move(roc)}};
}

void write_trace_csv(std::ostream& out, std::span<const TracePoint> trace, bool full) {
  out << "iter,objective,kkt_residual";
  const std::size_t d = trace.empty() ? 0 : trace.front().params.n_features();
  if (full) {
    for (std::size_t j = 0; j < d; ++j) out << ",w_" << j;
    out << ",b";
  }
  out << "\r\n";
  for (const auto& t : trace) {
    out << t.iter << ',' << cell(t.objective) << ',' << cell(t.kkt_residual);
    if (full) {
      for (double v : t.params.w) out << ',' << cell(v);
      out << ',' << cell(t.params.b);
    }
    out << "\r\n";
  }
}

void write_roc_csv(std::ostream& out, std::span<const RocPoint> roc) {
  out << "fpr,tpr\r\n";
  for (const auto& p : roc) out << cell(p.fpr) << ',' << cell(p.tpr) << "\r\n";
}

void write_heatmap_csv(std::ostream& out, const PathResult& path) {
  out << "lambda";
  const std::size_t d = path.records.empty() ? 0 : path.records.front().params.n_features();
  for (std::size_t j = 0; j < d; ++j) out << ",w_" << j;
  out << "\r\n";
  for (const auto& r : path.records) {
    out << cell(r.lambda);
    for (double v : r.params.w) out << ',' << cell(v);
    out << "\r\n";
  }
}

void write_sparsity_csv(std::ostream& out, const PathResult& path) {
  out << "lambda,l1_norm,nnz,accuracy,iterations\r\n";
  for (const auto& r : path.records)
    out << cell(r.lambda) << ',' << cell(r.l1_norm) << ',' << r.nnz << ',' << cell(r.accuracy)
        << ',' << r.iterations << "\r\n";
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
}

}  // namespace pnn::io
