#pragma once

#include <filesystem>
#include <ostream>
#include <span>
#include <string>

#include "json.hpp"

#include "pnn/metrics.hpp"
#include "pnn/model.hpp"
#include "pnn/path.hpp"
#include "pnn/projection_solver.hpp"

namespace pnn::io {

using nlohmann::json;

/// A fitted model as stored on disk.
struct ModelDocument {
  ModelParams params;
  double lambda = 0.0;  // internal (mean-loss) scale
  json solver = json::object();
};

/// {"format":"pnn-model","version":1,"n_features","w","b","lambda","solver"}.
/// Doubles are written in shortest round-trip form, so read(write(m)) == m
/// bit for bit.
json model_to_json(const ModelDocument& doc);

/// Throws InputError on a malformed document or inconsistent n_features.
ModelDocument model_from_json(const json& j);

json config_to_json(const SolverConfig& config);
json solve_summary(const SolveResult& res);
json eval_to_json(const EvalReport& report);

/// iter,objective,kkt_residual[,w_0..w_{d-1},b]
void write_trace_csv(std::ostream& out, std::span<const TracePoint> trace, bool full);

/// fpr,tpr
void write_roc_csv(std::ostream& out, std::span<const RocPoint> roc);

/// lambda,w_0..w_{d-1}; raw (unthresholded) weights, one row per λ.
void write_heatmap_csv(std::ostream& out, const PathResult& path);

/// lambda,l1_norm,nnz,accuracy,iterations
void write_sparsity_csv(std::ostream& out, const PathResult& path);

json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace pnn::io
