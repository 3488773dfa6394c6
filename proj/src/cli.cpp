#include "pnn/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "CLI11.hpp"

#include "pnn/dataset.hpp"
#include "pnn/errors.hpp"
#include "pnn/format.hpp"
#include "pnn/io.hpp"
#include "pnn/metrics.hpp"
#include "pnn/model.hpp"
#include "pnn/oracle.hpp"
#include "pnn/parallel.hpp"
#include "pnn/path.hpp"
#include "pnn/projection_solver.hpp"

#ifndef PNN_VERSION
#define PNN_VERSION "0.0.0"
#endif

namespace pnn::cli {

namespace fs = std::filesystem;
using io::json;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string percent(double fraction) { return fmt::format("{:.2f}%", 100.0 * fraction); }

// RFC 4180 quoting for free-text cells.
std::string csv_text(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

std::string csv_num(double v) { return std::isnan(v) ? std::string() : format_double(v); }

struct SolverFlags {
  double tol = 1e-6;
  std::size_t max_iters = 100000;
  double alpha_step = 0.0;  // 0: default step
  std::string init = "zeros";
  std::uint64_t seed = 0;
  bool no_line_search = false;
  bool trace = false;
  std::size_t trace_stride = 1;
  bool full_trace = false;

  SolverConfig config() const {
    SolverConfig c;
    c.tol = tol;
    c.max_iters = max_iters;
    if (alpha_step > 0.0) c.alpha_step = alpha_step;
    c.init = parse_init_mode(init);
    c.seed = seed;
    c.line_search = !no_line_search;
    c.record_trace = trace || full_trace;
    c.trace_stride = trace_stride;
    c.trace_params = full_trace;
    c.validate();
    return c;
  }
};

void add_solver_flags(CLI::App& cmd, SolverFlags& f, bool with_init) {
  cmd.add_option("--tol", f.tol, "stop when the KKT residual is at most this")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd.add_option("--max-iters", f.max_iters, "iteration cap")->capture_default_str();
  cmd.add_option("--alpha-step", f.alpha_step, "Euler step (default: 1/Lipschitz estimate)")
      ->check(CLI::PositiveNumber);
  if (with_init)
    cmd.add_option("--init", f.init, "starting point")
        ->check(CLI::IsMember({"zeros", "ones", "random"}))
        ->capture_default_str();
  cmd.add_option("--seed", f.seed, "seed for --init random")->capture_default_str();
  cmd.add_flag("--no-line-search", f.no_line_search, "always take the full step");
}

void add_trace_flags(CLI::App& cmd, SolverFlags& f) {
  cmd.add_option("--trace-stride", f.trace_stride, "record every k-th iteration")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd.add_flag("--full-trace", f.full_trace, "include w and b in trace rows");
}

struct LambdaFlags {
  double lambda = 0.0;
  std::string scale = "mean";

  double internal(std::size_t n_samples) const {
    return to_mean_lambda(lambda, parse_lambda_scale(scale), n_samples);
  }
};

void add_lambda_flags(CLI::App& cmd, LambdaFlags& f) {
  cmd.add_option("--lambda", f.lambda, "regularization weight")
      ->required()
      ->check(CLI::NonNegativeNumber);
  cmd.add_option("--lambda-scale", f.scale,
                 "mean: lambda weighs the mean loss; sum: lambda weighs the summed loss")
      ->check(CLI::IsMember({"mean", "sum"}))
      ->capture_default_str();
}

json run_manifest(const std::string& command, const std::vector<std::string>& datasets,
                  double solve_seconds, Clock::time_point started) {
  return {{"command", command},
          {"datasets", datasets},
          {"wall_time_seconds", solve_seconds},
          {"total_wall_time_seconds", seconds_since(started)},
          {"version", version()}};
}

void write_json(const fs::path& path, const json& j) { io::write_text_file(path, j.dump(2) + "\n"); }

template <class Writer>
void write_csv(const fs::path& path, Writer&& writer) {
  std::ostringstream s;
  writer(s);
  io::write_text_file(path, s.str());
}

SparseDataset read_data(const std::string& path, std::optional<std::size_t> hint,
                        std::ostream* warn) {
  LabelMap labels;
  SparseDataset ds = load_libsvm(path, hint, &labels);
  if (warn && labels.single_valued)
    *warn << "warning: " << path << ": every label is " << format_double(labels.raw_positive)
          << "; all samples treated as class 1\n";
  return ds;
}

// Training set plus an optional test set with aligned feature counts.
struct DataPair {
  SparseDataset train;
  std::optional<SparseDataset> test;
};

DataPair load_pair(const std::string& train_path, const std::string& test_path,
                   std::ostream* warn) {
  DataPair d{read_data(train_path, std::nullopt, warn), std::nullopt};
  if (!test_path.empty()) {
    d.test = read_data(test_path, d.train.n_features(), warn);
    if (d.test->n_features() > d.train.n_features())
      d.train = d.train.widened(d.test->n_features());
  }
  return d;
}

// ---- train ----------------------------------------------------------------

struct TrainArgs {
  std::string train;
  std::string out = ".";
  LambdaFlags lambda;
  SolverFlags solver;
};

int cmd_train(const TrainArgs& a, std::ostream& out, std::ostream& err,
              Clock::time_point started) {
  const SparseDataset train = read_data(a.train, std::nullopt, &err);
  const double lambda = a.lambda.internal(train.n_samples());
  const SolverConfig config = a.solver.config();

  const auto t0 = Clock::now();
  const SolveResult res = solve(train, lambda, config);
  const double solve_s = seconds_since(t0);

  json solver = io::config_to_json(config);
  solver["result"] = io::solve_summary(res);
  const fs::path dir = a.out;
  write_json(dir / "model.json", io::model_to_json({res.params, lambda, solver}));
  if (config.record_trace)
    write_csv(dir / "trace.csv",
              [&](std::ostream& s) { io::write_trace_csv(s, res.trace, a.solver.full_trace); });

  json manifest = run_manifest("train", {a.train}, solve_s, started);
  manifest["lambda"] = a.lambda.lambda;
  manifest["lambda_scale"] = a.lambda.scale;
  manifest["lambda_internal"] = lambda;
  manifest["seed"] = config.seed;
  manifest["solver"] = io::config_to_json(config);
  write_json(dir / "train.manifest.json", manifest);

  const auto sp = sparsity_stats(res.sparse_w, 0.0);
  out << fmt::format("samples       {}\n", train.n_samples())
      << fmt::format("features      {}\n", train.n_features())
      << fmt::format("lambda        {} (mean-loss scale)\n", format_double(lambda))
      << fmt::format("terminated    {}\n", to_string(res.terminated))
      << fmt::format("iterations    {}\n", res.iterations)
      << fmt::format("objective     {:.10g}\n", res.objective)
      << fmt::format("kkt_residual  {:.3e}\n", res.kkt_residual)
      << fmt::format("nnz           {}\n", sp.nnz)
      << fmt::format("l1_norm       {:.6g}\n", sp.l1_norm)
      << fmt::format("wall_time_s   {:.3f}\n", solve_s);
  return kExitOk;
}

// ---- predict / eval --------------------------------------------------------

io::ModelDocument load_model(const std::string& path) {
  return io::model_from_json(io::read_json_file(path));
}

SparseDataset load_for_model(const std::string& path, const io::ModelDocument& model,
                             std::ostream& err) {
  SparseDataset ds = read_data(path, model.params.n_features(), &err);
  check_dims(ds, model.params);
  return ds;
}

struct EvalArgs {
  std::string model;
  std::string data;
  std::string out = ".";
  double threshold = 0.5;
  double eps_zero = -1.0;
};

int cmd_predict(const EvalArgs& a, std::ostream& out, std::ostream& err,
                Clock::time_point started) {
  const auto model = load_model(a.model);
  const SparseDataset ds = load_for_model(a.data, model, err);
  const auto t0 = Clock::now();
  const Vector probs = predict_proba(ds, model.params);
  const double solve_s = seconds_since(t0);

  std::size_t positives = 0;
  write_csv(fs::path(a.out) / "predictions.csv", [&](std::ostream& s) {
    s << "probability,predicted\r\n";
    for (double p : probs) {
      const int cls = p >= a.threshold ? 1 : 0;
      positives += static_cast<std::size_t>(cls);
      s << format_double(p) << ',' << cls << "\r\n";
    }
  });
  json manifest = run_manifest("predict", {a.model, a.data}, solve_s, started);
  manifest["threshold"] = a.threshold;
  write_json(fs::path(a.out) / "predict.manifest.json", manifest);

  out << fmt::format("samples            {}\n", probs.size())
      << fmt::format("predicted_positive {}\n", positives);
  return kExitOk;
}

int cmd_eval(const EvalArgs& a, std::ostream& out, std::ostream& err,
             Clock::time_point started) {
  const auto model = load_model(a.model);
  const SparseDataset ds = load_for_model(a.data, model, err);
  double eps = a.eps_zero;
  if (eps < 0.0) eps = 10.0 * model.solver.value("tol", 0.0);

  const auto t0 = Clock::now();
  const EvalReport report = evaluate(ds, model.params, a.threshold, eps);
  const double solve_s = seconds_since(t0);

  const fs::path dir = a.out;
  json ej = io::eval_to_json(report);
  ej["eps_zero"] = eps;
  write_json(dir / "eval.json", ej);
  write_csv(dir / "roc.csv", [&](std::ostream& s) { io::write_roc_csv(s, report.roc_points); });
  json manifest = run_manifest("eval", {a.model, a.data}, solve_s, started);
  manifest["threshold"] = a.threshold;
  write_json(dir / "eval.manifest.json", manifest);

  out << fmt::format("samples   {}\n", ds.n_samples())
      << fmt::format("accuracy  {}\n", percent(report.accuracy))
      << fmt::format("auroc     {:.3f}\n", report.auroc)
      << fmt::format("nnz       {}\n", report.nnz)
      << fmt::format("l1_norm   {:.6g}\n", report.l1_norm);
  return kExitOk;
}

// ---- path ------------------------------------------------------------------

struct PathArgs {
  std::string train;
  std::string test;
  std::string out = ".";
  std::size_t points = 20;
  double min_ratio = 0.01;
  bool parallel = false;
  double eps_zero = -1.0;
  SolverFlags solver;
};

int cmd_path(const PathArgs& a, std::ostream& out, std::ostream& err, Clock::time_point started) {
  const DataPair data = load_pair(a.train, a.test, &err);
  const SolverConfig config = a.solver.config();
  const auto grid = lambda_grid(data.train, a.points, a.min_ratio);

  SweepOptions opts;
  opts.parallel = a.parallel;
  opts.workers = worker_count();
  opts.eps_zero = a.eps_zero;

  const auto t0 = Clock::now();
  const PathResult path = sweep(data.train, data.test ? &*data.test : nullptr, grid, config, opts);
  const double solve_s = seconds_since(t0);

  const fs::path dir = a.out;
  write_csv(dir / "sparsity.csv", [&](std::ostream& s) { io::write_sparsity_csv(s, path); });
  write_csv(dir / "heatmap.csv", [&](std::ostream& s) { io::write_heatmap_csv(s, path); });

  std::vector<std::string> datasets{a.train};
  if (!a.test.empty()) datasets.push_back(a.test);
  json manifest = run_manifest("path", datasets, solve_s, started);
  manifest["lambdas"] = path.lambdas;
  manifest["lambda_scale"] = "mean";
  manifest["eps_zero"] = path.eps_zero;
  manifest["points"] = a.points;
  manifest["min_ratio"] = a.min_ratio;
  manifest["parallel"] = a.parallel;
  manifest["workers"] = opts.parallel ? opts.workers : 1;
  manifest["solver"] = io::config_to_json(config);
  write_json(dir / "path.manifest.json", manifest);

  out << fmt::format("{:>12}  {:>5}  {:>10}  {:>8}  {:>9}\n", "lambda", "nnz", "l1_norm",
                     "accuracy", "iters");
  std::size_t unconverged = 0;
  for (const auto& r : path.records) {
    const std::string acc = std::isnan(r.accuracy) ? "-" : percent(r.accuracy);
    out << fmt::format("{:>12.6g}  {:>5}  {:>10.6g}  {:>8}  {:>9}\n", r.lambda, r.nnz, r.l1_norm,
                       acc, r.iterations);
    if (r.terminated != Termination::converged) ++unconverged;
  }
  out << fmt::format("wall_time_s {:.3f}\n", solve_s);
  if (unconverged)
    err << fmt::format("warning: {} of {} solves hit --max-iters\n", unconverged,
                       path.records.size());
  return kExitOk;
}

// ---- bench -----------------------------------------------------------------

struct BenchArgs {
  std::string manifest;
  std::string out = ".";
  bool verify = false;
  bool parallel = false;
  SolverFlags solver;
};

struct BenchRow {
  std::string name;
  double lambda = NAN;  // internal scale
  std::size_t n_train = 0, n_test = 0, n_features = 0;
  std::string dims = "unknown";
  double wall_time = NAN;
  std::size_t iterations = 0;
  std::string terminated;
  double objective = NAN, kkt = NAN, accuracy = NAN;
  double ista_objective = NAN, gap = NAN;
  std::string error;
  int code = kExitOk;
};

std::string resolve(const fs::path& base, const std::string& p) {
  const fs::path path(p);
  return (path.is_absolute() ? path : base / path).lexically_normal().string();
}

BenchRow bench_one(const json& entry, const fs::path& base, const std::string& default_scale,
                   const BenchArgs& a, const SolverConfig& config) {
  BenchRow row;
  try {
    row.name = entry.at("name").get<std::string>();
    const std::string test = entry.contains("test") ? resolve(base, entry["test"]) : "";
    // Rows may run concurrently, so warnings are not streamed here.
    const DataPair data = load_pair(resolve(base, entry.at("train")), test, nullptr);
    row.n_train = data.train.n_samples();
    row.n_features = data.train.n_features();
    row.n_test = data.test ? data.test->n_samples() : 0;

    std::optional<DatasetInfo> expect = find_benchmark(row.name);
    if (entry.contains("n_features"))
      expect = DatasetInfo{row.name, entry["n_features"].get<std::size_t>(),
                           entry.value("n_train", std::size_t{0}), entry.value("n_test", std::size_t{0})};
    if (expect)
      row.dims = (expect->n_features == row.n_features && expect->n_train == row.n_train &&
                  (!data.test || expect->n_test == row.n_test))
                     ? "ok"
                     : "mismatch";

    const auto scale = parse_lambda_scale(entry.value("lambda_scale", default_scale));
    row.lambda = to_mean_lambda(entry.at("lambda").get<double>(), scale, row.n_train);

    const auto t0 = Clock::now();
    const SolveResult res = solve(data.train, row.lambda, config);
    row.wall_time = seconds_since(t0);
    row.iterations = res.iterations;
    row.terminated = std::string(to_string(res.terminated));
    row.objective = res.objective;
    row.kkt = res.kkt_residual;
    if (data.test) row.accuracy = evaluate(*data.test, res.params).accuracy;

    if (a.verify) {
      const auto ref = oracle::ista_solve(data.train, row.lambda, 1.0, config.tol, config.max_iters);
      row.ista_objective = ref.objective;
      row.gap = std::abs(res.objective - ref.objective) / (1.0 + std::abs(ref.objective));
    }
  } catch (const NumericalError& e) {
    row.error = e.what();
    row.code = kExitNumerical;
  } catch (const json::exception& e) {
    row.error = std::string("manifest entry: ") + e.what();
    row.code = kExitInput;
  } catch (const std::exception& e) {
    row.error = e.what();
    row.code = kExitInput;
  }
  return row;
}

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err, Clock::time_point started) {
  const json doc = io::read_json_file(a.manifest);
  if (!doc.is_object() || !doc.contains("datasets") || !doc["datasets"].is_array())
    throw InputError(a.manifest + ": expected an object with a \"datasets\" array");
  const json& entries = doc["datasets"];
  if (entries.empty()) throw InputError(a.manifest + ": no datasets listed");
  const std::string scale = doc.value("lambda_scale", "mean");
  parse_lambda_scale(scale);
  const SolverConfig config = a.solver.config();
  const fs::path base = fs::path(a.manifest).parent_path();

  std::vector<BenchRow> rows(entries.size());
  const auto t0 = Clock::now();
  parallel_for(entries.size(), a.parallel ? worker_count() : 1, [&](std::size_t k) {
    rows[k] = bench_one(entries[k], base, scale, a, config);
  });
  const double solve_s = seconds_since(t0);

  const fs::path dir = a.out;
  write_csv(dir / "bench.csv", [&](std::ostream& s) {
    s << "name,lambda,n_train,n_test,n_features,dims,wall_time_s,iterations,terminated,"
         "objective,kkt_residual,accuracy,ista_objective,objective_gap,error\r\n";
    for (const auto& r : rows)
      s << csv_text(r.name) << ',' << csv_num(r.lambda) << ',' << r.n_train << ',' << r.n_test
        << ',' << r.n_features << ',' << r.dims << ',' << csv_num(r.wall_time) << ','
        << r.iterations << ',' << r.terminated << ',' << csv_num(r.objective) << ','
        << csv_num(r.kkt) << ',' << csv_num(r.accuracy) << ',' << csv_num(r.ista_objective)
        << ',' << csv_num(r.gap) << ',' << csv_text(r.error) << "\r\n";
  });
  json manifest = run_manifest("bench", {a.manifest}, solve_s, started);
  manifest["verify"] = a.verify;
  manifest["solver"] = io::config_to_json(config);
  write_json(dir / "bench.manifest.json", manifest);

  int code = kExitOk;
  out << fmt::format("{:<18} {:>10} {:>8} {:>10} {:>12} {:>9} {:>10}\n", "name", "time_s", "iters",
                     "terminated", "objective", "accuracy", "gap");
  for (const auto& r : rows) {
    if (!r.error.empty()) {
      err << "error: " << r.name << ": " << r.error << "\n";
      code = std::max(code, r.code);
      continue;
    }
    out << fmt::format("{:<18} {:>10.3f} {:>8} {:>10} {:>12.8g} {:>9} {:>10}\n", r.name,
                       r.wall_time, r.iterations, r.terminated, r.objective,
                       std::isnan(r.accuracy) ? "-" : percent(r.accuracy),
                       std::isnan(r.gap) ? "-" : fmt::format("{:.2e}", r.gap));
    if (r.dims == "mismatch")
      err << "warning: " << r.name << ": dimensions differ from the benchmark roster\n";
  }
  return code;
}

// ---- trace -----------------------------------------------------------------

struct TraceArgs {
  std::string train;
  std::string out = ".";
  std::vector<std::string> inits{"zeros", "ones", "random"};
  LambdaFlags lambda;
  SolverFlags solver;
};

// "zeros", "ones", "random" (uses --seed) or "random:<seed>".
std::pair<InitMode, std::uint64_t> parse_init_spec(const std::string& spec, std::uint64_t seed) {
  const auto colon = spec.find(':');
  const InitMode mode = parse_init_mode(spec.substr(0, colon));
  if (colon == std::string::npos) return {mode, seed};
  if (mode != InitMode::random) throw InputError("only random init takes a seed: '" + spec + "'");
  const std::string digits = spec.substr(colon + 1);
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
    throw InputError("bad seed in '" + spec + "'");
  return {mode, std::stoull(digits)};
}

int cmd_trace(const TraceArgs& a, std::ostream& out, std::ostream& err,
              Clock::time_point started) {
  std::vector<std::pair<InitMode, std::uint64_t>> inits;
  for (const auto& s : a.inits) inits.push_back(parse_init_spec(s, a.solver.seed));
  if (inits.empty()) throw InputError("trace: no inits given");

  const SparseDataset train = read_data(a.train, std::nullopt, &err);
  const double lambda = a.lambda.internal(train.n_samples());
  SolverConfig config = a.solver.config();
  config.record_trace = true;

  const fs::path dir = a.out;
  std::vector<double> finals;
  double solve_s = 0.0;
  json runs = json::array();
  for (std::size_t k = 0; k < inits.size(); ++k) {
    config.init = inits[k].first;
    config.seed = inits[k].second;
    const auto t0 = Clock::now();
    const SolveResult res = solve(train, lambda, config);
    const double s = seconds_since(t0);
    solve_s += s;

    std::string label(to_string(config.init));
    if (config.init == InitMode::random) label += "-" + std::to_string(config.seed);
    write_csv(dir / ("trace_" + label + ".csv"),
              [&](std::ostream& os) { io::write_trace_csv(os, res.trace, a.solver.full_trace); });
    finals.push_back(res.objective);
    runs.push_back({{"init", label}, {"result", io::solve_summary(res)}, {"wall_time_seconds", s}});
    out << fmt::format("{:<12} {:>10} {:>10} objective {:.12g}\n", label, to_string(res.terminated),
                       res.iterations, res.objective);
  }
  const auto [lo, hi] = std::minmax_element(finals.begin(), finals.end());
  const double gap = *hi - *lo;

  json manifest = run_manifest("trace", {a.train}, solve_s, started);
  manifest["lambda"] = a.lambda.lambda;
  manifest["lambda_scale"] = a.lambda.scale;
  manifest["lambda_internal"] = lambda;
  manifest["solver"] = io::config_to_json(config);
  manifest["runs"] = runs;
  manifest["max_objective_gap"] = gap;
  write_json(dir / "trace.manifest.json", manifest);

  out << fmt::format("max_gap      {:.3e}\n", gap);
  return kExitOk;
}

}  // namespace

const char* version() noexcept { return PNN_VERSION; }

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  const auto started = Clock::now();
  CLI::App app{"Sparse logistic regression with a projection neural network solver", "pnn"};
  app.set_version_flag("--version", std::string(version()));
  app.require_subcommand(1);

  TrainArgs train;
  auto* c_train = app.add_subcommand("train", "fit a model at one lambda");
  c_train->add_option("train", train.train, "LIBSVM training file")->required();
  add_lambda_flags(*c_train, train.lambda);
  add_solver_flags(*c_train, train.solver, true);
  c_train->add_flag("--trace", train.solver.trace, "write trace.csv");
  add_trace_flags(*c_train, train.solver);
  c_train->add_option("--out", train.out, "output directory")->capture_default_str();

  EvalArgs pred;
  auto* c_pred = app.add_subcommand("predict", "write class-1 probabilities");
  c_pred->add_option("model", pred.model, "model.json")->required();
  c_pred->add_option("data", pred.data, "LIBSVM file")->required();
  c_pred->add_option("--threshold", pred.threshold)->capture_default_str();
  c_pred->add_option("--out", pred.out, "output directory")->capture_default_str();

  EvalArgs eval;
  auto* c_eval = app.add_subcommand("eval", "accuracy, ROC and AUROC on a labeled set");
  c_eval->add_option("model", eval.model, "model.json")->required();
  c_eval->add_option("data", eval.data, "LIBSVM test file")->required();
  c_eval->add_option("--threshold", eval.threshold)->capture_default_str();
  c_eval->add_option("--eps-zero", eval.eps_zero,
                     "|w_j| at or below this counts as zero (default 10*tol of the model)");
  c_eval->add_option("--out", eval.out, "output directory")->capture_default_str();

  PathArgs path;
  auto* c_path = app.add_subcommand("path", "regularization path from lambda_max down");
  c_path->add_option("train", path.train, "LIBSVM training file")->required();
  c_path->add_option("--test", path.test, "LIBSVM test file for accuracy");
  c_path->add_option("--points", path.points, "grid size")
      ->check(CLI::Range(std::size_t{2}, std::size_t{100000}))
      ->capture_default_str();
  c_path->add_option("--min-ratio", path.min_ratio, "smallest lambda as a fraction of lambda_max")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  c_path->add_flag("--parallel", path.parallel, "cold-start every lambda concurrently");
  c_path->add_option("--eps-zero", path.eps_zero, "nnz threshold (default 10*tol)");
  add_solver_flags(*c_path, path.solver, true);
  c_path->add_option("--out", path.out, "output directory")->capture_default_str();

  BenchArgs bench;
  auto* c_bench = app.add_subcommand("bench", "time solves listed in a JSON manifest");
  c_bench->add_option("manifest", bench.manifest, "bench manifest (JSON)")->required();
  c_bench->add_flag("--verify", bench.verify, "also run the ISTA reference and report the gap");
  c_bench->add_flag("--parallel", bench.parallel, "run datasets concurrently");
  add_solver_flags(*c_bench, bench.solver, true);
  c_bench->add_option("--out", bench.out, "output directory")->capture_default_str();

  TraceArgs trace;
  auto* c_trace = app.add_subcommand("trace", "per-iteration traces from several starting points");
  c_trace->add_option("train", trace.train, "LIBSVM training file")->required();
  add_lambda_flags(*c_trace, trace.lambda);
  c_trace->add_option("--inits", trace.inits, "zeros, ones, random or random:<seed>")
      ->delimiter(',')
      ->capture_default_str();
  add_solver_flags(*c_trace, trace.solver, false);
  add_trace_flags(*c_trace, trace.solver);
  c_trace->add_option("--out", trace.out, "output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitInput;
  }

  try {
    if (c_train->parsed()) return cmd_train(train, out, err, started);
    if (c_pred->parsed()) return cmd_predict(pred, out, err, started);
    if (c_eval->parsed()) return cmd_eval(eval, out, err, started);
    if (c_path->parsed()) return cmd_path(path, out, err, started);
    if (c_bench->parsed()) return cmd_bench(bench, out, err, started);
    if (c_trace->parsed()) return cmd_trace(trace, out, err, started);
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"pnn"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace pnn::cli
