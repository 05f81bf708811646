#include "podrbf/pipeline.hpp"

#include <chrono>
#include <fstream>

#include "podrbf/criteria.hpp"
#include "podrbf/errors.hpp"
#include "podrbf/io.hpp"
#include "podrbf/snapshot.hpp"
#include "podrbf/svg.hpp"

namespace podrbf {
namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Vector index_axis(Eigen::Index n) { return Vector::LinSpaced(n, 1.0, static_cast<double>(n)); }

Matrix predict_all(const Surrogate& s, const Matrix& points) {
  Matrix Yhat(static_cast<Eigen::Index>(s.output_size()), points.rows());
  for (Eigen::Index j = 0; j < points.rows(); ++j) Yhat.col(j) = predict(s, points.row(j).transpose());
  return Yhat;
}

}  // namespace

std::uint64_t test_seed(std::uint64_t seed) { return seed + 1000; }

HoldoutResult holdout_error(const ProblemDef& def, const TimeGrid& grid, SamplingStrategy strategy, std::size_t n_s,
                          std::size_t n_g, KernelKind kernel, double eps_pod, std::uint64_t seed,
                          const IntegratorOptions& options, std::size_t jobs) {
  const auto training = build_snapshots(def, sample(strategy, n_s, def.box, seed), grid, options, jobs);
  const Surrogate s = train(training, eps_pod, kernel);
  const auto test = build_snapshots(def, sample(strategy, n_g, def.box, test_seed(seed)), grid, options, jobs);
  return {error_report(test.Y, predict_all(s, test.samples.points)), s.k};
}

Pipeline::Pipeline(RunConfig cfg, std::size_t jobs, bool deterministic)
    : cfg_(std::move(cfg)), jobs_(jobs), deterministic_(deterministic), grid_(cfg_.grid()) {}

const SampleSet& Pipeline::samples() {
  if (!samples_) {
    if (fs::exists(out("samples.csv"))) {
      samples_ = read_samples_csv(out("samples.csv"));
      if (samples_->dim() != cfg_.problem.box.dim()) throw FormatError("samples.csv does not match the problem");
    } else {
      samples_ = podrbf::sample(cfg_.strategy, cfg_.n_s, cfg_.problem.box, cfg_.seed);
    }
  }
  return *samples_;
}

const SnapshotMatrix& Pipeline::snapshots() {
  if (!snapshots_) {
    const SampleSet& s = samples();
    if (fs::exists(out("snapshots.bin"))) {
      SnapshotMatrix snap;
      snap.Y = read_matrix_binary(out("snapshots.bin"));
      snap.grid = grid_;
      snap.samples = s;
      snap.stacking = Stacking{cfg_.problem.n_y, grid_.n_t};
      if (static_cast<std::size_t>(snap.Y.rows()) != snap.stacking.size() ||
          static_cast<std::size_t>(snap.Y.cols()) != s.size()) {
        throw FormatError("snapshots.bin does not match the configuration");
      }
      snapshots_ = std::move(snap);
    } else {
      snapshots_ = build_snapshots(cfg_.problem, s, grid_, cfg_.integrator, jobs_);
    }
  }
  return *snapshots_;
}

const Surrogate& Pipeline::surrogate() {
  if (!surrogate_) {
    if (fs::exists(out("surrogate.bin"))) {
      surrogate_ = read_surrogate(out("surrogate.bin"));
    } else {
      const auto start = std::chrono::steady_clock::now();
      const auto& snap = snapshots();
      surrogate_ = podrbf::train(snap, cfg_.eps_pod, cfg_.kernel);
      construction_time_ = seconds_since(start);
    }
  }
  return *surrogate_;
}

void Pipeline::sample() {
  stage_ = "sample";
  samples_ = podrbf::sample(cfg_.strategy, cfg_.n_s, cfg_.problem.box, cfg_.seed);
  write_samples_csv(out("samples.csv"), *samples_);
}

void Pipeline::snapshot() {
  stage_ = "snapshot";
  const auto start = std::chrono::steady_clock::now();
  snapshots_ = build_snapshots(cfg_.problem, samples(), grid_, cfg_.integrator, jobs_);
  construction_time_ = seconds_since(start);
  write_matrix_binary(out("snapshots.bin"), snapshots_->Y);
  write_snapshots_csv(out("snapshots.csv"), *snapshots_);
}

void Pipeline::train() {
  stage_ = "train";
  const auto start = std::chrono::steady_clock::now();
  const bool fresh = !snapshots_.has_value();
  const auto& snap = snapshots();
  surrogate_ = podrbf::train(snap, cfg_.eps_pod, cfg_.kernel);
  const double t = seconds_since(start);
  construction_time_ = fresh ? t : construction_time_.value_or(0.0) + t;
  write_surrogate(out("surrogate.bin"), *surrogate_);
  write_spectrum_csv(out("spectrum.csv"), surrogate_->sigma);
  if (cfg_.plots) {
    const Vector& sigma = surrogate_->sigma;
    PlotSpec spec{"Singular values and cumulative energy", "index", "value", true, {}};
    spec.series.push_back({"sigma", index_axis(sigma.size()), sigma, false, true});
    spec.series.push_back({"1 - E(k)", index_axis(sigma.size()),
                           (1.0 - cumulative_energy(sigma).array()).matrix(), true, true});
    write_svg(out("energy.svg"), spec);
  }
}

void Pipeline::evaluate() {
  stage_ = "evaluate";
  const Surrogate& s = surrogate();
  const auto test = build_snapshots(cfg_.problem,
                                    podrbf::sample(cfg_.strategy, cfg_.n_g, cfg_.problem.box, test_seed(cfg_.seed)),
                                    grid_, cfg_.integrator, jobs_);
  const Matrix Yhat = predict_all(s, test.samples.points);
  json doc = to_json(error_report(test.Y, Yhat));
  doc["strategy"] = std::string(to_string(cfg_.strategy));
  doc["kernel"] = std::string(to_string(s.coeffs.kind));
  doc["n_s"] = s.coeffs.centers.rows();
  doc["k"] = s.k;
  doc["seed"] = cfg_.seed;
  doc["test_seed"] = test_seed(cfg_.seed);

  if (cfg_.sweep.enabled()) {
    std::ofstream os(out("rmae_table.csv"), std::ios::trunc);
    if (!os) throw FormatError("cannot write rmae_table.csv");
    os << "strategy,kernel,n_s,k,rmae,mxae,mae,r2\n";
    json rows = json::array();
    for (auto strategy : cfg_.sweep.strategies) {
      for (auto kernel : cfg_.sweep.kernels) {
        for (auto n_s : cfg_.sweep.sizes) {
          const auto r = holdout_error(cfg_.problem, grid_, strategy, n_s, cfg_.n_g, kernel, cfg_.eps_pod, cfg_.seed,
                                       cfg_.integrator, jobs_);
          json row = to_json(r.report);
          row["strategy"] = std::string(to_string(strategy));
          row["kernel"] = std::string(to_string(kernel));
          row["n_s"] = n_s;
          row["k"] = r.k;
          rows.push_back(row);
          os << to_string(strategy) << ',' << to_string(kernel) << ',' << n_s << ',' << r.k << ',' << row["rmae"].dump() << ',' << row["mxae"].dump() << ',' << row["mae"].dump() << ','
             << row["r2"].dump() << "\n";
        }
      }
    }
    doc["sweep"] = rows;
  }
  write_json(out("error_report.json"), doc);

  if (cfg_.plots) {
    const Vector b = cfg_.problem.box.project(cfg_.problem.start_point());
    const Trajectory truth = integrate(cfg_.problem, b, grid_, cfg_.integrator);
    const Matrix approx = predict_states(s, b);
    PlotSpec spec{"Original and surrogate trajectories at the start point", "t", "state", false, {}};
    for (Eigen::Index j = 0; j < truth.states.cols(); ++j) {
      const std::string name = "y" + std::to_string(j + 1);
      spec.series.push_back({name + " original", grid_.times, truth.states.col(j), false, false});
      spec.series.push_back({name + " surrogate", grid_.times, approx.col(j), true, false});
    }
    write_svg(out("trajectories.svg"), spec);
  }
}

void Pipeline::optimize() {
  stage_ = "optimize";
  const ProblemDef& def = cfg_.problem;
  const Vector b0 = def.box.project(def.start_point());
  json doc;
  doc["problem"] = def.name;
  doc["sense"] = std::string(to_string(def.sense));
  doc["b0"] = to_json(b0);
  doc["at_b0"] = to_json(criterion_original(def, b0, grid_, cfg_.integrator));

  std::optional<OptResult> original, approx;
  if (cfg_.optimize_original) {
    original = optimize_problem(
        def, [&](const Vector& b) { return criterion_original(def, b, grid_, cfg_.integrator); }, def.box, b0,
        cfg_.optimizer);
    json o = to_json(*original, deterministic_);
    o["time_orig"] = wall(original->wall_time);
    doc["original"] = o;
  }
  if (cfg_.optimize_surrogate) {
    const Surrogate& s = surrogate();
    approx = optimize_problem(
        def, [&](const Vector& b) { return criterion_surrogate(s, def, b); }, def.box, b0, cfg_.optimizer);
    const CriterionValues check = criterion_original(def, approx->b_star, grid_, cfg_.integrator);
    json o = to_json(*approx, deterministic_);
    o["original_at_optimum"] = to_json(check);
    o["eps"] = relative_gap(check.psi0, approx->f_star);
    o["time_surr"] = wall(approx->wall_time);
    o["time_cnstr"] = construction_time_ ? json(wall(*construction_time_)) : json(nullptr);
    doc["surrogate"] = o;
  }
  write_json(out("optresult.json"), doc);

  if (cfg_.plots) {
    PlotSpec spec{"Optimal control", "t", "u", false, {}};
    auto add = [&](const std::string& label, const Vector& b, bool dashed) {
      Matrix u(grid_.n_t, static_cast<Eigen::Index>(def.n_u));
      for (Eigen::Index i = 0; i < grid_.times.size(); ++i) u.row(i) = control_eval(def.control, b, grid_.times[i]).transpose();
      for (Eigen::Index j = 0; j < u.cols(); ++j) {
        spec.series.push_back({"u" + std::to_string(j + 1) + " " + label, grid_.times, u.col(j), dashed, false});
      }
    };
    if (original) add("original", original->b_star, false);
    if (approx) add("surrogate", approx->b_star, true);
    write_svg(out("control.svg"), spec);
  }
}

void Pipeline::refine() {
  stage_ = "refine";
  RefineConfig rc = cfg_.refine;
  rc.jobs = jobs_;
  const RefineResult r = refine_optimize(cfg_.problem, rc);
  write_json(out("refine_trace.json"), to_json(r, deterministic_));
}

void Pipeline::run_all() {
  sample();
  snapshot();
  train();
  evaluate();
  optimize();
  refine();
}

}  // namespace podrbf
