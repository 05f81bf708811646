#include "podrbf/optimizer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

#include "podrbf/diagnostics.hpp"
#include "podrbf/errors.hpp"

namespace podrbf {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct BudgetExhausted {};

// Counts evaluations against the budget and remembers the last result per point.
class CountingEvaluator {
 public:
  CountingEvaluator(const Evaluator& f, std::size_t budget) : f_(f), budget_(budget) {}

  Evaluation operator()(const Vector& x) {
    if (evals_ >= budget_) throw BudgetExhausted{};
    ++evals_;
    return f_(x);
  }
  std::size_t evals() const { return evals_; }

 private:
  const Evaluator& f_;
  std::size_t budget_;
  std::size_t evals_ = 0;
};

double max_abs(const Vector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

struct InnerResult {
  Vector x;
  double value = kInf;
  bool converged = false;
};

// Nelder-Mead on `merit` with every trial point projected onto `box`.
class BoxedSimplex {
 public:
  BoxedSimplex(std::function<double(const Vector&)> merit, const Box& box, const OptimizerOptions& opt)
      : merit_(std::move(merit)), box_(box), opt_(opt) {}

  InnerResult run(const Vector& start) {
    const auto n = start.size();
    const Vector width = box_.width();
    std::vector<Vector> v(static_cast<std::size_t>(n + 1), start);
    std::vector<double> fv(static_cast<std::size_t>(n + 1));
    fv[0] = eval(start);
    for (Eigen::Index i = 0; i < n; ++i) {
      Vector x = start;
      const double step = opt_.initial_simplex * width[i];
      x[i] = (x[i] + step <= box_.upper[i]) ? x[i] + step : x[i] - step;
      x = box_.project(x);
      v[static_cast<std::size_t>(i + 1)] = x;
      fv[static_cast<std::size_t>(i + 1)] = eval(x);
    }

    std::vector<std::size_t> order(v.size());
    while (true) {
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
      const std::size_t lo = order.front(), hi = order.back(), second = order[order.size() - 2];

      double size = 0.0;
      for (const auto& p : v) size = std::max(size, (p - v[lo]).cwiseAbs().maxCoeff());
      if (size <= opt_.step_tol) return {v[lo], fv[lo], true};

      Vector centroid = Vector::Zero(n);
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i != hi) centroid += v[i];
      }
      centroid /= static_cast<double>(n);

      const Vector xr = box_.project(centroid + (centroid - v[hi]));
      const double fr = eval(xr);
      if (fr < fv[lo]) {
        const Vector xe = box_.project(centroid + 2.0 * (centroid - v[hi]));
        const double fe = eval(xe);
        if (fe < fr) {
          v[hi] = xe;
          fv[hi] = fe;
        } else {
          v[hi] = xr;
          fv[hi] = fr;
        }
        continue;
      }
      if (fr < fv[second]) {
        v[hi] = xr;
        fv[hi] = fr;
        continue;
      }
      const bool outside = fr < fv[hi];
      const Vector xc = outside ? box_.project(centroid + 0.5 * (xr - centroid))
                                : box_.project(centroid + 0.5 * (v[hi] - centroid));
      const double fc = eval(xc);
      if (fc < (outside ? fr : fv[hi])) {
        v[hi] = xc;
        fv[hi] = fc;
        continue;
      }
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i == lo) continue;
        v[i] = box_.project(v[lo] + 0.5 * (v[i] - v[lo]));
        fv[i] = eval(v[i]);
      }
    }
  }

 private:
  double eval(const Vector& x) {
    const double f = merit_(x);
    return std::isfinite(f) ? f : kInf;
  }

  std::function<double(const Vector&)> merit_;
  const Box& box_;
  const OptimizerOptions& opt_;
};

// Lowest merit seen in the current outer iteration, with its evaluation.
struct Incumbent {
  Vector x;
  double merit = kInf;
  Evaluation eval;
};

}  // namespace

NlpSpec make_nlp(std::function<double(const Vector&)> objective,
                 std::function<Vector(const Vector&)> eq_constraints, Box box, Vector x0,
                 OptimizerOptions options) {
  NlpSpec spec;
  spec.evaluate = [objective = std::move(objective), eq = std::move(eq_constraints)](const Vector& x) {
    return Evaluation{objective(x), eq ? eq(x) : Vector()};
  };
  spec.box = std::move(box);
  spec.x0 = std::move(x0);
  spec.options = options;
  return spec;
}

std::string_view to_string(OptStatus status) {
  switch (status) {
    case OptStatus::Converged: return "converged";
    case OptStatus::ConstraintsNotMet: return "constraints-not-met";
    case OptStatus::MaxEvalsExceeded: return "max-evals-exceeded";
  }
  return "?";
}

OptResult minimize(const NlpSpec& spec) {
  const auto start_time = std::chrono::steady_clock::now();
  spec.box.check();
  if (!spec.evaluate) throw InvalidArgument("NLP has no evaluator");
  if (static_cast<std::size_t>(spec.x0.size()) != spec.box.dim()) {
    throw DimensionMismatch("x0 has " + std::to_string(spec.x0.size()) + " entries, box has dimension " +
                            std::to_string(spec.box.dim()));
  }
  const OptimizerOptions& opt = spec.options;
  CountingEvaluator evaluate(spec.evaluate, std::max<std::size_t>(opt.max_evals, 1));

  Vector x = spec.box.project(spec.x0);
  Evaluation at_x = evaluate(x);
  if (!std::isfinite(at_x.objective) || !at_x.constraints.allFinite()) {
    throw NonFiniteObjective("objective or constraints not finite at the starting point");
  }
  const auto n_c = at_x.constraints.size();
  Vector lambda = Vector::Zero(n_c);
  double penalty = n_c > 0 ? opt.penalty0 : 0.0;

  OptResult result;
  bool budget_hit = false;
  bool inner_converged = false;

  const std::size_t outer_limit = n_c > 0 ? std::max<std::size_t>(opt.max_outer, 1) : 1;
  for (std::size_t outer = 0; outer < outer_limit; ++outer) {
    Incumbent incumbent;
    auto merit = [&](const Vector& p) {
      Evaluation e = evaluate(p);
      if (e.constraints.size() != n_c) throw DimensionMismatch("constraint count changed between evaluations");
      const double m = e.objective + lambda.dot(e.constraints) + 0.5 * penalty * e.constraints.squaredNorm();
      if (std::isfinite(m) && m < incumbent.merit) incumbent = Incumbent{p, m, std::move(e)};
      return m;
    };
    BoxedSimplex simplex(merit, spec.box, opt);
    try {
      InnerResult inner = simplex.run(x);
      for (std::size_t r = 0; r < opt.restarts; ++r) {
        const double before = inner.value;
        InnerResult again = simplex.run(inner.x);
        const bool improved = again.value < before - 1e-12 * (1.0 + std::abs(before));
        if (again.value <= before) inner = again;
        if (!improved) break;
      }
      inner_converged = inner.converged;
    } catch (const BudgetExhausted&) {
      budget_hit = true;
    }
    if (incumbent.merit < kInf) {
      x = incumbent.x;
      at_x = incumbent.eval;
    }
    if (budget_hit) break;

    const double violation = max_abs(at_x.constraints);
    result.history.push_back({penalty, at_x.objective, violation, x});
    if (n_c == 0 || (inner_converged && violation <= opt.constraint_tol)) break;
    lambda += penalty * at_x.constraints;
    penalty *= opt.penalty_growth;
  }

  if (budget_hit) {
    warn(WarningKind::MaxEvalsExceeded, "optimizer stopped after " + std::to_string(evaluate.evals()) +
                                            " evaluations");
  }
  result.b_star = x;
  result.f_star = at_x.objective;
  result.constraints = at_x.constraints;
  result.constraint_violation = max_abs(at_x.constraints);
  result.evals = evaluate.evals();
  if (budget_hit) {
    result.status = OptStatus::MaxEvalsExceeded;
  } else if (inner_converged && result.constraint_violation <= opt.constraint_tol) {
    result.status = OptStatus::Converged;
  } else {
    result.status = OptStatus::ConstraintsNotMet;
  }
  result.converged = result.status == OptStatus::Converged;
  result.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time).count();
  return result;
}

OptResult maximize(const NlpSpec& spec) {
  NlpSpec negated = spec;
  negated.evaluate = [f = spec.evaluate](const Vector& x) {
    Evaluation e = f(x);
    e.objective = -e.objective;
    return e;
  };
  OptResult r = minimize(negated);
  r.f_star = -r.f_star;
  for (auto& h : r.history) h.objective = -h.objective;
  return r;
}

}  // namespace podrbf
