#include "podrbf/criteria.hpp"

#include "podrbf/errors.hpp"

namespace podrbf {
namespace {

double evaluate_one(const Functional& f, const TimeGrid& grid, const Matrix& states, const Matrix& controls) {
  double value = 0.0;
  if (f.integrand) {
    Vector samples(states.rows());
    for (Eigen::Index i = 0; i < states.rows(); ++i) {
      samples[i] = f.integrand(grid.times[i], states.row(i).transpose(), controls.row(i).transpose());
    }
    value += quadrature(samples, grid);
  }
  if (f.terminal) {
    const auto last = states.rows() - 1;
    value += f.terminal(states.row(last).transpose(), controls.row(last).transpose());
  }
  return value;
}

}  // namespace

CriterionValues evaluate_functionals(const ProblemDef& def, const Vector& b, const TimeGrid& grid,
                                     const Matrix& states) {
  if (static_cast<std::size_t>(states.rows()) != grid.n_t || static_cast<std::size_t>(states.cols()) != def.n_y) {
    throw DimensionMismatch("trajectory is " + std::to_string(states.rows()) + " x " +
                            std::to_string(states.cols()) + ", expected " + std::to_string(grid.n_t) + " x " +
                            std::to_string(def.n_y));
  }
  Matrix controls(states.rows(), static_cast<Eigen::Index>(def.n_u));
  for (Eigen::Index i = 0; i < states.rows(); ++i) {
    controls.row(i) = control_eval(def.control, b, grid.times[i]).transpose();
  }
  CriterionValues out;
  out.psi0 = evaluate_one(def.criterion, grid, states, controls);
  out.psis.resize(static_cast<Eigen::Index>(def.eq_constraints.size()));
  for (std::size_t j = 0; j < def.eq_constraints.size(); ++j) {
    out.psis[static_cast<Eigen::Index>(j)] = evaluate_one(def.eq_constraints[j], grid, states, controls);
  }
  return out;
}

CriterionValues criterion_original(const ProblemDef& def, const Vector& b, const TimeGrid& grid,
                                   const IntegratorOptions& options) {
  return evaluate_functionals(def, b, grid, integrate(def, b, grid, options).states);
}

CriterionValues criterion_surrogate(const Surrogate& s, const ProblemDef& def, const Vector& b) {
  if (s.stacking.n_y != def.n_y) throw DimensionMismatch("surrogate state count differs from the problem");
  return evaluate_functionals(def, b, s.grid, predict_states(s, b));
}

OptResult optimize_problem(const ProblemDef& def, const CriterionFunction& criterion, const Box& box,
                           const Vector& x0, const OptimizerOptions& options) {
  NlpSpec spec;
  spec.evaluate = [&criterion](const Vector& b) {
    CriterionValues v = criterion(b);
    return Evaluation{v.psi0, std::move(v.psis)};
  };
  spec.box = box;
  spec.x0 = x0;
  spec.options = options;
  return def.sense == Sense::Maximize ? maximize(spec) : minimize(spec);
}

}  // namespace podrbf
