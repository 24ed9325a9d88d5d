/* Copyright 2026 The HIO Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef HIO_LP_H_
#define HIO_LP_H_

#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

namespace hio {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// maximize  objective . x + objective_constant
// s.t.      rows[i] . x <= rhs[i]
//           lower <= x <= upper      (lower finite, upper may be +inf)
struct LinearProgram {
  std::vector<double> objective;
  std::vector<std::vector<double>> rows;  // dense, one entry per variable
  std::vector<double> rhs;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<std::string> var_names;
  std::vector<std::string> row_names;
  double objective_constant = 0;

  int num_vars() const { return static_cast<int>(objective.size()); }
  int num_rows() const { return static_cast<int>(rows.size()); }

  int add_variable(std::string name, double cost, double lb = 0, double ub = kInfinity);
  // Sparse `terms` as (variable, coefficient); repeated variables accumulate.
  int add_row(std::string name, const std::vector<std::pair<int, double>>& terms, double bound);

  // Throws std::invalid_argument on ragged rows, lb > ub, or lb = -inf.
  void check() const;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

const char* lp_status_name(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> primal;
  double objective = 0;        // includes objective_constant
  std::vector<double> duals;   // one per row, >= 0 at optimality
  int iterations = 0;
};

struct SimplexOptions {
  double pivot_tolerance = 1e-10;
  double optimality_tolerance = 1e-9;
  double feasibility_tolerance = 1e-9;
  int degenerate_pivots_before_bland = 50;
  int refactor_interval = 64;
  int max_iterations = 0;  // 0 = 50 * (rows + vars) + 1000
};

// Dense bounded-variable revised simplex, two phases. Dantzig pricing, with
// Bland's rule after a run of degenerate pivots. Never throws on
// infeasible or unbounded input; the status says so.
LpSolution solve_lp(const LinearProgram& lp, const SimplexOptions& options = {});

// Dual objective b.y + sum_j (max(r_j,0) ub_j + min(r_j,0) lb_j) with
// r = c - A^T y, plus the constant. Equals the primal optimum at optimality.
double dual_objective(const LinearProgram& lp, const std::vector<double>& duals);

// Fixed-column MPS (free names are truncated to 8 columns). The objective is
// negated because MPS minimizes.
void write_mps(const LinearProgram& lp, std::ostream& out, const std::string& name = "HIO");

}  // namespace hio

#endif  // HIO_LP_H_
