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

#include "hio/lp.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace hio {

int LinearProgram::add_variable(std::string name, double cost, double lb, double ub) {
  objective.push_back(cost);
  lower.push_back(lb);
  upper.push_back(ub);
  var_names.push_back(std::move(name));
  for (auto& row : rows) row.push_back(0.0);
  return num_vars() - 1;
}

int LinearProgram::add_row(std::string name, const std::vector<std::pair<int, double>>& terms,
                           double bound) {
  std::vector<double> row(num_vars(), 0.0);
  for (const auto& [var, coef] : terms) {
    if (var < 0 || var >= num_vars()) throw std::invalid_argument("row references unknown variable");
    row[var] += coef;
  }
  rows.push_back(std::move(row));
  rhs.push_back(bound);
  row_names.push_back(std::move(name));
  return num_rows() - 1;
}

void LinearProgram::check() const {
  const size_t n = objective.size();
  if (lower.size() != n || upper.size() != n) throw std::invalid_argument("bound vectors mismatch");
  if (rhs.size() != rows.size()) throw std::invalid_argument("rhs size mismatch");
  for (const auto& row : rows) {
    if (row.size() != n) throw std::invalid_argument("row width differs from variable count");
  }
  for (size_t j = 0; j < n; ++j) {
    if (!std::isfinite(lower[j])) throw std::invalid_argument("variable lower bounds must be finite");
    if (lower[j] > upper[j]) throw std::invalid_argument("variable has lb > ub");
  }
}

const char* lp_status_name(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
    case LpStatus::kIterationLimit: return "iteration_limit";
  }
  return "unknown";
}

namespace {

enum class VarState : unsigned char { kBasic, kAtLower, kAtUpper };

// Working state of one solve. Columns are structurals, then one slack per
// row (+e_i), then artificials (-e_i) for rows whose starting residual is
// negative.
class Simplex {
 public:
  Simplex(const LinearProgram& lp, const SimplexOptions& options) : opt_(options) {
    lp.check();
    m_ = lp.num_rows();
    n_ = lp.num_vars();
    row_scale_.assign(m_, 1.0);
    for (int i = 0; i < m_; ++i) {
      double big = 0;
      for (double v : lp.rows[i]) big = std::max(big, std::fabs(v));
      if (big > 0) row_scale_[i] = 1.0 / big;
    }
    columns_.assign(n_, std::vector<double>(m_, 0.0));
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < n_; ++j) columns_[j][i] = lp.rows[i][j] * row_scale_[i];
    }
    b_.resize(m_);
    for (int i = 0; i < m_; ++i) b_[i] = lp.rhs[i] * row_scale_[i];

    lower_ = lp.lower;
    upper_ = lp.upper;
    cost_ = lp.objective;
    for (int i = 0; i < m_; ++i) {
      lower_.push_back(0.0);
      upper_.push_back(kInfinity);
      cost_.push_back(0.0);
    }
    x_.assign(n_ + m_, 0.0);
    state_.assign(n_ + m_, VarState::kAtLower);
    for (int j = 0; j < n_; ++j) x_[j] = lower_[j];

    head_.assign(m_, -1);
    for (int i = 0; i < m_; ++i) {
      double residual = b_[i];
      for (int j = 0; j < n_; ++j) residual -= columns_[j][i] * x_[j];
      const int slack = n_ + i;
      if (residual >= -opt_.feasibility_tolerance) {
        head_[i] = slack;
        state_[slack] = VarState::kBasic;
        x_[slack] = residual;
      } else {
        const int art = static_cast<int>(x_.size());
        artificial_row_.push_back(i);
        lower_.push_back(0.0);
        upper_.push_back(kInfinity);
        cost_.push_back(0.0);
        x_.push_back(-residual);
        state_.push_back(VarState::kBasic);
        head_[i] = art;
      }
    }
    total_ = static_cast<int>(x_.size());
    max_iterations_ = opt_.max_iterations > 0 ? opt_.max_iterations : 50 * (m_ + n_) + 1000;
    binv_.assign(static_cast<size_t>(m_) * m_, 0.0);
    refactor();
  }

  LpSolution solve(const LinearProgram& lp) {
    LpSolution out;
    if (!artificial_row_.empty()) {
      std::vector<double> phase_one(total_, 0.0);
      for (int j = n_ + m_; j < total_; ++j) phase_one[j] = -1.0;
      LpStatus st = run(phase_one);
      if (st == LpStatus::kIterationLimit) return finish(lp, st);
      // Each artificial is measured against its own (scaled) row: a single
      // global scale lets one large rhs hide a real residual elsewhere.
      for (size_t k = 0; k < artificial_row_.size(); ++k) {
        const double residual = x_[n_ + m_ + static_cast<int>(k)];
        const double bound = opt_.feasibility_tolerance * std::max(1.0, std::fabs(b_[artificial_row_[k]]));
        if (residual > bound) return finish(lp, LpStatus::kInfeasible);
      }
      for (int j = n_ + m_; j < total_; ++j) {
        upper_[j] = 0.0;
        if (state_[j] != VarState::kBasic) {
          state_[j] = VarState::kAtLower;
          x_[j] = 0.0;
        }
      }
    }
    std::vector<double> phase_two(total_, 0.0);
    std::copy(cost_.begin(), cost_.begin() + n_, phase_two.begin());
    LpStatus st = run(phase_two);
    return finish(lp, st, &phase_two);
  }

 private:
  // Entry i of column j.
  double entry(int j, int i) const {
    if (j < n_) return columns_[j][i];
    if (j < n_ + m_) return j - n_ == i ? 1.0 : 0.0;
    return artificial_row_[j - n_ - m_] == i ? -1.0 : 0.0;
  }

  // out = B^{-1} a_j
  void ftran(int j, std::vector<double>& out) const {
    out.assign(m_, 0.0);
    if (j < n_) {
      const auto& col = columns_[j];
      for (int i = 0; i < m_; ++i) {
        const double* row = &binv_[static_cast<size_t>(i) * m_];
        double sum = 0;
        for (int k = 0; k < m_; ++k) sum += row[k] * col[k];
        out[i] = sum;
      }
      return;
    }
    const int k = j < n_ + m_ ? j - n_ : artificial_row_[j - n_ - m_];
    const double sign = j < n_ + m_ ? 1.0 : -1.0;
    for (int i = 0; i < m_; ++i) out[i] = sign * binv_[static_cast<size_t>(i) * m_ + k];
  }

  double dot_column(int j, const std::vector<double>& y) const {
    if (j < n_) {
      double sum = 0;
      const auto& col = columns_[j];
      for (int i = 0; i < m_; ++i) sum += y[i] * col[i];
      return sum;
    }
    if (j < n_ + m_) return y[j - n_];
    return -y[artificial_row_[j - n_ - m_]];
  }

  void refactor() {
    // Gauss-Jordan on [B | I] with partial pivoting.
    std::vector<double> work(static_cast<size_t>(m_) * m_);
    for (int i = 0; i < m_; ++i) {
      for (int k = 0; k < m_; ++k) work[static_cast<size_t>(i) * m_ + k] = entry(head_[k], i);
    }
    std::fill(binv_.begin(), binv_.end(), 0.0);
    for (int i = 0; i < m_; ++i) binv_[static_cast<size_t>(i) * m_ + i] = 1.0;
    for (int col = 0; col < m_; ++col) {
      int piv = col;
      double best = std::fabs(work[static_cast<size_t>(col) * m_ + col]);
      for (int r = col + 1; r < m_; ++r) {
        double v = std::fabs(work[static_cast<size_t>(r) * m_ + col]);
        if (v > best) {
          best = v;
          piv = r;
        }
      }
      if (best < 1e-14) throw std::runtime_error("simplex basis became singular");
      if (piv != col) {
        for (int k = 0; k < m_; ++k) {
          std::swap(work[static_cast<size_t>(piv) * m_ + k], work[static_cast<size_t>(col) * m_ + k]);
          std::swap(binv_[static_cast<size_t>(piv) * m_ + k], binv_[static_cast<size_t>(col) * m_ + k]);
        }
      }
      const double inv = 1.0 / work[static_cast<size_t>(col) * m_ + col];
      for (int k = 0; k < m_; ++k) {
        work[static_cast<size_t>(col) * m_ + k] *= inv;
        binv_[static_cast<size_t>(col) * m_ + k] *= inv;
      }
      for (int r = 0; r < m_; ++r) {
        if (r == col) continue;
        const double f = work[static_cast<size_t>(r) * m_ + col];
        if (f == 0) continue;
        for (int k = 0; k < m_; ++k) {
          work[static_cast<size_t>(r) * m_ + k] -= f * work[static_cast<size_t>(col) * m_ + k];
          binv_[static_cast<size_t>(r) * m_ + k] -= f * binv_[static_cast<size_t>(col) * m_ + k];
        }
      }
    }
    // Row i of work now corresponds to basis position i: B^{-1} B = I.
    std::vector<double> rhs = b_;
    for (int j = 0; j < total_; ++j) {
      if (state_[j] == VarState::kBasic || x_[j] == 0) continue;
      for (int i = 0; i < m_; ++i) rhs[i] -= entry(j, i) * x_[j];
    }
    for (int i = 0; i < m_; ++i) {
      double sum = 0;
      for (int k = 0; k < m_; ++k) sum += binv_[static_cast<size_t>(i) * m_ + k] * rhs[k];
      x_[head_[i]] = sum;
    }
    since_refactor_ = 0;
  }

  std::vector<double> duals(const std::vector<double>& cost) const {
    std::vector<double> y(m_, 0.0);
    for (int i = 0; i < m_; ++i) {
      const double cb = cost[head_[i]];
      if (cb == 0) continue;
      const double* row = &binv_[static_cast<size_t>(i) * m_];
      for (int k = 0; k < m_; ++k) y[k] += cb * row[k];
    }
    return y;
  }

  LpStatus run(const std::vector<double>& cost) {
    bool bland = false;
    int degenerate = 0;
    std::vector<double> alpha;
    while (true) {
      if (iterations_ >= max_iterations_) return LpStatus::kIterationLimit;
      if (since_refactor_ >= opt_.refactor_interval) refactor();
      const std::vector<double> y = duals(cost);

      int entering = -1;
      double best = 0;
      for (int j = 0; j < total_; ++j) {
        if (state_[j] == VarState::kBasic || lower_[j] == upper_[j]) continue;
        const double d = cost[j] - dot_column(j, y);
        double score = 0;
        if (state_[j] == VarState::kAtLower && d > opt_.optimality_tolerance) score = d;
        if (state_[j] == VarState::kAtUpper && d < -opt_.optimality_tolerance) score = -d;
        if (score == 0) continue;
        if (bland) {
          entering = j;
          break;
        }
        if (score > best) {
          best = score;
          entering = j;
        }
      }
      if (entering < 0) return LpStatus::kOptimal;

      ftran(entering, alpha);
      const double dir = state_[entering] == VarState::kAtLower ? 1.0 : -1.0;
      double step = upper_[entering] - lower_[entering];
      int leave = -1;
      constexpr double kTie = 1e-12;
      for (int i = 0; i < m_; ++i) {
        if (std::fabs(alpha[i]) <= opt_.pivot_tolerance) continue;
        const int v = head_[i];
        const double a = dir * alpha[i];
        double t;
        if (a > 0) {
          t = (x_[v] - lower_[v]) / a;
        } else {
          if (!std::isfinite(upper_[v])) continue;
          t = (upper_[v] - x_[v]) / -a;
        }
        t = std::max(t, 0.0);
        if (t < step - kTie) {
          step = t;
          leave = i;
        } else if (t <= step + kTie && leave >= 0) {
          const bool better = bland ? head_[i] < head_[leave]
                                    : std::fabs(alpha[i]) > std::fabs(alpha[leave]);
          if (better) {
            step = std::min(step, t);
            leave = i;
          }
        }
      }
      if (!std::isfinite(step)) return LpStatus::kUnbounded;

      for (int i = 0; i < m_; ++i) x_[head_[i]] -= dir * step * alpha[i];
      if (leave < 0) {
        state_[entering] = dir > 0 ? VarState::kAtUpper : VarState::kAtLower;
        x_[entering] = dir > 0 ? upper_[entering] : lower_[entering];
      } else {
        const int v = head_[leave];
        const bool to_lower = dir * alpha[leave] > 0;
        state_[v] = to_lower ? VarState::kAtLower : VarState::kAtUpper;
        x_[v] = to_lower ? lower_[v] : upper_[v];
        x_[entering] += dir * step;
        head_[leave] = entering;
        state_[entering] = VarState::kBasic;
        pivot(leave, alpha);
      }
      ++iterations_;
      if (step <= kTie) {
        if (++degenerate > opt_.degenerate_pivots_before_bland) bland = true;
      } else {
        degenerate = 0;
        bland = false;
      }
    }
  }

  void pivot(int r, const std::vector<double>& alpha) {
    double* prow = &binv_[static_cast<size_t>(r) * m_];
    const double inv = 1.0 / alpha[r];
    for (int k = 0; k < m_; ++k) prow[k] *= inv;
    for (int i = 0; i < m_; ++i) {
      if (i == r || alpha[i] == 0) continue;
      double* row = &binv_[static_cast<size_t>(i) * m_];
      const double f = alpha[i];
      for (int k = 0; k < m_; ++k) row[k] -= f * prow[k];
    }
    ++since_refactor_;
  }

  LpSolution finish(const LinearProgram& lp, LpStatus status,
                    const std::vector<double>* cost = nullptr) {
    LpSolution out;
    out.status = status;
    out.iterations = iterations_;
    if (status != LpStatus::kOptimal) return out;
    refactor();
    out.primal.resize(n_);
    for (int j = 0; j < n_; ++j) out.primal[j] = std::clamp(x_[j], lower_[j], upper_[j]);
    std::vector<double> y = duals(*cost);
    out.duals.resize(m_);
    for (int i = 0; i < m_; ++i) out.duals[i] = y[i] * row_scale_[i];
    // Final check on the unscaled rows; a basis that drifted past the
    // tolerances is reported as infeasible rather than as a bogus optimum.
    for (int i = 0; i < m_; ++i) {
      double activity = 0, magnitude = std::fabs(lp.rhs[i]);
      for (int j = 0; j < n_; ++j) {
        activity += lp.rows[i][j] * out.primal[j];
        magnitude = std::max(magnitude, std::fabs(lp.rows[i][j] * out.primal[j]));
      }
      if (activity - lp.rhs[i] > 1e3 * opt_.feasibility_tolerance * std::max(1.0, magnitude)) {
        out.status = LpStatus::kInfeasible;
        out.primal.clear();
        out.duals.clear();
        return out;
      }
    }
    double obj = 0;
    for (int j = 0; j < n_; ++j) obj += lp.objective[j] * out.primal[j];
    out.objective = obj + lp.objective_constant;
    return out;
  }

  SimplexOptions opt_;
  int m_ = 0, n_ = 0, total_ = 0;
  std::vector<std::vector<double>> columns_;
  std::vector<double> row_scale_, b_, lower_, upper_, cost_, x_;
  std::vector<VarState> state_;
  std::vector<int> head_, artificial_row_;
  std::vector<double> binv_;
  int iterations_ = 0, since_refactor_ = 0, max_iterations_ = 0;
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, const SimplexOptions& options) {
  Simplex simplex(lp, options);
  return simplex.solve(lp);
}

double dual_objective(const LinearProgram& lp, const std::vector<double>& duals) {
  double value = lp.objective_constant;
  for (int i = 0; i < lp.num_rows(); ++i) value += lp.rhs[i] * duals[i];
  for (int j = 0; j < lp.num_vars(); ++j) {
    double r = lp.objective[j];
    for (int i = 0; i < lp.num_rows(); ++i) r -= lp.rows[i][j] * duals[i];
    if (r > 0) value += r * lp.upper[j];
    if (r < 0) value += r * lp.lower[j];
  }
  return value;
}

namespace {

std::string mps_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string pad(const std::string& s, size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string short_name(char prefix, int index) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%c%07d", prefix, index);
  return buf;
}

}  // namespace

void write_mps(const LinearProgram& lp, std::ostream& out, const std::string& name) {
  lp.check();
  out << "* maximize problem written as minimize of the negated objective\n";
  out << "* objective constant " << mps_number(lp.objective_constant) << "\n";
  for (int j = 0; j < lp.num_vars(); ++j)
    out << "* " << short_name('X', j) << " = " << lp.var_names[j] << "\n";
  for (int i = 0; i < lp.num_rows(); ++i)
    out << "* " << short_name('R', i) << " = " << lp.row_names[i] << "\n";
  out << "NAME          " << name << "\n";
  out << "ROWS\n";
  out << " N  OBJ\n";
  for (int i = 0; i < lp.num_rows(); ++i) out << " L  " << short_name('R', i) << "\n";
  out << "COLUMNS\n";
  for (int j = 0; j < lp.num_vars(); ++j) {
    const std::string col = short_name('X', j);
    if (lp.objective[j] != 0)
      out << "    " << pad(col, 10) << pad("OBJ", 10) << mps_number(-lp.objective[j]) << "\n";
    for (int i = 0; i < lp.num_rows(); ++i) {
      if (lp.rows[i][j] == 0) continue;
      out << "    " << pad(col, 10) << pad(short_name('R', i), 10) << mps_number(lp.rows[i][j]) << "\n";
    }
  }
  out << "RHS\n";
  for (int i = 0; i < lp.num_rows(); ++i) {
    if (lp.rhs[i] != 0)
      out << "    " << pad("RHS", 10) << pad(short_name('R', i), 10) << mps_number(lp.rhs[i]) << "\n";
  }
  out << "BOUNDS\n";
  for (int j = 0; j < lp.num_vars(); ++j) {
    const std::string col = short_name('X', j);
    if (lp.lower[j] != 0) out << " LO " << pad("BND", 10) << pad(col, 10) << mps_number(lp.lower[j]) << "\n";
    if (std::isfinite(lp.upper[j]))
      out << " UP " << pad("BND", 10) << pad(col, 10) << mps_number(lp.upper[j]) << "\n";
  }
  out << "ENDATA\n";
}

}  // namespace hio
