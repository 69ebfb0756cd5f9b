#include "gebp/nfold.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <string>

namespace gebp {

void NfoldProgram::validate() const {
  if (slack_rhs < 0) throw std::invalid_argument("nfold: negative slack rhs");
  if (y_bound < 0) throw std::invalid_argument("nfold: negative y bound");
  const size_t rows = demand.size();
  if (slack_weight.size() != rows) {
    throw std::invalid_argument("nfold: slack weight count does not match row count");
  }
  for (long long d : demand) {
    if (d < 0) throw std::invalid_argument("nfold: negative demand");
  }
  for (long long w : slack_weight) {
    if (w < 0) throw std::invalid_argument("nfold: negative slack weight");
  }
  for (size_t b = 0; b < bricks.size(); ++b) {
    for (const NfoldColumn& column : bricks[b].columns) {
      if (column.eq.size() != rows) {
        throw std::invalid_argument("nfold: column row count mismatch in brick " +
                                    std::to_string(b));
      }
      for (long long e : column.eq) {
        if (e < 0) throw std::invalid_argument("nfold: negative matrix entry");
      }
    }
  }
}

long long NfoldProgram::max_entry() const {
  long long best = bricks.empty() && demand.empty() ? 0 : 1;  // y block identity
  for (const NfoldBrick& brick : bricks) {
    for (const NfoldColumn& column : brick.columns) {
      for (long long e : column.eq) best = std::max(best, e);
    }
  }
  for (long long w : slack_weight) best = std::max(best, w);
  return best;
}

void NfoldProgram::dump(std::ostream& os) const {
  os << "nfold rows=" << demand.size() << " bricks=" << bricks.size()
     << " ybound=" << y_bound << " slackrhs=" << slack_rhs << "\n";
  os << "demand";
  for (long long d : demand) os << ' ' << d;
  os << "\nslackweight";
  for (long long w : slack_weight) os << ' ' << w;
  os << "\n";
  for (size_t b = 0; b < bricks.size(); ++b) {
    os << "brick " << b << " columns=" << bricks[b].columns.size() << "\n";
    for (size_t j = 0; j < bricks[b].columns.size(); ++j) {
      const NfoldColumn& column = bricks[b].columns[j];
      os << "  column " << j << " cost=" << column.cost.str() << " eq";
      for (long long e : column.eq) os << ' ' << e;
      os << "\n";
    }
  }
}

namespace {

// Builds the full solution implied by a per-brick column choice, or nullopt
// when the choice violates demand, the y bounds, or the slack budget.
std::optional<NfoldSolution> assemble(const NfoldProgram& program, std::vector<int> chosen) {
  const int rows = program.row_count();
  if (chosen.size() != program.bricks.size()) return std::nullopt;
  std::vector<long long> used(rows, 0);
  Rational objective(0);
  for (size_t b = 0; b < chosen.size(); ++b) {
    int j = chosen[b];
    if (j < 0 || j >= static_cast<int>(program.bricks[b].columns.size())) return std::nullopt;
    const NfoldColumn& column = program.bricks[b].columns[j];
    for (int p = 0; p < rows; ++p) used[p] += column.eq[p];
    objective += column.cost;
  }
  NfoldSolution solution;
  solution.chosen = std::move(chosen);
  solution.y.resize(rows);
  long long slack_used = 0;
  for (int p = 0; p < rows; ++p) {
    long long y = program.demand[p] - used[p];
    if (y < 0 || y > program.y_bound) return std::nullopt;
    solution.y[p] = y;
    slack_used += program.slack_weight[p] * y;
  }
  if (slack_used > program.slack_rhs) return std::nullopt;
  solution.slack_var = program.slack_rhs - slack_used;
  solution.objective = objective;
  solution.exact = true;
  return solution;
}

}  // namespace

bool verify_solution(const NfoldProgram& program, const NfoldSolution& solution) {
  const int rows = program.row_count();
  if (solution.chosen.size() != program.bricks.size()) return false;
  if (static_cast<int>(solution.y.size()) != rows) return false;
  std::vector<long long> used(rows, 0);
  Rational objective(0);
  for (size_t b = 0; b < solution.chosen.size(); ++b) {
    int j = solution.chosen[b];
    if (j < 0 || j >= static_cast<int>(program.bricks[b].columns.size())) return false;
    const NfoldColumn& column = program.bricks[b].columns[j];
    for (int p = 0; p < rows; ++p) used[p] += column.eq[p];
    objective += column.cost;
  }
  long long slack_used = 0;
  for (int p = 0; p < rows; ++p) {
    if (used[p] + solution.y[p] != program.demand[p]) return false;
    if (solution.y[p] < 0 || solution.y[p] > program.y_bound) return false;
    slack_used += program.slack_weight[p] * solution.y[p];
  }
  if (solution.slack_var < 0) return false;
  if (slack_used + solution.slack_var != program.slack_rhs) return false;
  return objective == solution.objective;
}

std::optional<NfoldSolution> solve_exact(const NfoldProgram& program, long long state_budget) {
  program.validate();
  const int rows = program.row_count();
  const int brick_count = static_cast<int>(program.bricks.size());

  using Key = std::vector<long long>;
  struct Entry {
    Rational cost;
    int column = -1;
    const Key* prev = nullptr;  // key in the previous layer (map nodes are stable)
  };

  std::vector<std::map<Key, Entry>> layers(brick_count + 1);
  layers[0].emplace(Key(rows, 0), Entry{Rational(0), -1, nullptr});
  long long states = 1;

  for (int b = 0; b < brick_count; ++b) {
    for (const auto& [key, entry] : layers[b]) {
      for (size_t j = 0; j < program.bricks[b].columns.size(); ++j) {
        const NfoldColumn& column = program.bricks[b].columns[j];
        Key next = key;
        bool ok = true;
        for (int p = 0; p < rows; ++p) {
          next[p] += column.eq[p];
          if (next[p] > program.demand[p]) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        Rational cost = entry.cost + column.cost;
        auto it = layers[b + 1].find(next);
        if (it == layers[b + 1].end()) {
          if (++states > state_budget) {
            throw BudgetExceeded("nfold state budget of " + std::to_string(state_budget) +
                                 " states exceeded");
          }
          layers[b + 1].emplace(std::move(next),
                                Entry{std::move(cost), static_cast<int>(j), &key});
        } else if (cost < it->second.cost) {
          it->second = Entry{std::move(cost), static_cast<int>(j), &key};
        }
      }
    }
  }

  // Pick the cheapest final state whose implied y vector respects the bounds
  // and the slack budget; map order makes ties resolve to the smallest
  // accumulated-contribution vector.
  const Key* best_key = nullptr;
  Rational best_cost(0);
  for (const auto& [key, entry] : layers[brick_count]) {
    bool feasible = true;
    long long slack_used = 0;
    for (int p = 0; p < rows; ++p) {
      long long y = program.demand[p] - key[p];
      if (y > program.y_bound) {
        feasible = false;
        break;
      }
      slack_used += program.slack_weight[p] * y;
    }
    if (!feasible || slack_used > program.slack_rhs) continue;
    if (best_key == nullptr || entry.cost < best_cost) {
      best_key = &key;
      best_cost = entry.cost;
    }
  }
  if (best_key == nullptr) return std::nullopt;

  std::vector<int> chosen(brick_count, -1);
  const Key* key = best_key;
  for (int b = brick_count; b-- > 0;) {
    const Entry& entry = layers[b + 1].at(*key);
    chosen[b] = entry.column;
    key = entry.prev;
  }
  std::optional<NfoldSolution> solution = assemble(program, std::move(chosen));
  if (!solution || !verify_solution(program, *solution) || solution->objective != best_cost) {
    throw InternalError("nfold reconstruction failed its own feasibility re-check");
  }
  return solution;
}

NfoldSolution solve_augmentation(const NfoldProgram& program, const NfoldSolution& initial) {
  program.validate();
  if (!verify_solution(program, initial)) {
    throw std::invalid_argument("augmentation requires a feasible starting solution");
  }
  NfoldSolution current = initial;
  const int brick_count = static_cast<int>(program.bricks.size());

  auto try_single = [&]() {
    for (int b = 0; b < brick_count; ++b) {
      for (size_t j = 0; j < program.bricks[b].columns.size(); ++j) {
        if (static_cast<int>(j) == current.chosen[b]) continue;
        std::vector<int> chosen = current.chosen;
        chosen[b] = static_cast<int>(j);
        auto candidate = assemble(program, std::move(chosen));
        if (candidate && candidate->objective < current.objective) {
          current = std::move(*candidate);
          return true;
        }
      }
    }
    return false;
  };

  auto try_pair = [&]() {
    for (int b1 = 0; b1 < brick_count; ++b1) {
      for (int b2 = b1 + 1; b2 < brick_count; ++b2) {
        for (size_t j1 = 0; j1 < program.bricks[b1].columns.size(); ++j1) {
          if (static_cast<int>(j1) == current.chosen[b1]) continue;
          for (size_t j2 = 0; j2 < program.bricks[b2].columns.size(); ++j2) {
            if (static_cast<int>(j2) == current.chosen[b2]) continue;
            std::vector<int> chosen = current.chosen;
            chosen[b1] = static_cast<int>(j1);
            chosen[b2] = static_cast<int>(j2);
            auto candidate = assemble(program, std::move(chosen));
            if (candidate && candidate->objective < current.objective) {
              current = std::move(*candidate);
              return true;
            }
          }
        }
      }
    }
    return false;
  };

  while (try_single() || try_pair()) {
  }
  current.exact = false;
  return current;
}

}  // namespace gebp
