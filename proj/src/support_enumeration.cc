// Copyright 2026 The deploylab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "deploylab/support_enumeration.h"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>

namespace deploylab {
namespace {

constexpr double kNegativeSlack = 1e-12;

// Visits every k-subset of {0, ..., n-1} in lexicographic order.
template <typename F>
void ForEachSubset(int n, int k, F&& visit) {
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    visit(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::string SupportName(const std::vector<int>& s) {
  std::string out = "{";
  for (size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i]);
  }
  return out + "}";
}

// Solves M[rows, cols] w = v 1, sum(w) = 1 for w supported on cols, where the
// opponent with support `rows` is made indifferent. Returns nullopt on a
// singular system.
std::optional<Vector> Equalize(const Matrix& m, const std::vector<int>& rows,
                               const std::vector<int>& cols, int dim) {
  int k = static_cast<int>(rows.size());
  Matrix system = Matrix::Zero(k + 1, k + 1);
  Vector rhs = Vector::Zero(k + 1);
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < k; ++c) system(r, c) = m(rows[r], cols[c]);
    system(r, k) = -1.0;
  }
  for (int c = 0; c < k; ++c) system(k, c) = 1.0;
  rhs[k] = 1.0;
  Eigen::FullPivLU<Matrix> lu(system);
  if (!lu.isInvertible()) return std::nullopt;
  Vector sol = lu.solve(rhs);
  Vector w = Vector::Zero(dim);
  for (int c = 0; c < k; ++c) w[cols[c]] = sol[c];
  return w;
}

}  // namespace

bool SamePair(const EquilibriumPair& a, const EquilibriumPair& b, double tol) {
  if (a.p.size() != b.p.size() || a.q.size() != b.q.size()) return false;
  return (a.p.weights() - b.p.weights()).cwiseAbs().maxCoeff() <= tol &&
         (a.q.weights() - b.q.weights()).cwiseAbs().maxCoeff() <= tol;
}

SupportEnumerationResult SupportEnumerationEquilibria(const BimatrixGame& game,
                                                      int max_support) {
  int m = game.rows();
  int n = game.cols();
  int limit = std::min(m, n);
  if (max_support < 0 || max_support > limit) {
    throw std::invalid_argument("max_support out of range");
  }
  if (max_support == 0) max_support = limit;

  SupportEnumerationResult result;
  Matrix bt = game.B().transpose();
  for (int k = 1; k <= max_support; ++k) {
    ForEachSubset(m, k, [&](const std::vector<int>& rows) {
      ForEachSubset(n, k, [&](const std::vector<int>& cols) {
        // q makes the row player indifferent over `rows`; p does the same
        // for the column player over `cols`.
        std::optional<Vector> q = Equalize(game.A(), rows, cols, n);
        std::optional<Vector> p = Equalize(bt, cols, rows, m);
        if (!p || !q) {
          ++result.skipped_degenerate;
          result.diagnostics.push_back("singular system for supports " +
                                       SupportName(rows) + " x " +
                                       SupportName(cols));
          return;
        }
        if (p->minCoeff() < -kNegativeSlack || q->minCoeff() < -kNegativeSlack) {
          return;
        }
        EquilibriumPair pair{MixedStrategy::Normalized(*p),
                             MixedStrategy::Normalized(*q)};
        if (!IsApproxEquilibrium(game, pair.p, pair.q, kEquilibriumTol)) {
          return;
        }
        for (const EquilibriumPair& seen : result.equilibria) {
          if (SamePair(seen, pair)) return;
        }
        result.equilibria.push_back(std::move(pair));
      });
    });
  }
  return result;
}

}  // namespace deploylab
