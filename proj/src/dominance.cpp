// Copyright 2026 The branchsim Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "branchsim/dominance.hpp"

namespace branchsim {

DominanceDag::DominanceDag(std::span<const Variable> vars)
    : n_(vars.size()),
      full_(n_ * n_, 0),
      reduced_(n_ * n_, 0),
      reduced_succ_(n_),
      reduced_pred_(n_),
      indegree_(n_, 0) {
  for (std::size_t u = 0; u < n_; ++u) {
    for (std::size_t v = 0; v < n_; ++v) {
      full_[u * n_ + v] = dominates(vars[u], vars[v]) ? 1 : 0;
    }
  }
  // Dominance is already transitively closed, so an edge is redundant
  // exactly when some intermediate node sits between its endpoints.
  for (std::size_t u = 0; u < n_; ++u) {
    for (std::size_t v = 0; v < n_; ++v) {
      if (!full_edge(u, v)) continue;
      bool redundant = false;
      for (std::size_t w = 0; w < n_ && !redundant; ++w) {
        redundant = full_edge(u, w) && full_edge(w, v);
      }
      if (!redundant) {
        reduced_[u * n_ + v] = 1;
        reduced_succ_[u].push_back(v);
        reduced_pred_[v].push_back(u);
        ++indegree_[v];
      }
    }
  }
}

std::vector<DominanceDag::Edge> DominanceDag::full_edges() const {
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n_; ++u)
    for (std::size_t v = 0; v < n_; ++v)
      if (full_edge(u, v)) edges.emplace_back(u, v);
  return edges;
}

std::vector<DominanceDag::Edge> DominanceDag::reduced_edges() const {
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n_; ++u)
    for (std::size_t v : reduced_succ_[u]) edges.emplace_back(u, v);
  return edges;
}

DominanceDag build_dominance_dag(std::span<const Variable> vars) {
  if (vars.empty()) {
    throw Error(ErrorCode::kEmptyInstance, "dominance DAG needs variables");
  }
  return DominanceDag(vars);
}

void WriteDot(std::ostream& out, const DominanceDag& dag,
              std::span<const Variable> vars) {
  out << "digraph dominance {\n  rankdir=TB;\n";
  for (std::size_t i = 0; i < dag.size(); ++i) {
    out << "  v" << i << " [label=\"(" << vars[i].l() << "," << vars[i].r()
        << ")\"];\n";
  }
  for (const auto& [u, v] : dag.reduced_edges()) {
    out << "  v" << u << " -> v" << v << ";\n";
  }
  out << "}\n";
}

}  // namespace branchsim
