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

#pragma once

#include <cstddef>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "branchsim/core.hpp"

namespace branchsim {

// Dominance partial order over a list of variables, stored both in full
// (u -> v iff variable u dominates variable v) and as its transitive
// reduction. Node ids are positions in the input list.
class DominanceDag {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;

  DominanceDag() = default;
  explicit DominanceDag(std::span<const Variable> vars);

  std::size_t size() const { return n_; }

  bool full_edge(std::size_t u, std::size_t v) const {
    return full_[u * n_ + v] != 0;
  }
  bool reduced_edge(std::size_t u, std::size_t v) const {
    return reduced_[u * n_ + v] != 0;
  }

  const std::vector<std::size_t>& reduced_successors(std::size_t u) const {
    return reduced_succ_[u];
  }
  const std::vector<std::size_t>& reduced_predecessors(std::size_t v) const {
    return reduced_pred_[v];
  }
  // Number of reduced-graph predecessors (immediate dominators) per node.
  const std::vector<std::size_t>& indegree() const { return indegree_; }

  std::vector<Edge> full_edges() const;
  std::vector<Edge> reduced_edges() const;

 private:
  std::size_t n_ = 0;
  std::vector<char> full_;
  std::vector<char> reduced_;
  std::vector<std::vector<std::size_t>> reduced_succ_;
  std::vector<std::vector<std::size_t>> reduced_pred_;
  std::vector<std::size_t> indegree_;
};

// Throws EmptyInstance for an empty list.
DominanceDag build_dominance_dag(std::span<const Variable> vars);

// Graphviz rendering of the reduced DAG, nodes labelled "(l,r)".
void WriteDot(std::ostream& out, const DominanceDag& dag,
              std::span<const Variable> vars);

}  // namespace branchsim
