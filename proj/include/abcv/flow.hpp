#ifndef ABCV_FLOW_HPP
#define ABCV_FLOW_HPP

#include <cstdint>
#include <vector>

#include "abcv/base.hpp"

namespace abcv {

// Maximum s-t flow with integer capacities (Dinic). Small graphs only; the
// closure reductions here have a few dozen nodes.
class MaxFlow {
 public:
  explicit MaxFlow(int num_nodes);

  void add_edge(int from, int to, long long capacity);
  long long solve(int source, int sink);

  // After solve(): nodes reachable from the source in the residual graph.
  std::vector<bool> min_cut_source_side(int source) const;

 private:
  struct Edge {
    int to;
    long long cap;
    int rev;
  };
  std::vector<std::vector<Edge>> graph_;
  std::vector<int> level_, iter_;

  bool bfs(int source, int sink);
  long long dfs(int v, int sink, long long f);
};

// Project-selection / maximum-weight closure. Selecting an item forces all of
// its requirements; the goal is to maximize the total weight of the selected
// closed set (the empty set is always available, so the optimum is >= 0).
struct ClosureProblem {
  struct Item {
    long long weight = 0;              // profit if positive, cost if negative
    std::vector<int> requires_items;   // indices of forced items
  };
  std::vector<Item> items;
};

struct ClosureResult {
  long long value = 0;
  std::vector<int> chosen;      // ascending item indices, closed set
  long long min_cut_value = 0;
  long long positive_sum = 0;   // sum of positive weights
};

// Solved by s-t min-cut. The duality identity
//   min_cut_value + value == positive_sum
// is checked on every solve and a logic_error is thrown on mismatch.
ClosureResult max_closure(const ClosureProblem& problem);

// Reference maximum over all closed subsets, for problems with <= ~20 items.
ClosureResult max_closure_bruteforce(const ClosureProblem& problem);

}  // namespace abcv

#endif  // ABCV_FLOW_HPP
