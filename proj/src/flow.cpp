#include "abcv/flow.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

namespace abcv {

namespace {
constexpr long long kInf = std::numeric_limits<long long>::max() / 4;
}

MaxFlow::MaxFlow(int num_nodes) : graph_(num_nodes) {}

void MaxFlow::add_edge(int from, int to, long long capacity) {
  graph_[from].push_back({to, capacity, static_cast<int>(graph_[to].size())});
  graph_[to].push_back({from, 0, static_cast<int>(graph_[from].size()) - 1});
}

bool MaxFlow::bfs(int source, int sink) {
  level_.assign(graph_.size(), -1);
  std::queue<int> q;
  level_[source] = 0;
  q.push(source);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (const Edge& e : graph_[v]) {
      if (e.cap > 0 && level_[e.to] < 0) {
        level_[e.to] = level_[v] + 1;
        q.push(e.to);
      }
    }
  }
  return level_[sink] >= 0;
}

long long MaxFlow::dfs(int v, int sink, long long f) {
  if (v == sink) return f;
  for (int& i = iter_[v]; i < static_cast<int>(graph_[v].size()); ++i) {
    Edge& e = graph_[v][i];
    if (e.cap > 0 && level_[v] < level_[e.to]) {
      long long d = dfs(e.to, sink, std::min(f, e.cap));
      if (d > 0) {
        e.cap -= d;
        graph_[e.to][e.rev].cap += d;
        return d;
      }
    }
  }
  return 0;
}

long long MaxFlow::solve(int source, int sink) {
  long long flow = 0;
  while (bfs(source, sink)) {
    iter_.assign(graph_.size(), 0);
    long long f;
    while ((f = dfs(source, sink, kInf)) > 0) {
      flow += f;
      if (flow >= kInf) throw std::overflow_error("max-flow overflow");
    }
  }
  return flow;
}

std::vector<bool> MaxFlow::min_cut_source_side(int source) const {
  std::vector<bool> seen(graph_.size(), false);
  std::queue<int> q;
  seen[source] = true;
  q.push(source);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (const Edge& e : graph_[v]) {
      if (e.cap > 0 && !seen[e.to]) {
        seen[e.to] = true;
        q.push(e.to);
      }
    }
  }
  return seen;
}

ClosureResult max_closure(const ClosureProblem& problem) {
  const int n = static_cast<int>(problem.items.size());
  const int source = n;
  const int sink = n + 1;
  MaxFlow flow(n + 2);

  long long positive_sum = 0;
  for (int i = 0; i < n; ++i) {
    long long w = problem.items[i].weight;
    if (w > kInf / 4 || w < -kInf / 4) throw std::overflow_error("weight too large");
    if (w > 0) {
      positive_sum += w;
      flow.add_edge(source, i, w);
    } else if (w < 0) {
      flow.add_edge(i, sink, -w);
    }
    for (int dep : problem.items[i].requires_items) {
      flow.add_edge(i, dep, kInf);
    }
  }

  ClosureResult result;
  result.positive_sum = positive_sum;
  result.min_cut_value = flow.solve(source, sink);
  result.value = positive_sum - result.min_cut_value;

  auto source_side = flow.min_cut_source_side(source);
  for (int i = 0; i < n; ++i) {
    if (source_side[i]) result.chosen.push_back(i);
  }

  // duality identity, checked on every solve
  if (result.min_cut_value + result.value != result.positive_sum) {
    throw std::logic_error("closure duality identity failed");
  }
  long long check = 0;
  for (int i : result.chosen) check += problem.items[i].weight;
  if (check != result.value) {
    throw std::logic_error("closure value does not match chosen set");
  }
  for (int i : result.chosen) {
    for (int dep : problem.items[i].requires_items) {
      if (!source_side[dep]) throw std::logic_error("chosen set is not closed");
    }
  }
  return result;
}

ClosureResult max_closure_bruteforce(const ClosureProblem& problem) {
  const int n = static_cast<int>(problem.items.size());
  if (n > 20) throw PreconditionError("brute-force closure needs <= 20 items");
  long long positive_sum = 0;
  for (const auto& item : problem.items) {
    if (item.weight > 0) positive_sum += item.weight;
  }
  long long best = 0;
  std::uint32_t best_mask = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool closed = true;
    long long value = 0;
    for (int i = 0; i < n && closed; ++i) {
      if (!((mask >> i) & 1)) continue;
      value += problem.items[i].weight;
      for (int dep : problem.items[i].requires_items) {
        if (!((mask >> dep) & 1)) {
          closed = false;
          break;
        }
      }
    }
    if (closed && value > best) {
      best = value;
      best_mask = mask;
    }
  }
  ClosureResult result;
  result.value = best;
  result.positive_sum = positive_sum;
  result.min_cut_value = positive_sum - best;
  for (int i = 0; i < n; ++i) {
    if ((best_mask >> i) & 1) result.chosen.push_back(i);
  }
  return result;
}

}  // namespace abcv
