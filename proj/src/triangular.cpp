#include "triloop/triangular.hpp"

#include "triloop/errors.hpp"

#include <algorithm>
#include <set>

namespace triloop {

namespace {

// One cycle in the dependency relation "i reads j", as variable names.
std::vector<std::string> find_cycle(const Loop& loop, const std::vector<bool>& done) {
  std::size_t d = loop.dim();
  std::vector<int> state(d, 0); // 0 fresh, 1 on stack, 2 finished
  std::vector<std::size_t> stack;

  // Iterative DFS over the not-yet-ordered vertices.
  for (std::size_t root = 0; root < d; ++root) {
    if (done[root] || state[root] != 0) continue;
    std::vector<std::pair<std::size_t, std::size_t>> work; // (vertex, next dep)
    work.push_back({root, 0});
    state[root] = 1;
    stack.push_back(root);
    while (!work.empty()) {
      auto& [v, next] = work.back();
      bool descended = false;
      for (std::size_t j = next; j < d; ++j) {
        if (j == v || loop.update[v][j] == 0 || done[j]) continue;
        next = j + 1;
        if (state[j] == 1) {
          // Found a back edge; the cycle is the stack suffix from j.
          std::vector<std::string> cycle;
          auto it = std::find(stack.begin(), stack.end(), j);
          for (; it != stack.end(); ++it) cycle.push_back(loop.var_names[*it]);
          return cycle;
        }
        if (state[j] == 0) {
          state[j] = 1;
          stack.push_back(j);
          work.push_back({j, 0});
          descended = true;
          break;
        }
      }
      if (!descended) {
        state[v] = 2;
        stack.pop_back();
        work.pop_back();
      }
    }
  }
  throw InternalError("triangularize: stuck without a cycle");
}

} // namespace

ParsedLoop triangularize(const Loop& presented) {
  std::size_t d = presented.dim();
  if (presented.update.size() != d || presented.offset.size() != d)
    throw DimensionMismatchError("loop matrix/offset size does not match variable count");
  for (const auto& row : presented.update)
    if (row.size() != d)
      throw DimensionMismatchError("loop matrix is not square");

  // Variable i depends on j when the update of i reads j.
  std::vector<std::size_t> indegree(d, 0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (i != j && presented.update[i][j] != 0) ++indegree[i];

  std::set<std::size_t> ready;
  for (std::size_t i = 0; i < d; ++i)
    if (indegree[i] == 0) ready.insert(i);

  std::vector<std::size_t> order; // order[k] = presented index at internal slot k
  std::vector<bool> done(d, false);
  while (!ready.empty()) {
    std::size_t j = *ready.begin();
    ready.erase(ready.begin());
    done[j] = true;
    order.push_back(j);
    for (std::size_t i = 0; i < d; ++i) {
      if (done[i] || i == j || presented.update[i][j] == 0) continue;
      if (--indegree[i] == 0) ready.insert(i);
    }
  }
  if (order.size() != d) throw NotTriangularizableError(find_cycle(presented, done));

  ParsedLoop out;
  out.to_internal.assign(d, 0);
  for (std::size_t k = 0; k < d; ++k) out.to_internal[order[k]] = k;

  Loop& l = out.loop;
  l.var_names.resize(d);
  l.update.assign(d, std::vector<Int>(d, Int(0)));
  l.offset.assign(d, Int(0));
  for (std::size_t k = 0; k < d; ++k) {
    l.var_names[k] = presented.var_names[order[k]];
    l.offset[k] = presented.offset[order[k]];
    for (std::size_t m = 0; m < d; ++m) l.update[k][m] = presented.update[order[k]][order[m]];
  }
  for (const auto& atom : presented.guard.atoms) {
    AffineExpr renamed(atom.constant());
    for (const auto& [v, c] : atom.coeffs()) renamed.add_term(VarId{out.to_internal[v.index]}, c);
    l.guard.atoms.push_back(renamed);
  }
  if (!l.lower_triangular()) throw InternalError("triangularize produced a non-triangular matrix");
  return out;
}

} // namespace triloop
