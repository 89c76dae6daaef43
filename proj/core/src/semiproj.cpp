#include "ssal/semiproj.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ssal {

BranchCosts branch_costs(const Vector& w, const SemicontinuousSet& Y) {
  if (w.size() != Y.a.size())
    throw std::invalid_argument("branch_costs: dimension mismatch");
  BranchCosts costs;
  costs.w = w;
  costs.q = w.cwiseProduct(w);
  costs.y_on = w.cwiseMax(Y.a).cwiseMin(Y.b);
  costs.r = (costs.y_on - w).cwiseProduct(costs.y_on - w);
  return costs;
}

SupportSelection select_support(const BranchCosts& costs, int K) {
  if (K < 0) throw std::invalid_argument("select_support: K must be >= 0");
  const int n = static_cast<int>(costs.q.size());
  SupportSelection sel;
  sel.v = costs.r - costs.q;
  sel.order.resize(n);
  std::iota(sel.order.begin(), sel.order.end(), 0);
  std::stable_sort(sel.order.begin(), sel.order.end(),
                   [&sel](int i, int j) { return sel.v[i] < sel.v[j]; });
  sel.z = IntVector::Zero(n);
  const int limit = std::min(K, n);
  for (int rank = 0; rank < limit; ++rank) {
    const int i = sel.order[rank];
    if (sel.v[i] <= 0.0) sel.z[i] = 1;
  }
  return sel;
}

ProjectionResult project_semicard(const Vector& w, const SemicontinuousSet& Y) {
  Y.validate();
  const BranchCosts costs = branch_costs(w, Y);
  const SupportSelection sel = select_support(costs, Y.K);
  ProjectionResult out;
  out.z = sel.z;
  out.y = Vector::Zero(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i)
    if (sel.z[i]) out.y[i] = costs.y_on[i];
  return out;
}

}  // namespace ssal
