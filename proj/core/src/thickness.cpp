#include "preserver/thickness.hpp"

#include <cmath>

namespace preserver {

ThicknessProfile classify_edges(const Instance& instance,
                                std::span<const ShortestPathDag> dags) {
  const EdgeId m = instance.graph.num_edges();
  ThicknessProfile profile;
  profile.threshold =
      static_cast<double>(dags.size()) /
      std::pow(static_cast<double>(m), 0.5 + instance.epsilon);
  profile.multiplicity.assign(m, 0);
  profile.thick.assign(m, 0);
  for (const ShortestPathDag& dag : dags)
    for (EdgeId e : dag.edge_ids) ++profile.multiplicity[e];
  for (EdgeId e = 0; e < m; ++e) {
    if (profile.multiplicity[e] == 0) continue;
    if (static_cast<double>(profile.multiplicity[e]) >= profile.threshold) {
      profile.thick[e] = 1;
      profile.thick_edges.push_back(e);
    } else {
      profile.thin_edges.push_back(e);
    }
  }
  profile.thin_count.reserve(dags.size());
  for (const ShortestPathDag& dag : dags) {
    int b = 0;
    for (EdgeId e : dag.edge_ids)
      if (profile.multiplicity[e] > 0 && !profile.thick[e]) ++b;
    profile.thin_count.push_back(b);
  }
  return profile;
}

bool small_pair(int thin_count, EdgeId num_edges) {
  return static_cast<std::int64_t>(thin_count) * thin_count <= num_edges;
}

bool surviving_pair(int thin_count, EdgeId num_edges) {
  return static_cast<std::int64_t>(thin_count) * thin_count >= num_edges;
}

}  // namespace preserver
