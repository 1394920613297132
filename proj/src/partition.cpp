#include "stokesdd/partition.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <stdexcept>

namespace stokesdd {

std::vector<std::vector<index_t>> dual_graph(const Mesh& mesh) {
  std::map<std::array<index_t, 3>, index_t> first_owner;
  std::vector<std::vector<index_t>> adj(mesh.n_tets());
  for (index_t t = 0; t < mesh.n_tets(); ++t) {
    const auto& tet = mesh.tets[t];
    for (int skip = 0; skip < 4; ++skip) {
      std::array<index_t, 3> f;
      int k = 0;
      for (int a = 0; a < 4; ++a)
        if (a != skip) f[k++] = tet[a];
      std::sort(f.begin(), f.end());
      auto [it, inserted] = first_owner.try_emplace(f, t);
      if (!inserted) {
        adj[it->second].push_back(t);
        adj[t].push_back(it->second);
      }
    }
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());
  return adj;
}

namespace {

Vec3 tet_centroid(const Mesh& mesh, index_t t) {
  Vec3 c = {0.0, 0.0, 0.0};
  for (index_t v : mesh.tets[t])
    for (int a = 0; a < 3; ++a) c[a] += 0.25 * mesh.vertices[v][a];
  return c;
}

void rcb_recurse(const std::vector<Vec3>& centroids,
                 std::vector<index_t> elems, index_t n_parts,
                 index_t label_begin, std::vector<index_t>& assignment) {
  if (n_parts == 1) {
    for (index_t e : elems) assignment[e] = label_begin;
    return;
  }
  const index_t n_low = (n_parts + 1) / 2;
  const index_t n_high = n_parts - n_low;

  Vec3 lo = centroids[elems[0]], hi = centroids[elems[0]];
  for (index_t e : elems)
    for (int a = 0; a < 3; ++a) {
      lo[a] = std::min(lo[a], centroids[e][a]);
      hi[a] = std::max(hi[a], centroids[e][a]);
    }
  int axis = 0;
  for (int a = 1; a < 3; ++a)
    if (hi[a] - lo[a] > hi[axis] - lo[axis]) axis = a;

  std::sort(elems.begin(), elems.end(), [&](index_t a, index_t b) {
    const Vec3& ca = centroids[a];
    const Vec3& cb = centroids[b];
    if (ca[axis] != cb[axis]) return ca[axis] < cb[axis];
    if (ca != cb) return ca < cb;
    return a < b;
  });

  // Proportional cut, clamped so both halves can host one element per part.
  const index_t total = static_cast<index_t>(elems.size());
  index_t cut = static_cast<index_t>(
      (static_cast<long long>(total) * n_low + n_parts / 2) / n_parts);
  cut = std::max(cut, n_low);
  cut = std::min(cut, total - n_high);

  std::vector<index_t> low(elems.begin(), elems.begin() + cut);
  std::vector<index_t> high(elems.begin() + cut, elems.end());
  rcb_recurse(centroids, std::move(low), n_low, label_begin, assignment);
  rcb_recurse(centroids, std::move(high), n_high, label_begin + n_low,
              assignment);
}

}  // namespace

Partition partition_from_assignment(index_t n_subdomains,
                                    std::vector<index_t> element_subdomain) {
  Partition part;
  part.n_subdomains = n_subdomains;
  part.subdomain_elements.resize(n_subdomains);
  for (index_t e = 0; e < static_cast<index_t>(element_subdomain.size()); ++e) {
    const index_t s = element_subdomain[e];
    if (s < 0 || s >= n_subdomains)
      throw std::out_of_range("partition: subdomain label out of range");
    part.subdomain_elements[s].push_back(e);
  }
  for (const auto& set : part.subdomain_elements)
    if (set.empty()) throw std::runtime_error("partition: empty subdomain");
  part.element_subdomain = std::move(element_subdomain);
  return part;
}

Partition partition_elements(const Mesh& mesh, index_t n_subdomains) {
  const index_t ne = mesh.n_tets();
  if (n_subdomains < 1 || n_subdomains > ne)
    throw std::invalid_argument(
        "partition_elements: need 1 <= N <= element count");
  std::vector<Vec3> centroids(ne);
  for (index_t t = 0; t < ne; ++t) centroids[t] = tet_centroid(mesh, t);
  std::vector<index_t> all(ne);
  for (index_t t = 0; t < ne; ++t) all[t] = t;
  std::vector<index_t> assignment(ne, -1);
  rcb_recurse(centroids, std::move(all), n_subdomains, 0, assignment);
  return partition_from_assignment(n_subdomains, std::move(assignment));
}

Partition grid_partition(const Mesh& mesh, index_t qx, index_t qy,
                         index_t qz) {
  if (qx < 1 || qy < 1 || qz < 1 || mesh.nx % qx || mesh.ny % qy ||
      mesh.nz % qz)
    throw std::invalid_argument(
        "grid_partition: block counts must divide the cell counts");
  const index_t bx = mesh.nx / qx, by = mesh.ny / qy, bz = mesh.nz / qz;
  std::vector<index_t> assignment(mesh.n_tets());
  index_t t = 0;
  for (index_t cz = 0; cz < mesh.nz; ++cz)
    for (index_t cy = 0; cy < mesh.ny; ++cy)
      for (index_t cx = 0; cx < mesh.nx; ++cx) {
        const index_t s = (cx / bx) + qx * ((cy / by) + qy * (cz / bz));
        for (int i = 0; i < 6; ++i) assignment[t++] = s;
      }
  return partition_from_assignment(qx * qy * qz, std::move(assignment));
}

void write_partition(const std::string& path, const Partition& partition) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  for (index_t s : partition.element_subdomain) out << s << "\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

Partition read_partition(const std::string& path, index_t n_elements) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::vector<index_t> assignment;
  long long s;
  while (in >> s) assignment.push_back(static_cast<index_t>(s));
  if (static_cast<index_t>(assignment.size()) != n_elements)
    throw std::runtime_error("read_partition: label count mismatch");
  index_t n_sub = 0;
  for (index_t label : assignment) {
    if (label < 0) throw std::runtime_error("read_partition: negative label");
    n_sub = std::max(n_sub, label + 1);
  }
  return partition_from_assignment(n_sub, std::move(assignment));
}

bool subdomain_connected(const std::vector<std::vector<index_t>>& dual,
                         const Partition& partition, index_t subdomain) {
  const auto& elems = partition.subdomain_elements.at(subdomain);
  if (elems.empty()) return false;
  std::vector<char> inside(dual.size(), 0), seen(dual.size(), 0);
  for (index_t e : elems) inside[e] = 1;
  std::vector<index_t> stack = {elems[0]};
  seen[elems[0]] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const index_t e = stack.back();
    stack.pop_back();
    for (index_t nb : dual[e])
      if (inside[nb] && !seen[nb]) {
        seen[nb] = 1;
        ++reached;
        stack.push_back(nb);
      }
  }
  return reached == elems.size();
}

}  // namespace stokesdd
