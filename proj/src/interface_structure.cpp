#include "stokesdd/interface_structure.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace stokesdd {

std::vector<std::vector<index_t>> node_sharing_sets(const FESpace& space,
                                                    const Partition& partition) {
  const int dpe = space.dofs_per_element();
  std::vector<std::vector<index_t>> sets(space.n_scalar);
  for (index_t s = 0; s < partition.n_subdomains; ++s)
    for (index_t e : partition.subdomain_elements[s])
      for (int i = 0; i < dpe; ++i) {
        auto& set = sets[space.element_dofs[e][i]];
        if (set.empty() || set.back() != s) set.push_back(s);
      }
  // Subdomains are visited in ascending order, so each set is sorted.
  return sets;
}

namespace {

bool strict_subset(const std::vector<index_t>& a,
                   const std::vector<index_t>& b) {
  return a.size() < b.size() &&
         std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

InterfaceStructure build_interface_structure(
    const FESpace& space, const Partition& partition,
    const std::vector<char>& node_constrained) {
  if (static_cast<index_t>(node_constrained.size()) != space.n_scalar)
    throw std::invalid_argument(
        "build_interface_structure: constrained flags per scalar node");

  const auto sharing = node_sharing_sets(space, partition);
  InterfaceStructure st;
  st.node_nec.assign(space.n_scalar, -1);

  std::map<std::vector<index_t>, std::vector<index_t>> classes;
  for (index_t node = 0; node < space.n_scalar; ++node) {
    if (node_constrained[node] || sharing[node].size() < 2) continue;
    st.interface_nodes.push_back(node);
    classes[sharing[node]].push_back(node);
  }

  st.necs.reserve(classes.size());
  for (auto& [set, nodes] : classes) {
    Nec nec;
    nec.subdomains = set;
    nec.nodes = std::move(nodes);  // ascending by construction
    st.necs.push_back(std::move(nec));
  }
  for (index_t k = 0; k < static_cast<index_t>(st.necs.size()); ++k)
    for (index_t node : st.necs[k].nodes) st.node_nec[node] = k;

  for (index_t k = 0; k < static_cast<index_t>(st.necs.size()); ++k) {
    Nec& nec = st.necs[k];
    for (index_t m = 0; m < static_cast<index_t>(st.necs.size()); ++m)
      if (m != k && strict_subset(nec.subdomains, st.necs[m].subdomains))
        nec.ancestors.push_back(m);
    // A lone node only counts as a vertex when its sharing set is maximal;
    // short edge segments can also shrink to one node on coarse meshes.
    if (nec.subdomains.size() == 2)
      nec.kind = Nec::Kind::kFace;
    else if (nec.nodes.size() == 1 && nec.ancestors.empty())
      nec.kind = Nec::Kind::kVertex;
    else
      nec.kind = Nec::Kind::kEdge;
  }

  for (index_t k = 0; k < static_cast<index_t>(st.necs.size()); ++k)
    if (st.necs[k].ancestors.empty()) st.coarse.push_back(k);
  if (st.coarse.empty() && !st.necs.empty())
    throw std::runtime_error(
        "build_interface_structure: no coarse nodes on a nonempty interface");

  for (Nec& nec : st.necs)
    for (index_t c : st.coarse) {
      const auto& sup = st.necs[c].subdomains;
      if (nec.subdomains == sup ||
          strict_subset(nec.subdomains, sup))
        nec.covers.push_back(c);
    }
  return st;
}

double pou_value(const InterfaceStructure& structure, index_t node) {
  if (node < 0 || node >= static_cast<index_t>(structure.node_nec.size()) ||
      structure.node_nec[node] < 0)
    throw std::invalid_argument("pou_value: node is not on the interface");
  const Nec& nec = structure.necs[structure.node_nec[node]];
  return 1.0 / static_cast<double>(nec.covers.size());
}

}  // namespace stokesdd
