#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "netscale/errors.hpp"

namespace netscale {

/// Undirected edge between 1-based node ids, normalized so u < v.
struct Edge {
    int u = 0;
    int v = 0;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Connected, simple, undirected graph on nodes 1..n.
/// Edges are normalized (u < v), deduplicated, and kept in lexicographic
/// order so that equal graphs compare equal.
struct Graph {
    int n = 0;
    std::vector<Edge> edges;

    int m() const { return static_cast<int>(edges.size()); }
};

/// Validates and normalizes a node/edge description into a Graph.
/// Throws EmptyGraph, SelfLoop, DuplicateEdge (naming the edge), or
/// DisconnectedGraph.
Graph build_graph(int node_count, const std::vector<std::pair<int, int>>& edge_pairs);

/// Canonical edge ordering: the first tree_count edges form a spanning tree,
/// the rest are the cycle (chord) edges. Index l in 0..m-1 is the column
/// position of the edge in the incidence matrix.
struct EdgeOrdering {
    std::vector<Edge> edges;
    int tree_count = 0;

    std::vector<Edge> tree_edges() const {
        return {edges.begin(), edges.begin() + tree_count};
    }
    std::vector<Edge> cycle_edges() const {
        return {edges.begin() + tree_count, edges.end()};
    }
};

/// Deterministic default ordering: BFS spanning tree rooted at node 1 with
/// neighbors visited in ascending id, tree edges in discovery order, then
/// cycle edges in lexicographic order.
EdgeOrdering spanning_tree(const Graph& g);

/// Ordering with a caller-chosen spanning tree (kept in the given order),
/// cycle edges lexicographic. Throws NotASpanningTree.
EdgeOrdering spanning_tree_from(const Graph& g, const std::vector<Edge>& tree_edges);

/// Signed incidence matrix and its tree/cycle column blocks.
/// Column l for edge (u, v), u < v, is e_u - e_v; D = [D_tau  D_c].
struct IncidenceDecomposition {
    Eigen::MatrixXd D;      // n x m
    Eigen::MatrixXd D_tau;  // n x (n-1)
    Eigen::MatrixXd D_c;    // n x (m-n+1)
};

IncidenceDecomposition incidence(const Graph& g, const EdgeOrdering& ord);

/// Basis of the cut space. Each cycle-edge column of the incidence matrix is
/// the tree combination given by cycle_in_tree, so D_tau * R = D.
struct CutBasis {
    Eigen::MatrixXd cycle_in_tree;  // (n-1) x (m-n+1)
    Eigen::MatrixXd R;              // (n-1) x m, equal to [I  cycle_in_tree]
};

/// cycle_in_tree = (D_tau^T D_tau)^{-1} D_tau^T D_c. Throws SingularTreeGram
/// when the leading columns do not form a spanning tree.
CutBasis cut_basis(const IncidenceDecomposition& inc);

/// Unweighted degree of every node; sums to 2m.
std::vector<int> degrees(const Graph& g);

}  // namespace netscale
