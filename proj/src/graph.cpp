#include "netscale/graph.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <string>

namespace netscale {

namespace {

std::string edge_str(int u, int v) {
    return "(" + std::to_string(u) + ", " + std::to_string(v) + ")";
}

std::vector<std::vector<int>> adjacency(int n, const std::vector<Edge>& edges) {
    std::vector<std::vector<int>> adj(static_cast<size_t>(n) + 1);
    for (const Edge& e : edges) {
        adj[static_cast<size_t>(e.u)].push_back(e.v);
        adj[static_cast<size_t>(e.v)].push_back(e.u);
    }
    for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());
    return adj;
}

bool connected(int n, const std::vector<Edge>& edges) {
    if (n <= 0) return false;
    auto adj = adjacency(n, edges);
    std::vector<bool> seen(static_cast<size_t>(n) + 1, false);
    std::queue<int> q;
    q.push(1);
    seen[1] = true;
    int count = 1;
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v : adj[static_cast<size_t>(u)]) {
            if (!seen[static_cast<size_t>(v)]) {
                seen[static_cast<size_t>(v)] = true;
                ++count;
                q.push(v);
            }
        }
    }
    return count == n;
}

}  // namespace

Graph build_graph(int node_count, const std::vector<std::pair<int, int>>& edge_pairs) {
    if (node_count <= 0) throw EmptyGraph("graph must have at least one node");

    std::set<Edge> seen;
    std::vector<Edge> edges;
    edges.reserve(edge_pairs.size());
    for (const auto& [i, j] : edge_pairs) {
        if (i < 1 || i > node_count || j < 1 || j > node_count)
            throw ValidationError("edge " + edge_str(i, j) + " references a node outside 1.." +
                                  std::to_string(node_count));
        if (i == j) throw SelfLoop("self-loop at node " + std::to_string(i));
        Edge e{std::min(i, j), std::max(i, j)};
        if (!seen.insert(e).second)
            throw DuplicateEdge("duplicate edge " + edge_str(e.u, e.v));
        edges.push_back(e);
    }
    std::sort(edges.begin(), edges.end());

    if (!connected(node_count, edges))
        throw DisconnectedGraph("graph with " + std::to_string(node_count) +
                                " nodes and " + std::to_string(edges.size()) +
                                " edges is not connected");
    return Graph{node_count, std::move(edges)};
}

EdgeOrdering spanning_tree(const Graph& g) {
    auto adj = adjacency(g.n, g.edges);
    std::vector<bool> seen(static_cast<size_t>(g.n) + 1, false);
    std::vector<Edge> tree;
    tree.reserve(static_cast<size_t>(g.n) - 1);
    std::queue<int> q;
    q.push(1);
    seen[1] = true;
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v : adj[static_cast<size_t>(u)]) {
            if (!seen[static_cast<size_t>(v)]) {
                seen[static_cast<size_t>(v)] = true;
                tree.push_back(Edge{std::min(u, v), std::max(u, v)});
                q.push(v);
            }
        }
    }
    return spanning_tree_from(g, tree);
}

EdgeOrdering spanning_tree_from(const Graph& g, const std::vector<Edge>& tree_edges) {
    if (static_cast<int>(tree_edges.size()) != g.n - 1)
        throw NotASpanningTree("spanning tree of " + std::to_string(g.n) +
                               " nodes needs " + std::to_string(g.n - 1) + " edges, got " +
                               std::to_string(tree_edges.size()));

    std::set<Edge> graph_edges(g.edges.begin(), g.edges.end());
    std::set<Edge> tree_set;
    for (Edge e : tree_edges) {
        if (e.u > e.v) std::swap(e.u, e.v);
        if (!graph_edges.count(e))
            throw NotASpanningTree("edge " + edge_str(e.u, e.v) + " is not in the graph");
        if (!tree_set.insert(e).second)
            throw NotASpanningTree("edge " + edge_str(e.u, e.v) + " listed twice");
    }
    if (!connected(g.n, {tree_set.begin(), tree_set.end()}))
        throw NotASpanningTree("the given edges do not span the graph");

    EdgeOrdering ord;
    ord.tree_count = g.n - 1;
    ord.edges.reserve(g.edges.size());
    for (Edge e : tree_edges) {
        if (e.u > e.v) std::swap(e.u, e.v);
        ord.edges.push_back(e);
    }
    for (const Edge& e : g.edges)
        if (!tree_set.count(e)) ord.edges.push_back(e);  // already lexicographic
    return ord;
}

IncidenceDecomposition incidence(const Graph& g, const EdgeOrdering& ord) {
    if (static_cast<int>(ord.edges.size()) != g.m() || ord.tree_count != g.n - 1)
        throw ValidationError("edge ordering does not match the graph");
    std::set<Edge> graph_edges(g.edges.begin(), g.edges.end());
    for (const Edge& e : ord.edges)
        if (!graph_edges.count(e))
            throw ValidationError("ordered edge " + edge_str(e.u, e.v) + " is not in the graph");

    const int n = g.n;
    const int m = g.m();
    IncidenceDecomposition inc;
    inc.D = Eigen::MatrixXd::Zero(n, m);
    for (int l = 0; l < m; ++l) {
        const Edge& e = ord.edges[static_cast<size_t>(l)];
        inc.D(e.u - 1, l) = 1.0;
        inc.D(e.v - 1, l) = -1.0;
    }
    inc.D_tau = inc.D.leftCols(ord.tree_count);
    inc.D_c = inc.D.rightCols(m - ord.tree_count);
    return inc;
}

CutBasis cut_basis(const IncidenceDecomposition& inc) {
    const Eigen::Index t = inc.D_tau.cols();
    const Eigen::Index c = inc.D_c.cols();

    Eigen::MatrixXd gram = inc.D_tau.transpose() * inc.D_tau;
    Eigen::LLT<Eigen::MatrixXd> llt(gram);
    if (llt.info() != Eigen::Success)
        throw SingularTreeGram("tree edge columns are rank deficient; not a spanning tree");

    CutBasis cb;
    cb.cycle_in_tree = llt.solve(inc.D_tau.transpose() * inc.D_c);
    cb.R.resize(t, t + c);
    cb.R << Eigen::MatrixXd::Identity(t, t), cb.cycle_in_tree;

    // D_tau * R must reproduce D; failure means the leading columns were not
    // a spanning tree of this graph.
    double residual = (inc.D_tau * cb.R - inc.D).cwiseAbs().maxCoeff();
    if (residual > 1e-10)
        throw SingularTreeGram("cut basis residual " + std::to_string(residual) +
                               " exceeds 1e-10");
    return cb;
}

std::vector<int> degrees(const Graph& g) {
    std::vector<int> deg(static_cast<size_t>(g.n), 0);
    for (const Edge& e : g.edges) {
        ++deg[static_cast<size_t>(e.u - 1)];
        ++deg[static_cast<size_t>(e.v - 1)];
    }
    return deg;
}

}  // namespace netscale
