#include "lifecd/graph.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <string>

namespace lifecd {

namespace {

std::string edge_name(NodeId i, NodeId j) {
    return "{" + std::to_string(i) + "," + std::to_string(j) + "}";
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

} // namespace

FailureGraph::FailureGraph(NodeId node_count, std::vector<Edge> edges)
    : n_(node_count), edges_(std::move(edges)) {
    if (n_ < 1) throw ValidationError("graph must have at least one node");

    for (auto& e : edges_) {
        if (e.a == e.b)
            throw ValidationError("self-loop at node " + std::to_string(e.a));
        if (e.a < 1 || e.a > n_ || e.b < 1 || e.b > n_)
            throw ValidationError("edge " + edge_name(e.a, e.b) + " references a node outside 1.." +
                                  std::to_string(n_));
        if (!(e.p >= 0.0 && e.p < 1.0))
            throw ValidationError("failure probability of edge " + edge_name(e.a, e.b) +
                                  " must lie in [0,1)");
        if (e.a > e.b) std::swap(e.a, e.b);
    }
    std::sort(edges_.begin(), edges_.end(),
              [](const Edge& x, const Edge& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });
    for (std::size_t i = 1; i < edges_.size(); ++i) {
        if (edges_[i - 1].a == edges_[i].a && edges_[i - 1].b == edges_[i].b) {
            if (edges_[i - 1].p != edges_[i].p)
                throw ValidationError("edge " + edge_name(edges_[i].a, edges_[i].b) +
                                      " listed twice with conflicting probabilities");
            edges_.erase(edges_.begin() + static_cast<std::ptrdiff_t>(i));
            --i;
        }
    }

    adj_.assign(static_cast<std::size_t>(n_) + 1, {});
    for (const auto& e : edges_) {
        adj_[static_cast<std::size_t>(e.a)].emplace_back(e.b, e.p);
        adj_[static_cast<std::size_t>(e.b)].emplace_back(e.a, e.p);
    }
    for (auto& nb : adj_) std::sort(nb.begin(), nb.end());

    // connectivity
    std::vector<char> seen(static_cast<std::size_t>(n_) + 1, 0);
    std::deque<NodeId> q{1};
    seen[1] = 1;
    NodeId reached = 1;
    while (!q.empty()) {
        NodeId v = q.front();
        q.pop_front();
        for (auto [w, p] : adj_[static_cast<std::size_t>(v)]) {
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                ++reached;
                q.push_back(w);
            }
        }
    }
    if (reached != n_) throw ValidationError("graph is not connected");
}

FailureGraph FailureGraph::single_node() { return FailureGraph(1, {}); }

bool FailureGraph::has_edge(NodeId i, NodeId j) const {
    if (i < 1 || i > n_ || j < 1 || j > n_) return false;
    const auto& nb = adj_[static_cast<std::size_t>(i)];
    return std::any_of(nb.begin(), nb.end(), [j](const auto& e) { return e.first == j; });
}

double FailureGraph::failure_prob(NodeId i, NodeId j) const {
    if (i >= 1 && i <= n_) {
        for (auto [w, p] : adj_[static_cast<std::size_t>(i)])
            if (w == j) return p;
    }
    throw UnknownEdge("no edge " + edge_name(i, j));
}

const std::vector<std::pair<NodeId, double>>& FailureGraph::neighbors(NodeId i) const {
    if (i < 1 || i > n_) throw ValidationError("node id " + std::to_string(i) + " out of range");
    return adj_[static_cast<std::size_t>(i)];
}

double FailureGraph::max_failure_prob() const {
    double m = 0.0;
    for (const auto& e : edges_) m = std::max(m, e.p);
    return m;
}

FailureGraph FailureGraph::with_edge_prob(NodeId i, NodeId j, double p) const {
    failure_prob(i, j); // throws UnknownEdge if absent
    auto edges = edges_;
    NodeId a = std::min(i, j), b = std::max(i, j);
    for (auto& e : edges)
        if (e.a == a && e.b == b) e.p = p;
    return FailureGraph(n_, std::move(edges));
}

FailureGraph parse_graph(std::string_view text) {
    std::vector<Edge> edges;
    NodeId max_id = 0;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                                               : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        line = trim(line);
        if (line.empty() || line.front() == '#') continue;

        auto where = [&] { return " on line " + std::to_string(line_no); };

        std::size_t c1 = line.find(',');
        std::size_t c2 = c1 == std::string_view::npos ? std::string_view::npos : line.find(',', c1 + 1);
        if (c1 == std::string_view::npos || c2 == std::string_view::npos ||
            line.find(',', c2 + 1) != std::string_view::npos)
            throw ParseError("expected `i,j,p`" + where());

        auto parse_id = [&](std::string_view tok) -> NodeId {
            tok = trim(tok);
            NodeId v = 0;
            auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (ec != std::errc{} || ptr != tok.data() + tok.size())
                throw ParseError("bad node id `" + std::string(tok) + "`" + where());
            return v;
        };
        auto parse_p = [&](std::string_view tok) -> double {
            tok = trim(tok);
            try {
                std::size_t used = 0;
                double v = std::stod(std::string(tok), &used);
                if (used != tok.size()) throw std::invalid_argument("trailing junk");
                return v;
            } catch (const std::exception&) {
                throw ParseError("bad probability `" + std::string(tok) + "`" + where());
            }
        };

        Edge e;
        e.a = parse_id(line.substr(0, c1));
        e.b = parse_id(line.substr(c1 + 1, c2 - c1 - 1));
        e.p = parse_p(line.substr(c2 + 1));
        if (e.a < 1 || e.b < 1)
            throw ValidationError("node ids must be >= 1 on line " + std::to_string(line_no));
        max_id = std::max({max_id, e.a, e.b});
        edges.push_back(e);
    }
    if (edges.empty()) return FailureGraph::single_node();
    return FailureGraph(max_id, std::move(edges));
}

std::vector<int> hop_distances(const FailureGraph& g, NodeId from) {
    if (from < 1 || from > g.node_count())
        throw ValidationError("node id " + std::to_string(from) + " out of range");
    std::vector<int> dist(static_cast<std::size_t>(g.node_count()) + 1, -1);
    std::deque<NodeId> q{from};
    dist[static_cast<std::size_t>(from)] = 0;
    while (!q.empty()) {
        NodeId v = q.front();
        q.pop_front();
        for (auto [w, p] : g.neighbors(v)) {
            if (dist[static_cast<std::size_t>(w)] < 0) {
                dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
                q.push_back(w);
            }
        }
    }
    return dist;
}

int eccentricity(const FailureGraph& g, NodeId i) {
    auto dist = hop_distances(g, i);
    int e = 0;
    for (NodeId v = 1; v <= g.node_count(); ++v)
        e = std::max(e, dist[static_cast<std::size_t>(v)]);
    return e;
}

int diameter(const FailureGraph& g) {
    int d = 0;
    for (NodeId v = 1; v <= g.node_count(); ++v) d = std::max(d, eccentricity(g, v));
    return d;
}

} // namespace lifecd
