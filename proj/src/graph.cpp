#include "chilab/graph.hpp"

#include <fstream>

namespace chilab {

std::vector<int> to_vector(VSet s) {
    std::vector<int> out;
    out.reserve(popcount(s));
    CHILAB_FOR_VSET(v, s) out.push_back(v);
    return out;
}

VSet from_vector(const std::vector<int>& vs) {
    VSet s = 0;
    for (int v : vs) s |= bit(v);
    return s;
}

Graph::Graph(int n) : n_(n) {
    if (n < 0 || n > kMaxVertices)
        throw CapabilityError("graph order " + std::to_string(n) + " outside 0.." +
                              std::to_string(kMaxVertices));
    adj_.assign(static_cast<std::size_t>(n), 0);
}

void Graph::check_vertex(int v) const {
    if (v < 0 || v >= n_)
        throw ParameterError("vertex " + std::to_string(v) + " outside 0.." + std::to_string(n_ - 1));
}

void Graph::check_subset(VSet s) const {
    if (s & ~vertices()) throw ParameterError("vertex set has members outside the graph");
}

std::size_t Graph::edge_count() const {
    std::size_t twice = 0;
    for (int v = 0; v < n_; ++v) twice += static_cast<std::size_t>(degree(v));
    return twice / 2;
}

void Graph::add_edge(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw ParameterError("loop at vertex " + std::to_string(u));
    adj_[u] |= bit(v);
    adj_[v] |= bit(u);
}

void Graph::remove_edge(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    adj_[u] &= ~bit(v);
    adj_[v] &= ~bit(u);
}

int Graph::max_degree() const {
    int d = 0;
    for (int v = 0; v < n_; ++v) d = std::max(d, degree(v));
    return d;
}

VSet Graph::component_of(int v, VSet within) const {
    check_vertex(v);
    if (!contains(within, v)) return 0;
    VSet comp = bit(v);
    VSet frontier = bit(v);
    while (frontier) {
        VSet grow = 0;
        CHILAB_FOR_VSET(u, frontier) grow |= adj_[u];
        frontier = grow & within & ~comp;
        comp |= frontier;
    }
    return comp;
}

bool Graph::is_connected() const {
    if (n_ <= 1) return true;
    return component_of(0, vertices()) == vertices();
}

Graph Graph::complement() const {
    Graph g(n_);
    for (int v = 0; v < n_; ++v) g.adj_[v] = ~adj_[v] & vertices() & ~bit(v);
    return g;
}

std::vector<int> Graph::induced_labels(VSet s) {
    return to_vector(s);
}

Graph Graph::induced(VSet s) const {
    check_subset(s);
    std::vector<int> labels = to_vector(s);
    Graph g(static_cast<int>(labels.size()));
    for (std::size_t i = 0; i < labels.size(); ++i)
        for (std::size_t j = i + 1; j < labels.size(); ++j)
            if (has_edge(labels[i], labels[j])) g.add_edge(static_cast<int>(i), static_cast<int>(j));
    return g;
}

VSet Graph::common_neighbourhood(VSet s) const {
    check_subset(s);
    VSet out = vertices();
    CHILAB_FOR_VSET(v, s) out &= adj_[v];
    return out;
}

Graph disjoint_union(const Graph& a, const Graph& b) {
    if (a.n() + b.n() > kMaxVertices)
        throw CapabilityError("disjoint union exceeds " + std::to_string(kMaxVertices) + " vertices");
    Graph g(a.n() + b.n());
    for (int u = 0; u < a.n(); ++u)
        CHILAB_FOR_VSET(v, a.neighbours(u)) if (v > u) g.add_edge(u, v);
    for (int u = 0; u < b.n(); ++u)
        CHILAB_FOR_VSET(v, b.neighbours(u)) if (v > u) g.add_edge(a.n() + u, a.n() + v);
    return g;
}

Graph substitute(const Graph& base, const Graph& part) {
    long total = static_cast<long>(base.n()) * part.n();
    if (total > kMaxVertices)
        throw CapabilityError("substitution needs " + std::to_string(total) + " vertices");
    Graph g(static_cast<int>(total));
    auto id = [&](int b, int p) { return b * part.n() + p; };
    for (int b = 0; b < base.n(); ++b)
        for (int p = 0; p < part.n(); ++p)
            for (int q = p + 1; q < part.n(); ++q)
                if (part.has_edge(p, q)) g.add_edge(id(b, p), id(b, q));
    for (int b = 0; b < base.n(); ++b)
        CHILAB_FOR_VSET(b2, base.neighbours(b)) {
            if (b2 <= b) continue;
            for (int p = 0; p < part.n(); ++p)
                for (int q = 0; q < part.n(); ++q) g.add_edge(id(b, p), id(b2, q));
        }
    return g;
}

// ---- graph6 / sparse6 ------------------------------------------------------

namespace {

void append_size(std::string& out, int n) {
    if (n <= 62) {
        out.push_back(static_cast<char>(n + 63));
    } else {
        // 258047 >= n >= 63: '~' then 18 bits big-endian in 3 bytes.
        out.push_back('~');
        out.push_back(static_cast<char>(((n >> 12) & 63) + 63));
        out.push_back(static_cast<char>(((n >> 6) & 63) + 63));
        out.push_back(static_cast<char>((n & 63) + 63));
    }
}

int take_byte(const std::string& text, std::size_t& pos) {
    if (pos >= text.size()) throw ParseError("truncated graph6 data", pos);
    unsigned char c = static_cast<unsigned char>(text[pos]);
    if (c < 63 || c > 126) throw ParseError("byte out of graph6 range", pos);
    ++pos;
    return c - 63;
}

int parse_size(const std::string& text, std::size_t& pos) {
    int b0 = take_byte(text, pos);
    if (b0 != 63) return b0;
    // '~' prefix; a second '~' (n >= 258048) is beyond this build anyway.
    if (pos < text.size() && text[pos] == '~') throw ParseError("graph order above supported range", pos);
    int b1 = take_byte(text, pos);
    int b2 = take_byte(text, pos);
    int b3 = take_byte(text, pos);
    return (b1 << 12) | (b2 << 6) | b3;
}

} // namespace

std::string write_graph6(const Graph& g) {
    std::string out;
    append_size(out, g.n());
    int acc = 0, nbits = 0;
    for (int j = 1; j < g.n(); ++j) {
        for (int i = 0; i < j; ++i) {
            acc = (acc << 1) | (g.has_edge(i, j) ? 1 : 0);
            if (++nbits == 6) {
                out.push_back(static_cast<char>(acc + 63));
                acc = 0;
                nbits = 0;
            }
        }
    }
    if (nbits > 0) out.push_back(static_cast<char>((acc << (6 - nbits)) + 63));
    return out;
}

Graph parse_graph6(const std::string& text) {
    std::size_t pos = 0;
    std::string body = text;
    const std::string header = ">>graph6<<";
    if (body.rfind(header, 0) == 0) {
        body = body.substr(header.size());
    }
    if (body.empty()) throw ParseError("empty graph6 input", 0);
    int n = parse_size(body, pos);
    if (n > kMaxVertices)
        throw CapabilityError("graph6 input has " + std::to_string(n) + " vertices (cap " +
                              std::to_string(kMaxVertices) + ")");
    Graph g(n);
    int acc = 0, nbits = 0;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i) {
            if (nbits == 0) {
                acc = take_byte(body, pos);
                nbits = 6;
            }
            --nbits;
            if ((acc >> nbits) & 1) g.add_edge(i, j);
        }
    }
    if (nbits > 0 && (acc & ((1 << nbits) - 1)) != 0)
        throw ParseError("nonzero padding bits", pos - 1);
    if (pos != body.size()) throw ParseError("trailing bytes after graph6 data", pos);
    return g;
}

namespace {

// sparse6 per nauty's formats.txt: ':' N(n) then (1+k)-bit groups b x.
Graph parse_sparse6(const std::string& text) {
    std::size_t pos = 1; // skip ':'
    int n = parse_size(text, pos);
    if (n > kMaxVertices)
        throw CapabilityError("sparse6 input has " + std::to_string(n) + " vertices");
    Graph g(n);
    int k = 0;
    while ((1 << k) < n - 1 || k == 0) ++k; // bits needed for n-1; k >= 1
    std::vector<int> bits;
    for (; pos < text.size();) {
        int b = take_byte(text, pos);
        for (int i = 5; i >= 0; --i) bits.push_back((b >> i) & 1);
    }
    long v = 0;
    std::size_t at = 0;
    while (at + 1 + static_cast<std::size_t>(k) <= bits.size()) {
        int b = bits[at++];
        long x = 0;
        for (int i = 0; i < k; ++i) x = (x << 1) | bits[at++];
        if (b) ++v;
        if (x > v) {
            v = x;
        } else if (v < n) {
            if (x != v) g.add_edge(static_cast<int>(x), static_cast<int>(v));
        }
        if (v >= n) break;
    }
    return g;
}

} // namespace

Graph parse_graph_line(const std::string& line) {
    if (line.empty()) throw ParseError("empty graph line", 0);
    if (line[0] == ':') return parse_sparse6(line);
    const std::string s6header = ">>sparse6<<";
    if (line.rfind(s6header, 0) == 0) return parse_sparse6(line.substr(s6header.size()));
    return parse_graph6(line);
}

std::vector<Graph> read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot open graph file: " + path);
    std::vector<Graph> out;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        out.push_back(parse_graph_line(line));
    }
    return out;
}

} // namespace chilab
