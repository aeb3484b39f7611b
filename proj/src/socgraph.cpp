#include "leadership/socgraph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "leadership/format.hpp"

namespace leadership {

DenseMatrix DenseMatrix::all_ones(std::size_t n)
{
    DenseMatrix m(n, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 0.0;
    }
    return m;
}

std::size_t DenseMatrix::nonzeros() const
{
    return static_cast<std::size_t>(std::count_if(w_.begin(), w_.end(), [](double v) { return v != 0.0; }));
}

void DenseMatrix::validate() const
{
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
            const double v = (*this)(i, j);
            if (!std::isfinite(v) || v < 0.0) {
                throw std::invalid_argument("sociality entries must be finite and non-negative");
            }
            if (i == j && v != 0.0) {
                throw std::invalid_argument("sociality diagonal must be zero");
            }
        }
    }
}

SocialityMatrix::SocialityMatrix(DenseMatrix m) : n_(m.size())
{
    m.validate();
    segments_.push_back({0.0, std::numeric_limits<double>::infinity(), std::move(m)});
}

SocialityMatrix::SocialityMatrix(std::vector<Segment> schedule) : segments_(std::move(schedule))
{
    if (segments_.empty()) {
        throw std::invalid_argument("sociality schedule is empty");
    }
    n_ = segments_.front().weights.size();
    for (std::size_t k = 0; k < segments_.size(); ++k) {
        const auto& s = segments_[k];
        s.weights.validate();
        if (s.weights.size() != n_) {
            throw std::invalid_argument("sociality schedule mixes matrix sizes");
        }
        if (!(s.begin < s.end)) {
            throw std::invalid_argument("sociality schedule interval is empty or reversed");
        }
        if (k > 0) {
            const double prev_end = segments_[k - 1].end;
            if (s.begin < prev_end) {
                throw std::invalid_argument("sociality schedule intervals overlap");
            }
            if (s.begin > prev_end) {
                throw std::invalid_argument("sociality schedule leaves a gap");
            }
        }
    }
}

const DenseMatrix& SocialityMatrix::at(double time) const
{
    for (const auto& s : segments_) {
        if (time >= s.begin && time < s.end) {
            return s.weights;
        }
    }
    if (time == segments_.back().end) {
        return segments_.back().weights;
    }
    throw std::out_of_range("time " + format_double(time) + " outside sociality schedule");
}

InfluenceGraph InfluenceGraph::from_edges(std::size_t n, const std::vector<Edge>& edges)
{
    InfluenceGraph g(n);
    for (const auto& e : edges) {
        g.add_edge(e.from, e.to, e.weight);
    }
    return g;
}

void InfluenceGraph::add_edge(std::size_t from, std::size_t to, double weight)
{
    if (from >= size() || to >= size()) {
        throw std::out_of_range("edge endpoint outside graph");
    }
    if (from == to) {
        throw std::invalid_argument("self-loops are not allowed");
    }
    if (weights_.size() != out_.size()) {
        weights_.resize(out_.size());
    }
    auto& succ = out_[from];
    const auto it = std::lower_bound(succ.begin(), succ.end(), to);
    if (it != succ.end() && *it == to) {
        return;
    }
    const auto pos = it - succ.begin();
    succ.insert(it, to);
    weights_[from].insert(weights_[from].begin() + pos, weight);
    ++in_degree_[to];
}

bool InfluenceGraph::has_edge(std::size_t from, std::size_t to) const
{
    const auto& succ = out_.at(from);
    return std::binary_search(succ.begin(), succ.end(), to);
}

std::size_t InfluenceGraph::edge_count() const
{
    std::size_t c = 0;
    for (const auto& s : out_) {
        c += s.size();
    }
    return c;
}

std::vector<Edge> InfluenceGraph::edges() const
{
    std::vector<Edge> out;
    for (std::size_t j = 0; j < out_.size(); ++j) {
        for (std::size_t k = 0; k < out_[j].size(); ++k) {
            out.push_back({j, out_[j][k], weights_[j][k]});
        }
    }
    return out;
}

InfluenceGraph influence_graph(const DenseMatrix& s)
{
    InfluenceGraph g(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = 0; j < s.size(); ++j) {
            if (i != j && s(i, j) != 0.0) {
                g.add_edge(j, i, s(i, j));
            }
        }
    }
    return g;
}

InfluenceGraph influence_graph(const SocialityMatrix& s, double at_time)
{
    return influence_graph(s.at(at_time));
}

std::vector<std::size_t> reachability(const InfluenceGraph& g, std::size_t node)
{
    if (node >= g.size()) {
        throw std::out_of_range("unknown node " + std::to_string(node));
    }
    std::vector<char> seen(g.size(), 0);
    std::vector<std::size_t> stack{node};
    seen[node] = 1;
    while (!stack.empty()) {
        const auto v = stack.back();
        stack.pop_back();
        for (const auto w : g.successors(v)) {
            if (!seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
        }
    }
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (k != node && seen[k]) {
            out.push_back(k);
        }
    }
    return out;
}

std::vector<std::size_t> structural_leaders(const InfluenceGraph& g)
{
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < g.size(); ++v) {
        if (!reachability(g, v).empty()) {
            out.push_back(v);
        }
    }
    return out;
}

double reach_score(const InfluenceGraph& g, std::size_t node)
{
    if (g.size() < 2) {
        throw std::invalid_argument("reach score needs at least two nodes");
    }
    return static_cast<double>(reachability(g, node).size()) / static_cast<double>(g.size() - 1);
}

namespace {

std::string strip_comment(const std::string& line)
{
    const auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

bool blank(const std::string& s)
{
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

double parse_number(const std::string& token, std::size_t line_no)
{
    double v = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) {
        throw std::invalid_argument("line " + std::to_string(line_no) + ": bad number '" + token + "'");
    }
    return v;
}

std::size_t parse_index(const std::string& token, std::size_t line_no)
{
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw std::invalid_argument("line " + std::to_string(line_no) + ": bad index '" + token + "'");
    }
    return v;
}

}  // namespace

EdgeList parse_edge_list(std::istream& in)
{
    EdgeList list;
    bool have_header = false;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto body = strip_comment(line);
        if (blank(body)) {
            continue;
        }
        std::istringstream ss(body);
        std::vector<std::string> tok;
        for (std::string t; ss >> t;) {
            tok.push_back(t);
        }
        if (!have_header) {
            if (tok.size() != 2 || tok[0] != "n") {
                throw std::invalid_argument("line " + std::to_string(line_no) + ": expected header 'n <count>'");
            }
            list.n = parse_index(tok[1], line_no);
            have_header = true;
            continue;
        }
        if (tok.size() != 3) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": expected 'j i weight'");
        }
        const auto j = parse_index(tok[0], line_no);
        const auto i = parse_index(tok[1], line_no);
        const auto w = parse_number(tok[2], line_no);
        if (i >= list.n || j >= list.n) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": node index out of range");
        }
        if (i == j) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": self-loop");
        }
        if (!(w >= 0.0) || !std::isfinite(w)) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": weight must be >= 0");
        }
        list.edges.push_back({j, i, w});
    }
    if (!have_header) {
        throw std::invalid_argument("edge list has no 'n <count>' header");
    }
    return list;
}

DenseMatrix to_matrix(const EdgeList& list)
{
    DenseMatrix m(list.n);
    for (const auto& e : list.edges) {
        m(e.to, e.from) = e.weight;
    }
    return m;
}

void write_edge_list(std::ostream& out, const DenseMatrix& s)
{
    out << "n " << s.size() << '\n';
    for (std::size_t j = 0; j < s.size(); ++j) {
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s(i, j) != 0.0) {
                out << j << ' ' << i << ' ' << format_double(s(i, j)) << '\n';
            }
        }
    }
}

DenseMatrix parse_dense_csv(std::istream& in)
{
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto body = strip_comment(line);
        if (blank(body)) {
            continue;
        }
        std::vector<double> row;
        std::stringstream ss(body);
        for (std::string cell; std::getline(ss, cell, ',');) {
            const auto b = cell.find_first_not_of(" \t\r");
            const auto e = cell.find_last_not_of(" \t\r");
            if (b == std::string::npos) {
                throw std::invalid_argument("line " + std::to_string(line_no) + ": empty cell");
            }
            row.push_back(parse_number(cell.substr(b, e - b + 1), line_no));
        }
        rows.push_back(std::move(row));
    }
    const std::size_t n = rows.size();
    DenseMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n) {
            throw std::invalid_argument("dense matrix row " + std::to_string(i) + " has " +
                                        std::to_string(rows[i].size()) + " columns, expected " +
                                        std::to_string(n));
        }
        for (std::size_t j = 0; j < n; ++j) {
            m(i, j) = rows[i][j];
        }
    }
    m.validate();
    return m;
}

void write_dense_csv(std::ostream& out, const DenseMatrix& s)
{
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = 0; j < s.size(); ++j) {
            out << (j ? "," : "") << format_double(s(i, j));
        }
        out << '\n';
    }
}

DenseMatrix parse_matrix(std::istream& in)
{
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_matrix(buf.str());
}

DenseMatrix parse_matrix(const std::string& text)
{
    std::istringstream probe(text);
    std::string line;
    while (std::getline(probe, line)) {
        const auto body = strip_comment(line);
        if (blank(body)) {
            continue;
        }
        std::istringstream ss(body);
        std::string first;
        ss >> first;
        std::istringstream in(text);
        if (first == "n") {
            auto m = to_matrix(parse_edge_list(in));
            m.validate();
            return m;
        }
        return parse_dense_csv(in);
    }
    throw std::invalid_argument("empty matrix text");
}

}  // namespace leadership
