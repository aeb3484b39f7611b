#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

namespace leadership {

/// Dense row-major n x n matrix of non-negative weights. Entry (i, j) is the
/// weight agent i places on agent j; non-zero means j can influence i.
class DenseMatrix {
  public:
    DenseMatrix() = default;
    explicit DenseMatrix(std::size_t n, double fill = 0.0) : n_(n), w_(n * n, fill) {}

    static DenseMatrix all_ones(std::size_t n);  // zero diagonal

    std::size_t size() const { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return w_[i * n_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return w_[i * n_ + j]; }
    const double* row(std::size_t i) const { return w_.data() + i * n_; }
    std::size_t nonzeros() const;

    /// Diagonal zero, entries finite and non-negative.
    void validate() const;

    bool operator==(const DenseMatrix&) const = default;

  private:
    std::size_t n_{0};
    std::vector<double> w_;
};

/// Sociality matrix S(t): piecewise constant in time. Each segment covers
/// [begin, end); the last one also contains its end point.
class SocialityMatrix {
  public:
    struct Segment {
        double begin{0.0};
        double end{std::numeric_limits<double>::infinity()};
        DenseMatrix weights;

        bool operator==(const Segment&) const = default;
    };

    SocialityMatrix() = default;
    /// Time-invariant matrix.
    explicit SocialityMatrix(DenseMatrix m);
    /// Scheduled matrix; throws on overlapping, unordered or gapped intervals.
    explicit SocialityMatrix(std::vector<Segment> schedule);

    std::size_t size() const { return n_; }
    bool scheduled() const { return segments_.size() > 1 || segments_.front().begin != 0.0 ||
                                    segments_.front().end != std::numeric_limits<double>::infinity(); }
    const std::vector<Segment>& segments() const { return segments_; }

    /// Matrix in force at `time`; throws std::out_of_range outside the schedule.
    const DenseMatrix& at(double time) const;
    /// First and last covered instants.
    double horizon_begin() const { return segments_.front().begin; }
    double horizon_end() const { return segments_.back().end; }

    bool operator==(const SocialityMatrix&) const = default;

  private:
    std::size_t n_{0};
    std::vector<Segment> segments_;
};

struct Edge {
    std::size_t from;  // influencer j
    std::size_t to;    // influenced i
    double weight{1.0};

    bool operator==(const Edge&) const = default;
};

/// Directed graph with an edge j -> i for every S_ij != 0.
class InfluenceGraph {
  public:
    explicit InfluenceGraph(std::size_t n = 0) : out_(n), in_degree_(n, 0) {}

    static InfluenceGraph from_edges(std::size_t n, const std::vector<Edge>& edges);

    std::size_t size() const { return out_.size(); }
    /// Adds j -> i; self-loops are rejected, duplicates ignored.
    void add_edge(std::size_t from, std::size_t to, double weight = 1.0);
    bool has_edge(std::size_t from, std::size_t to) const;
    const std::vector<std::size_t>& successors(std::size_t node) const { return out_.at(node); }
    std::size_t out_degree(std::size_t node) const { return out_.at(node).size(); }
    std::size_t in_degree(std::size_t node) const { return in_degree_.at(node); }
    std::size_t edge_count() const;
    /// Edges sorted by (from, to).
    std::vector<Edge> edges() const;

  private:
    std::vector<std::vector<std::size_t>> out_;
    std::vector<std::vector<double>> weights_;
    std::vector<std::size_t> in_degree_;
};

InfluenceGraph influence_graph(const DenseMatrix& s);
InfluenceGraph influence_graph(const SocialityMatrix& s, double at_time);

/// Nodes k != node reachable from `node` by a directed path, ascending.
std::vector<std::size_t> reachability(const InfluenceGraph& g, std::size_t node);

/// Nodes with a non-empty reachability set, ascending.
std::vector<std::size_t> structural_leaders(const InfluenceGraph& g);

/// |F_node| / (n - 1).
double reach_score(const InfluenceGraph& g, std::size_t node);

// Text formats. Edge list: header "n <count>", then one "j i weight" line per
// entry S_ij; '#' starts a comment. Dense: n lines of n comma-separated values.

struct EdgeList {
    std::size_t n{0};
    std::vector<Edge> edges;
};

EdgeList parse_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const DenseMatrix& s);
DenseMatrix parse_dense_csv(std::istream& in);
void write_dense_csv(std::ostream& out, const DenseMatrix& s);
DenseMatrix to_matrix(const EdgeList& list);
/// Accepts either text format, detected from the first non-comment token.
DenseMatrix parse_matrix(std::istream& in);
DenseMatrix parse_matrix(const std::string& text);

}  // namespace leadership
