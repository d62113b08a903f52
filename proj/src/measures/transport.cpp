#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <tuple>
#include <vector>

#include "genbounds/errors.hpp"
#include "genbounds/measures/measures.hpp"

namespace genbounds::measures {

namespace {

// Dense transportation simplex. Supplies and demands are strictly positive
// and balanced; the basis is maintained as a spanning tree over the m + n
// nodes, northwest-corner start, most-negative entering arc, first minimal
// leaving arc. Exact optimum up to floating-point rounding.
class TransportSimplex {
  public:
    TransportSimplex(std::span<const double> supply, std::span<const double> demand,
                     std::span<const double> cost)
        : m_(supply.size()), n_(demand.size()), cost_(cost.begin(), cost.end()),
          flow_(m_ * n_, 0.0), basic_(m_ * n_, 0) {
        northwest_start(supply, demand);
        double cmax = 0.0;
        for (double c : cost_) cmax = std::max(cmax, std::abs(c));
        tol_ = 1e-12 * (1.0 + cmax);
    }

    double solve() {
        const std::size_t max_iters = 200 * (m_ + n_) * (m_ + n_) + 1000;
        for (std::size_t iter = 0; iter < max_iters; ++iter) {
            compute_duals();
            std::size_t ei = 0, ej = 0;
            if (!find_entering(ei, ej)) {
                double total = 0.0;
                for (std::size_t k = 0; k < flow_.size(); ++k) {
                    if (basic_[k]) total += flow_[k] * cost_[k];
                }
                return total;
            }
            pivot(ei, ej);
        }
        throw InfeasibleLP("transport simplex did not converge; this is a solver bug");
    }

  private:
    std::size_t idx(std::size_t i, std::size_t j) const { return i * n_ + j; }

    void northwest_start(std::span<const double> supply, std::span<const double> demand) {
        std::vector<double> a(supply.begin(), supply.end());
        std::vector<double> b(demand.begin(), demand.end());
        std::size_t i = 0, j = 0;
        while (true) {
            const double q = std::min(a[i], b[j]);
            flow_[idx(i, j)] = q;
            basic_[idx(i, j)] = 1;
            a[i] -= q;
            b[j] -= q;
            if (i + 1 == m_ && j + 1 == n_) break;
            // advance exactly one index per step so the basis stays a tree
            // with m + n - 1 cells, inserting zero-flow cells on ties
            if (a[i] <= b[j] && i + 1 < m_) {
                ++i;
            } else if (j + 1 < n_) {
                ++j;
            } else {
                ++i;
            }
        }
    }

    void compute_duals() {
        u_.assign(m_, 0.0);
        v_.assign(n_, 0.0);
        std::vector<char> done_u(m_, 0), done_v(n_, 0);
        // adjacency of the basis tree
        row_adj_.assign(m_, {});
        col_adj_.assign(n_, {});
        for (std::size_t i = 0; i < m_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) {
                if (basic_[idx(i, j)]) {
                    row_adj_[i].push_back(j);
                    col_adj_[j].push_back(i);
                }
            }
        }
        // BFS from row 0 with u[0] = 0
        std::vector<std::pair<char, std::size_t>> stack;  // (is_row, index)
        stack.emplace_back(1, 0);
        done_u[0] = 1;
        while (!stack.empty()) {
            auto [is_row, k] = stack.back();
            stack.pop_back();
            if (is_row) {
                for (std::size_t j : row_adj_[k]) {
                    if (!done_v[j]) {
                        v_[j] = cost_[idx(k, j)] - u_[k];
                        done_v[j] = 1;
                        stack.emplace_back(0, j);
                    }
                }
            } else {
                for (std::size_t i : col_adj_[k]) {
                    if (!done_u[i]) {
                        u_[i] = cost_[idx(i, k)] - v_[k];
                        done_u[i] = 1;
                        stack.emplace_back(1, i);
                    }
                }
            }
        }
        for (std::size_t i = 0; i < m_; ++i) {
            if (!done_u[i]) throw InfeasibleLP("transport simplex: basis is not a spanning tree");
        }
        for (std::size_t j = 0; j < n_; ++j) {
            if (!done_v[j]) throw InfeasibleLP("transport simplex: basis is not a spanning tree");
        }
    }

    bool find_entering(std::size_t& ei, std::size_t& ej) const {
        double best = -tol_;
        bool found = false;
        for (std::size_t i = 0; i < m_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) {
                if (basic_[idx(i, j)]) continue;
                const double r = cost_[idx(i, j)] - u_[i] - v_[j];
                if (r < best) {
                    best = r;
                    ei = i;
                    ej = j;
                    found = true;
                }
            }
        }
        return found;
    }

    // Unique tree path from row ei to column ej plus the entering arc forms
    // the pivot cycle. Arcs met at odd positions (starting from the entering
    // arc at position 0) lose flow.
    void pivot(std::size_t ei, std::size_t ej) {
        const std::size_t rows = m_;
        const std::size_t nodes = m_ + n_;
        std::vector<std::ptrdiff_t> parent(nodes, -1);
        std::vector<char> seen(nodes, 0);
        std::vector<std::size_t> queue{ei};
        seen[ei] = 1;
        for (std::size_t qi = 0; qi < queue.size() && !seen[rows + ej]; ++qi) {
            const std::size_t node = queue[qi];
            if (node < rows) {
                for (std::size_t j : row_adj_[node]) {
                    if (!seen[rows + j]) {
                        seen[rows + j] = 1;
                        parent[rows + j] = static_cast<std::ptrdiff_t>(node);
                        queue.push_back(rows + j);
                    }
                }
            } else {
                for (std::size_t i : col_adj_[node - rows]) {
                    if (!seen[i]) {
                        seen[i] = 1;
                        parent[i] = static_cast<std::ptrdiff_t>(node);
                        queue.push_back(i);
                    }
                }
            }
        }
        if (!seen[rows + ej]) throw InfeasibleLP("transport simplex: pivot cycle not found");

        // reconstruct arcs from ej's node back to ei; cycle alternates signs
        std::vector<std::size_t> cycle;  // arc cell indices, entering first
        cycle.push_back(idx(ei, ej));
        std::size_t node = rows + ej;
        while (node != ei) {
            const std::size_t par = static_cast<std::size_t>(parent[node]);
            const std::size_t i = node < rows ? node : par;
            const std::size_t j = node < rows ? par - rows : node - rows;
            cycle.push_back(idx(i, j));
            node = par;
        }

        double theta = std::numeric_limits<double>::infinity();
        std::size_t leaving = 0;
        for (std::size_t k = 1; k < cycle.size(); k += 2) {
            if (flow_[cycle[k]] < theta) {
                theta = flow_[cycle[k]];
                leaving = cycle[k];
            }
        }
        for (std::size_t k = 0; k < cycle.size(); ++k) {
            if (k % 2 == 0) {
                flow_[cycle[k]] += theta;
            } else {
                flow_[cycle[k]] -= theta;
            }
        }
        basic_[idx(ei, ej)] = 1;
        basic_[leaving] = 0;
        flow_[leaving] = 0.0;
    }

    std::size_t m_, n_;
    std::vector<double> cost_;
    std::vector<double> flow_;
    std::vector<char> basic_;
    std::vector<double> u_, v_;
    std::vector<std::vector<std::size_t>> row_adj_, col_adj_;
    double tol_ = 1e-12;
};

bool all_coords_1d(const DiscreteDist& d) {
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d.point(i).coord.size() != 1) return false;
    }
    return true;
}

}  // namespace

double solve_transport(std::span<const double> supply, std::span<const double> demand,
                       std::span<const double> cost) {
    if (cost.size() != supply.size() * demand.size()) {
        throw ValidationError("solve_transport: cost matrix size mismatch");
    }
    TransportSimplex simplex(supply, demand, cost);
    return simplex.solve();
}

double wasserstein1_lp(const DiscreteDist& p, const DiscreteDist& q, const Metric& m) {
    // drop zero-mass points; they carry no transport obligation
    std::vector<std::size_t> pi, qi;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p.prob(i) > 0.0) pi.push_back(i);
    }
    for (std::size_t j = 0; j < q.size(); ++j) {
        if (q.prob(j) > 0.0) qi.push_back(j);
    }
    std::vector<double> supply, demand, cost;
    supply.reserve(pi.size());
    demand.reserve(qi.size());
    cost.reserve(pi.size() * qi.size());
    for (std::size_t i : pi) supply.push_back(p.prob(i));
    for (std::size_t j : qi) demand.push_back(q.prob(j));
    for (std::size_t i : pi) {
        for (std::size_t j : qi) {
            const double c = m(p.point(i), q.point(j));
            if (!(c >= 0.0)) throw ValidationError("wasserstein1: metric returned " +
                                                   std::to_string(c));
            cost.push_back(c);
        }
    }
    return solve_transport(supply, demand, cost);
}

double wasserstein1_1d(const DiscreteDist& p, const DiscreteDist& q) {
    if (!all_coords_1d(p) || !all_coords_1d(q)) {
        throw MetricUndefined("wasserstein1_1d: all points need 1-D coordinates");
    }
    // merged support; the distance is the area between the two CDFs
    std::vector<std::tuple<double, double, double>> pts;
    pts.reserve(p.size() + q.size());
    for (std::size_t i = 0; i < p.size(); ++i) pts.emplace_back(p.point(i).coord[0], p.prob(i), 0.0);
    for (std::size_t j = 0; j < q.size(); ++j) pts.emplace_back(q.point(j).coord[0], 0.0, q.prob(j));
    std::sort(pts.begin(), pts.end(),
              [](const auto& a, const auto& b) { return std::get<0>(a) < std::get<0>(b); });
    double w = 0.0, fp = 0.0, fq = 0.0;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        fp += std::get<1>(pts[k]);
        fq += std::get<2>(pts[k]);
        w += std::abs(fp - fq) * (std::get<0>(pts[k + 1]) - std::get<0>(pts[k]));
    }
    return w;
}

double wasserstein1(const DiscreteDist& p, const DiscreteDist& q, const Metric& m) {
    if (m.kind() == Metric::Kind::kIndicator) {
        // under the indicator cost the optimal transport keeps every shared
        // atom in place, which is exactly the total variation distance
        if (p.same_support(q)) return tv(p, q);
        auto [pa, qa] = align(p, q);
        return tv(pa, qa);
    }
    if (m.kind() == Metric::Kind::kEuclidean && all_coords_1d(p) && all_coords_1d(q)) {
        return wasserstein1_1d(p, q);
    }
    return wasserstein1_lp(p, q, m);
}

}  // namespace genbounds::measures
