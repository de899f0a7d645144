#include "feuille/encodings.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

namespace feuille {

bool is_height_seq(const Walk& h) {
    if (h.empty() || h[0] != 0) return false;
    for (std::size_t i = 1; i < h.size(); ++i) {
        if (h[i] <= 0) return false;
        if (h[i] - h[i - 1] > 1) return false;
    }
    return true;
}

bool is_dyck_path(const Walk& c) {
    if (c.size() < 1 || c.size() % 2 == 0) return false;
    if (c.front() != 0 || c.back() != 0) return false;
    for (std::size_t i = 1; i < c.size(); ++i) {
        i64 d = c[i] - c[i - 1];
        if (d != 1 && d != -1) return false;
        if (c[i] < 0) return false;
    }
    return true;
}

bool is_label_seq(const Walk& l) {
    if (l.empty()) return false;
    if (l.front() != 0 || l.back() != 0) return false;
    for (std::size_t i = 1; i < l.size(); ++i) {
        i64 d = l[i] - l[i - 1];
        if (d < -1 || d > 1) return false;
    }
    return true;
}

bool is_valid_tree(const PlanarTree& t) {
    i64 n = t.n_nodes();
    if (t.n_edges < 0) return false;
    if (static_cast<i64>(t.parent.size()) != n) return false;
    if (static_cast<i64>(t.children.size()) != n) return false;
    if (t.parent[0] != -1) return false;
    for (i64 v = 1; v < n; ++v) {
        i64 p = t.parent[v];
        // lexicographic first-visit order puts every parent before its child
        if (p < 0 || p >= v) return false;
    }
    // children lists must partition [1, n) and agree with parent[]
    i64 seen = 0;
    for (i64 v = 0; v < n; ++v) {
        for (i64 c : t.children[v]) {
            if (c <= v || c >= n || t.parent[c] != v) return false;
            ++seen;
        }
        // depth-first numbering makes each child list strictly increasing
        if (!std::is_sorted(t.children[v].begin(), t.children[v].end())) return false;
    }
    return seen == t.n_edges;
}

Walk tree_to_height(const PlanarTree& t) {
    if (!is_valid_tree(t)) throw std::invalid_argument("tree_to_height: invalid tree");
    Walk h(t.n_nodes());
    h[0] = 0;
    for (i64 v = 1; v < t.n_nodes(); ++v) h[v] = h[t.parent[v]] + 1;
    return h;
}

PlanarTree height_to_tree(const Walk& h) {
    if (!is_height_seq(h)) throw std::invalid_argument("height_to_tree: not a height sequence");
    i64 n = static_cast<i64>(h.size()) - 1;
    PlanarTree t;
    t.n_edges = n;
    t.parent.assign(n + 1, -1);
    t.children.assign(n + 1, {});
    // path[d] = most recent node seen at depth d; the parent of node k is
    // the last node at depth H(k)-1, i.e. rho(k) = max{j<k : H_j = H_k - 1}.
    std::vector<i64> path(n + 2, -1);
    path[0] = 0;
    for (i64 k = 1; k <= n; ++k) {
        i64 p = path[h[k] - 1];
        t.parent[k] = p;
        t.children[p].push_back(k);
        path[h[k]] = k;
    }
    return t;
}

Walk height_to_contour(const Walk& h) {
    if (!is_height_seq(h)) throw std::invalid_argument("height_to_contour: not a height sequence");
    i64 n = static_cast<i64>(h.size()) - 1;
    Walk c;
    c.reserve(2 * n + 1);
    c.push_back(0);
    for (i64 k = 1; k <= n; ++k) {
        // descend to the parent level of node k, then one up-step into it
        for (i64 v = h[k - 1]; v >= h[k]; --v) c.push_back(v - 1);
        c.push_back(h[k]);
    }
    for (i64 v = h[n] - 1; v >= 0; --v) c.push_back(v);
    return c;
}

Walk contour_to_height(const Walk& c) {
    if (!is_dyck_path(c)) throw std::invalid_argument("contour_to_height: not a Dyck path");
    Walk h;
    h.reserve(c.size() / 2 + 1);
    h.push_back(0);
    for (std::size_t i = 1; i < c.size(); ++i)
        if (c[i] > c[i - 1]) h.push_back(c[i]);
    return h;
}

Conjugation conjugate_labels(const Walk& labels) {
    if (!is_label_seq(labels)) throw std::invalid_argument("conjugate_labels: not a label sequence");
    i64 n = static_cast<i64>(labels.size()) - 1;
    i64 shift = 0;
    for (i64 i = 1; i < n; ++i)
        if (labels[i] < labels[shift]) shift = i;
    Walk h(n + 1);
    h[0] = 0;
    for (i64 j = 1; j <= n; ++j) h[j] = 1 + labels[(shift + j - 1) % n] - labels[shift];
    return {std::move(h), shift};
}

std::vector<i64> corner_nodes(const Walk& contour) {
    if (!is_dyck_path(contour)) throw std::invalid_argument("corner_nodes: not a Dyck path");
    std::vector<i64> out(contour.size());
    std::vector<i64> stack = {0};
    i64 next_node = 1;
    out[0] = 0;
    for (std::size_t i = 1; i < contour.size(); ++i) {
        if (contour[i] > contour[i - 1]) {
            stack.push_back(next_node++);
        } else {
            stack.pop_back();
        }
        out[i] = stack.back();
    }
    return out;
}

WalkTree tree_from_corner_visits(const std::vector<i64>& vertex_at_corner) {
    if (vertex_at_corner.empty() || vertex_at_corner.size() % 2 != 0)
        throw std::invalid_argument("tree_from_corner_visits: walk length must be even");
    i64 n = static_cast<i64>(vertex_at_corner.size()) / 2;
    WalkTree out;
    out.tree.n_edges = n;
    out.tree.parent.assign(n + 1, -1);
    out.tree.children.assign(n + 1, {});
    out.node_of_corner.assign(2 * n, -1);
    std::unordered_map<i64, i64> node_of;
    node_of.reserve(2 * n);
    std::vector<i64> stack;
    i64 next_node = 0;
    for (i64 t = 0; t < 2 * n; ++t) {
        i64 v = vertex_at_corner[t];
        auto it = node_of.find(v);
        if (t == 0) {
            node_of.emplace(v, next_node++);
            stack.push_back(0);
        } else if (it == node_of.end()) {
            i64 id = next_node++;
            node_of.emplace(v, id);
            out.tree.parent[id] = stack.back();
            out.tree.children[stack.back()].push_back(id);
            stack.push_back(id);
        } else if (stack.size() >= 2 && it->second == stack[stack.size() - 2]) {
            stack.pop_back();
        } else {
            throw std::invalid_argument("tree_from_corner_visits: not a tree walk");
        }
        out.node_of_corner[t] = node_of.at(v);
    }
    // a closed walk ends one step above its wrap-around return to the root
    if (next_node != n + 1 || stack.size() != 2 || out.tree.parent[stack[1]] != 0)
        throw std::invalid_argument("tree_from_corner_visits: walk does not close a tree");
    return out;
}

Walk node_labels_to_corner_labels(const Walk& contour, const Walk& node_labels) {
    std::vector<i64> owners = corner_nodes(contour);
    if (node_labels.size() != contour.size() / 2 + 1)
        throw std::invalid_argument("node_labels_to_corner_labels: size mismatch");
    Walk out(contour.size());
    for (std::size_t i = 0; i < contour.size(); ++i) out[i] = node_labels[owners[i]];
    return out;
}

Walk corner_labels_to_node_labels(const Walk& contour, const Walk& corner_labels) {
    std::vector<i64> owners = corner_nodes(contour);
    if (corner_labels.size() != contour.size())
        throw std::invalid_argument("corner_labels_to_node_labels: size mismatch");
    Walk out(contour.size() / 2 + 1, std::numeric_limits<i64>::min());
    for (std::size_t i = 0; i < contour.size(); ++i) {
        i64 v = owners[i];
        if (out[v] == std::numeric_limits<i64>::min()) {
            out[v] = corner_labels[i];
        } else if (out[v] != corner_labels[i]) {
            throw std::invalid_argument("corner_labels_to_node_labels: corner-inconsistent labels");
        }
    }
    return out;
}

i64 first_corner(const Walk& height, i64 k) {
    if (!is_height_seq(height)) throw std::invalid_argument("first_corner: not a height sequence");
    if (k < 0 || k >= static_cast<i64>(height.size()))
        throw std::out_of_range("first_corner: node index out of range");
    return 2 * k - height[k];
}

i64 tree_distance(const Walk& contour, i64 k, i64 k2) {
    i64 len = static_cast<i64>(contour.size());
    if (k < 0 || k >= len || k2 < 0 || k2 >= len)
        throw std::out_of_range("tree_distance: corner index out of range");
    i64 lo = std::min(k, k2), hi = std::max(k, k2);
    i64 m = contour[lo];
    for (i64 i = lo + 1; i <= hi; ++i) m = std::min(m, contour[i]);
    return contour[k] + contour[k2] - 2 * m;
}

Walk reroot_tree(const Walk& contour, i64 a) {
    if (!is_dyck_path(contour)) throw std::invalid_argument("reroot_tree: not a Dyck path");
    i64 two_n = static_cast<i64>(contour.size()) - 1;
    if (a < 0 || a >= two_n) throw std::out_of_range("reroot_tree: corner out of range");
    if (contour[a] != 0) throw std::invalid_argument("reroot_tree: not a root corner");
    Walk out(two_n + 1);
    for (i64 k = 0; k <= two_n; ++k) out[k] = contour[(a + k) % two_n];
    out[two_n] = 0;
    return out;
}

Walk reroot_at_corner(const Walk& contour, i64 a) {
    if (!is_dyck_path(contour)) throw std::invalid_argument("reroot_at_corner: not a Dyck path");
    i64 two_n = static_cast<i64>(contour.size()) - 1;
    if (a < 0 || a >= two_n) throw std::out_of_range("reroot_at_corner: corner out of range");
    Walk out(two_n + 1);
    // distance to corner a uses the minimum on the linear interval between
    // the two corners; sweep both directions from a
    i64 m = contour[a];
    for (i64 u = a; u < two_n; ++u) {
        m = std::min(m, contour[u]);
        out[u - a] = contour[u] + contour[a] - 2 * m;
    }
    m = contour[a];
    for (i64 u = a; u >= 0; --u) {
        m = std::min(m, contour[u]);
        if (u < a) out[u + two_n - a] = contour[u] + contour[a] - 2 * m;
    }
    out[two_n] = 0;
    return out;
}

double pointed_distance(const SnakeTour& tour1, const SnakeTour& tour2) {
    const Walk &c1 = tour1.contour, &c2 = tour2.contour;
    const Walk &l1 = tour1.labels, &l2 = tour2.labels;
    if (c1.size() != c2.size() || l1.size() != l2.size() || c1.size() != l1.size())
        throw std::invalid_argument("pointed_distance: tour length mismatch");
    if (!is_dyck_path(c1) || !is_dyck_path(c2))
        throw std::invalid_argument("pointed_distance: invalid contour");
    i64 two_n = static_cast<i64>(c1.size()) - 1;
    i64 best = std::numeric_limits<i64>::max();
    for (i64 a = 0; a < two_n; ++a) {
        if (c2[a] != 0) continue;
        i64 sup_c = 0, sup_l = 0;
        for (i64 k = 0; k <= two_n; ++k) {
            i64 j = (a + k) % two_n;  // corner 2N coincides with corner 0
            sup_c = std::max(sup_c, std::abs(c1[k] - c2[j]));
            sup_l = std::max(sup_l, std::abs(l1[k] - l2[j]));
            if (sup_c + sup_l >= best) break;
        }
        best = std::min(best, sup_c + sup_l);
    }
    return static_cast<double>(best);
}

void write_process_csv(std::ostream& os, i64 layer, i64 n, const Walk& contour, const Walk& labels) {
    os << "# layer=" << layer << " n=" << n << "\n";
    for (std::size_t i = 0; i < contour.size(); ++i)
        os << i << "," << contour[i] << "," << (i < labels.size() ? labels[i] : 0) << "\n";
}

}  // namespace feuille
