#include "feuille/oracles.hpp"

#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "feuille/feuilletage.hpp"
#include "feuille/sampling.hpp"

namespace feuille {

namespace {
bool g_catalan_fault = false;
}

void inject_catalan_fault(bool enabled) { g_catalan_fault = enabled; }

i64 catalan_number(i64 n) {
    if (n < 0 || n > 30) throw std::out_of_range("catalan_number: n out of supported range");
    i64 c = 1;
    for (i64 k = 0; k < n; ++k) c = c * 2 * (2 * k + 1) / (k + 2);
    if (g_catalan_fault && n >= 1) c += 1;
    return c;
}

void for_each_dyck(i64 n, const std::function<void(const Walk&)>& fn) {
    if (n < 1 || n > 12) throw std::out_of_range("for_each_dyck: guard n <= 12 exceeded");
    Walk c(2 * n + 1, 0);
    // lexicographic backtracking over +-1 steps
    std::function<void(i64)> rec = [&](i64 i) {
        if (i == 2 * n) {
            if (c[i] == 0) fn(c);
            return;
        }
        i64 remaining = 2 * n - i;
        // down first: (-1) < (+1) lexicographically on the walk values
        if (c[i] > 0 && c[i] - 1 <= remaining - 1) {
            c[i + 1] = c[i] - 1;
            rec(i + 1);
        }
        if (c[i] + 1 <= remaining - 1) {
            c[i + 1] = c[i] + 1;
            rec(i + 1);
        }
    };
    rec(0);
}

std::vector<Walk> enumerate_dyck(i64 n) {
    std::vector<Walk> out;
    out.reserve(static_cast<std::size_t>(catalan_number(std::min<i64>(n, 12))));
    for_each_dyck(n, [&](const Walk& c) { out.push_back(c); });
    return out;
}

void for_each_labeled_tree(i64 n, const std::function<void(const LabeledTree&)>& fn) {
    if (n < 1 || n > 7) throw std::out_of_range("for_each_labeled_tree: guard n <= 7 exceeded");
    for_each_dyck(n, [&](const Walk& c) {
        LabeledTree lt;
        lt.tree = contour_to_tree(c);
        lt.node_labels.assign(n + 1, 0);
        lt.eta = 0;
        // odometer over the 3^n per-node increments
        std::vector<i64> inc(n + 1, -1);
        for (;;) {
            for (i64 v = 1; v <= n; ++v)
                lt.node_labels[v] = lt.node_labels[lt.tree.parent[v]] + inc[v];
            fn(lt);
            i64 v = 1;
            while (v <= n && inc[v] == 1) inc[v++] = -1;
            if (v > n) break;
            ++inc[v];
        }
    });
}

std::vector<LabeledTree> enumerate_labeled_trees(i64 n) {
    std::vector<LabeledTree> out;
    for_each_labeled_tree(n, [&](const LabeledTree& lt) { out.push_back(lt); });
    return out;
}

EnumerationReport verify_cvs_exhaustive(i64 n) {
    if (n < 1 || n > 5) throw std::out_of_range("verify_cvs_exhaustive: guard n <= 5 exceeded");
    EnumerationReport rep;
    rep.n = n;
    rep.family = "rooted pointed quadrangulations";
    i64 pow3 = 1;
    for (i64 i = 0; i < n; ++i) pow3 *= 3;
    rep.formula_count = 2 * pow3 * catalan_number(n);

    std::set<std::vector<i64>> images;
    i64 count = 0;
    for_each_labeled_tree(n, [&](const LabeledTree& base) {
        for (int eta = 0; eta <= 1; ++eta) {
            LabeledTree lt = base;
            lt.eta = eta;
            Quadrangulation q = cvs_forward(lt);
            ++count;
            std::ostringstream witness;
            if (!is_quadrangulation(q)) {
                witness << "invalid image at eta=" << eta;
                rep.mismatches.push_back(witness.str());
                return;
            }
            if (!images.insert(canonical_form(q)).second) {
                witness << "collision at eta=" << eta;
                rep.mismatches.push_back(witness.str());
                return;
            }
            // distance identity: d(nu, w) = l(w) - min l + 1 for every tree node
            i64 min_label = *std::min_element(lt.node_labels.begin(), lt.node_labels.end());
            std::vector<std::vector<i64>> adj(q.n_vertices);
            for (i64 d = 0; d < q.map.n_darts(); ++d)
                adj[q.vertex_of[d]].push_back(q.vertex_of[q.map.alpha[d]]);
            std::vector<i64> dist(q.n_vertices, -1);
            std::vector<i64> queue = {q.pointed_vertex};
            dist[q.pointed_vertex] = 0;
            for (std::size_t h = 0; h < queue.size(); ++h) {
                i64 u = queue[h];
                for (i64 w : adj[u])
                    if (dist[w] == -1) {
                        dist[w] = dist[u] + 1;
                        queue.push_back(w);
                    }
            }
            for (i64 v = 0; v < lt.tree.n_nodes(); ++v) {
                if (dist[v] != lt.node_labels[v] - min_label + 1) {
                    witness << "distance identity fails at node " << v;
                    rep.mismatches.push_back(witness.str());
                    return;
                }
            }
            LabeledTree back = cvs_backward(q);
            if (!(back == lt)) {
                witness << "backward round trip fails (eta=" << eta << ")";
                rep.mismatches.push_back(witness.str());
                return;
            }
        }
    });
    rep.exact_count = static_cast<i64>(images.size());
    if (count != rep.formula_count && rep.mismatches.empty())
        rep.mismatches.push_back("enumeration count mismatch");
    return rep;
}

EnumerationReport verify_feuilletage_counts(i64 n, i64 depth) {
    if (n < 1 || n > 3 || depth < 1 || depth > 3)
        throw std::out_of_range("verify_feuilletage_counts: guards n <= 3, D <= 3 exceeded");
    EnumerationReport rep;
    rep.n = n;
    rep.family = "feuilletage realizations";
    // C_n base trees times 3^(2^j n) labelings per level j = 0..D-2
    rep.formula_count = catalan_number(n);
    for (i64 j = 0; j + 2 <= depth; ++j) {
        i64 labels = (i64{1} << j) * n;
        for (i64 i = 0; i < labels; ++i) rep.formula_count *= 3;
    }

    i64 count = 0;
    // enumerate label processes level by level via per-node increments
    std::function<void(IteratedSnake&, i64)> extend = [&](IteratedSnake& s, i64 level) {
        if (level == depth) {
            ++count;
            Feuilletage f = build_feuilletage(s);
            std::ostringstream witness;
            if (f.n_classes != n + depth) {
                witness << "class count " << f.n_classes << " != " << n + depth;
                rep.mismatches.push_back(witness.str());
                return;
            }
            if (static_cast<i64>(f.edges.size()) != (i64{1} << (depth - 1)) * n) {
                witness << "edge count " << f.edges.size();
                rep.mismatches.push_back(witness.str());
                return;
            }
            // connectivity of the quotient
            std::vector<std::vector<i64>> adj(f.n_classes);
            for (auto [u, v] : f.edges) {
                adj[u].push_back(v);
                adj[v].push_back(u);
            }
            std::vector<char> seen(f.n_classes, 0);
            std::vector<i64> queue = {0};
            seen[0] = 1;
            i64 reached = 0;
            for (std::size_t h = 0; h < queue.size(); ++h) {
                ++reached;
                for (i64 w : adj[queue[h]])
                    if (!seen[w]) {
                        seen[w] = 1;
                        queue.push_back(w);
                    }
            }
            if (reached != f.n_classes) {
                witness << "quotient disconnected: " << reached << "/" << f.n_classes;
                rep.mismatches.push_back(witness.str());
            }
            return;
        }
        const Walk& contour = s.layers[level - 1].contour;
        i64 edges = static_cast<i64>(contour.size() - 1) / 2;
        std::vector<i64> inc(edges + 1, -1);
        Walk node_labels(edges + 1, 0);
        PlanarTree t = contour_to_tree(contour);
        for (;;) {
            for (i64 v = 1; v <= edges; ++v) node_labels[v] = node_labels[t.parent[v]] + inc[v];
            s.layers[level - 1].labels = node_labels_to_corner_labels(contour, node_labels);
            Conjugation conj = conjugate_labels(s.layers[level - 1].labels);
            s.layers[level].contour = height_to_contour(conj.height);
            s.layers[level].shift_a = conj.shift;
            s.layers[level].labels.clear();
            extend(s, level + 1);
            i64 v = 1;
            while (v <= edges && inc[v] == 1) inc[v++] = -1;
            if (v > edges) break;
            ++inc[v];
        }
    };

    for_each_dyck(n, [&](const Walk& c) {
        IteratedSnake s;
        s.n = n;
        s.layers.resize(depth);
        s.layers[0].contour = c;
        s.layers[0].shift_a = 0;
        if (depth == 1) {
            ++count;
            Feuilletage f = build_feuilletage(s);
            if (f.n_classes != n + 1 || static_cast<i64>(f.edges.size()) != n)
                rep.mismatches.push_back("tree case structure mismatch");
            return;
        }
        extend(s, 1);
    });
    rep.exact_count = count;
    return rep;
}

}  // namespace feuille
