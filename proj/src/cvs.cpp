#include "feuille/cvs.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace feuille {

// Orientation conventions (rotation assembly and corner-walk directions)
// are fixed by the exhaustive oracles: image counts, planarity, face
// degrees, round trips, second-tree shape against the conjugation tree,
// and the nested-permutation structure. See cvs_test.cpp.

bool is_valid_labeling(const PlanarTree& t, const Walk& node_labels) {
    if (!is_valid_tree(t)) return false;
    if (static_cast<i64>(node_labels.size()) != t.n_nodes()) return false;
    if (node_labels[0] != 0) return false;
    for (i64 v = 1; v < t.n_nodes(); ++v) {
        i64 d = node_labels[v] - node_labels[t.parent[v]];
        if (d < -1 || d > 1) return false;
    }
    return true;
}

bool is_quadrangulation(const Quadrangulation& q) {
    if (!is_valid_comb_map(q.map)) return false;
    if (static_cast<i64>(q.vertex_of.size()) != q.map.n_darts()) return false;
    if (q.pointed_vertex < 0 || q.pointed_vertex >= q.n_vertices) return false;
    if (q.root_dart < 0 || q.root_dart >= q.map.n_darts()) return false;
    for (i64 d = 0; d < q.map.n_darts(); ++d)
        if (q.vertex_of[d] != q.vertex_of[q.map.sigma[d]]) return false;
    FacesAndGenus fg = map_faces_and_genus(q.map);
    if (fg.genus != 0) return false;
    for (const auto& f : fg.faces)
        if (f.size() != 4) return false;
    return true;
}

namespace {

struct ForwardBuild {
    Quadrangulation q;
    std::vector<i64> corner_tag;    // dart -> corner of the tree, -1 at the pointed vertex
    std::vector<i64> corner_node;   // corner -> tree node (clockwise walk)
    std::vector<i64> block_first;   // corner -> first dart of its rotation block
    std::vector<i64> block_last;    // corner -> last dart of its rotation block
};

// Shared core of cvs_forward and the extraction.
ForwardBuild build_cvs(const PlanarTree& tree, const Walk& node_labels, int eta) {
    if (!is_valid_tree(tree)) throw std::invalid_argument("cvs_forward: invalid tree");
    if (static_cast<i64>(node_labels.size()) != tree.n_nodes())
        throw std::invalid_argument("cvs_forward: label count mismatch");
    for (i64 v = 1; v < tree.n_nodes(); ++v) {
        i64 d = node_labels[v] - node_labels[tree.parent[v]];
        if (d < -1 || d > 1) throw std::invalid_argument("cvs_forward: invalid labeling");
    }
    i64 n = tree.n_edges;
    if (n < 1) throw std::invalid_argument("cvs_forward: need at least one edge");
    i64 two_n = 2 * n;

    Walk contour = tree_to_contour(tree);
    std::vector<i64> node_at = corner_nodes(contour);
    node_at.pop_back();  // corner 2n is corner 0
    Walk label_at(two_n);
    for (i64 r = 0; r < two_n; ++r) label_at[r] = node_labels[node_at[r]];
    i64 min_label = *std::min_element(label_at.begin(), label_at.end());
    i64 max_label = *std::max_element(label_at.begin(), label_at.end());

    // nearest cyclically preceding corner carrying label L(r) - 1
    std::vector<i64> pred(two_n, -1);
    std::vector<i64> last_seen(max_label - min_label + 1, -1);
    for (int lap = 0; lap < 2; ++lap) {
        for (i64 r = 0; r < two_n; ++r) {
            if (lap == 1 && label_at[r] > min_label) pred[r] = last_seen[label_at[r] - 1 - min_label];
            last_seen[label_at[r] - min_label] = r;
        }
    }

    // darts: edge of corner r has out-dart 2r and in-dart 2r+1
    i64 n_darts = 4 * n;
    i64 nu = tree.n_nodes();  // pointed vertex id
    std::vector<i64> vertex_of(n_darts), tag(n_darts);
    std::vector<i64> alpha(n_darts);
    for (i64 r = 0; r < two_n; ++r) {
        alpha[2 * r] = 2 * r + 1;
        alpha[2 * r + 1] = 2 * r;
        vertex_of[2 * r] = node_at[r];
        tag[2 * r] = r;
        if (label_at[r] == min_label) {
            vertex_of[2 * r + 1] = nu;
            tag[2 * r + 1] = -1;
        } else {
            vertex_of[2 * r + 1] = node_at[pred[r]];
            tag[2 * r + 1] = pred[r];
        }
    }

    // per-corner blocks: the out-dart plus the arriving in-darts sorted by
    // the cyclic distance of their source corner
    std::vector<std::vector<i64>> arrivals(two_n);
    std::vector<i64> nu_block;
    for (i64 r = 0; r < two_n; ++r) {
        if (label_at[r] == min_label) {
            nu_block.push_back(2 * r + 1);
        } else {
            arrivals[pred[r]].push_back(2 * r + 1);
        }
    }
    for (i64 j = 0; j < two_n; ++j) {
        auto key = [&](i64 dart) { return (tag[alpha[dart]] - j + two_n) % two_n; };
        std::sort(arrivals[j].begin(), arrivals[j].end(),
                  [&](i64 a, i64 b) { return key(a) < key(b); });
    }

    // corner blocks concatenate in decreasing corner order around each
    // tree vertex; the pointed vertex keeps its arrivals in walk order
    std::vector<std::vector<i64>> rotation(nu + 1);
    std::vector<i64> block_first(two_n), block_last(two_n);
    for (i64 r = two_n - 1; r >= 0; --r) {
        auto& rot = rotation[node_at[r]];
        rot.insert(rot.end(), arrivals[r].begin(), arrivals[r].end());
        rot.push_back(2 * r);
        block_first[r] = arrivals[r].empty() ? 2 * r : arrivals[r].front();
        block_last[r] = 2 * r;
    }
    rotation[nu] = nu_block;

    ForwardBuild out;
    out.q.map.sigma.assign(n_darts, 0);
    out.q.map.alpha = std::move(alpha);
    for (const auto& rot : rotation) {
        for (std::size_t i = 0; i < rot.size(); ++i)
            out.q.map.sigma[rot[i]] = rot[(i + 1) % rot.size()];
    }
    out.q.vertex_of = std::move(vertex_of);
    out.q.n_vertices = nu + 1;
    out.q.pointed_vertex = nu;
    out.q.root_dart = eta == 0 ? 0 : 1;
    out.corner_tag = std::move(tag);
    out.corner_node = std::move(node_at);
    out.block_first = std::move(block_first);
    out.block_last = std::move(block_last);
    return out;
}

}  // namespace

Quadrangulation cvs_forward(const LabeledTree& lt) {
    if (!is_valid_labeling(lt.tree, lt.node_labels))
        throw std::invalid_argument("cvs_forward: invalid labeled tree");
    if (lt.eta != 0 && lt.eta != 1) throw std::invalid_argument("cvs_forward: eta must be 0 or 1");
    return build_cvs(lt.tree, lt.node_labels, lt.eta).q;
}

Extraction extract_with_duals(const PlanarTree& tree, const Walk& node_labels) {
    ForwardBuild fb = build_cvs(tree, node_labels, 0);
    const CombMap& m = fb.q.map;
    i64 n_darts = m.n_darts();
    i64 two_n = 2 * tree.n_edges;

    // explode: each corner's rotation block becomes its own vertex of the
    // second tree, cut at the block boundary; the pointed vertex stays whole
    std::vector<i64> split_sigma = m.sigma;
    std::vector<i64> run_anchor(two_n, -1);  // corner -> last dart of its block
    for (i64 r = 0; r < two_n; ++r) {
        split_sigma[fb.block_last[r]] = fb.block_first[r];
        run_anchor[r] = fb.block_last[r];
    }

    CombMap tau_map;
    tau_map.sigma = std::move(split_sigma);
    tau_map.alpha = m.alpha;
    {
        FacesAndGenus fg = map_faces_and_genus(tau_map);
        if (fg.genus != 0 || fg.faces.size() != 1)
            throw std::logic_error("extract_with_duals: split map is not a tree");
    }

    // corner walk of the second tree from the corner dual to the input root
    auto step = [&](i64 e) { return tau_map.alpha[tau_map.sigma[e]]; };
    i64 root_gap = run_anchor[0];
    std::vector<i64> gap_index(n_darts, -1);
    std::vector<i64> gap_order;
    gap_order.reserve(n_darts);
    for (i64 e = root_gap, t = 0; t < n_darts; ++t, e = step(e)) {
        gap_index[e] = t;
        gap_order.push_back(e);
    }

    Extraction out;
    out.quad = fb.q;
    out.dual_corner.resize(two_n);
    for (i64 r = 0; r < two_n; ++r) out.dual_corner[r] = gap_index[run_anchor[r]];

    // split-map vertex of every dart
    std::vector<i64> vertex_id(n_darts);
    {
        std::vector<char> seen2(n_darts, 0);
        i64 next = 0;
        for (i64 d0 = 0; d0 < n_darts; ++d0) {
            if (seen2[d0]) continue;
            for (i64 d = d0; !seen2[d]; d = tau_map.sigma[d]) {
                seen2[d] = 1;
                vertex_id[d] = next;
            }
            ++next;
        }
    }
    // the walk positions are the corner indexing of the second tree; the
    // walk itself is its clockwise contour
    std::vector<i64> visits(n_darts);
    for (i64 t = 0; t < n_darts; ++t) visits[t] = vertex_id[gap_order[t]];
    WalkTree wt = tree_from_corner_visits(visits);
    out.tau_next = std::move(wt.tree);
    out.corner_node_next = std::move(wt.node_of_corner);
    out.node_origin.assign(two_n + 1, -2);
    for (i64 t = 0; t < n_darts; ++t) {
        i64 d = gap_order[t];
        i64 id = out.corner_node_next[t];
        i64 origin = fb.q.vertex_of[d] == fb.q.pointed_vertex ? -1 : fb.corner_tag[d];
        if (out.node_origin[id] == -2) out.node_origin[id] = origin;
    }
    return out;
}

PlanarTree extract_second_tree(const LabeledTree& lt) {
    if (!is_valid_labeling(lt.tree, lt.node_labels))
        throw std::invalid_argument("extract_second_tree: invalid labeled tree");
    return extract_with_duals(lt.tree, lt.node_labels).tau_next;
}

LabeledTree cvs_backward(const Quadrangulation& q) {
    if (!is_quadrangulation(q)) throw std::invalid_argument("cvs_backward: not a rooted pointed quadrangulation");
    const CombMap& m = q.map;
    i64 n_darts = m.n_darts();

    // vertex labels: BFS distance to the pointed vertex
    std::vector<std::vector<i64>> darts_of(q.n_vertices);
    for (i64 d = 0; d < n_darts; ++d) darts_of[q.vertex_of[d]].push_back(d);
    std::vector<i64> dist(q.n_vertices, -1);
    std::deque<i64> queue = {q.pointed_vertex};
    dist[q.pointed_vertex] = 0;
    while (!queue.empty()) {
        i64 u = queue.front();
        queue.pop_front();
        for (i64 d : darts_of[u]) {
            i64 w = q.vertex_of[m.alpha[d]];
            if (dist[w] == -1) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }

    // one blue edge per face; gaps are keyed by their leading dart e,
    // meaning the corner (e, sigma(e))
    auto face_next_gap = [&](i64 e) { return m.alpha[m.sigma[e]]; };
    std::vector<char> gap_seen(n_darts, 0);
    std::vector<std::pair<i64, i64>> blue_edges;  // pairs of gap anchors
    for (i64 e0 = 0; e0 < n_darts; ++e0) {
        if (gap_seen[e0]) continue;
        std::vector<i64> gaps;
        for (i64 e = e0; !gap_seen[e]; e = face_next_gap(e)) {
            gap_seen[e] = 1;
            gaps.push_back(e);
        }
        if (gaps.size() != 4) throw std::invalid_argument("cvs_backward: face of degree != 4");
        std::array<i64, 4> lab{};
        for (int i = 0; i < 4; ++i) lab[i] = dist[q.vertex_of[gaps[i]]];
        i64 lo = *std::min_element(lab.begin(), lab.end());
        i64 hi = *std::max_element(lab.begin(), lab.end());
        if (hi == lo + 2) {
            // simple face l, l+1, l+2, l+1: join the top corner to the gap
            // that follows it around the face
            int p = 0;
            while (lab[p] != hi) ++p;
            blue_edges.emplace_back(gaps[p], gaps[(p + 3) % 4]);
        } else if (hi == lo + 1) {
            // confluent face l, l+1, l, l+1: join the two top corners
            std::vector<i64> tops;
            for (int i = 0; i < 4; ++i)
                if (lab[i] == hi) tops.push_back(gaps[i]);
            if (tops.size() != 2) throw std::invalid_argument("cvs_backward: bad face label pattern");
            blue_edges.emplace_back(tops[0], tops[1]);
        } else {
            throw std::invalid_argument("cvs_backward: bad face label pattern");
        }
    }

    // splice blue darts into the rotations: blue dart for gap e sits
    // between e and sigma(e)
    i64 total = n_darts + 2 * static_cast<i64>(blue_edges.size());
    std::vector<i64> sigma2(total), alpha2(total), vertex2(total, -1);
    for (i64 d = 0; d < n_darts; ++d) {
        sigma2[d] = m.sigma[d];
        alpha2[d] = m.alpha[d];
        vertex2[d] = q.vertex_of[d];
    }
    for (std::size_t b = 0; b < blue_edges.size(); ++b) {
        i64 d1 = n_darts + 2 * static_cast<i64>(b);
        i64 d2 = d1 + 1;
        auto splice = [&](i64 gap, i64 nd) {
            sigma2[nd] = sigma2[gap];
            sigma2[gap] = nd;
            vertex2[nd] = q.vertex_of[gap];
        };
        splice(blue_edges[b].first, d1);
        splice(blue_edges[b].second, d2);
        alpha2[d1] = d2;
        alpha2[d2] = d1;
    }

    // blue-only rotation: skip black darts around each vertex
    std::vector<i64> inv2(total);
    for (i64 d = 0; d < total; ++d) inv2[sigma2[d]] = d;
    auto prev_blue = [&](i64 d) {
        i64 e = inv2[d];
        i64 guard = 0;
        while (e < n_darts) {
            e = inv2[e];
            if (++guard > total) throw std::invalid_argument("cvs_backward: vertex without tree dart");
        }
        return e;
    };

    // root corner: the blue gap containing the root dart at the
    // higher-label endpoint of the root edge
    i64 u_dart = q.root_dart;
    i64 w_dart = m.alpha[q.root_dart];
    i64 hi_dart = dist[q.vertex_of[u_dart]] > dist[q.vertex_of[w_dart]] ? u_dart : w_dart;
    int eta = hi_dart == u_dart ? 0 : 1;
    // scan backward in the spliced rotation to the blue dart opening the gap
    i64 b = inv2[hi_dart];
    {
        i64 guard = 0;
        while (b < n_darts) {
            b = inv2[b];
            if (++guard > total) throw std::invalid_argument("cvs_backward: root vertex without tree dart");
        }
    }

    // corner walk of the blue tree from that gap; the recovered tree winds
    // the opposite way to the second tree
    i64 n_blue_darts = total - n_darts;
    auto blue_step = [&](i64 e) { return prev_blue(alpha2[e]); };
    std::vector<i64> order;
    order.reserve(n_blue_darts);
    {
        std::vector<char> seen(total, 0);
        for (i64 e = b, t = 0; t < n_blue_darts; ++t, e = blue_step(e)) {
            if (seen[e]) throw std::invalid_argument("cvs_backward: blue graph is not a tree");
            seen[e] = 1;
            order.push_back(e);
        }
    }

    // ordered tree + labels from the visit sequence
    i64 n = static_cast<i64>(blue_edges.size());
    LabeledTree out;
    out.eta = eta;
    out.tree.n_edges = n;
    out.tree.parent.assign(n + 1, -1);
    out.tree.children.assign(n + 1, {});
    out.node_labels.assign(n + 1, 0);
    std::vector<i64> node_of_vertex(q.n_vertices, -1);
    std::vector<i64> stack;
    i64 next_node = 0;
    i64 d0 = dist[vertex2[order[0]]];
    for (i64 t = 0; t < n_blue_darts; ++t) {
        i64 v = vertex2[order[t]];
        if (t == 0) {
            node_of_vertex[v] = next_node++;
            stack.push_back(0);
        } else if (node_of_vertex[v] == -1) {
            i64 id = next_node++;
            node_of_vertex[v] = id;
            out.tree.parent[id] = stack.back();
            out.tree.children[stack.back()].push_back(id);
            stack.push_back(id);
        } else if (stack.size() >= 2 && node_of_vertex[v] == stack[stack.size() - 2]) {
            stack.pop_back();
        } else if (node_of_vertex[v] != stack.back()) {
            throw std::invalid_argument("cvs_backward: blue walk is not a tree walk");
        }
        out.node_labels[node_of_vertex[v]] = dist[v] - d0;
    }
    if (next_node != n + 1) throw std::invalid_argument("cvs_backward: blue graph is not spanning");
    return out;
}

std::vector<i64> canonical_form(const Quadrangulation& q) {
    if (!is_valid_comb_map(q.map)) throw std::invalid_argument("canonical_form: invalid map");
    i64 n_darts = q.map.n_darts();
    std::vector<i64> relabel(n_darts, -1);
    std::deque<i64> queue = {q.root_dart};
    relabel[q.root_dart] = 0;
    i64 next = 1;
    while (!queue.empty()) {
        i64 d = queue.front();
        queue.pop_front();
        for (i64 e : {q.map.sigma[d], q.map.alpha[d]}) {
            if (relabel[e] == -1) {
                relabel[e] = next++;
                queue.push_back(e);
            }
        }
    }
    std::vector<i64> out;
    out.reserve(2 * n_darts + 1);
    std::vector<i64> inv(n_darts);
    for (i64 d = 0; d < n_darts; ++d) inv[relabel[d]] = d;
    for (i64 d = 0; d < n_darts; ++d) {
        out.push_back(relabel[q.map.sigma[inv[d]]]);
        out.push_back(relabel[q.map.alpha[inv[d]]]);
    }
    // mark the pointed vertex by its smallest relabeled dart
    i64 mark = n_darts;
    for (i64 d = 0; d < n_darts; ++d)
        if (q.vertex_of[d] == q.pointed_vertex) mark = std::min(mark, relabel[d]);
    out.push_back(mark);
    return out;
}

std::string quadrangulation_to_string(const Quadrangulation& q) {
    std::ostringstream os;
    os << "pointed=" << q.pointed_vertex << " root=" << q.root_dart << "\n";
    std::vector<i64> ids(q.map.n_darts());
    std::iota(ids.begin(), ids.end(), 0);
    SupportedPerm s{ids, q.map.sigma}, a{ids, q.map.alpha};
    os << cycles_to_string(s) << "\n" << cycles_to_string(a) << "\n";
    return os.str();
}

}  // namespace feuille
