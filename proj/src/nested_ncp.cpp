// Encoding of an iterated snake as nested non-crossing permutations on
// the corner set of its top tree, and the inverse reconstruction.
//
// Level by level, the labeled tree tau^(j) is sent through the forward
// map; the second tree tau^(j+1) inherits the labels of snake level j+1
// through the node <-> corner correspondence, and the designated (cut)
// corner of each split vertex supplies the dual index of the tau^(j)
// corner it came from. sigma^(j) cycles those dual indices around each
// tau^(j) vertex.

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "feuille/cvs.hpp"
#include "feuille/feuilletage.hpp"
#include "feuille/permmaps.hpp"
#include "feuille/sampling.hpp"

namespace feuille {

namespace {

// Offset aligning a rerooted copy: find the corner a of `host` (cw
// contour) such that rerooting host at a yields `target` and the node
// visit sequences agree under the node bijection beta (target node ->
// host node). Throws unless exactly one offset fits.
i64 find_reroot_offset(const Walk& host_contour, const std::vector<i64>& host_corner_node,
                       const Walk& target_contour, const std::vector<i64>& target_corner_node,
                       const std::vector<i64>& beta) {
    i64 two_n = static_cast<i64>(host_contour.size()) - 1;
    i64 root_image = beta[target_corner_node[0]];
    i64 found = -1;
    for (i64 a = 0; a < two_n; ++a) {
        if (host_corner_node[a] != root_image) continue;
        bool ok = true;
        for (i64 k = 0; k < two_n && ok; ++k)
            if (host_corner_node[(a + k) % two_n] != beta[target_corner_node[k]]) ok = false;
        if (ok && reroot_at_corner(host_contour, a) == target_contour) {
            if (found != -1) throw std::logic_error("find_reroot_offset: ambiguous offset");
            found = a;
        }
    }
    if (found == -1) throw std::logic_error("find_reroot_offset: no offset matches");
    return found;
}

}  // namespace

NestedNCP nested_ncp_encode(const IteratedSnake& snake) {
    i64 depth = snake.depth();
    if (depth < 1) throw std::invalid_argument("nested_ncp_encode: empty snake");
    for (i64 j = 0; j + 1 < depth; ++j)
        if (snake.layers[j].labels.empty())
            throw std::invalid_argument("nested_ncp_encode: missing labels below the top level");

    // current level in the map-side world
    PlanarTree tau = contour_to_tree(snake.layers[0].contour);
    Walk tau_labels;
    if (!snake.layers[0].labels.empty())
        tau_labels = corner_labels_to_node_labels(snake.layers[0].contour, snake.layers[0].labels);
    // cw corner offset of the current snake tree inside tau (level 1: same tree)
    i64 rho = 0;

    // per level: sigma cycles expressed in the NEXT level's ccw corners,
    // and the dual maps used to lift them to C_D afterwards
    std::vector<std::vector<std::vector<i64>>> level_cycles(depth);
    std::vector<std::vector<i64>> duals(depth);  // duals[j]: level j+1 ccw corner -> level j+2 ccw corner

    // sigma^(j) cycles for the CURRENT tau: one cycle per vertex, corners
    // ascending in the clockwise walk
    auto own_cycles = [](const PlanarTree& t) {
        Walk contour = tree_to_contour(t);
        std::vector<i64> owner = corner_nodes(contour);
        i64 two_n = 2 * t.n_edges;
        std::vector<std::vector<i64>> by_node(t.n_nodes());
        for (i64 r = 0; r < two_n; ++r) by_node[owner[r]].push_back(r);
        return by_node;
    };

    for (i64 j = 1; j < depth; ++j) {
        Extraction ext = extract_with_duals(tau, tau_labels);
        i64 two_n = 2 * tau.n_edges;

        // gluing cycles: dual corners of each tau vertex, ccw-ascending
        auto groups = own_cycles(tau);
        for (const auto& corners : groups) {
            std::vector<i64> cyc;
            cyc.reserve(corners.size());
            for (i64 r : corners) cyc.push_back(ext.dual_corner[r]);
            level_cycles[depth - 1 - j].push_back(std::move(cyc));
        }
        duals[j - 1] = ext.dual_corner;

        // move one level up: transport the labels of snake level j+1 onto
        // the extracted tree
        const Walk& next_contour = snake.layers[j].contour;
        std::vector<i64> t_corner_node = corner_nodes(next_contour);
        i64 next_corners = static_cast<i64>(next_contour.size()) - 1;

        // origin corner -> node of tau_next
        std::vector<i64> node_of_origin(two_n, -1);
        i64 nu_node = -1;
        for (i64 u = 0; u < ext.tau_next.n_nodes(); ++u) {
            if (ext.node_origin[u] == -1)
                nu_node = u;
            else
                node_of_origin[ext.node_origin[u]] = u;
        }
        if (nu_node == -1) throw std::logic_error("nested_ncp_encode: missing pointed vertex");

        // beta: snake node i of level j+1 -> node of tau_next
        i64 a = snake.layers[j].shift_a;
        std::vector<i64> beta(next_corners / 2 + 1, -1);
        beta[0] = nu_node;
        for (i64 i = 1; i <= next_corners / 2; ++i) {
            i64 c = (a + i - 1) % two_n;    // corner of the level-j snake tree
            i64 k_tau = (rho + c) % two_n;  // corner of tau
            beta[i] = node_of_origin[k_tau];
        }

        if (j + 1 < depth || !snake.layers[j].labels.empty()) {
            Walk node_labels =
                corner_labels_to_node_labels(next_contour, snake.layers[j].labels);
            tau_labels.assign(ext.tau_next.n_nodes(), 0);
            for (i64 i = 0; i < static_cast<i64>(beta.size()); ++i)
                tau_labels[beta[i]] = node_labels[i];
        } else {
            tau_labels.clear();
        }

        // align the snake tree inside tau_next for the next round
        Walk tau_contour = tree_to_contour(ext.tau_next);
        std::vector<i64> tau_corner_node = corner_nodes(tau_contour);
        rho = find_reroot_offset(tau_contour, tau_corner_node, next_contour, t_corner_node, beta);
        tau = std::move(ext.tau_next);
    }

    // top level: the tree's own corner permutation
    std::vector<std::vector<i64>> top = own_cycles(tau);

    NestedNCP ncp;
    ncp.corner_count = 2 * tau.n_edges;
    ncp.sigmas.resize(depth);

    // the published corner set runs opposite to the clockwise walk used
    // internally; 0 is shared
    i64 M = ncp.corner_count;
    auto flip = [M](i64 x) { return (M - x) % M; };

    std::vector<i64> full(M);
    std::iota(full.begin(), full.end(), 0);
    for (auto& cyc : top) {
        for (i64& x : cyc) x = flip(x);
        std::reverse(cyc.begin(), cyc.end());
    }
    ncp.sigmas[0] = perm_from_cycles(full, top);

    // lift lower levels through the dual maps
    for (i64 level = 1; level < depth; ++level) {
        // cycles at level_cycles[depth-1-j] with j = depth-level live in
        // level j+1 corners; apply duals j+1 .. depth-1
        i64 j = depth - level;
        auto cycles = level_cycles[depth - 1 - j];
        for (i64 up = j; up + 1 < depth; ++up) {
            for (auto& cyc : cycles)
                for (i64& x : cyc) x = duals[up][x];
        }
        // cycle direction alternates with the orientation of C_j^star
        std::vector<i64> support;
        for (auto& cyc : cycles) {
            for (i64& x : cyc) x = flip(x);
            if (level % 2 == 0) std::reverse(cyc.begin(), cyc.end());
            support.insert(support.end(), cyc.begin(), cyc.end());
        }
        std::sort(support.begin(), support.end());
        ncp.sigmas[level] = perm_from_cycles(support, cycles);
    }
    return ncp;
}

namespace {

// Tree view of one nesting level: the support in walk order (the
// alternating orientation of C_D), the tree built from that walk, and the
// support element at each walk position.
struct LevelTree {
    PlanarTree tree;
    std::vector<i64> support_at;     // walk position -> support value
    std::vector<i64> node_at;        // walk position -> tree node
    std::vector<i64> cycle_of_node;  // tree node -> cycle id in the SupportedPerm
};

LevelTree level_tree(const SupportedPerm& sigma) {
    i64 m = static_cast<i64>(sigma.support.size());
    if (m == 0 || m % 2 != 0) throw std::invalid_argument("level_tree: bad support size");
    // support values ascending = the clockwise walk of this level's tree
    std::vector<i64> order(m);
    std::iota(order.begin(), order.end(), 0);
    // cycles = vertices
    auto cycles = permutation_cycles(sigma.next);
    std::vector<i64> cyc_of_pos(m);
    for (i64 c = 0; c < static_cast<i64>(cycles.size()); ++c)
        for (i64 p : cycles[c]) cyc_of_pos[p] = c;

    std::vector<i64> visits(m);
    for (i64 t = 0; t < m; ++t) visits[t] = cyc_of_pos[order[t]];
    WalkTree wt = tree_from_corner_visits(visits);

    LevelTree out;
    out.tree = std::move(wt.tree);
    out.support_at.resize(m);
    out.node_at = wt.node_of_corner;
    out.cycle_of_node.assign(out.tree.n_nodes(), -1);
    for (i64 t = 0; t < m; ++t) {
        out.support_at[t] = sigma.support[order[t]];
        out.cycle_of_node[out.node_at[t]] = visits[t];
    }
    return out;
}

}  // namespace

IteratedSnake nested_ncp_decode(const NestedNCP& ncp) {
    if (!validate_nested_ncp(ncp)) throw std::invalid_argument("nested_ncp_decode: invalid encoding");
    i64 depth = ncp.depth();

    // restate every level in the internal clockwise indexing (reversal of
    // the published corner set, 0 shared), then build the tree views
    i64 M = ncp.corner_count;
    auto flip = [M](i64 x) { return (M - x) % M; };
    std::vector<SupportedPerm> sigmas_cw(depth);
    for (i64 level = 0; level < depth; ++level) {
        const SupportedPerm& s = ncp.sigmas[level];
        std::vector<std::vector<i64>> cycles;
        for (auto& cyc : permutation_cycles(s.next)) {
            std::vector<i64> c;
            c.reserve(cyc.size());
            for (i64 p : cyc) c.push_back(flip(s.support[p]));
            if (level % 2 == 0) std::reverse(c.begin(), c.end());
            cycles.push_back(std::move(c));
        }
        std::vector<i64> support(s.support.size());
        for (std::size_t i = 0; i < s.support.size(); ++i) support[i] = flip(s.support[i]);
        std::sort(support.begin(), support.end());
        sigmas_cw[level] = perm_from_cycles(support, cycles);
    }

    std::vector<LevelTree> views(depth);
    for (i64 level = 0; level < depth; ++level) views[level] = level_tree(sigmas_cw[level]);

    // labels on the vertices of each tau^(j+1): BFS distance to the
    // pointed vertex in the graph glued by sigma^(j)
    // (views index: tau^(j) is views[depth - j])
    IteratedSnake snake;
    snake.n = static_cast<i64>(ncp.sigmas.back().support.size()) / 2;
    (void)0;
    snake.layers.resize(depth);

    // walk down the nesting: for each consecutive pair (sigma^(j+1), sigma^(j))
    // compute labels of tau^(j+1) vertices
    std::vector<Walk> tau_vertex_labels(depth + 1);   // index by level j: labels on tau^(j) vertices
    std::vector<i64> tau_pointed(depth + 1, -1);      // tau^(j+1) node glued as the pointed vertex
    for (i64 j = depth - 1; j >= 1; --j) {
        const LevelTree& upper = views[depth - (j + 1)];  // tau^(j+1)
        const SupportedPerm& glue = sigmas_cw[depth - j];

        // class per tau^(j+1) vertex: glue cycle id or fresh singleton
        std::unordered_map<i64, i64> support_pos;
        for (i64 p = 0; p < static_cast<i64>(glue.support.size()); ++p)
            support_pos.emplace(glue.support[p], p);
        auto glue_cycles = permutation_cycles(glue.next);
        std::vector<i64> glue_cycle_of_pos(glue.support.size());
        for (i64 c = 0; c < static_cast<i64>(glue_cycles.size()); ++c)
            for (i64 p : glue_cycles[c]) glue_cycle_of_pos[p] = c;

        i64 upper_nodes = upper.tree.n_nodes();
        std::vector<i64> class_of(upper_nodes, -1);
        i64 n_glued = static_cast<i64>(glue_cycles.size());
        i64 next_class = n_glued;
        i64 pointed = -1;
        // a vertex owning a support element joins its glue cycle's class
        for (i64 t = 0; t < static_cast<i64>(upper.support_at.size()); ++t) {
            auto it = support_pos.find(upper.support_at[t]);
            if (it == support_pos.end()) continue;
            i64 u = upper.node_at[t];
            if (class_of[u] != -1 && class_of[u] != glue_cycle_of_pos[it->second])
                throw std::invalid_argument("nested_ncp_decode: inconsistent gluing");
            class_of[u] = glue_cycle_of_pos[it->second];
        }
        for (i64 u = 0; u < upper_nodes; ++u) {
            if (class_of[u] == -1) {
                if (pointed != -1) throw std::invalid_argument("nested_ncp_decode: two unglued vertices");
                pointed = u;
                class_of[u] = next_class++;
            }
        }
        if (pointed == -1) throw std::invalid_argument("nested_ncp_decode: no pointed vertex");
        tau_pointed[j + 1] = pointed;

        // BFS over the glued multigraph
        std::vector<std::vector<i64>> adj(next_class);
        for (i64 v = 1; v < upper_nodes; ++v) {
            i64 a = class_of[v], b = class_of[upper.tree.parent[v]];
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
        std::vector<i64> dist(next_class, -1);
        std::vector<i64> queue = {class_of[pointed]};
        dist[class_of[pointed]] = 0;
        for (std::size_t h = 0; h < queue.size(); ++h) {
            for (i64 w : adj[queue[h]])
                if (dist[w] == -1) {
                    dist[w] = dist[queue[h]] + 1;
                    queue.push_back(w);
                }
        }
        // labels on tau^(j) vertices = distances of their glue classes
        Walk labels(n_glued);
        for (i64 c = 0; c < n_glued; ++c) {
            if (dist[c] == -1) throw std::invalid_argument("nested_ncp_decode: glued graph disconnected");
            labels[c] = dist[c];
        }
        tau_vertex_labels[j] = std::move(labels);
    }

    // bottom-up snake reconstruction
    Walk prev_contour;  // cw contour of the snake tree at the previous level
    i64 prev_rho = 0;   // cw offset of the snake tree inside tau^(j)
    for (i64 j = 1; j <= depth; ++j) {
        const LevelTree& view = views[depth - j];
        SnakeLayer& layer = snake.layers[j - 1];
        i64 two_n = 2 * view.tree.n_edges;

        std::vector<i64> beta;  // snake node -> tau node
        if (j == 1) {
            layer.contour = tree_to_contour(view.tree);
            layer.shift_a = 0;
            beta.resize(view.tree.n_nodes());
            std::iota(beta.begin(), beta.end(), 0);
            prev_rho = 0;
        } else {
            Conjugation conj = conjugate_labels(snake.layers[j - 2].labels);
            layer.contour = height_to_contour(conj.height);
            layer.shift_a = conj.shift;

            // beta through the previous level's corner alignment
            i64 prev_corners = static_cast<i64>(prev_contour.size()) - 1;
            const LevelTree& prev_view = views[depth - (j - 1)];
            // support value sitting at each ccw corner of tau^(j-1) names
            // the designated corner of a tau^(j) vertex
            std::unordered_map<i64, i64> node_of_support;
            for (i64 t = 0; t < static_cast<i64>(view.support_at.size()); ++t)
                node_of_support.emplace(view.support_at[t], view.node_at[t]);
            beta.assign(two_n / 2 + 1, -1);
            beta[0] = tau_pointed[j];
            for (i64 i = 1; i <= two_n / 2; ++i) {
                i64 c = (layer.shift_a + i - 1) % prev_corners;  // corner of snake tree j-1
                i64 k_tau = (prev_rho + c) % prev_corners;       // corner of tau^(j-1)
                i64 s = prev_view.support_at[k_tau];
                auto it = node_of_support.find(s);
                if (it == node_of_support.end())
                    throw std::invalid_argument("nested_ncp_decode: support nesting broken");
                beta[i] = it->second;
            }
            Walk tau_contour = tree_to_contour(view.tree);
            std::vector<i64> tau_owner = corner_nodes(tau_contour);
            std::vector<i64> snake_owner = corner_nodes(layer.contour);
            prev_rho = find_reroot_offset(tau_contour, tau_owner, layer.contour, snake_owner, beta);
        }

        // labels: zero at the top level, glued distances below
        if (j < depth) {
            const Walk& vlab = tau_vertex_labels[j];
            Walk node_labels(view.tree.n_nodes());
            for (i64 i = 0; i < static_cast<i64>(beta.size()); ++i)
                node_labels[i] = vlab[view.cycle_of_node[beta[i]]];
            i64 root_label = node_labels[0];
            for (i64& x : node_labels) x -= root_label;
            layer.labels = node_labels_to_corner_labels(layer.contour, node_labels);
        } else {
            layer.labels.assign(layer.contour.size(), 0);
        }
        prev_contour = layer.contour;
    }
    return snake;
}

}  // namespace feuille
