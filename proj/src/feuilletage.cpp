#include "feuille/feuilletage.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace feuille {

CornerNodeMap corner_node_map(const IteratedSnake& snake, i64 level) {
    if (level < 2 || level > snake.depth())
        throw std::out_of_range("corner_node_map: level out of range");
    const SnakeLayer& layer = snake.layers[level - 1];
    i64 corners = (i64{1} << (level - 1)) * snake.n;  // corners of layer j-1
    i64 nodes = corners;                              // non-root nodes of layer j
    CornerNodeMap out;
    out.level = level;
    out.corner_of.assign(nodes + 1, -1);
    for (i64 i = 1; i <= nodes; ++i)
        out.corner_of[i] = (layer.shift_a + i - 1) % corners;
    return out;
}

Feuilletage build_feuilletage(const IteratedSnake& snake) {
    if (snake.depth() < 1) throw std::invalid_argument("build_feuilletage: empty snake");
    i64 n = snake.n;
    i64 depth = snake.depth();

    // level 1: classes are the base tree's nodes
    std::vector<i64> cls(n + 1);
    for (i64 i = 0; i <= n; ++i) cls[i] = i;
    i64 next_class = n + 1;

    // stream upward: a non-root node of layer j inherits the class of the
    // layer-(j-1) node owning its corner; each root starts a fresh class
    for (i64 j = 2; j <= depth; ++j) {
        const SnakeLayer& below = snake.layers[j - 2];
        const SnakeLayer& layer = snake.layers[j - 1];
        std::vector<i64> owner = corner_nodes(below.contour);
        i64 corners = static_cast<i64>(below.contour.size()) - 1;
        i64 nodes = (i64{1} << (j - 1)) * n;
        std::vector<i64> cls_up(nodes + 1);
        cls_up[0] = next_class++;
        for (i64 i = 1; i <= nodes; ++i) {
            i64 c = (layer.shift_a + i - 1) % corners;
            cls_up[i] = cls[owner[c]];
        }
        cls = std::move(cls_up);
    }

    Feuilletage f;
    f.n = n;
    f.depth = depth;
    f.n_classes = next_class;
    f.class_of_node = std::move(cls);
    f.root_class = f.class_of_node[0];

    // edge multiset inherited from the top tree
    const Walk& top = snake.layers[depth - 1].contour;
    i64 top_edges = (static_cast<i64>(top.size()) - 1) / 2;
    f.edges.reserve(top_edges);
    // parents from the height sequence without materializing the tree
    Walk h = contour_to_height(top);
    std::vector<i64> path(h.size(), -1);
    path[0] = 0;
    for (i64 k = 1; k <= top_edges; ++k) {
        i64 p = path[h[k] - 1];
        f.edges.emplace_back(f.class_of_node[k], f.class_of_node[p]);
        path[h[k]] = k;
    }
    return f;
}

Quadrangulation build_layer_quadrangulation(const IteratedSnake& snake, i64 level) {
    if (level < 1 || level + 1 > snake.depth())
        throw std::out_of_range("build_layer_quadrangulation: need layers j and j+1");
    const SnakeLayer& layer = snake.layers[level - 1];
    LabeledTree lt;
    lt.tree = contour_to_tree(layer.contour);
    lt.node_labels = corner_labels_to_node_labels(layer.contour, layer.labels);
    lt.eta = 0;
    return cvs_forward(lt);
}

std::vector<std::pair<i64, i64>> export_quotient_graph(const Feuilletage& f, bool simplify) {
    // dense ids with the root class renamed to 0
    auto rename = [&](i64 c) {
        if (c == f.root_class) return i64{0};
        return c < f.root_class ? c + 1 : c;
    };
    std::vector<std::pair<i64, i64>> out;
    out.reserve(f.edges.size());
    for (auto [u, v] : f.edges) {
        i64 a = rename(u), b = rename(v);
        if (simplify && a == b) continue;
        if (a > b) std::swap(a, b);
        out.emplace_back(a, b);
    }
    if (simplify) {
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
    }
    return out;
}

void write_edge_list(std::ostream& os, const Feuilletage& f, Seed seed, bool simplify) {
    os << "# feuilletage n=" << f.n << " D=" << f.depth << " seed=" << seed.master << ":"
       << seed.replicate << "\n";
    for (auto [u, v] : export_quotient_graph(f, simplify)) os << u << " " << v << "\n";
}

}  // namespace feuille
