#include "feuille/sampling.hpp"

#include <cmath>
#include <stdexcept>

namespace feuille {

Walk sample_dyck_uniform(i64 n, Rng& rng) {
    if (n < 1) throw std::invalid_argument("sample_dyck_uniform: n must be >= 1");
    // n up-steps, n+1 down-steps, uniformly arranged
    std::vector<signed char> steps(2 * n + 1, -1);
    for (i64 i = 0; i < n; ++i) steps[i] = 1;
    for (i64 i = 2 * n; i > 0; --i) {
        i64 j = static_cast<i64>(rng.below(static_cast<std::uint64_t>(i + 1)));
        std::swap(steps[i], steps[j]);
    }
    // cycle lemma: the rotation starting right after the first minimum of
    // the partial sums is the unique one staying nonnegative until the
    // final down-step
    i64 sum = 0, min_sum = 0, min_pos = -1;
    for (i64 i = 0; i < 2 * n + 1; ++i) {
        sum += steps[i];
        if (sum < min_sum) {
            min_sum = sum;
            min_pos = i;
        }
    }
    i64 start = min_pos + 1;
    Walk c(2 * n + 1);
    c[0] = 0;
    for (i64 k = 0; k < 2 * n; ++k) c[k + 1] = c[k] + steps[(start + k) % (2 * n + 1)];
    return c;
}

Walk sample_dyck_uniform(i64 n, Seed seed) {
    Rng rng = Rng::from(seed);
    return sample_dyck_uniform(n, rng);
}

Walk sample_branching_labels(const Walk& contour, Rng& rng) {
    if (!is_dyck_path(contour)) throw std::invalid_argument("sample_branching_labels: invalid contour");
    i64 len = static_cast<i64>(contour.size());
    Walk out(len);
    // contour walk with a stack of labels on the current ancestral path;
    // increments are drawn at first visits, i.e. in lexicographic order
    Walk stack;
    stack.reserve(64);
    stack.push_back(0);
    out[0] = 0;
    for (i64 i = 1; i < len; ++i) {
        if (contour[i] > contour[i - 1]) {
            stack.push_back(stack.back() + rng.step3());
        } else {
            stack.pop_back();
        }
        out[i] = stack.back();
    }
    return out;
}

IteratedSnake sample_iterated_snake(i64 n, i64 depth, Seed seed) {
    if (n < 1 || depth < 1) throw std::invalid_argument("sample_iterated_snake: need n >= 1, depth >= 1");
    Rng stream = Rng::from(seed);
    IteratedSnake s;
    s.n = n;
    s.layers.resize(depth);
    Rng r0 = stream.fork(0);
    s.layers[0].contour = sample_dyck_uniform(n, r0);
    s.layers[0].shift_a = 0;
    for (i64 j = 0; j < depth; ++j) {
        if (j > 0) {
            Conjugation conj = conjugate_labels(s.layers[j - 1].labels);
            s.layers[j].contour = height_to_contour(conj.height);
            s.layers[j].shift_a = conj.shift;
        }
        Rng rj = stream.fork(static_cast<std::uint64_t>(j + 1));
        s.layers[j].labels = sample_branching_labels(s.layers[j].contour, rj);
    }
    return s;
}

IteratedSnake sample_iterated_snake_trees(i64 n, i64 depth, Seed seed) {
    if (n < 1 || depth < 1) throw std::invalid_argument("sample_iterated_snake_trees: need n >= 1, depth >= 1");
    Rng stream = Rng::from(seed);
    IteratedSnake s;
    s.n = n;
    s.layers.resize(depth);
    Rng r0 = stream.fork(0);
    s.layers[0].contour = sample_dyck_uniform(n, r0);
    s.layers[0].shift_a = 0;
    for (i64 j = 0; j < depth; ++j) {
        if (j > 0) {
            Conjugation conj = conjugate_labels(s.layers[j - 1].labels);
            s.layers[j].contour = height_to_contour(conj.height);
            s.layers[j].shift_a = conj.shift;
        }
        if (j + 1 < depth) {
            Rng rj = stream.fork(static_cast<std::uint64_t>(j + 1));
            s.layers[j].labels = sample_branching_labels(s.layers[j].contour, rj);
        }
    }
    return s;
}

IteratedSnake snake_from_processes(const Walk& base_contour, const std::vector<Walk>& labels) {
    if (!is_dyck_path(base_contour)) throw std::invalid_argument("snake_from_processes: invalid contour");
    IteratedSnake s;
    s.n = static_cast<i64>(base_contour.size()) / 2;
    s.layers.resize(labels.size());
    if (labels.empty()) throw std::invalid_argument("snake_from_processes: need at least one layer");
    s.layers[0].contour = base_contour;
    s.layers[0].shift_a = 0;
    for (std::size_t j = 0; j < labels.size(); ++j) {
        if (j > 0) {
            Conjugation conj = conjugate_labels(s.layers[j - 1].labels);
            s.layers[j].contour = height_to_contour(conj.height);
            s.layers[j].shift_a = conj.shift;
        }
        if (labels[j].size() != s.layers[j].contour.size())
            throw std::invalid_argument("snake_from_processes: label length mismatch");
        s.layers[j].labels = labels[j];
        // validates corner consistency as a side effect
        corner_labels_to_node_labels(s.layers[j].contour, s.layers[j].labels);
    }
    return s;
}

bool check_snake(const IteratedSnake& s) {
    if (s.n < 1 || s.layers.empty()) return false;
    for (i64 j = 0; j < s.depth(); ++j) {
        const SnakeLayer& ly = s.layers[j];
        i64 edges = (i64{1} << j) * s.n;
        if (static_cast<i64>(ly.contour.size()) != 2 * edges + 1) return false;
        if (!is_dyck_path(ly.contour)) return false;
        if (!ly.labels.empty()) {
            if (ly.labels.size() != ly.contour.size()) return false;
            if (!is_label_seq(ly.labels)) return false;
            try {
                corner_labels_to_node_labels(ly.contour, ly.labels);
            } catch (const std::invalid_argument&) {
                return false;
            }
        }
        if (j == 0) {
            if (ly.shift_a != 0) return false;
        } else {
            if (s.layers[j - 1].labels.empty()) return false;
            Conjugation conj = conjugate_labels(s.layers[j - 1].labels);
            if (conj.shift != ly.shift_a) return false;
            if (height_to_contour(conj.height) != ly.contour) return false;
        }
    }
    return true;
}

NormConstants normalization_constants(i64 n, i64 level) {
    double two_n = 2.0 * static_cast<double>(n);
    double j = static_cast<double>(level);
    double alpha = std::pow(two_n, std::exp2(-j)) * std::pow(2.0 / 3.0, 1.0 - std::exp2(-(j - 1.0)));
    double beta = std::pow(two_n, std::exp2(-(j + 1.0))) * std::pow(2.0 / 3.0, 1.0 - std::exp2(-j));
    return {alpha, beta};
}

}  // namespace feuille
