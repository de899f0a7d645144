#include "feuille/permmaps.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace feuille {

static bool is_permutation(const std::vector<i64>& p) {
    i64 n = static_cast<i64>(p.size());
    std::vector<char> seen(n, 0);
    for (i64 v : p) {
        if (v < 0 || v >= n || seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

bool is_valid_comb_map(const CombMap& m) {
    i64 n = m.n_darts();
    if (n == 0 || n % 2 != 0) return false;
    if (static_cast<i64>(m.alpha.size()) != n) return false;
    if (!is_permutation(m.sigma) || !is_permutation(m.alpha)) return false;
    for (i64 d = 0; d < n; ++d)
        if (m.alpha[d] == d || m.alpha[m.alpha[d]] != d) return false;
    // transitivity of <sigma, alpha>
    std::vector<char> seen(n, 0);
    std::vector<i64> stack = {0};
    seen[0] = 1;
    i64 count = 0;
    while (!stack.empty()) {
        i64 d = stack.back();
        stack.pop_back();
        ++count;
        for (i64 e : {m.sigma[d], m.alpha[d]}) {
            if (!seen[e]) {
                seen[e] = 1;
                stack.push_back(e);
            }
        }
    }
    return count == n;
}

std::vector<std::vector<i64>> permutation_cycles(const std::vector<i64>& perm) {
    std::vector<std::vector<i64>> cycles;
    std::vector<char> seen(perm.size(), 0);
    for (i64 s = 0; s < static_cast<i64>(perm.size()); ++s) {
        if (seen[s]) continue;
        std::vector<i64> cyc;
        for (i64 x = s; !seen[x]; x = perm[x]) {
            seen[x] = 1;
            cyc.push_back(x);
        }
        cycles.push_back(std::move(cyc));
    }
    return cycles;
}

FacesAndGenus map_faces_and_genus(const CombMap& m) {
    if (!is_valid_comb_map(m)) throw std::invalid_argument("map_faces_and_genus: invalid map");
    i64 darts = m.n_darts();
    std::vector<i64> phi(darts);
    for (i64 d = 0; d < darts; ++d) phi[d] = m.sigma[m.alpha[d]];
    FacesAndGenus out;
    out.faces = permutation_cycles(phi);
    i64 v = static_cast<i64>(permutation_cycles(m.sigma).size());
    i64 e = darts / 2;
    i64 f = static_cast<i64>(out.faces.size());
    i64 chi = v - e + f;
    if ((2 - chi) % 2 != 0 || chi > 2)
        throw std::invalid_argument("map_faces_and_genus: Euler characteristic not of form 2-2g");
    out.genus = (2 - chi) / 2;
    return out;
}

static std::unordered_map<i64, i64> position_index(const std::vector<i64>& ground) {
    std::unordered_map<i64, i64> pos;
    pos.reserve(ground.size() * 2);
    for (i64 i = 0; i < static_cast<i64>(ground.size()); ++i) {
        if (!pos.emplace(ground[i], i).second)
            throw std::invalid_argument("duplicate element in ordered set");
    }
    return pos;
}

bool is_noncrossing_partition(const NCPartition& p) {
    auto pos = position_index(p.ground);
    i64 n = static_cast<i64>(p.ground.size());
    // block id per position; also checks the blocks cover the ground
    std::vector<i64> block_of(n, -1);
    for (i64 b = 0; b < static_cast<i64>(p.blocks.size()); ++b) {
        for (i64 v : p.blocks[b]) {
            auto it = pos.find(v);
            if (it == pos.end() || block_of[it->second] != -1) return false;
            block_of[it->second] = b;
        }
    }
    for (i64 i = 0; i < n; ++i)
        if (block_of[i] == -1) return false;
    // crossing test: scanning positions left to right, a block may only be
    // resumed while it sits on top of the open-block stack
    std::vector<i64> first_pos(p.blocks.size(), -1), last_pos(p.blocks.size(), -1);
    for (i64 i = 0; i < n; ++i) {
        if (first_pos[block_of[i]] == -1) first_pos[block_of[i]] = i;
        last_pos[block_of[i]] = i;
    }
    std::vector<i64> stack;
    for (i64 i = 0; i < n; ++i) {
        i64 b = block_of[i];
        if (first_pos[b] == i) {
            stack.push_back(b);
        } else if (stack.empty() || stack.back() != b) {
            return false;
        }
        if (last_pos[b] == i) {
            if (stack.empty() || stack.back() != b) return false;
            stack.pop_back();
        }
    }
    return true;
}

NCPartition kreweras_complement(const NCPartition& p) {
    if (!is_noncrossing_partition(p)) throw std::invalid_argument("kreweras_complement: crossing input");
    i64 n = static_cast<i64>(p.ground.size());
    auto pos = position_index(p.ground);
    // non-crossing permutation of p in position space
    std::vector<i64> sigma(n);
    for (const auto& blk : p.blocks) {
        std::vector<i64> ps;
        ps.reserve(blk.size());
        for (i64 v : blk) ps.push_back(pos.at(v));
        std::sort(ps.begin(), ps.end());
        for (std::size_t i = 0; i < ps.size(); ++i) sigma[ps[i]] = ps[(i + 1) % ps.size()];
    }
    // complement permutation: K = sigma^{-1} o c, c the full forward cycle
    std::vector<i64> sigma_inv(n);
    for (i64 i = 0; i < n; ++i) sigma_inv[sigma[i]] = i;
    std::vector<i64> k(n);
    for (i64 i = 0; i < n; ++i) k[i] = sigma_inv[(i + 1) % n];
    NCPartition out;
    out.ground = p.ground;
    for (auto& cyc : permutation_cycles(k)) {
        std::sort(cyc.begin(), cyc.end());
        std::vector<i64> blk;
        blk.reserve(cyc.size());
        for (i64 i : cyc) blk.push_back(p.ground[i]);
        out.blocks.push_back(std::move(blk));
    }
    return out;
}

SupportedPerm perm_from_cycles(const std::vector<i64>& support,
                               const std::vector<std::vector<i64>>& cycles_by_value) {
    auto pos = position_index(support);
    SupportedPerm p;
    p.support = support;
    p.next.resize(support.size());
    std::iota(p.next.begin(), p.next.end(), 0);
    std::vector<char> used(support.size(), 0);
    for (const auto& cyc : cycles_by_value) {
        for (std::size_t i = 0; i < cyc.size(); ++i) {
            auto a = pos.find(cyc[i]);
            auto b = pos.find(cyc[(i + 1) % cyc.size()]);
            if (a == pos.end() || b == pos.end())
                throw std::invalid_argument("perm_from_cycles: element outside support");
            if (used[a->second]) throw std::invalid_argument("perm_from_cycles: overlapping cycles");
            used[a->second] = 1;
            p.next[a->second] = b->second;
        }
    }
    return p;
}

bool is_noncrossing_permutation(const SupportedPerm& p) {
    i64 n = static_cast<i64>(p.support.size());
    if (static_cast<i64>(p.next.size()) != n || !is_permutation(p.next)) return false;
    NCPartition part;
    part.ground.resize(n);
    std::iota(part.ground.begin(), part.ground.end(), 0);
    for (auto& cyc : permutation_cycles(p.next)) {
        // the cycle must step through its elements in increasing position
        std::vector<i64> sorted = cyc;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < sorted.size(); ++i)
            if (p.next[sorted[i]] != sorted[(i + 1) % sorted.size()]) return false;
        part.blocks.push_back(std::move(sorted));
    }
    return is_noncrossing_partition(part);
}

i64 permutation_genus(const SupportedPerm& p) {
    i64 n = static_cast<i64>(p.support.size());
    if (static_cast<i64>(p.next.size()) != n || !is_permutation(p.next))
        throw std::invalid_argument("permutation_genus: malformed permutation");
    if (n == 0) return 0;
    i64 c_sigma = static_cast<i64>(permutation_cycles(p.next).size());
    // f0 o sigma, f0 the full forward cycle in support order
    std::vector<i64> comp(n);
    for (i64 i = 0; i < n; ++i) comp[i] = (p.next[i] + 1) % n;
    i64 c_comp = static_cast<i64>(permutation_cycles(comp).size());
    i64 two_g = 1 + n - c_sigma - c_comp;
    if (two_g < 0 || two_g % 2 != 0)
        throw std::invalid_argument("permutation_genus: malformed input (2g not a nonnegative even)");
    return two_g / 2;
}

std::string cycles_to_string(const SupportedPerm& p) {
    auto cycles = permutation_cycles(p.next);
    // order cycles by smallest support value for a stable rendering
    std::sort(cycles.begin(), cycles.end(), [&](const auto& a, const auto& b) {
        i64 ma = p.support[*std::min_element(a.begin(), a.end(),
                                             [&](i64 x, i64 y) { return p.support[x] < p.support[y]; })];
        i64 mb = p.support[*std::min_element(b.begin(), b.end(),
                                             [&](i64 x, i64 y) { return p.support[x] < p.support[y]; })];
        return ma < mb;
    });
    std::ostringstream os;
    for (auto& cyc : cycles) {
        std::size_t lead = 0;
        for (std::size_t i = 1; i < cyc.size(); ++i)
            if (p.support[cyc[i]] < p.support[cyc[lead]]) lead = i;
        os << '(';
        for (std::size_t i = 0; i < cyc.size(); ++i) {
            if (i) os << ',';
            os << p.support[cyc[(lead + i) % cyc.size()]];
        }
        os << ')';
    }
    return os.str();
}

SupportedPerm perm_from_string(const std::string& text, const std::vector<i64>& support) {
    std::vector<std::vector<i64>> cycles;
    std::size_t i = 0;
    while (i < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        if (text[i] != '(') throw std::invalid_argument("perm_from_string: expected '('");
        std::size_t close = text.find(')', i);
        if (close == std::string::npos) throw std::invalid_argument("perm_from_string: missing ')'");
        std::vector<i64> cyc;
        std::string body = text.substr(i + 1, close - i - 1);
        std::istringstream is(body);
        std::string item;
        while (std::getline(is, item, ',')) {
            if (!item.empty()) cyc.push_back(std::stoll(item));
        }
        if (!cyc.empty()) cycles.push_back(std::move(cyc));
        i = close + 1;
    }
    return perm_from_cycles(support, cycles);
}

bool validate_nested_ncp(const NestedNCP& ncp) {
    i64 d = ncp.depth();
    if (d == 0 || ncp.corner_count <= 0) return false;
    // sigma^(D): support must be the whole corner set, taken forward
    const SupportedPerm& top = ncp.sigmas[0];
    if (static_cast<i64>(top.support.size()) != ncp.corner_count) return false;
    for (i64 i = 0; i < ncp.corner_count; ++i)
        if (top.support[i] != i) return false;
    if (!is_noncrossing_permutation(top)) return false;
    for (i64 level = 1; level < d; ++level) {
        const SupportedPerm& outer = ncp.sigmas[level - 1];  // sigma^(D-level+1)
        const SupportedPerm& inner = ncp.sigmas[level];      // sigma^(D-level)
        // support nesting, with at most one inner element per outer cycle
        std::unordered_map<i64, i64> outer_pos;
        for (i64 i = 0; i < static_cast<i64>(outer.support.size()); ++i)
            outer_pos.emplace(outer.support[i], i);
        auto outer_cycles = permutation_cycles(outer.next);
        std::vector<i64> cycle_of(outer.support.size());
        for (i64 c = 0; c < static_cast<i64>(outer_cycles.size()); ++c)
            for (i64 x : outer_cycles[c]) cycle_of[x] = c;
        std::vector<i64> hits(outer_cycles.size(), 0);
        for (i64 v : inner.support) {
            auto it = outer_pos.find(v);
            if (it == outer_pos.end()) return false;
            if (++hits[cycle_of[it->second]] > 1) return false;
        }
        // orientation alternates with the level parity: forward when the
        // level has the parity of D, reversed otherwise
        bool reversed = (level % 2) == 1;
        SupportedPerm oriented = inner;
        if (reversed) {
            // reversed order of C_D still starting at the smallest element
            std::vector<std::size_t> order(inner.support.size());
            std::iota(order.begin(), order.end(), std::size_t{0});
            std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                // reversed order starting at the shared anchor: 0 first,
                // then descending
                i64 va = inner.support[a], vb = inner.support[b];
                if ((va == 0) != (vb == 0)) return va == 0;
                return va > vb;
            });
            std::vector<i64> inv(inner.support.size());
            for (std::size_t i = 0; i < order.size(); ++i) inv[order[i]] = static_cast<i64>(i);
            oriented.support.resize(order.size());
            oriented.next.resize(order.size());
            for (std::size_t i = 0; i < order.size(); ++i) {
                oriented.support[i] = inner.support[order[i]];
                oriented.next[inv[order[i]]] = inv[inner.next[order[i]]];
            }
        }
        if (!is_noncrossing_permutation(oriented)) return false;
    }
    return true;
}

std::string nested_ncp_to_string(const NestedNCP& ncp) {
    std::ostringstream os;
    os << "corners=" << ncp.corner_count << "\n";
    for (const auto& s : ncp.sigmas) os << cycles_to_string(s) << "\n";
    return os.str();
}

NestedNCP nested_ncp_from_string(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) || line.rfind("corners=", 0) != 0)
        throw std::invalid_argument("nested_ncp_from_string: missing corners header");
    NestedNCP ncp;
    ncp.corner_count = std::stoll(line.substr(8));
    bool first = true;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (first) {
            // level D: unlisted elements are fixed points of the full set
            std::vector<i64> full(ncp.corner_count);
            std::iota(full.begin(), full.end(), 0);
            ncp.sigmas.push_back(perm_from_string(line, full));
            first = false;
        } else {
            // lower levels: the listed elements define the support
            std::string tmp = line;
            for (char& ch : tmp)
                if (ch == '(' || ch == ')' || ch == ',') ch = ' ';
            std::istringstream vs(tmp);
            std::vector<i64> support;
            i64 v;
            while (vs >> v) support.push_back(v);
            std::sort(support.begin(), support.end());
            support.erase(std::unique(support.begin(), support.end()), support.end());
            ncp.sigmas.push_back(perm_from_string(line, support));
        }
    }
    if (ncp.sigmas.empty()) throw std::invalid_argument("nested_ncp_from_string: no permutations");
    return ncp;
}

}  // namespace feuille
