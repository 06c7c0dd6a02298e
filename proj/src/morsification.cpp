#include "gsflow/morsification.hpp"

#include <map>
#include <numeric>
#include <tuple>

namespace gsflow {

std::optional<std::size_t> MorsifiedFlow::primary(const std::string& singularity, int k, int index) const {
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& p = points[i];
        if (!p.auxiliary && p.parent == singularity && p.k == k && p.gen_index == index) return i;
    }
    return std::nullopt;
}

std::optional<std::size_t> MorsifiedFlow::partner(std::size_t primary_point) const {
    const auto& p = points.at(primary_point);
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& q = points[i];
        if (i != primary_point && q.auxiliary && q.parent == p.parent && q.index == p.index && q.k == p.k &&
            q.gen_index == p.gen_index) {
            return i;
        }
    }
    return std::nullopt;
}

namespace {

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

private:
    std::vector<std::size_t> parent_;
};

}  // namespace

MorsifiedFlow morsify(const FlowSpec& input) {
    const FlowSpec f = normalize_flow(input);
    MorsifiedFlow m;

    for (const auto& g : f.generator_order) {
        m.points.push_back({g.label, g.k, g.singularity, g.k, g.index, false});
    }
    std::map<std::tuple<std::string, int, int>, std::size_t> primary_of;
    for (std::size_t i = 0; i < m.points.size(); ++i) {
        const auto& p = m.points[i];
        primary_of[{p.parent, p.k, p.gen_index}] = i;
    }
    std::map<std::string, std::size_t> cone_partner;

    for (const auto& s : f.singularities) {
        if (s.family != Family::Cone || s.nature == Nature::composite) continue;
        if (s.nature == Nature::s) {
            std::size_t main = primary_of.at({s.id, 1, 1});
            MorsePoint aux = m.points[main];
            aux.name += "'";
            aux.auxiliary = true;
            m.points.push_back(aux);
            cone_partner[s.id] = m.points.size() - 1;
            continue;
        }
        // n-sheet cone attractor/repeller: sphere with n holes, one extremum plus n-1 saddles.
        int k = s.nature == Nature::a ? 0 : 2;
        std::size_t main = primary_of.at({s.id, k, 1});
        std::string base = m.points[main].name;
        for (int j = 1; j < s.sheets; ++j) {
            MorsePoint aux{base + "~s" + std::to_string(j), 1, s.id, k, 1, true};
            m.points.push_back(aux);
            std::size_t saddle = m.points.size() - 1;
            for (int sign : {1, -1}) {
                if (k == 0) {
                    m.orbits.push_back({saddle, main, sign, f.orbits.size()});
                } else {
                    m.orbits.push_back({main, saddle, sign, f.orbits.size()});
                }
            }
        }
    }

    for (std::size_t oi = 0; oi < f.orbits.size(); ++oi) {
        const auto& o = f.orbits[oi];
        const Singularity& x = *f.find(o.from);
        const Singularity& y = *f.find(o.to);
        const bool cone_dup = !o.rewired && (is_cone_saddle(x) || is_cone_saddle(y));
        for (std::size_t si = 0; si < o.sheets.size(); ++si) {
            const Sheet& sh = o.sheets[si];
            if (sh.from.k - sh.to.k != 1) continue;
            std::size_t a = primary_of.at({o.from, sh.from.k, sh.from.index});
            std::size_t b = primary_of.at({o.to, sh.to.k, sh.to.index});
            if (cone_dup && si == 1) {
                if (is_cone_saddle(x)) a = cone_partner.at(x.id);
                if (is_cone_saddle(y)) b = cone_partner.at(y.id);
            }
            if (o.rewired) {
                int count = sh.sign < 0 ? -sh.sign : sh.sign;
                for (int c = 0; c < count; ++c) m.orbits.push_back({a, b, sh.sign < 0 ? -1 : 1, oi});
            } else {
                m.orbits.push_back({a, b, sh.sign, oi});
            }
        }
    }

    UnionFind uf(m.points.size());
    for (const auto& o : m.orbits) uf.unite(o.from, o.to);
    std::map<std::size_t, int> ids;
    m.component_map.resize(m.points.size());
    for (std::size_t i = 0; i < m.points.size(); ++i) {
        auto [it, inserted] = ids.emplace(uf.find(i), static_cast<int>(ids.size()));
        m.component_map[i] = it->second;
    }
    m.component_count = static_cast<int>(ids.size());
    return m;
}

IntMatrix morse_boundary(const MorsifiedFlow& m) {
    IntMatrix out(m.points.size(), m.points.size());
    for (const auto& o : m.orbits) out.add_to(o.to, o.from, o.sign);
    return out;
}

IntMatrix morse_boundary_on_generators(const MorsifiedFlow& m, const std::vector<Generator>& order) {
    IntMatrix full = morse_boundary(m);
    std::vector<std::size_t> prim;
    std::vector<std::optional<std::size_t>> part;
    for (const auto& g : order) {
        auto p = m.primary(g.singularity, g.k, g.index);
        if (!p) throw Error(ErrorKind::Structural, "no Morse point for generator " + g.label);
        prim.push_back(*p);
        part.push_back(m.points[*p].index == 1 ? m.partner(*p) : std::nullopt);
    }
    IntMatrix out(order.size(), order.size());
    for (std::size_t j = 0; j < order.size(); ++j) {
        for (std::size_t i = 0; i < order.size(); ++i) {
            Integer v = full.at(prim[i], prim[j]);
            if (part[j]) {
                Integer w = full.at(prim[i], *part[j]);
                v = v == w ? v : Integer(0);
            } else if (part[i]) {
                Integer w = full.at(*part[i], prim[j]);
                v = v == w ? v : Integer(0);
            }
            out.set(i, j, v);
        }
    }
    return out;
}

std::vector<int> transfer_sign(const OrbitSpec& o, const FlowSpec& f) {
    const Singularity* x = f.find(o.from);
    const Singularity* y = f.find(o.to);
    if (!x || !y) throw Error(ErrorKind::Validation, "orbit endpoint not found");
    std::vector<int> signs;
    for (const auto& sh : o.sheets) signs.push_back(sh.sign);
    if (o.rewired || !o.singular_part) {
        if (signs.size() != 1) throw Error(ErrorKind::Validation, "regular-part orbit needs exactly one sheet sign");
        return signs;
    }
    if (is_cone_saddle(*x) || is_cone_saddle(*y)) {
        if (signs.size() != 2) throw Error(ErrorKind::Validation, "cone-duplicated orbit needs two sheet signs");
        return {signs[0] == signs[1] ? signs[0] : 0};
    }
    switch (x->family) {
        case Family::Whitney:
            if (signs.size() != 2) throw Error(ErrorKind::Validation, "Whitney singular orbit needs two sheet signs");
            return {0};
        case Family::DoubleCrossing:
            if (signs.size() != 2) throw Error(ErrorKind::Validation, "double-crossing fold orbit needs two sheet signs");
            return signs;
        case Family::TripleCrossing:
            if (signs.size() != 3) throw Error(ErrorKind::Validation, "triple-crossing fold orbit needs three sheet signs");
            return signs;
        default:
            throw Error(ErrorKind::Validation, "singular-part orbit on a point without singular curves");
    }
}

Integer orbit_contribution(const OrbitSpec& o, const FlowSpec& f, const Generator& x, const Generator& y) {
    if (o.from != x.singularity || o.to != y.singularity) return 0;
    auto matches = [&](const Sheet& sh) {
        return sh.from.k == x.k && sh.from.index == x.index && sh.to.k == y.k && sh.to.index == y.index;
    };
    const Singularity& sx = *f.find(o.from);
    const Singularity& sy = *f.find(o.to);
    if (!o.rewired && o.singular_part && (is_cone_saddle(sx) || is_cone_saddle(sy))) {
        if (!matches(o.sheets[0])) return 0;
        return transfer_sign(o, f).front();
    }
    if (!o.rewired && o.singular_part && sx.family == Family::Whitney) return 0;
    Integer total = 0;
    for (const auto& sh : o.sheets) {
        if (matches(sh)) total += sh.sign;
    }
    return total;
}

Integer intersection_number(const FlowSpec& input, const Generator& x, const Generator& y) {
    if (x.k - y.k != 1) throw Error(ErrorKind::Range, "intersection number needs generators of consecutive grades");
    const FlowSpec f = normalize_flow(input);
    Integer total = 0;
    for (const auto& o : f.orbits) total += orbit_contribution(o, f, x, y);
    return total;
}

}  // namespace gsflow
