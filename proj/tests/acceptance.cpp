#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"
#include "test_support.hpp"

using namespace gsflow;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [" << what << "]";
        }
    }
};

using Coord = std::tuple<std::size_t, std::size_t, int>;
using Pair = std::set<std::string>;

std::string show(const std::vector<Coord>& v) {
    std::ostringstream os;
    for (const auto& [r, c, k] : v) os << "(" << r << "," << c << ")@" << k << " ";
    return os.str();
}

std::vector<Coord> primary_coords(const SweepTrace& t) {
    std::vector<Coord> out;
    for (const auto& p : t.primaries()) out.emplace_back(p.row, p.col, p.round);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Coord> sorted(std::vector<Coord> v) {
    std::sort(v.begin(), v.end());
    return v;
}

// Schedule as rounds of unordered label pairs.
std::map<int, std::set<Pair>> schedule_by_round(const FlowFamily& fam) {
    std::map<int, std::set<Pair>> out;
    for (const auto& s : fam.schedule()) out[s.round].insert(Pair{pair_column_label(s), pair_row_label(s)});
    return out;
}

std::vector<Pair> schedule_pairs(const FlowFamily& fam) {
    std::vector<Pair> out;
    for (const auto& s : fam.schedule()) out.push_back(Pair{pair_column_label(s), pair_row_label(s)});
    return out;
}

std::string show(const std::vector<Pair>& v) {
    std::ostringstream os;
    for (const auto& p : v) {
        os << "(";
        bool first = true;
        for (const auto& s : p) {
            os << (first ? "" : ",") << s;
            first = false;
        }
        os << ") ";
    }
    return os.str();
}

// Compares a schedule against pairs listed in increasing round order, ignoring order inside a round.
bool same_schedule(const FlowFamily& fam, const std::vector<Pair>& expected) {
    std::vector<Pair> got;
    for (const auto& [round, pairs] : schedule_by_round(fam)) {
        std::vector<Pair> block(pairs.begin(), pairs.end());
        std::vector<Pair> want(expected.begin() + static_cast<long>(got.size()),
                               expected.begin() + static_cast<long>(std::min(expected.size(), got.size() + block.size())));
        if (std::set<Pair>(want.begin(), want.end()) != pairs) return false;
        got.insert(got.end(), want.begin(), want.end());
    }
    return got.size() == expected.size();
}

std::map<std::string, Integer> chain(const GSComplex& c, const std::string& label) {
    auto labels = c.labels();
    std::map<std::string, Integer> out;
    for (std::size_t j = 0; j < labels.size(); ++j) {
        if (labels[j] != label) continue;
        for (const auto& [i, v] : c.boundary.column(j)) out[labels[i]] = v;
    }
    return out;
}

bool free_homology(const std::vector<HomologyGroup>& h, std::vector<std::size_t> betti) {
    if (h.size() != betti.size()) return false;
    for (std::size_t k = 0; k < h.size(); ++k)
        if (h[k].betti != betti[k] || !h[k].torsion.empty()) return false;
    return true;
}

Outcome criterion1() {
    Outcome o;
    auto c = testsupport::fixture_complex("pinched_torus");
    using C = std::map<std::string, Integer>;
    o.require(chain(c, "x1") == C{{"y1", -1}, {"y2", 1}, {"y3", 1}}, "d(x1)");
    o.require(chain(c, "x2") == C{{"y1", 1}, {"y2", -1}, {"y3", -1}}, "d(x2)");
    o.require(chain(c, "y1") == C{{"z1", 1}, {"z2", -1}}, "d(y1)");
    o.require(chain(c, "y2") == C{{"z1", 1}, {"z2", -1}}, "d(y2)");
    o.require(chain(c, "y3").empty(), "d(y3)");
    o.require(chain(c, "z1").empty() && chain(c, "z2").empty(), "d(z)");
    o.require(check_boundary_squared(c), "boundary squared");
    o.require(free_homology(complex_homology(c), {1, 1, 1}), "homology (Z,Z,Z)");
    return o;
}

Outcome criterion_sweep(const std::string& name, const std::vector<Coord>& pivots, const std::vector<Pair>& schedule,
                        std::size_t final_generators) {
    Outcome o;
    FlowFamily fam = flow_family(testsupport::fixture(name));
    auto got = primary_coords(fam.sweep);
    if (got != sorted(pivots)) {
        o.require(false, "pivots got " + show(got) + "expected " + show(sorted(pivots)));
        std::set<std::pair<std::size_t, std::size_t>> a, b;
        for (const auto& [r, c, k] : got) a.emplace(r, c);
        for (const auto& [r, c, k] : pivots) b.emplace(r, c);
        o.detail << (a == b ? " [pivot positions agree, rounds differ]" : " [pivot positions differ]");
    }
    if (!same_schedule(fam, schedule)) {
        o.require(false, "schedule got " + show(schedule_pairs(fam)) + "expected " + show(schedule));
    }
    if (final_generators > 0) {
        o.require(fam.final_flow().generator_order.size() == final_generators,
                  "final flow has " + std::to_string(fam.final_flow().generator_order.size()) + " generators");
    }
    return o;
}

Outcome criterion5() {
    Outcome o;
    for (const auto& name : testsupport::sweep_fixtures()) {
        auto c = testsupport::fixture_complex(name);
        o.require(primary_pivot_equality(sweep(c.boundary, c.grading()), rca_sweep(c.boundary)), name);
    }
    std::mt19937 rng(20240611);
    int accepted = 0, rejected = 0, attempts = 0;
    std::size_t largest = 0;
    while (accepted < 200 && attempts < 2000) {
        ++attempts;
        auto rc = testsupport::random_complex(rng, 20);
        largest = std::max(largest, rc.boundary.cols());
        SweepTrace s;
        RcaTrace r;
        try {
            s = sweep(rc.boundary, rc.grading);
            r = rca_sweep(rc.boundary);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::NonUnimodular) throw;
            ++rejected;
            continue;
        }
        ++accepted;
        if (!primary_pivot_equality(s, r)) o.require(false, "random complex #" + std::to_string(attempts));
    }
    o.require(accepted >= 100, "only " + std::to_string(accepted) + " random complexes completed");
    o.require(largest <= 20, "random complex too large");
    o.detail << " random complexes: " << accepted << " compared, " << rejected << " rejected (non-unimodular)";
    return o;
}

Outcome criterion6() {
    Outcome o;
    std::size_t count = 0;
    for (const auto& name : testsupport::all_flow_fixtures()) {
        auto c = testsupport::fixture_complex(name);
        for (const auto& p : sweep(c.boundary, c.grading()).primaries()) {
            ++count;
            o.require(p.value == 1 || p.value == -1, name + " pivot (" + std::to_string(p.row) + "," + std::to_string(p.col) + ")");
        }
    }
    o.detail << " " << count << " primary pivots";
    return o;
}

Outcome criterion7() {
    Outcome o;
    for (const char* name : {"cone_example", "pinched_torus"}) {
        FlowSpec f = normalize_flow(testsupport::fixture(name));
        o.require(check_saddle_cone_incidence(build_complex(f), f), name);
    }
    std::mt19937 rng(4242);
    int flows = 0, cone_saddles = 0;
    for (int trial = 0; trial < 200; ++trial) {
        FlowSpec f = normalize_flow(testsupport::random_cone_flow(rng));
        auto c = build_complex(f);
        ++flows;
        for (const auto& s : f.singularities) cone_saddles += is_cone_saddle(s) ? 1 : 0;
        if (!check_saddle_cone_incidence(c, f)) o.require(false, "random cone flow #" + std::to_string(trial));
    }
    // The check itself must reject a saddle with four incidences.
    IntMatrix four = IntMatrix::from_rows(
        {{0, 0, 1, 0, 0}, {0, 0, -1, 0, 0}, {0, 0, 0, 1, 1}, {0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}});
    o.require(!check_saddle_cone_incidence(four, {2}), "four-incidence matrix accepted");
    o.detail << " " << flows << " random flows, " << cone_saddles << " cone saddles";
    return o;
}

Outcome criterion8() {
    Outcome o;
    for (const auto& name : testsupport::all_flow_fixtures()) {
        auto c = testsupport::fixture_complex(name);
        auto t = sweep(c.boundary, c.grading());
        auto h = complex_homology(c);
        auto s = surviving_positions(t);
        for (std::size_t k = 0; k < 3; ++k) {
            o.require(h[k].torsion.empty(), name + " torsion");
            o.require(s[k] == h[k].betti, name + " grade " + std::to_string(k));
        }
        o.require(e_infinity_check(t, c), name);
    }
    return o;
}

Outcome criterion9() {
    Outcome o;
    std::size_t stages = 0;
    for (const auto& name : testsupport::all_flow_fixtures()) {
        FlowFamily fam = flow_family(testsupport::fixture(name));
        auto h0 = complex_homology(build_complex(fam.stages.front().flow));
        for (const auto& st : fam.stages) {
            ++stages;
            o.require(complex_homology(build_complex(st.flow)) == h0, name + " round " + std::to_string(st.round));
        }
        // Single-step replay through cancel_pair with the original labels.
        FlowSpec cur = normalize_flow(testsupport::fixture(name));
        for (const auto& step : fam.schedule()) {
            cur = cancel_pair(cur, step.saddle, step.partner).flow;
            o.require(complex_homology(build_complex(cur)) == h0, name + " step " + step.saddle);
        }
    }
    o.detail << " " << stages << " stages";
    return o;
}

Outcome criterion10() {
    Outcome o;
    auto participants_sum = [](const CancellationStep& s) {
        int m = 0;
        for (const auto& p : s.participants) m += p.type_number;
        return m;
    };
    auto sorted_types = [](const CancellationStep& s) {
        std::vector<int> v;
        for (const auto& p : s.participants) v.push_back(p.type_number);
        std::sort(v.begin(), v.end());
        return v;
    };
    auto cone = cancel_pair(testsupport::fixture("intro_cone_merge"), "y2", "z2").step;
    o.require(cone.merged.family == Family::Cone && cone.merged.nature == Nature::a && cone.merged.sheets == 3,
              "intro cone: merged point is not a 3-sheet cone attractor");
    o.require(sorted_types(cone) == std::vector<int>{0, 1, 1} && participants_sum(cone) == 2 && cone.merged_type_number == 2,
              "intro cone type numbers");
    auto dc = cancel_pair(testsupport::fixture("double_crossing_merge"), "y", "z2^e").step;
    o.require(dc.merged.family == Family::DoubleCrossing && dc.merged.nature == Nature::a_n && dc.merged.sheets == 3,
              "double crossing: merged point is not a 3-sheet attractor");
    o.require(sorted_types(dc) == std::vector<int>{0, 1, 1} && participants_sum(dc) == 2 && dc.merged_type_number == 2,
              "double crossing type numbers");
    for (const auto& name : testsupport::all_flow_fixtures()) {
        FlowFamily fam = flow_family(testsupport::fixture(name));
        const int m0 = testsupport::total_type_number(fam.stages.front().flow);
        for (const auto& st : fam.stages) {
            o.require(testsupport::total_type_number(st.flow) == m0, name + " round " + std::to_string(st.round));
            for (const auto& s : st.steps) o.require(s.merged_type_number == participants_sum(s), name + " merge " + s.merged.id);
        }
    }
    return o;
}

Outcome criterion11() {
    Outcome o;
    std::ifstream in(testsupport::fixture_path("ph_table"));
    auto doc = nlohmann::json::parse(in);
    std::set<std::string> families;
    std::size_t rows = 0;
    for (const auto& row : doc.at("rows")) {
        BlockData b;
        b.exiting = row.at("exiting").get<std::vector<long>>();
        b.entering = row.at("entering").get<std::vector<long>>();
        b.conley_ranks = row.at("conley_ranks").get<std::array<long, 3>>();
        b.conley_ranks_dual = row.at("conley_ranks_dual").get<std::array<long, 3>>();
        ++rows;
        families.insert(row.at("family").get<std::string>());
        o.require(poincare_hopf_check(b), row.at("family").get<std::string>() + "/" + row.at("nature").get<std::string>() +
                                              " " + row.at("weights").get<std::string>());
    }
    o.require(families.size() == 5, "not every family is covered");
    o.detail << " " << rows << " rows over " << families.size() << " families";
    return o;
}

Outcome criterion12() {
    Outcome o;
    for (const auto& name : testsupport::all_flow_fixtures()) {
        PipelineOptions opt;
        opt.trace = true;
        std::string first = run_pipeline(testsupport::fixture(name), opt).text;
        for (int i = 0; i < 3; ++i) o.require(run_pipeline(testsupport::fixture(name), opt).text == first, name);
        FlowSpec f = testsupport::fixture(name);
        o.require(serialize_flow(f) == serialize_flow(parse_flow(serialize_flow(f))), name + " serialization");
    }
    return o;
}

}  // namespace

int main() {
    std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"pinched torus boundary, square and homology", criterion1},
        {"cone example pivots and schedule",
         [] {
             return criterion_sweep("cone_example", {{8, 9, 1}, {7, 10, 2}, {2, 5, 2}},
                                    {{"x1", "y4"}, {"x2", "y3"}, {"y1", "z2"}}, 0);
         }},
        {"Whitney example pivots and schedule",
         [] {
             return criterion_sweep("whitney_example", {{4, 6, 2}, {2, 5, 3}, {3, 7, 4}},
                                    {{"x1", "y2"}, {"y3", "z2"}, {"x2", "y1"}}, 0);
         }},
        {"double crossing example pivots, schedule and final size",
         [] {
             return criterion_sweep("double_crossing_example", {{7, 10, 3}, {8, 13, 5}, {3, 9, 6}, {5, 11, 6}},
                                    {{"y2^e", "x1"}, {"y2^i", "x4"}, {"z2^e", "y3"}, {"y1^e", "x̄3"}}, 6);
         }},
        {"primary pivots agree between the two sweeps", criterion5},
        {"primary pivots are +-1", criterion6},
        {"saddle cone incidence", criterion7},
        {"E-infinity matches homology", criterion8},
        {"homology is preserved by every cancellation", criterion9},
        {"type numbers are inherited", criterion10},
        {"Poincare-Hopf table rows", criterion11},
        {"reports are byte-identical across runs", criterion12},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << " [exception: " << e.what() << "]";
        }
        double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        if (!o.pass) ++failures;
        std::printf("criterion %2zu %s: %s (%.0f ms)%s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(), ms,
                    o.detail.str().c_str());
    }
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
