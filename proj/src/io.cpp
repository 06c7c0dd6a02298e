#include "gsflow/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "gsflow/error.hpp"

namespace gsflow {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw Error(ErrorKind::Validation, where + ": " + what);
}

const json& field(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object()) fail(where, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(where, std::string("missing field '") + key + "'");
    return *it;
}

std::string get_string(const json& obj, const char* key, const std::string& where) {
    const json& v = field(obj, key, where);
    if (!v.is_string()) fail(where + "." + key, "expected a string");
    return v.get<std::string>();
}

int get_int(const json& v, const std::string& where) {
    if (!v.is_number_integer()) fail(where, "expected an integer");
    return v.get<int>();
}

bool get_bool(const json& obj, const char* key, bool fallback, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    if (!it->is_boolean()) fail(where + "." + key, "expected true or false");
    return it->get<bool>();
}

GenRef parse_ref(const json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 2) fail(where, "expected [grade, index]");
    return {get_int(v[0], where + "[0]"), get_int(v[1], where + "[1]")};
}

Singularity parse_singularity(const json& j, const std::string& where) {
    Singularity s;
    s.id = get_string(j, "id", where);
    s.family = parse_family(get_string(j, "family", where));
    std::string nature = get_string(j, "nature", where);
    s.nature = parse_nature(nature);
    if (j.contains("sheets")) s.sheets = get_int(j["sheets"], where + ".sheets");
    if ((s.nature == Nature::a_n || s.nature == Nature::r_n) && nature.size() > 2 && nature[1] == '^' && nature != "a^n" &&
        nature != "r^n") {
        int n = std::stoi(nature.substr(2));
        if (j.contains("sheets") && s.sheets != n) fail(where, "nature " + nature + " disagrees with sheets");
        s.sheets = n;
    }
    if (s.nature == Nature::composite) {
        const json& eta = field(j, "eta", where);
        if (!eta.is_array() || eta.size() != 3) fail(where + ".eta", "expected three nature numbers");
        for (std::size_t k = 0; k < 3; ++k) s.composite_eta[k] = get_int(eta[k], where + ".eta");
        s.composite_type = get_int(field(j, "type_number", where), where + ".type_number");
    }
    return s;
}

OrbitSpec parse_orbit(const json& j, const std::string& where) {
    OrbitSpec o;
    if (j.contains("label")) o.label = get_string(j, "label", where);
    o.from = get_string(j, "from", where);
    o.to = get_string(j, "to", where);
    o.singular_part = get_bool(j, "singular_part", false, where);
    o.rewired = get_bool(j, "rewired", false, where);
    int k = -1;
    if (j.contains("k")) k = get_int(j["k"], where + ".k");
    if (j.contains("signs") && j.contains("sheets")) fail(where, "give either 'signs' or 'sheets', not both");
    if (j.contains("signs")) {
        const json& signs = j["signs"];
        if (!signs.is_array()) fail(where + ".signs", "expected a list");
        for (std::size_t i = 0; i < signs.size(); ++i) {
            Sheet sh;
            sh.from.k = k;
            sh.sign = get_int(signs[i], where + ".signs[" + std::to_string(i) + "]");
            o.sheets.push_back(sh);
        }
    } else {
        const json& sheets = field(j, "sheets", where);
        if (!sheets.is_array()) fail(where + ".sheets", "expected a list");
        for (std::size_t i = 0; i < sheets.size(); ++i) {
            const std::string w = where + ".sheets[" + std::to_string(i) + "]";
            Sheet sh;
            sh.from.k = k;
            sh.sign = get_int(field(sheets[i], "sign", w), w + ".sign");
            if (sheets[i].contains("from")) sh.from = parse_ref(sheets[i]["from"], w + ".from");
            if (sheets[i].contains("to")) sh.to = parse_ref(sheets[i]["to"], w + ".to");
            o.sheets.push_back(sh);
        }
    }
    return o;
}

}  // namespace

FlowSpec parse_flow(const std::string& document) {
    json doc;
    try {
        doc = json::parse(document);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::Validation, std::string("document: ") + e.what());
    }
    if (!doc.is_object()) fail("document", "expected a JSON object");
    if (doc.contains("schema") && get_int(doc["schema"], "schema") != kSchemaVersion) {
        fail("schema", "unsupported schema version");
    }
    FlowSpec f;
    f.name = doc.contains("name") ? get_string(doc, "name", "document") : "";
    f.surface_orientable = get_bool(doc, "surface_orientable", true, "document");
    const json& sings = field(doc, "singularities", "document");
    if (!sings.is_array()) fail("singularities", "expected a list");
    for (std::size_t i = 0; i < sings.size(); ++i) {
        f.singularities.push_back(parse_singularity(sings[i], "singularities[" + std::to_string(i) + "]"));
    }
    if (doc.contains("orbits")) {
        const json& orbits = doc["orbits"];
        if (!orbits.is_array()) fail("orbits", "expected a list");
        for (std::size_t i = 0; i < orbits.size(); ++i) {
            f.orbits.push_back(parse_orbit(orbits[i], "orbits[" + std::to_string(i) + "]"));
        }
    }
    if (doc.contains("generator_order")) {
        const json& order = doc["generator_order"];
        if (!order.is_array()) fail("generator_order", "expected a list");
        for (std::size_t i = 0; i < order.size(); ++i) {
            const std::string w = "generator_order[" + std::to_string(i) + "]";
            Generator g;
            g.singularity = get_string(order[i], "singularity", w);
            g.k = get_int(field(order[i], "k", w), w + ".k");
            g.index = get_int(field(order[i], "index", w), w + ".index");
            if (order[i].contains("label")) g.label = get_string(order[i], "label", w);
            f.generator_order.push_back(g);
        }
    }
    return f;
}

std::string serialize_flow(const FlowSpec& input) {
    const FlowSpec f = normalize_flow(input);
    json doc = json::object();
    doc["schema"] = kSchemaVersion;
    doc["name"] = f.name;
    doc["surface_orientable"] = f.surface_orientable;
    json sings = json::array();
    for (const auto& s : f.singularities) {
        json j = {{"id", s.id}, {"family", family_name(s.family)}, {"nature", nature_name(s.nature)}, {"sheets", s.sheets}};
        if (s.nature == Nature::composite) {
            j["eta"] = {s.composite_eta[0], s.composite_eta[1], s.composite_eta[2]};
            j["type_number"] = s.composite_type;
        }
        sings.push_back(j);
    }
    doc["singularities"] = sings;
    json orbits = json::array();
    for (const auto& o : f.orbits) {
        json j = json::object();
        if (!o.label.empty()) j["label"] = o.label;
        j["from"] = o.from;
        j["to"] = o.to;
        j["singular_part"] = o.singular_part;
        if (o.rewired) j["rewired"] = true;
        json sheets = json::array();
        for (const auto& sh : o.sheets) {
            sheets.push_back({{"from", {sh.from.k, sh.from.index}}, {"to", {sh.to.k, sh.to.index}}, {"sign", sh.sign}});
        }
        j["sheets"] = sheets;
        orbits.push_back(j);
    }
    doc["orbits"] = orbits;
    json order = json::array();
    for (const auto& g : f.generator_order) {
        order.push_back({{"singularity", g.singularity}, {"k", g.k}, {"index", g.index}, {"label", g.label}});
    }
    doc["generator_order"] = order;
    return doc.dump(2) + "\n";
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw Error(ErrorKind::Io, "cannot read '" + path + "'");
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, "cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw Error(ErrorKind::Io, "cannot write '" + path + "'");
}

FlowSpec load_flow(const std::string& path) { return parse_flow(read_text_file(path)); }

}  // namespace gsflow
