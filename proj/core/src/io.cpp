#include "soupfall/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace soupfall {

using nlohmann::json;

namespace {

json point_json(Point p) { return json::array({p.x, p.y}); }

Point point_from(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw parse_error(std::string(what) + ": expected [x, y]");
    return {j[0].get<double>(), j[1].get<double>()};
}

json curve_json(const Curve& c) {
    return std::visit(
        [](const auto& v) -> json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Circle>) {
                return {{"kind", "circle"},
                        {"center", point_json(v.center)},
                        {"diam", v.diam}};
            } else if constexpr (std::is_same_v<T, Stick>) {
                return {{"kind", "stick"},
                        {"a", point_json(v.a)},
                        {"b", point_json(v.b)}};
            } else if constexpr (std::is_same_v<T, PolyLoop>) {
                json pts = json::array();
                for (Point p : v.v) pts.push_back(point_json(p));
                return {{"kind", "polyloop"}, {"v", pts}};
            } else {
                return {{"kind", "lattice"},
                        {"origin", json::array({v.ox, v.oy})},
                        {"steps", v.steps},
                        {"mesh", v.mesh}};
            }
        },
        c);
}

Curve curve_from(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw parse_error("curve: missing kind");
    std::string kind = j["kind"].get<std::string>();
    Curve c;
    if (kind == "circle") {
        if (!j.contains("center") || !j.contains("diam") || !j["diam"].is_number())
            throw parse_error("circle: needs center and diam");
        c = Circle{point_from(j["center"], "circle.center"), j["diam"].get<double>()};
    } else if (kind == "stick") {
        if (!j.contains("a") || !j.contains("b"))
            throw parse_error("stick: needs a and b");
        c = Stick{point_from(j["a"], "stick.a"), point_from(j["b"], "stick.b")};
    } else if (kind == "polyloop") {
        if (!j.contains("v") || !j["v"].is_array())
            throw parse_error("polyloop: needs v");
        PolyLoop pl;
        for (const json& p : j["v"]) pl.v.push_back(point_from(p, "polyloop.v"));
        c = std::move(pl);
    } else if (kind == "lattice") {
        if (!j.contains("origin") || !j["origin"].is_array() ||
            j["origin"].size() != 2 || !j.contains("steps") ||
            !j["steps"].is_string() || !j.contains("mesh") ||
            !j["mesh"].is_number())
            throw parse_error("lattice: needs origin, steps, mesh");
        LatticeLoop ll;
        ll.ox = j["origin"][0].get<long long>();
        ll.oy = j["origin"][1].get<long long>();
        ll.steps = j["steps"].get<std::string>();
        ll.mesh = j["mesh"].get<double>();
        c = std::move(ll);
    } else {
        throw parse_error("curve: unknown kind '" + kind + "'");
    }
    try {
        validate(c);
    } catch (const invalid_curve_error& e) {
        throw parse_error(e.what());
    }
    return c;
}

const char* shape_kind_name(ShapeKind k) {
    switch (k) {
        case ShapeKind::Circle: return "circle";
        case ShapeKind::Stick: return "stick";
        case ShapeKind::DiscreteStick: return "discrete_stick";
        case ShapeKind::RwLoop: return "rw_loop";
    }
    return "circle";
}

json shape_json(const ShapeMeasure& s) {
    json j{{"kind", shape_kind_name(s.kind)}, {"mass", s.mass}};
    if (s.kind == ShapeKind::DiscreteStick) j["n"] = s.n;
    if (s.kind == ShapeKind::RwLoop) j["n_max"] = s.n_max;
    return j;
}

ShapeMeasure shape_from(const json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw parse_error("shape: missing kind");
    ShapeMeasure s;
    std::string kind = j["kind"].get<std::string>();
    if (kind == "circle")
        s.kind = ShapeKind::Circle;
    else if (kind == "stick")
        s.kind = ShapeKind::Stick;
    else if (kind == "discrete_stick")
        s.kind = ShapeKind::DiscreteStick;
    else if (kind == "rw_loop")
        s.kind = ShapeKind::RwLoop;
    else
        throw parse_error("shape: unknown kind '" + kind + "'");
    if (j.contains("mass")) s.mass = j["mass"].get<double>();
    if (j.contains("n")) s.n = j["n"].get<int>();
    if (j.contains("n_max")) s.n_max = j["n_max"].get<int>();
    return s;
}

json domain_json(const Domain& d) {
    return std::visit(
        [](const auto& v) -> json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, UnitDisk>) {
                return {{"kind", "unit_disk"}};
            } else if constexpr (std::is_same_v<T, Disk>) {
                return {{"kind", "disk"},
                        {"center", point_json(v.center)},
                        {"radius", v.radius}};
            } else if constexpr (std::is_same_v<T, Rect>) {
                return {{"kind", "rect"},
                        {"x0", v.x0}, {"y0", v.y0}, {"x1", v.x1}, {"y1", v.y1}};
            } else {
                return {{"kind", "annulus"},
                        {"center", point_json(v.center)},
                        {"r_in", v.r_in},
                        {"r_out", v.r_out}};
            }
        },
        d);
}

Domain domain_from(const json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw parse_error("domain: missing kind");
    std::string kind = j["kind"].get<std::string>();
    if (kind == "unit_disk") return UnitDisk{};
    if (kind == "disk")
        return Disk{point_from(j.at("center"), "disk.center"),
                    j.at("radius").get<double>()};
    if (kind == "rect")
        return Rect{j.at("x0").get<double>(), j.at("y0").get<double>(),
                    j.at("x1").get<double>(), j.at("y1").get<double>()};
    if (kind == "annulus")
        return Annulus{point_from(j.at("center"), "annulus.center"),
                       j.at("r_in").get<double>(), j.at("r_out").get<double>()};
    throw parse_error("domain: unknown kind '" + kind + "'");
}

json spec_json(const SoupSpec& spec) {
    return {{"c", spec.c},
            {"shape", shape_json(spec.shape)},
            {"domain", domain_json(spec.domain)},
            {"eps_min", spec.eps_min},
            {"rho_max", spec.rho_max}};
}

SoupSpec spec_from(const json& j) {
    if (!j.is_object()) throw parse_error("spec: expected object");
    SoupSpec spec;
    try {
        spec.c = j.at("c").get<double>();
        spec.shape = shape_from(j.at("shape"));
        spec.domain = domain_from(j.at("domain"));
        spec.eps_min = j.at("eps_min").get<double>();
        spec.rho_max = j.at("rho_max").get<double>();
    } catch (const json::exception& e) {
        throw parse_error(std::string("spec: ") + e.what());
    }
    return spec;
}

}  // namespace

std::string curve_to_json(const Curve& c) { return curve_json(c).dump(); }

Curve curve_from_json(const std::string& line) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::exception& e) {
        throw parse_error(std::string("curve: ") + e.what());
    }
    return curve_from(j);
}

std::string spec_to_json(const SoupSpec& spec) { return spec_json(spec).dump(); }

SoupSpec spec_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw parse_error(std::string("spec: ") + e.what());
    }
    return spec_from(j);
}

void save_soup(const Soup& soup, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("save_soup: cannot open " + path);
    json header{{"spec", spec_json(soup.spec)},
                {"seed", soup.seed},
                {"acceptance", soup.acceptance}};
    out << header.dump() << "\n";
    for (const Curve& c : soup.curves) out << curve_json(c).dump() << "\n";
    if (!out) throw std::runtime_error("save_soup: write failed for " + path);
}

Soup load_soup(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("load_soup: cannot open " + path);
    std::string line;
    size_t line_no = 0;
    Soup soup;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            if (!have_header) {
                json h = json::parse(line);
                soup.spec = spec_from(h.at("spec"));
                soup.seed = h.at("seed").get<uint64_t>();
                if (h.contains("acceptance"))
                    soup.acceptance = h["acceptance"].get<double>();
                have_header = true;
            } else {
                soup.curves.push_back(curve_from_json(line));
            }
        } catch (const parse_error& e) {
            throw parse_error("line " + std::to_string(line_no) + ": " + e.what());
        } catch (const json::exception& e) {
            throw parse_error("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (!have_header) throw parse_error("load_soup: missing header line");
    return soup;
}

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::string>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_csv: cannot open " + path);
    out << header << "\n";
    for (const std::string& r : rows) out << r << "\n";
    if (!out) throw std::runtime_error("write_csv: write failed for " + path);
}

std::string content_hash_hex(const std::string& bytes) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string file_hash_hex(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("file_hash_hex: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return content_hash_hex(ss.str());
}

bool structurally_equal(const Curve& a, const Curve& b) {
    return curve_json(a) == curve_json(b);
}

bool structurally_equal(const Soup& a, const Soup& b) {
    if (a.seed != b.seed || a.curves.size() != b.curves.size()) return false;
    if (spec_json(a.spec) != spec_json(b.spec)) return false;
    for (size_t i = 0; i < a.curves.size(); ++i)
        if (!structurally_equal(a.curves[i], b.curves[i])) return false;
    return true;
}

}  // namespace soupfall
