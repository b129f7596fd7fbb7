#include "harmext/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <sstream>

#include "harmext/csvio.hpp"
#include "harmext/errors.hpp"

namespace harmext {

using nlohmann::json;

const char* to_string(Stage s) {
    switch (s) {
        case Stage::Compat:
            return "compat";
        case Stage::Analyze:
            return "analyze";
        case Stage::Hilbert:
            return "hilbert";
        default:
            return "extend";
    }
}

namespace {

[[noreturn]] void bad(const std::string& msg) { throw ConfigError(msg); }

const json& need(const json& j, const char* key) {
    if (!j.contains(key)) bad(std::string("missing config field: ") + key);
    return j.at(key);
}

double num(const json& j, const std::string& what) {
    if (!j.is_number()) bad(what + " must be a number");
    return j.get<double>();
}

cplx complex_field(const json& j, const std::string& what) {
    if (!j.is_object() || !j.contains("re") || !j.contains("im"))
        bad(what + " must be an object with re and im");
    return {num(j.at("re"), what + ".re"), num(j.at("im"), what + ".im")};
}

CurveModel parse_curve(const json& j) {
    const std::string kind = need(j, "kind").get<std::string>();
    if (kind == "closed_fourier") {
        const json& coeffs = need(j, "coeffs");
        if (!coeffs.is_array() || coeffs.empty()) bad("curve.coeffs must be a non-empty array");
        int kmin = 0, kmax = 0;
        bool first = true;
        for (const json& e : coeffs) {
            const int k = int(num(need(e, "k"), "curve coeff k"));
            kmin = first ? k : std::min(kmin, k);
            kmax = first ? k : std::max(kmax, k);
            first = false;
        }
        std::vector<cplx> dense(std::size_t(kmax - kmin + 1), cplx(0.0));
        for (const json& e : coeffs) {
            const int k = int(num(e.at("k"), "curve coeff k"));
            dense[std::size_t(k - kmin)] += complex_field(e, "curve coefficient");
        }
        try {
            return CurveModel::closed_fourier(kmin, std::move(dense));
        } catch (const Error& err) {
            bad(std::string("invalid closed curve: ") + err.what());
        }
    }
    if (kind == "open_polynomial") {
        std::vector<double> xc, yc;
        for (const json& v : need(j, "x_coeffs")) xc.push_back(num(v, "x_coeffs entry"));
        for (const json& v : need(j, "y_coeffs")) yc.push_back(num(v, "y_coeffs entry"));
        const json& range = need(j, "t_range");
        if (!range.is_array() || range.size() != 2) bad("curve.t_range must be [lo, hi]");
        const std::string side = j.value("exterior", "left");
        if (side != "left" && side != "right") bad("curve.exterior must be left or right");
        try {
            return CurveModel::open_polynomial(xc, yc, num(range.at(0), "t_range lo"),
                                               num(range.at(1), "t_range hi"), side == "left");
        } catch (const Error& err) {
            bad(std::string("invalid open curve: ") + err.what());
        }
    }
    bad("curve.kind must be closed_fourier or open_polynomial");
}

ScalarData parse_scalar(const json& j, const std::string& what) {
    const std::string type = need(j, "type").get<std::string>();
    if (type == "const") {
        const double v = num(need(j, "value"), what + ".value");
        return ScalarData::from_trig(TrigPoly::constant(v));
    }
    if (type == "trig") {
        const json& coeffs = need(j, "coeffs");
        int kmin = 0, kmax = 0;
        bool first = true;
        for (const json& e : coeffs) {
            const int k = int(num(need(e, "k"), what + " coeff k"));
            kmin = first ? k : std::min(kmin, k);
            kmax = first ? k : std::max(kmax, k);
            first = false;
        }
        if (first) bad(what + ".coeffs must be non-empty");
        TrigPoly p{kmin, std::vector<cplx>(std::size_t(kmax - kmin + 1), cplx(0.0))};
        for (const json& e : coeffs)
            p.coeffs[std::size_t(int(num(e.at("k"), "k")) - kmin)] +=
                complex_field(e, what + " coefficient");
        return ScalarData::from_trig(std::move(p));
    }
    if (type == "poly") {
        Poly p;
        for (const json& v : need(j, "coeffs")) p.coeffs.push_back(num(v, what + " coeff"));
        if (p.coeffs.empty()) p.coeffs.push_back(0.0);
        return ScalarData::from_poly(std::move(p));
    }
    if (type == "rational") {
        RationalFn r;
        for (const json& v : need(j, "num")) r.num.coeffs.push_back(num(v, what + ".num"));
        for (const json& v : need(j, "den")) r.den.coeffs.push_back(num(v, what + ".den"));
        if (r.num.coeffs.empty() || r.den.coeffs.empty()) bad(what + " rational needs num and den");
        return ScalarData::from_rational(std::move(r));
    }
    bad(what + ".type must be const, trig, poly, or rational");
}

Stage parse_stage(const std::string& s) {
    if (s == "compat") return Stage::Compat;
    if (s == "analyze") return Stage::Analyze;
    if (s == "hilbert") return Stage::Hilbert;
    if (s == "extend") return Stage::Extend;
    bad("unknown output stage: " + s);
}

}  // namespace

JobConfig config_from_json(const json& j, const std::filesystem::path& base_dir) {
    if (!j.is_object()) bad("config root must be an object");
    CurveModel curve = parse_curve(need(j, "curve"));

    const json& dj = need(j, "data");
    Knobs knobs;
    if (j.contains("knobs")) {
        const json& k = j.at("knobs");
        knobs.order = int(k.value("order", double(knobs.order)));
        knobs.grid_m = int(k.value("grid_m", double(knobs.grid_m)));
        knobs.base_lattice = int(k.value("base_lattice", double(knobs.base_lattice)));
        knobs.profile_grid = int(k.value("profile_grid", double(knobs.profile_grid)));
        knobs.extend_order = int(k.value("extend_order", double(knobs.extend_order)));
    }
    if (knobs.order < 8 || knobs.grid_m < 4 || knobs.grid_m % 2 != 0 || knobs.base_lattice < 4 ||
        knobs.profile_grid < 8 || knobs.extend_order < 4)
        bad("knobs out of range (order >= 8, even grid_m >= 4, base_lattice >= 4, "
            "profile_grid >= 8, extend_order >= 4)");

    std::unique_ptr<BoundaryData> data;
    if (dj.contains("grid_csv")) {
        const std::filesystem::path p = base_dir / dj.at("grid_csv").get<std::string>();
        CsvTable table;
        try {
            table = read_csv(p);
        } catch (const Error& err) {
            bad(std::string("cannot read data grid: ") + err.what());
        }
        if (table.header != std::vector<std::string>{"t", "f", "h"})
            bad("data grid CSV must have header t,f,h");
        std::vector<double> f, h;
        for (const auto& row : table.rows) {
            f.push_back(row[1]);
            h.push_back(row[2]);
        }
        try {
            data = std::make_unique<BoundaryData>(
                BoundaryData::from_grid(curve, std::move(f), std::move(h),
                                        dj.value("fit_coefficients", true)));
        } catch (const Error& err) {
            bad(std::string("invalid data grid: ") + err.what());
        }
    } else {
        if (!dj.contains("f") || !dj.contains("h")) bad("data needs f and h (or grid_csv)");
        try {
            data = std::make_unique<BoundaryData>(BoundaryData::from_coefficients(
                curve, parse_scalar(dj.at("f"), "data.f"), parse_scalar(dj.at("h"), "data.h"),
                knobs.grid_m, dj.value("speed_scaled", false), dj.value("entire", false)));
        } catch (const Error& err) {
            bad(std::string("invalid boundary data: ") + err.what());
        }
    }

    JobConfig cfg(std::move(curve), std::move(*data));
    cfg.knobs = knobs;

    const json& outs = need(j, "outputs");
    if (!outs.is_array() || outs.empty()) bad("outputs must be a non-empty array");
    for (const json& s : outs) cfg.outputs.push_back(parse_stage(s.get<std::string>()));

    if (j.contains("points")) {
        const json& pj = j.at("points");
        const std::string kind = need(pj, "kind").get<std::string>();
        if (kind == "ring") {
            cfg.points.kind = PointSpec::Kind::Ring;
            cfg.points.radius = num(need(pj, "radius"), "points.radius");
            cfg.points.count = int(num(need(pj, "count"), "points.count"));
            if (cfg.points.count < 1 || cfg.points.radius <= 0.0) bad("invalid ring point set");
        } else if (kind == "csv") {
            cfg.points.kind = PointSpec::Kind::Csv;
            cfg.points.csv_path = base_dir / need(pj, "path").get<std::string>();
        } else {
            bad("points.kind must be ring or csv");
        }
    }
    if (std::find(cfg.outputs.begin(), cfg.outputs.end(), Stage::Extend) != cfg.outputs.end() &&
        cfg.points.kind == PointSpec::Kind::None)
        bad("extend requested but no point grid specified");

    cfg.out_dir = base_dir / j.value("out_dir", "out");
    cfg.echo = j;
    return cfg;
}

JobConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) bad("cannot open config file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    json j;
    if (path.extension() == ".toml") {
        j = toml_to_json(buf.str());
    } else {
        try {
            j = json::parse(buf.str());
        } catch (const json::parse_error& err) {
            bad(std::string("config JSON parse error: ") + err.what());
        }
    }
    return config_from_json(j, path.has_parent_path() ? path.parent_path() : ".");
}

namespace {

struct TomlCursor {
    const std::string& text;
    std::size_t pos = 0;

    bool done() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }
    void skip_ws() {
        while (!done() && (peek() == ' ' || peek() == '\t')) ++pos;
    }
};

json parse_toml_value(TomlCursor& c);

json parse_toml_string(TomlCursor& c) {
    ++c.pos;  // opening quote
    std::string s;
    while (!c.done() && c.peek() != '"') {
        if (c.peek() == '\\' && c.pos + 1 < c.text.size()) ++c.pos;
        s += c.text[c.pos++];
    }
    if (c.done()) bad("unterminated TOML string");
    ++c.pos;
    return json(s);
}

json parse_toml_array(TomlCursor& c) {
    ++c.pos;  // [
    json arr = json::array();
    for (;;) {
        c.skip_ws();
        while (!c.done() && (c.peek() == '\n' || c.peek() == '\r')) {
            ++c.pos;
            c.skip_ws();
        }
        if (c.done()) bad("unterminated TOML array");
        if (c.peek() == ']') {
            ++c.pos;
            return arr;
        }
        arr.push_back(parse_toml_value(c));
        c.skip_ws();
        while (!c.done() && (c.peek() == '\n' || c.peek() == '\r')) {
            ++c.pos;
            c.skip_ws();
        }
        if (!c.done() && c.peek() == ',') ++c.pos;
    }
}

json parse_toml_inline_table(TomlCursor& c) {
    ++c.pos;  // {
    json obj = json::object();
    for (;;) {
        c.skip_ws();
        if (c.done()) bad("unterminated TOML inline table");
        if (c.peek() == '}') {
            ++c.pos;
            return obj;
        }
        std::string key;
        while (!c.done() && (std::isalnum(c.peek()) || c.peek() == '_')) key += c.text[c.pos++];
        c.skip_ws();
        if (c.done() || c.peek() != '=') bad("malformed TOML inline table near key " + key);
        ++c.pos;
        c.skip_ws();
        obj[key] = parse_toml_value(c);
        c.skip_ws();
        if (!c.done() && c.peek() == ',') ++c.pos;
    }
}

json parse_toml_value(TomlCursor& c) {
    c.skip_ws();
    if (c.done()) bad("missing TOML value");
    const char ch = c.peek();
    if (ch == '"') return parse_toml_string(c);
    if (ch == '[') return parse_toml_array(c);
    if (ch == '{') return parse_toml_inline_table(c);
    std::string token;
    while (!c.done() && c.peek() != ',' && c.peek() != ']' && c.peek() != '}' &&
           c.peek() != '\n' && c.peek() != '\r' && c.peek() != '#')
        token += c.text[c.pos++];
    while (!token.empty() && (token.back() == ' ' || token.back() == '\t')) token.pop_back();
    if (token == "true") return json(true);
    if (token == "false") return json(false);
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (end == token.c_str() || *end != '\0') bad("bad TOML value: " + token);
    if (token.find('.') == std::string::npos && token.find('e') == std::string::npos &&
        token.find('E') == std::string::npos && v == std::floor(v) && std::abs(v) < 1e15)
        return json(static_cast<long long>(v));
    return json(v);
}

std::vector<std::string> split_key_path(const std::string& s) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : s) {
        if (ch == '.') {
            parts.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            cur += ch;
        }
    }
    parts.push_back(cur);
    return parts;
}

}  // namespace

json toml_to_json(const std::string& text) {
    json root = json::object();
    json* table = &root;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        if (line[start] == '#') continue;
        if (line[start] == '[') {
            const bool array_table = start + 1 < line.size() && line[start + 1] == '[';
            const std::size_t open = start + (array_table ? 2 : 1);
            const std::size_t close = line.find(array_table ? "]]" : "]", open);
            if (close == std::string::npos) bad("malformed TOML table header: " + line);
            const auto parts = split_key_path(line.substr(open, close - open));
            json* node = &root;
            for (std::size_t i = 0; i < parts.size(); ++i) {
                const bool last = i + 1 == parts.size();
                json& slot = (*node)[parts[i]];
                if (last && array_table) {
                    if (!slot.is_array()) slot = json::array();
                    slot.push_back(json::object());
                    node = &slot.back();
                } else {
                    if (slot.is_array()) {
                        node = &slot.back();
                    } else {
                        if (!slot.is_object()) slot = json::object();
                        node = &slot;
                    }
                }
            }
            table = node;
            continue;
        }
        const std::size_t eq = line.find('=', start);
        if (eq == std::string::npos) bad("malformed TOML line: " + line);
        std::string key = line.substr(start, eq - start);
        while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
        TomlCursor c{line, eq + 1};
        (*table)[key] = parse_toml_value(c);
    }
    return root;
}

}  // namespace harmext
