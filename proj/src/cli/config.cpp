#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <map>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

#include "fracharm/cli.hpp"
#include "fracharm/extension.hpp"

namespace fracharm::cli {

namespace {

using json = nlohmann::json;

// Line of every value in already-valid JSON text, keyed by JSON pointer. Object
// members map to the line of their key, array elements to the line of the value.
class LineIndex {
public:
    explicit LineIndex(const std::string& text) : t_(text) {
        skip_ws();
        if (i_ < t_.size()) value("");
    }

    int line(const std::string& pointer) const {
        auto it = lines_.find(pointer);
        return it == lines_.end() ? 0 : it->second;
    }

private:
    const std::string& t_;
    std::size_t i_ = 0;
    int line_ = 1;
    std::map<std::string, int> lines_;

    void advance() {
        if (t_[i_] == '\n') ++line_;
        ++i_;
    }
    void skip_ws() {
        while (i_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[i_]))) advance();
    }
    std::string string() {
        std::string out;
        advance();  // opening quote
        while (i_ < t_.size() && t_[i_] != '"') {
            if (t_[i_] == '\\') advance();
            if (i_ < t_.size()) out += t_[i_];
            advance();
        }
        if (i_ < t_.size()) advance();
        return out;
    }
    static std::string escape(const std::string& key) {
        std::string out;
        for (char c : key) {
            if (c == '~') out += "~0";
            else if (c == '/') out += "~1";
            else out += c;
        }
        return out;
    }
    void value(const std::string& ptr) {
        if (!lines_.count(ptr)) lines_[ptr] = line_;
        const char c = t_[i_];
        if (c == '{') {
            advance();
            skip_ws();
            while (i_ < t_.size() && t_[i_] != '}') {
                const int key_line = line_;
                const std::string child = ptr + "/" + escape(string());
                lines_[child] = key_line;
                skip_ws();
                advance();  // ':'
                skip_ws();
                value(child);
                skip_ws();
                if (i_ < t_.size() && t_[i_] == ',') advance();
                skip_ws();
            }
            if (i_ < t_.size()) advance();
        } else if (c == '[') {
            advance();
            skip_ws();
            for (int k = 0; i_ < t_.size() && t_[i_] != ']'; ++k) {
                value(ptr + "/" + std::to_string(k));
                skip_ws();
                if (i_ < t_.size() && t_[i_] == ',') advance();
                skip_ws();
            }
            if (i_ < t_.size()) advance();
        } else if (c == '"') {
            string();
        } else {
            while (i_ < t_.size() && !std::strchr(",}] \t\r\n", t_[i_])) advance();
        }
    }
};

int line_of_offset(const std::string& text, std::size_t byte) {
    byte = std::min(byte, text.size());
    int line = 1;
    for (std::size_t i = 0; i + 1 < byte; ++i)
        if (text[i] == '\n') ++line;
    return line;
}

class Reader {
public:
    explicit Reader(const LineIndex& lines) : lines_(lines) {}

    [[noreturn]] void fail(const std::string& ptr, const std::string& what) const {
        throw ConfigError(what, lines_.line(ptr));
    }

    void expect_object(const json& j, const std::string& ptr, std::set<std::string> allowed) const {
        if (!j.is_object()) fail(ptr, (ptr.empty() ? "config" : ptr) + " must be an object");
        for (auto it = j.begin(); it != j.end(); ++it)
            if (!allowed.count(it.key()))
                fail(ptr + "/" + it.key(), "unknown key '" + it.key() + "'" +
                                               (ptr.empty() ? "" : " in " + ptr));
    }

    // Numbers, or the strings "inf"/"infinity" for exponents that admit infinity.
    double number(const json& j, const std::string& ptr) const {
        if (j.is_number()) return j.get<double>();
        if (j.is_string()) {
            const auto s = j.get<std::string>();
            if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
        }
        fail(ptr, ptr + " must be a number");
    }

    double positive(const json& j, const std::string& ptr) const {
        const double v = number(j, ptr);
        if (!(v > 0) || !std::isfinite(v)) fail(ptr, ptr + " must be a positive finite number");
        return v;
    }

    long long integer(const json& j, const std::string& ptr) const {
        if (!j.is_number_integer()) fail(ptr, ptr + " must be an integer");
        return j.get<long long>();
    }

    std::string string(const json& j, const std::string& ptr) const {
        if (!j.is_string()) fail(ptr, ptr + " must be a string");
        return j.get<std::string>();
    }

    int line(const std::string& ptr) const { return lines_.line(ptr); }

private:
    const LineIndex& lines_;
};

void read_params(const Reader& r, const json& j, const std::string& ptr, EstimateEntry& e) {
    static const std::set<std::string> keys{"s",  "sigma", "p",     "q",     "p1",   "q1",       "p2",
                                            "q2", "s1",    "s2",    "sob_s", "sob_p", "axis", "component"};
    r.expect_object(j, ptr, keys);
    auto& P = e.descriptor.params;
    const std::map<std::string, double*> scalars{
        {"s", &P.s},   {"sigma", &P.sigma}, {"p", &P.p},   {"q", &P.q},   {"p1", &P.p1},
        {"q1", &P.q1}, {"p2", &P.p2},       {"q2", &P.q2}, {"s1", &P.s1}, {"s2", &P.s2},
    };
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string key = it.key(), kp = ptr + "/" + key;
        e.param_lines.emplace_back(key, r.line(kp));
        if (auto s = scalars.find(key); s != scalars.end()) {
            *s->second = r.number(*it, kp);
        } else if (key == "axis") {
            P.axis = static_cast<int>(r.integer(*it, kp));
        } else if (key == "component") {
            P.component = static_cast<int>(r.integer(*it, kp));
        } else {
            auto& arr = key == "sob_s" ? P.sob_s : P.sob_p;
            if (!it->is_array() || it->size() != 3) r.fail(kp, kp + " must be an array of 3 numbers");
            for (int i = 0; i < 3; ++i) arr[i] = r.number((*it)[i], kp + "/" + std::to_string(i));
        }
    }
}

EstimateEntry read_estimate(const Reader& r, const json& j, const std::string& ptr) {
    EstimateEntry e;
    e.line = r.line(ptr);
    std::string id_ptr = ptr;
    const json* params = nullptr;
    std::string name;
    if (j.is_string()) {
        name = j.get<std::string>();
    } else {
        r.expect_object(j, ptr, {"id", "params"});
        if (!j.contains("id")) r.fail(ptr, "estimate entry needs an \"id\"");
        id_ptr = ptr + "/id";
        name = r.string(j["id"], id_ptr);
        if (j.contains("params")) params = &j["params"];
    }
    try {
        e.descriptor = EstimateDescriptor::make(estimate_id_from_string(name));
    } catch (const std::invalid_argument& ex) {
        r.fail(id_ptr, ex.what());
    }
    if (params) read_params(r, *params, ptr + "/params", e);
    return e;
}

}  // namespace

GridSpec grid_for(EstimateId id, const GridConfig& g) {
    const bool jac = id == EstimateId::jacobian_bmo || id == EstimateId::jacobian_sobolev;
    const int n = g.n.value_or(jac ? 2 : 1);
    const int natural_N = n == 1 ? 1024 : (id == EstimateId::jacobian_sobolev ? 64 : 128);
    return GridSpec::make(n, g.N.value_or(natural_N), g.L.value_or(1.0));
}

RunConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& ex) {
        throw ConfigError(std::string("invalid JSON: ") + ex.what(), line_of_offset(text, ex.byte));
    }
    const LineIndex lines(text);
    const Reader r(lines);
    r.expect_object(j, "", {"grid", "t_levels", "estimates", "family", "output_dir", "tolerances",
                            "tolerance_scale", "profiles"});

    RunConfig cfg;
    if (j.contains("grid")) {
        const auto& g = j["grid"];
        r.expect_object(g, "/grid", {"n", "N", "L"});
        if (g.contains("n")) cfg.grid.n = static_cast<int>(r.integer(g["n"], "/grid/n"));
        if (g.contains("N")) cfg.grid.N = static_cast<int>(r.integer(g["N"], "/grid/N"));
        if (g.contains("L")) cfg.grid.L = r.positive(g["L"], "/grid/L");
    }
    if (j.contains("t_levels")) {
        const auto& t = j["t_levels"];
        r.expect_object(t, "/t_levels", {"t_min", "t_max", "M"});
        if (t.contains("t_min")) cfg.levels.t_min = r.positive(t["t_min"], "/t_levels/t_min");
        if (t.contains("t_max")) cfg.levels.t_max = r.positive(t["t_max"], "/t_levels/t_max");
        if (t.contains("M")) cfg.levels.M = static_cast<int>(r.integer(t["M"], "/t_levels/M"));
    }
    if (j.contains("estimates")) {
        const auto& es = j["estimates"];
        if (!es.is_array()) r.fail("/estimates", "/estimates must be an array");
        for (std::size_t k = 0; k < es.size(); ++k)
            cfg.estimates.push_back(read_estimate(r, es[k], "/estimates/" + std::to_string(k)));
    }
    if (j.contains("family")) {
        const auto& f = j["family"];
        r.expect_object(f, "/family", {"seed", "bumps", "gaussians", "random", "constants"});
        if (f.contains("seed")) {
            if (!f["seed"].is_number_unsigned()) r.fail("/family/seed", "/family/seed must be a non-negative integer");
            cfg.family.seed = f["seed"].get<std::uint64_t>();
        }
        for (const char* key : {"bumps", "gaussians", "random"}) {
            if (!f.contains(key)) continue;
            const std::string kp = std::string("/family/") + key;
            const long long v = r.integer(f[key], kp);
            if (v < 0) r.fail(kp, kp + " must be >= 0");
            int& dst = key[0] == 'b' ? cfg.family.bumps : key[0] == 'g' ? cfg.family.gaussians : cfg.family.random;
            dst = static_cast<int>(v);
        }
        if (f.contains("constants")) {
            if (!f["constants"].is_array()) r.fail("/family/constants", "/family/constants must be an array");
            cfg.family.constants.clear();
            for (std::size_t k = 0; k < f["constants"].size(); ++k)
                cfg.family.constants.push_back(
                    r.number(f["constants"][k], "/family/constants/" + std::to_string(k)));
        }
    }
    if (j.contains("output_dir")) cfg.out_dir = r.string(j["output_dir"], "/output_dir");
    if (j.contains("tolerances")) {
        const auto& t = j["tolerances"];
        r.expect_object(t, "/tolerances", {"slack", "dilation", "zero_lhs"});
        if (t.contains("slack")) cfg.tolerances.slack = r.positive(t["slack"], "/tolerances/slack");
        if (t.contains("dilation"))
            cfg.tolerances.dilation_tolerance = r.positive(t["dilation"], "/tolerances/dilation");
        if (t.contains("zero_lhs"))
            cfg.tolerances.zero_lhs_tolerance = r.positive(t["zero_lhs"], "/tolerances/zero_lhs");
    }
    if (j.contains("tolerance_scale")) cfg.tolerance_scale = r.positive(j["tolerance_scale"], "/tolerance_scale");
    if (j.contains("profiles")) {
        if (!j["profiles"].is_array()) r.fail("/profiles", "/profiles must be an array of orders s");
        for (std::size_t k = 0; k < j["profiles"].size(); ++k) {
            const std::string kp = "/profiles/" + std::to_string(k);
            const double s = r.number(j["profiles"][k], kp);
            if (!(s > 0 && s < 2)) r.fail(kp, "profile order must lie in (0,2)");
            cfg.profiles.push_back(s);
        }
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

void apply_overrides(RunConfig& cfg, const Overrides& o) {
    if (o.n) cfg.grid.n = o.n;
    if (o.N) cfg.grid.N = o.N;
    if (o.L) cfg.grid.L = o.L;
    if (o.t_min) cfg.levels.t_min = o.t_min;
    if (o.t_max) cfg.levels.t_max = o.t_max;
    if (o.M) cfg.levels.M = *o.M;
    if (o.seed) cfg.family.seed = *o.seed;
    if (o.out) cfg.out_dir = *o.out;
    if (o.tolerance_scale) cfg.tolerance_scale = *o.tolerance_scale;
}

namespace {

// Picks the line of the first given parameter named in the constraint text.
int anchor_line(const EstimateEntry& e, const std::string& message) {
    const auto pos = message.find("requires ");
    const std::string constraint = pos == std::string::npos ? message : message.substr(pos + 9);
    std::string token;
    for (std::size_t i = 0; i <= constraint.size(); ++i) {
        const char c = i < constraint.size() ? constraint[i] : ' ';
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
            token += c;
            continue;
        }
        for (const auto& [key, line] : e.param_lines)
            if (key == token) return line;
        token.clear();
    }
    return e.line;
}

}  // namespace

void validate(const RunConfig& cfg) {
    if (cfg.tolerance_scale <= 0 || !std::isfinite(cfg.tolerance_scale))
        throw ConfigError("tolerance_scale must be positive");
    for (const auto& e : cfg.estimates) {
        GridSpec spec;
        try {
            spec = grid_for(e.descriptor.id, cfg.grid);
            spec.validate();
        } catch (const std::invalid_argument& ex) {
            throw ConfigError(to_string(e.descriptor.id) + ": " + ex.what(), e.line);
        }
        try {
            e.descriptor.check_admissible(spec);
        } catch (const std::invalid_argument& ex) {
            throw ConfigError(ex.what(), anchor_line(e, ex.what()));
        }
    }
    if (!cfg.profiles.empty()) {
        const GridSpec spec = GridSpec::make(cfg.grid.n.value_or(1), cfg.grid.N.value_or(1024),
                                             cfg.grid.L.value_or(1.0));
        try {
            spec.validate();
            const double h = spec.L / spec.N;
            TLevels::log_spaced(cfg.levels.t_min.value_or(h / 4), cfg.levels.t_max.value_or(2 * spec.L),
                                cfg.levels.M)
                .validate(spec);
        } catch (const std::invalid_argument& ex) {
            throw ConfigError(std::string("t_levels: ") + ex.what());
        }
    }
}

}  // namespace fracharm::cli
