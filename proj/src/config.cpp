#include "hankel/config.hpp"

#include "hankel/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace hankel {

namespace {

using nlohmann::json;

/// A JSON value together with its key path, for strict schema checks.
class Node {
public:
    Node(const json& j, std::string path) : j_(j), path_(std::move(path)) {}

    const std::string& path() const { return path_; }
    const json& raw() const { return j_; }

    [[noreturn]] void fail(const std::string& what) const { throw ConfigError(path_ + ": " + what); }

    void expect_object(std::initializer_list<const char*> allowed) const {
        if (!j_.is_object()) fail("expected an object");
        std::set<std::string> ok(allowed.begin(), allowed.end());
        for (const auto& item : j_.items())
            if (!ok.count(item.key())) throw ConfigError(child_path(item.key()) + ": unknown key");
    }

    bool has(const std::string& key) const { return j_.is_object() && j_.contains(key); }

    Node at(const std::string& key) const {
        if (!has(key)) throw ConfigError(child_path(key) + ": missing required key");
        return {j_.at(key), child_path(key)};
    }

    Node index(std::size_t i) const { return {j_.at(i), path_ + "[" + std::to_string(i) + "]"}; }

    double number() const {
        if (!j_.is_number()) fail("expected a number");
        return j_.get<double>();
    }

    int integer() const {
        if (!j_.is_number_integer()) fail("expected an integer");
        return j_.get<int>();
    }

    bool boolean() const {
        if (!j_.is_boolean()) fail("expected true or false");
        return j_.get<bool>();
    }

    std::string string() const {
        if (!j_.is_string()) fail("expected a string");
        return j_.get<std::string>();
    }

    std::vector<double> numbers() const {
        if (!j_.is_array()) fail("expected an array of numbers");
        std::vector<double> out;
        for (std::size_t i = 0; i < j_.size(); ++i) out.push_back(index(i).number());
        return out;
    }

    double number_or(const std::string& key, double fallback) const { return has(key) ? at(key).number() : fallback; }
    int integer_or(const std::string& key, int fallback) const { return has(key) ? at(key).integer() : fallback; }
    bool boolean_or(const std::string& key, bool fallback) const { return has(key) ? at(key).boolean() : fallback; }

private:
    std::string child_path(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    const json& j_;
    std::string path_;
};

Eigen::Vector2d point(const Node& n, int dimension) {
    if (n.raw().is_number() && dimension == 1) return {n.number(), 0.0};
    const auto v = n.numbers();
    if (static_cast<int>(v.size()) != dimension) n.fail("expected " + std::to_string(dimension) + " coordinates");
    return {v[0], dimension == 2 ? v[1] : 0.0};
}

Domain parse_domain(const Node& n) {
    if (!n.raw().is_object()) n.fail("expected an object");
    const std::string type = n.at("type").string();
    try {
        if (type == "interval") {
            n.expect_object({"type", "lo", "hi"});
            return Domain::interval(n.at("lo").number(), n.at("hi").number());
        }
        if (type == "disk") {
            n.expect_object({"type", "center", "radius"});
            const Eigen::Vector2d c = n.has("center") ? point(n.at("center"), 2) : Eigen::Vector2d::Zero();
            return Domain::disk(c, n.at("radius").number());
        }
        if (type == "box") {
            n.expect_object({"type", "lo", "hi"});
            return Domain::box(point(n.at("lo"), 2), point(n.at("hi"), 2));
        }
        if (type == "star") {
            n.expect_object({"type", "center", "c0", "cos", "sin"});
            const Eigen::Vector2d c = n.has("center") ? point(n.at("center"), 2) : Eigen::Vector2d::Zero();
            return Domain::star(c, n.at("c0").number(), n.has("cos") ? n.at("cos").numbers() : std::vector<double>{},
                                n.has("sin") ? n.at("sin").numbers() : std::vector<double>{});
        }
    } catch (const InputError& e) {
        n.fail(e.what());
    }
    n.at("type").fail("unknown domain type '" + type + "'");
}

Factor parse_factor(const Node& n, int dimension) {
    if (!n.raw().is_object()) n.fail("expected an object");
    const std::string type = n.at("type").string();
    if (type == "const") {
        n.expect_object({"type", "value"});
        return Factor::constant(n.number_or("value", 1.0));
    }
    if (type == "bump") {
        n.expect_object({"type", "center", "radius", "height"});
        const Eigen::Vector2d c = n.has("center") ? point(n.at("center"), dimension) : Eigen::Vector2d::Zero();
        try {
            return Factor::bump(c, n.at("radius").number(), n.number_or("height", 1.0));
        } catch (const InputError& e) {
            n.fail(e.what());
        }
    }
    n.at("type").fail("unknown factor type '" + type + "' (const or bump)");
}

Complex parse_coefficient(const Node& n) {
    if (n.raw().is_number()) return n.number();
    const auto v = n.numbers();
    if (v.size() != 2) n.fail("expected a number or [re, im]");
    return {v[0], v[1]};
}

SeparableSymbol parse_terms(const Node& n, int dimension) {
    if (!n.raw().is_array()) n.fail("expected an array of terms");
    std::vector<SymbolTerm> terms;
    for (std::size_t i = 0; i < n.raw().size(); ++i) {
        const Node t = n.index(i);
        t.expect_object({"coefficient", "x", "xi"});
        const Complex c = t.has("coefficient") ? parse_coefficient(t.at("coefficient")) : Complex(1.0);
        Factor x = t.has("x") ? parse_factor(t.at("x"), dimension) : Factor::constant(1.0);
        const Factor xi = t.has("xi") ? parse_factor(t.at("xi"), dimension) : Factor::constant(1.0);
        if (c != Complex(1.0)) x = Factor::product(Factor::constant(c), x);
        terms.push_back({x, xi});
    }
    return SeparableSymbol(std::move(terms));
}

void parse_symbol(const Node& n, SweepConfig& cfg) {
    n.expect_object({"terms", "weight"});
    const int d = cfg.dimension();
    if (n.has("terms")) cfg.a = parse_terms(n.at("terms"), d);
    if (n.has("weight")) {
        const Node w = n.at("weight");
        w.expect_object({"terms"});
        cfg.weight = parse_terms(w.at("terms"), d);
    }
}

TestFunction parse_test_function(const Node& n, std::vector<double>& thresholds) {
    if (!n.raw().is_object()) n.fail("expected an object");
    const std::string type = n.at("type").string();
    try {
        if (type == "monomial") {
            n.expect_object({"type", "p"});
            return TestFunction::monomial(n.at("p").integer());
        }
        if (type == "polynomial") {
            n.expect_object({"type", "coefficients"});
            return TestFunction::polynomial(n.at("coefficients").numbers());
        }
        if (type == "indicator") {
            n.expect_object({"type", "lambda"});
            const Node l = n.at("lambda");
            thresholds = l.raw().is_array() ? l.numbers() : std::vector<double>{l.number()};
            if (thresholds.empty()) l.fail("needs at least one threshold");
            for (double t : thresholds)
                if (!(t > 0.0)) l.fail("thresholds must be positive");
            return TestFunction::indicator_above(thresholds.front());
        }
    } catch (const InputError& e) {
        n.fail(e.what());
    }
    n.at("type").fail("unknown test function type '" + type + "'");
}

void parse_grid(const Node& n, SweepConfig& cfg) {
    n.expect_object({"half_width", "margin", "boundary_nodes", "fixed_spacing", "align_lattice", "gate_tolerance",
                     "gate_scope", "points", "max_points", "hankel"});
    GridPolicy& g = cfg.grid;
    g.half_width = n.number_or("half_width", g.half_width);
    g.margin = n.number_or("margin", g.margin);
    g.points = n.integer_or("points", g.points);
    g.max_points = n.integer_or("max_points", g.max_points);
    g.fixed_spacing = n.boolean_or("fixed_spacing", g.fixed_spacing);
    g.align_lattice = n.boolean_or("align_lattice", g.align_lattice);
    cfg.boundary_nodes = n.integer_or("boundary_nodes", cfg.boundary_nodes);
    cfg.gate_tolerance = n.number_or("gate_tolerance", cfg.gate_tolerance);
    if (n.has("gate_scope")) {
        const Node s = n.at("gate_scope");
        const std::string v = s.string();
        if (v == "all") cfg.gate_scope = GateScope::all;
        else if (v == "largest") cfg.gate_scope = GateScope::largest;
        else if (v == "none") cfg.gate_scope = GateScope::none;
        else s.fail("expected all, largest or none");
    }
    if (!(g.half_width > 0.0)) n.at("half_width").fail("must be positive");
    if (!(g.margin > 0.0) || g.margin > kNyquistLimit) n.at("margin").fail("must lie in (0, 0.8]");
    if (g.points < 0 || (g.points > 0 && g.points != next_power_of_two(g.points)))
        n.at("points").fail("must be a power of two");
    if (g.fixed_spacing && g.align_lattice) n.fail("fixed_spacing and align_lattice are mutually exclusive");
    if (n.has("hankel")) {
        const Node h = n.at("hankel");
        h.expect_object({"a_lo", "kernel", "nodes_per_panel"});
        cfg.hankel.a_lo = h.number_or("a_lo", cfg.hankel.a_lo);
        if (h.has("kernel")) cfg.hankel.kernel = h.at("kernel").string();
        cfg.hankel.nodes_per_panel = h.integer_or("nodes_per_panel", cfg.hankel.nodes_per_panel);
    }
}

} // namespace

Experiment parse_experiment(const std::string& name) {
    if (name == "trace_H") return Experiment::trace_h;
    if (name == "trace_T") return Experiment::trace_t;
    if (name == "count") return Experiment::count;
    if (name == "wilf") return Experiment::wilf;
    if (name == "hs_norm") return Experiment::hs_norm;
    if (name == "identity_suite") return Experiment::identity_suite;
    if (name == "growth_suite") return Experiment::growth_suite;
    throw ConfigError("experiment: unknown experiment '" + name + "'");
}

RunConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("parse error: ") + e.what());
    }
    const Node root(j, "");
    root.expect_object({"experiment", "lambda_domain", "omega_domain", "symbol", "g", "alphas", "grid", "output"});

    RunConfig rc;
    SweepConfig& cfg = rc.sweep;
    cfg.experiment = parse_experiment(root.at("experiment").string());
    if (cfg.experiment != Experiment::wilf) {
        cfg.lambda_domain = parse_domain(root.at("lambda_domain"));
        cfg.omega_domain = parse_domain(root.at("omega_domain"));
        if (cfg.lambda_domain.dimension() != cfg.omega_domain.dimension())
            root.at("omega_domain").fail("dimension differs from lambda_domain");
    } else {
        if (root.has("lambda_domain")) cfg.lambda_domain = parse_domain(root.at("lambda_domain"));
        if (root.has("omega_domain")) cfg.omega_domain = parse_domain(root.at("omega_domain"));
    }
    if (root.has("symbol")) parse_symbol(root.at("symbol"), cfg);

    if (root.has("g")) {
        const Node g = root.at("g");
        std::vector<double> thresholds;
        cfg.functions.clear();
        if (g.raw().is_array()) {
            for (std::size_t i = 0; i < g.raw().size(); ++i) cfg.functions.push_back(parse_test_function(g.index(i), thresholds));
        } else {
            cfg.functions.push_back(parse_test_function(g, thresholds));
        }
        if (!thresholds.empty()) cfg.thresholds = thresholds;
        if ((cfg.experiment == Experiment::count || cfg.experiment == Experiment::wilf) && thresholds.empty())
            g.fail("count and wilf experiments need an indicator test function");
    }

    const Node alphas = root.at("alphas");
    if (alphas.raw().is_object()) {
        if (cfg.experiment != Experiment::growth_suite) alphas.fail("the {s1, hs} form is only valid for growth_suite");
        alphas.expect_object({"s1", "hs"});
        cfg.alphas = alphas.at("s1").numbers();
        if (alphas.has("hs")) cfg.hs_alphas = alphas.at("hs").numbers();
    } else {
        cfg.alphas = alphas.numbers();
    }
    for (std::size_t i = 1; i < cfg.alphas.size(); ++i)
        if (!(cfg.alphas[i] > cfg.alphas[i - 1])) alphas.fail("values must be strictly increasing");
    for (std::size_t i = 1; i < cfg.hs_alphas.size(); ++i)
        if (!(cfg.hs_alphas[i] > cfg.hs_alphas[i - 1])) alphas.fail("hs values must be strictly increasing");

    if (root.has("grid")) parse_grid(root.at("grid"), cfg);

    if (root.has("output")) {
        const Node o = root.at("output");
        o.expect_object({"dir", "verdict_tolerance", "volume_tolerance", "r2_threshold", "deterministic"});
        if (o.has("dir")) rc.output_dir = o.at("dir").string();
        cfg.verdict_tolerance = o.number_or("verdict_tolerance", cfg.verdict_tolerance);
        cfg.volume_tolerance = o.number_or("volume_tolerance", cfg.volume_tolerance);
        cfg.r2_threshold = o.number_or("r2_threshold", cfg.r2_threshold);
        rc.deterministic = o.boolean_or("deterministic", rc.deterministic);
    }

    validate(cfg);
    return rc;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

} // namespace hankel
