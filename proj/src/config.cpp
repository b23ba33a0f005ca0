#include "rdcert/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "rdcert/error.hpp"

namespace rdcert {
namespace {

const std::set<std::string> kSections = {"model",     "grid",      "scheme", "functional",
                                         "initial.u", "initial.v", "output", "check"};

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

/// Flat "section.key" -> value table; every lookup marks the key consumed.
class KeyTable {
public:
    explicit KeyTable(std::string_view text) {
        std::string section;
        std::size_t line_no = 0;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            const auto eol = std::min(text.find('\n', pos), text.size());
            std::string_view line = text.substr(pos, eol - pos);
            pos = eol + 1;
            ++line_no;

            if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
            line = trim(line);
            if (line.empty()) continue;

            if (line.front() == '[') {
                if (line.back() != ']') throw error(line_no, "unterminated section header");
                section = std::string(trim(line.substr(1, line.size() - 2)));
                if (!kSections.count(section)) throw error(line_no, "unknown section [" + section + "]");
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string_view::npos) throw error(line_no, "expected 'key = value'");
            if (section.empty()) throw error(line_no, "key outside of any section");
            const std::string key = section + "." + std::string(trim(line.substr(0, eq)));
            if (!values_.emplace(key, std::string(trim(line.substr(eq + 1)))).second) {
                throw ConfigError("duplicate key '" + key + "'");
            }
        }
    }

    std::optional<std::string> take(const std::string& key) {
        auto it = values_.find(key);
        if (it == values_.end()) return std::nullopt;
        std::string value = std::move(it->second);
        values_.erase(it);
        return value;
    }

    std::string require(const std::string& key) {
        auto value = take(key);
        if (!value) throw ConfigError("missing required key '" + key + "'");
        return *value;
    }

    std::optional<double> number(const std::string& key) {
        auto value = take(key);
        if (!value) return std::nullopt;
        return to_number(key, *value);
    }

    double number_or(const std::string& key, double fallback) { return number(key).value_or(fallback); }

    template <typename Int>
    std::optional<Int> integer(const std::string& key) {
        auto value = take(key);
        if (!value) return std::nullopt;
        Int out{};
        auto [ptr, ec] = std::from_chars(value->data(), value->data() + value->size(), out);
        if (ec != std::errc() || ptr != value->data() + value->size()) {
            throw ConfigError(key + ": invalid integer '" + *value + "'");
        }
        return out;
    }

    std::vector<double> number_list(const std::string& key, const std::string& text) {
        std::vector<double> out;
        std::size_t start = 0;
        while (start <= text.size()) {
            const auto comma = std::min(text.find(',', start), text.size());
            out.push_back(to_number(key, std::string(trim(std::string_view(text).substr(start, comma - start)))));
            start = comma + 1;
        }
        return out;
    }

    void reject_leftovers() const {
        if (!values_.empty()) throw ConfigError("unknown key '" + values_.begin()->first + "'");
    }

    static double to_number(const std::string& key, const std::string& text) {
        double out = 0.0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
        if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(out)) {
            throw ConfigError(key + ": invalid number '" + text + "'");
        }
        return out;
    }

private:
    static ConfigError error(std::size_t line_no, const std::string& what) {
        return ConfigError("line " + std::to_string(line_no) + ": " + what);
    }

    std::map<std::string, std::string> values_;
};

InitialData parse_initial(KeyTable& table, const std::string& section, std::size_t n_nodes) {
    InitialData data;
    const std::string kind = table.require(section + ".kind");
    auto nonneg = [&](const char* key, double x) {
        if (!(x >= 0.0)) throw ConfigError(section + "." + key + " must be >= 0");
        return x;
    };
    if (kind == "uniform") {
        data.kind = InitialData::Kind::Uniform;
        const std::string key = section + ".value";
        data.value = nonneg("value", KeyTable::to_number(key, table.require(key)));
    } else if (kind == "bump") {
        data.kind = InitialData::Kind::Bump;
        data.center = table.number_or(section + ".center", data.center);
        data.width = table.number_or(section + ".width", data.width);
        data.height = nonneg("height", table.number_or(section + ".height", data.height));
        data.baseline = nonneg("baseline", table.number_or(section + ".baseline", data.baseline));
        if (!(data.width > 0.0)) throw ConfigError(section + ".width must be > 0");
    } else if (kind == "nodes") {
        data.kind = InitialData::Kind::Nodes;
        const std::string key = section + ".values";
        data.values = table.number_list(key, table.require(key));
        if (data.values.size() != n_nodes) {
            throw ConfigError(key + " has " + std::to_string(data.values.size()) + " entries but grid.n_nodes is " +
                              std::to_string(n_nodes));
        }
        for (double x : data.values) nonneg("values", x);
    } else {
        throw ConfigError(section + ".kind must be uniform, bump or nodes (got '" + kind + "')");
    }
    return data;
}

void write_initial(std::ostream& out, const std::string& section, const InitialData& data) {
    out << "\n[" << section << "]\n";
    switch (data.kind) {
        case InitialData::Kind::Uniform:
            out << "kind = uniform\nvalue = " << fmt(data.value) << "\n";
            break;
        case InitialData::Kind::Bump:
            out << "kind = bump\ncenter = " << fmt(data.center) << "\nwidth = " << fmt(data.width)
                << "\nheight = " << fmt(data.height) << "\nbaseline = " << fmt(data.baseline) << "\n";
            break;
        case InitialData::Kind::Nodes:
            out << "kind = nodes\nvalues = ";
            for (std::size_t i = 0; i < data.values.size(); ++i) out << (i ? ", " : "") << fmt(data.values[i]);
            out << "\n";
            break;
    }
}

}  // namespace

Field InitialData::sample(const Grid& grid) const {
    Field f(grid.n_nodes());
    for (std::size_t j = 0; j < f.size(); ++j) {
        switch (kind) {
            case Kind::Uniform: f[j] = value; break;
            case Kind::Bump: {
                const double z = (grid.x(j) - center) / width;
                f[j] = baseline + height * std::exp(-z * z);
                break;
            }
            case Kind::Nodes: f[j] = values.at(j); break;
        }
    }
    return f;
}

RunConfig parse_config(std::string_view text) {
    KeyTable table(text);
    RunConfig cfg;

    // model
    auto& model = cfg.model;
    const std::string kind = table.require("model.kind");
    if (kind == "combustion") {
        model.kind = ModelConfig::Kind::Combustion;
        model.m = table.integer<int>("model.m").value_or(1);
        if (model.m < 1) throw ConfigError("model.m must be a positive integer");
    } else if (kind == "absorption") {
        model.kind = ModelConfig::Kind::Absorption;
        model.F = GrowthFunction::parse(table.require("model.F"));
        model.G = GrowthFunction::parse(table.require("model.G"));
        model.lambda = table.number_or("model.lambda", model.lambda);
        model.threshold_s_max = table.number_or("model.threshold_s_max", model.threshold_s_max);
        model.threshold_samples = table.integer<int>("model.threshold_samples").value_or(model.threshold_samples);
        if (!(model.lambda > 0.0 && model.lambda < 1.0)) throw ConfigError("model.lambda must lie in (0, 1)");
        if (!(model.threshold_s_max > 0.0)) throw ConfigError("model.threshold_s_max must be > 0");
        if (model.threshold_samples < 2) throw ConfigError("model.threshold_samples must be >= 2");
    } else if (kind == "blowup") {
        model.kind = ModelConfig::Kind::Blowup;
    } else {
        throw ConfigError("model.kind must be absorption, combustion or blowup (got '" + kind + "')");
    }
    model.C = table.number("model.C");
    model.mu = table.number("model.mu");
    if (model.C && !(*model.C >= 0.0)) throw ConfigError("model.C must be >= 0");
    if (model.mu && !(*model.mu > 0.0)) throw ConfigError("model.mu must be > 0");

    // grid
    cfg.grid.n_nodes = table.integer<std::size_t>("grid.n_nodes").value_or(cfg.grid.n_nodes);
    cfg.grid.length = table.number_or("grid.length", cfg.grid.length);
    const Grid grid(cfg.grid.n_nodes, cfg.grid.length);

    // scheme
    auto& s = cfg.scheme;
    s.a = KeyTable::to_number("scheme.a", table.require("scheme.a"));
    s.b = KeyTable::to_number("scheme.b", table.require("scheme.b"));
    s.t_end = KeyTable::to_number("scheme.t_end", table.require("scheme.t_end"));
    s.dt_init = table.number_or("scheme.dt_init", s.dt_init);
    s.dt_min = table.number_or("scheme.dt_min", s.dt_min);
    s.dt_max = table.number_or("scheme.dt_max", s.dt_max);
    s.rtol = table.number_or("scheme.rtol", s.rtol);
    s.blowup_threshold = table.number_or("scheme.blowup_threshold", s.blowup_threshold);
    s.validate();

    // functional
    cfg.functional.p = table.integer<int>("functional.p").value_or(cfg.functional.p);
    cfg.functional.theta = table.number("functional.theta");
    if (cfg.functional.p < 2) throw ConfigError("functional.p must be >= 2");
    if (cfg.functional.theta && !(*cfg.functional.theta > 1.0)) throw ConfigError("functional.theta must be > 1");

    cfg.initial_u = parse_initial(table, "initial.u", cfg.grid.n_nodes);
    cfg.initial_v = parse_initial(table, "initial.v", cfg.grid.n_nodes);

    // output
    cfg.output.csv = table.take("output.csv").value_or("");
    cfg.output.report = table.take("output.report").value_or("");
    cfg.output.log_every = table.integer<std::size_t>("output.log_every").value_or(cfg.output.log_every);
    if (cfg.output.log_every < 1) throw ConfigError("output.log_every must be >= 1");

    // check
    cfg.check.u_max = table.number("check.u_max");
    cfg.check.v_max = table.number("check.v_max");
    cfg.check.n_per_axis = table.integer<int>("check.n_per_axis").value_or(cfg.check.n_per_axis);
    cfg.check.seed = table.integer<std::uint64_t>("check.seed").value_or(cfg.check.seed);
    if (cfg.check.u_max && !(*cfg.check.u_max > 0.0)) throw ConfigError("check.u_max must be > 0");
    if (cfg.check.v_max && !(*cfg.check.v_max > 0.0)) throw ConfigError("check.v_max must be > 0");
    if (cfg.check.n_per_axis < 2) throw ConfigError("check.n_per_axis must be >= 2");

    table.reject_leftovers();
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string serialize_config(const RunConfig& cfg) {
    std::ostringstream out;
    const auto& m = cfg.model;
    out << "[model]\n";
    switch (m.kind) {
        case ModelConfig::Kind::Combustion:
            out << "kind = combustion\nm = " << m.m << "\n";
            break;
        case ModelConfig::Kind::Absorption:
            out << "kind = absorption\nF = " << (m.F ? m.F->to_string() : "") << "\nG = "
                << (m.G ? m.G->to_string() : "") << "\nlambda = " << fmt(m.lambda)
                << "\nthreshold_s_max = " << fmt(m.threshold_s_max)
                << "\nthreshold_samples = " << m.threshold_samples << "\n";
            break;
        case ModelConfig::Kind::Blowup:
            out << "kind = blowup\n";
            break;
    }
    if (m.C) out << "C = " << fmt(*m.C) << "\n";
    if (m.mu) out << "mu = " << fmt(*m.mu) << "\n";

    out << "\n[grid]\nn_nodes = " << cfg.grid.n_nodes << "\nlength = " << fmt(cfg.grid.length) << "\n";

    const auto& s = cfg.scheme;
    out << "\n[scheme]\na = " << fmt(s.a) << "\nb = " << fmt(s.b) << "\nt_end = " << fmt(s.t_end)
        << "\ndt_init = " << fmt(s.dt_init) << "\ndt_min = " << fmt(s.dt_min) << "\ndt_max = " << fmt(s.dt_max)
        << "\nrtol = " << fmt(s.rtol) << "\nblowup_threshold = " << fmt(s.blowup_threshold) << "\n";

    out << "\n[functional]\np = " << cfg.functional.p << "\n";
    if (cfg.functional.theta) out << "theta = " << fmt(*cfg.functional.theta) << "\n";

    write_initial(out, "initial.u", cfg.initial_u);
    write_initial(out, "initial.v", cfg.initial_v);

    out << "\n[output]\n";
    if (!cfg.output.csv.empty()) out << "csv = " << cfg.output.csv << "\n";
    if (!cfg.output.report.empty()) out << "report = " << cfg.output.report << "\n";
    out << "log_every = " << cfg.output.log_every << "\n";

    out << "\n[check]\n";
    if (cfg.check.u_max) out << "u_max = " << fmt(*cfg.check.u_max) << "\n";
    if (cfg.check.v_max) out << "v_max = " << fmt(*cfg.check.v_max) << "\n";
    out << "n_per_axis = " << cfg.check.n_per_axis << "\nseed = " << cfg.check.seed << "\n";
    return out.str();
}

ReactionModel build_model(const ModelConfig& config) {
    switch (config.kind) {
        case ModelConfig::Kind::Combustion:
            return ReactionModel::combustion(config.m).with_claims(config.C, config.mu);
        case ModelConfig::Kind::Absorption: {
            if (!config.F || !config.G) throw ConfigError("model.F and model.G are required for absorption");
            std::optional<double> C = config.C;
            if (!C) {
                C = find_threshold_A(*config.F, *config.G, config.lambda, config.threshold_s_max,
                                     config.threshold_samples)
                        .A;
            }
            return ReactionModel::absorption(*config.F, *config.G, C, config.mu.value_or(config.lambda));
        }
        case ModelConfig::Kind::Blowup:
            return ReactionModel::blowup_example().with_claims(config.C, config.mu);
    }
    throw ConfigError("unsupported model.kind");
}

}  // namespace rdcert
