#include "rdcert/kinetics.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "rdcert/error.hpp"

namespace rdcert {
namespace {

const double kLogMax = std::log(std::numeric_limits<double>::max());

void require_nonneg(double s, const char* what) {
    if (!(s >= 0.0)) {
        throw DomainError(std::string(what) + " requires a nonnegative argument");
    }
}

double parse_number(std::string_view text, std::string_view context) {
    double value = 0.0;
    const auto* begin = text.data();
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
        throw ConfigError("invalid number '" + std::string(text) + "' in growth function '" +
                          std::string(context) + "'");
    }
    return value;
}

std::string format_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace

GrowthFunction GrowthFunction::power(double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta)) throw ConfigError("power growth requires beta > 0");
    return GrowthFunction(Kind::Power, beta, {});
}

GrowthFunction GrowthFunction::exp() { return GrowthFunction(Kind::Exp, 0.0, {}); }

GrowthFunction GrowthFunction::sub_exp(double gamma) {
    if (!(gamma > 0.0 && gamma < 1.0)) throw ConfigError("subexp growth requires gamma in (0, 1)");
    return GrowthFunction(Kind::SubExp, gamma, {});
}

GrowthFunction GrowthFunction::double_exp() { return GrowthFunction(Kind::DoubleExp, 0.0, {}); }

GrowthFunction GrowthFunction::double_exp_minus_poly(std::vector<double> coeffs) {
    for (double c : coeffs) {
        if (!std::isfinite(c)) throw ConfigError("polynomial coefficients must be finite");
    }
    return GrowthFunction(Kind::DoubleExpMinusPoly, 0.0, std::move(coeffs));
}

GrowthFunction GrowthFunction::parse(std::string_view text) {
    const auto colon = text.find(':');
    const std::string_view head = text.substr(0, colon);
    const std::string_view tail = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
    const bool has_arg = colon != std::string_view::npos;

    auto no_arg = [&](GrowthFunction g) {
        if (has_arg) throw ConfigError("growth function '" + std::string(head) + "' takes no parameter");
        return g;
    };
    auto need_arg = [&]() {
        if (!has_arg) throw ConfigError("growth function '" + std::string(head) + "' needs a parameter");
        return parse_number(tail, text);
    };

    if (head == "exp") return no_arg(exp());
    if (head == "doubleexp") return no_arg(double_exp());
    if (head == "power") return power(need_arg());
    if (head == "subexp") return sub_exp(need_arg());
    if (head == "doubleexp_minus_poly") {
        std::vector<double> coeffs;
        if (has_arg && !tail.empty()) {
            std::size_t start = 0;
            while (true) {
                const auto comma = tail.find(',', start);
                coeffs.push_back(parse_number(tail.substr(start, comma - start), text));
                if (comma == std::string_view::npos) break;
                start = comma + 1;
            }
        }
        return double_exp_minus_poly(std::move(coeffs));
    }
    throw ConfigError("unknown growth function '" + std::string(text) + "'");
}

std::string GrowthFunction::to_string() const {
    switch (kind_) {
        case Kind::Power: return "power:" + format_number(parameter_);
        case Kind::Exp: return "exp";
        case Kind::SubExp: return "subexp:" + format_number(parameter_);
        case Kind::DoubleExp: return "doubleexp";
        case Kind::DoubleExpMinusPoly: {
            std::string out = "doubleexp_minus_poly:";
            for (std::size_t i = 0; i < coeffs_.size(); ++i) {
                if (i) out += ',';
                out += format_number(coeffs_[i]);
            }
            return out;
        }
    }
    return {};
}

double GrowthFunction::poly(double s) const noexcept {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * s + *it;
    return acc;
}

double GrowthFunction::overflow_guard() const noexcept {
    switch (kind_) {
        case Kind::Power: return std::exp(kLogMax / parameter_);
        case Kind::Exp: return kLogMax;
        case Kind::SubExp: return std::pow(kLogMax, 1.0 / parameter_);
        case Kind::DoubleExp:
        case Kind::DoubleExpMinusPoly: return std::log(kLogMax);
    }
    return 0.0;
}

std::optional<double> GrowthFunction::evaluate(double s) const {
    require_nonneg(s, "growth function");
    if (s > overflow_guard()) return std::nullopt;

    double value = 0.0;
    switch (kind_) {
        case Kind::Power: value = std::pow(s, parameter_); break;
        case Kind::Exp: value = std::exp(s); break;
        case Kind::SubExp: value = std::exp(std::pow(s, parameter_)); break;
        case Kind::DoubleExp: value = std::exp(std::exp(s)); break;
        case Kind::DoubleExpMinusPoly: value = std::exp(std::exp(s)) - poly(s); break;
    }
    if (!std::isfinite(value)) return std::nullopt;
    return value;
}

double GrowthFunction::log_value(double s) const {
    require_nonneg(s, "growth function");
    switch (kind_) {
        case Kind::Power: return parameter_ * std::log(s);
        case Kind::Exp: return s;
        case Kind::SubExp: return std::pow(s, parameter_);
        case Kind::DoubleExp: return std::exp(s);
        case Kind::DoubleExpMinusPoly: {
            // log(e^E - P) = E + log1p(-P e^-E) with E = e^s
            const double e = std::exp(s);
            const double r = poly(s) * std::exp(-e);
            if (!(r < 1.0)) return -std::numeric_limits<double>::infinity();
            return e + std::log1p(-r);
        }
    }
    return std::numeric_limits<double>::quiet_NaN();
}

ReactionModel ReactionModel::absorption(GrowthFunction F, GrowthFunction G,
                                        std::optional<double> claimed_C,
                                        std::optional<double> claimed_mu) {
    if (claimed_C && !(*claimed_C >= 0.0)) throw ConfigError("model.C must be >= 0");
    if (claimed_mu && !(*claimed_mu > 0.0)) throw ConfigError("model.mu must be > 0");
    return ReactionModel(Absorption{std::move(F), std::move(G)}, claimed_C, claimed_mu);
}

ReactionModel ReactionModel::absorption_with_threshold(GrowthFunction F, GrowthFunction G,
                                                       double lambda, double s_max, int n_samples) {
    const auto threshold = find_threshold_A(F, G, lambda, s_max, n_samples);
    return absorption(std::move(F), std::move(G), threshold.A, lambda);
}

ReactionModel ReactionModel::combustion(int m) {
    if (m < 1) throw ConfigError("model.m must be a positive integer");
    return ReactionModel(Combustion{m}, 0.0, 0.5);
}

ReactionModel ReactionModel::blowup_example() {
    return ReactionModel(BlowupExample{}, std::nullopt, std::nullopt);
}

ReactionModel ReactionModel::custom(Custom spec, std::optional<double> claimed_C,
                                    std::optional<double> claimed_mu) {
    if (!spec.rates) throw ConfigError("custom model needs a rates function");
    return ReactionModel(std::move(spec), claimed_C, claimed_mu);
}

std::optional<Rates> ReactionModel::evaluate(double u, double v) const {
    if (!(u >= 0.0) || !(v >= 0.0)) {
        std::ostringstream msg;
        msg << "reaction model evaluated at negative state (u=" << u << ", v=" << v << ")";
        throw DomainError(msg.str());
    }

    struct Visitor {
        double u, v;
        std::optional<Rates> operator()(const Absorption& k) const {
            const auto F = k.F.evaluate(v);
            const auto G = k.G.evaluate(v);
            if (!F || !G) return std::nullopt;
            return Rates{-(u * *F), u * *G};
        }
        std::optional<Rates> operator()(const Combustion& k) const {
            const double r = std::pow(u, k.m) * std::exp(v);
            return Rates{-r, r};
        }
        std::optional<Rates> operator()(const BlowupExample&) const {
            const double v2 = v * v;
            return Rates{(u - u * u) * v2, u * v2};
        }
        std::optional<Rates> operator()(const Custom& k) const {
            if (u > k.u_limit || v > k.v_limit) return std::nullopt;
            return k.rates(u, v);
        }
    };

    auto rates = std::visit(Visitor{u, v}, kind_);
    if (rates && (!std::isfinite(rates->f) || !std::isfinite(rates->g))) return std::nullopt;
    return rates;
}

ReactionModel ReactionModel::with_claims(std::optional<double> C, std::optional<double> mu) const {
    if (C && !(*C >= 0.0)) throw ConfigError("model.C must be >= 0");
    if (mu && !(*mu > 0.0)) throw ConfigError("model.mu must be > 0");
    return ReactionModel(kind_, C ? C : claimed_C_, mu ? mu : claimed_mu_);
}

std::string ReactionModel::name() const {
    struct Visitor {
        std::string operator()(const Absorption& k) const {
            return "absorption(F=" + k.F.to_string() + ",G=" + k.G.to_string() + ")";
        }
        std::string operator()(const Combustion& k) const {
            return "combustion(m=" + std::to_string(k.m) + ")";
        }
        std::string operator()(const BlowupExample&) const { return "blowup_example"; }
        std::string operator()(const Custom& k) const { return k.name; }
    };
    return std::visit(Visitor{}, kind_);
}

ThresholdResult find_threshold_A(const GrowthFunction& F, const GrowthFunction& G,
                                 double lambda, double s_max, int n_samples) {
    if (!(lambda > 0.0 && lambda < 1.0)) throw ConfigError("lambda must lie in (0, 1)");
    if (!(s_max > 0.0) || !std::isfinite(s_max)) throw ConfigError("s_max must be finite and > 0");
    if (n_samples < 2) throw ConfigError("n_samples must be >= 2");

    const double log_lambda = std::log(lambda);
    const double step = s_max / static_cast<double>(n_samples - 1);
    auto sample = [&](int k) { return k + 1 == n_samples ? s_max : step * k; };

    // Walk down from the tail; the first failing sample is the threshold.
    for (int k = n_samples - 1; k >= 0; --k) {
        const double s = sample(k);
        const double log_ratio = F.log_value(s) - G.log_value(s);
        if (std::isnan(log_ratio)) {
            std::ostringstream msg;
            msg << "log ratio unrepresentable at s=" << s;
            return {std::nullopt, msg.str()};
        }
        if (log_ratio > log_lambda) continue;
        if (k == n_samples - 1) {
            std::ostringstream msg;
            msg << "ratio F/G <= lambda at s_max=" << s_max << " (log ratio " << log_ratio << ")";
            return {std::nullopt, msg.str()};
        }
        return {s, {}};
    }
    return {0.0, {}};
}

}  // namespace rdcert
