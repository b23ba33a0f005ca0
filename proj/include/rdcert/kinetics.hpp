#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace rdcert {

/// Growth laws F, G used by absorption kinetics f = -u F(v), g = u G(v).
///
/// Every kind is evaluated against an overflow guard: above overflow_guard()
/// evaluate() reports overflow (nullopt) instead of returning infinity.
/// log_value() stays finite far beyond the guard and is what ratio
/// computations should use.
class GrowthFunction {
public:
    enum class Kind { Power, Exp, SubExp, DoubleExp, DoubleExpMinusPoly };

    /// s^beta, beta > 0.
    static GrowthFunction power(double beta);
    /// e^s.
    static GrowthFunction exp();
    /// e^(s^gamma), gamma in (0, 1).
    static GrowthFunction sub_exp(double gamma);
    /// e^(e^s).
    static GrowthFunction double_exp();
    /// e^(e^s) - P(s), P given by ascending coefficients c0 + c1 s + ...
    static GrowthFunction double_exp_minus_poly(std::vector<double> coeffs);

    /// Parses the textual form produced by to_string(), e.g. "power:2",
    /// "exp", "subexp:0.5", "doubleexp", "doubleexp_minus_poly:0,1".
    static GrowthFunction parse(std::string_view text);
    std::string to_string() const;

    Kind kind() const noexcept { return kind_; }
    /// beta for Power, gamma for SubExp, 0 otherwise.
    double parameter() const noexcept { return parameter_; }
    const std::vector<double>& coefficients() const noexcept { return coeffs_; }

    /// Largest s for which evaluate() is attempted. For DoubleExp this is
    /// log(log(DBL_MAX)) ~ 6.565.
    double overflow_guard() const noexcept;

    /// F(s) for s >= 0, or nullopt on overflow. Throws DomainError for s < 0.
    std::optional<double> evaluate(double s) const;

    /// log F(s); -inf when F(s) <= 0. Throws DomainError for s < 0.
    double log_value(double s) const;

    bool operator==(const GrowthFunction&) const = default;

private:
    GrowthFunction(Kind kind, double parameter, std::vector<double> coeffs)
        : kind_(kind), parameter_(parameter), coeffs_(std::move(coeffs)) {}

    double poly(double s) const noexcept;

    Kind kind_;
    double parameter_;
    std::vector<double> coeffs_;
};

struct Rates {
    double f;
    double g;
};

/// Closed catalog of reaction pairs (f, g) with their claimed mass-control
/// constants (C, mu). A Custom entry is the extension point for user
/// kinetics: it must supply both rates, be C^1 on [0, u_limit] x [0, v_limit]
/// and return nullopt outside that box.
class ReactionModel {
public:
    struct Absorption {
        GrowthFunction F;
        GrowthFunction G;
    };
    struct Combustion {
        int m;
    };
    struct BlowupExample {};
    struct Custom {
        std::string name;
        std::function<std::optional<Rates>(double u, double v)> rates;
        double u_limit;
        double v_limit;
    };
    using Kind = std::variant<Absorption, Combustion, BlowupExample, Custom>;

    /// Absorption model with explicit claims.
    static ReactionModel absorption(GrowthFunction F, GrowthFunction G,
                                    std::optional<double> claimed_C,
                                    std::optional<double> claimed_mu);
    /// Absorption model whose claims come from find_threshold_A:
    /// C = A, mu = lambda. C stays unset when no threshold is found.
    static ReactionModel absorption_with_threshold(GrowthFunction F, GrowthFunction G,
                                                   double lambda = 0.5, double s_max = 20.0,
                                                   int n_samples = 2001);
    /// Y^m e^T kinetics; claims (C, mu) = (0, 1/2).
    static ReactionModel combustion(int m);
    /// (u - u^2) v^2, u v^2; no claims (the mass-control condition fails).
    static ReactionModel blowup_example();
    static ReactionModel custom(Custom spec, std::optional<double> claimed_C = std::nullopt,
                                std::optional<double> claimed_mu = std::nullopt);

    /// (f, g) at (u, v), nullopt on overflow. Throws DomainError when u or v
    /// is negative or NaN.
    std::optional<Rates> evaluate(double u, double v) const;

    /// Copy whose claims are replaced where an override is given.
    ReactionModel with_claims(std::optional<double> C, std::optional<double> mu) const;

    const Kind& kind() const noexcept { return kind_; }
    std::optional<double> claimed_C() const noexcept { return claimed_C_; }
    std::optional<double> claimed_mu() const noexcept { return claimed_mu_; }
    std::string name() const;

private:
    ReactionModel(Kind kind, std::optional<double> C, std::optional<double> mu)
        : kind_(std::move(kind)), claimed_C_(C), claimed_mu_(mu) {}

    Kind kind_;
    std::optional<double> claimed_C_;
    std::optional<double> claimed_mu_;
};

struct ThresholdResult {
    std::optional<double> A;  // nullopt: NotFound
    std::string diagnostic;
};

/// Smallest sampled s* on the uniform lattice of [0, s_max] such that
/// F(s)/G(s) > lambda at every sample in (s*, s_max]. The ratio is formed in
/// log domain, so F and G may individually overflow. NotFound when the tail
/// sample itself fails or the log ratio is unrepresentable.
ThresholdResult find_threshold_A(const GrowthFunction& F, const GrowthFunction& G,
                                 double lambda, double s_max, int n_samples);

}  // namespace rdcert
