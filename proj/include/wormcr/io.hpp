#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "wormcr/catalog.hpp"
#include "wormcr/errors.hpp"
#include "wormcr/geometry.hpp"
#include "wormcr/verify.hpp"

namespace wormcr {

using Json = nlohmann::ordered_json;

/// Malformed or invalid configuration; `line` is 1-based, 0 when unknown.
class ConfigError : public Error {
public:
    ConfigError(const std::string& message, int line);
    int line() const { return line_; }

private:
    int line_;
};

Json complex_to_json(cplx v);
cplx complex_from_json(const Json& j);

Json to_json(const MapFamily& family);
/// {"tag": string, "params": [numbers], "formula": optional string}.
MapFamily map_family_from_json(const Json& j);

Json to_json(const VerificationReport& report);
Json to_json(const JetAtBase& jet);
Json to_json(const IsotropyVerdict& verdict);
Json to_json(const RankResult& rank);
Json to_json(const FormulaAudit& audit);
/// Both zeta and the projected z.
Json point_to_json(const CoverPoint& p);

struct RunConfig {
    struct Worm {
        Variant variant = Variant::Bounded;
        double mu = 2.0;
        /// Unset means the standard bump: c = 1/s(1), a = mu + 2.
        std::optional<double> c;
        std::optional<double> a;
        double quad_tol = 1e-14;
        double residual_tol = 1e-10;
        bool operator==(const Worm&) const = default;
    } worm;
    struct Sampling {
        std::size_t count = 1000;
        std::uint64_t seed = 1;
        bool operator==(const Sampling&) const = default;
    } sampling;
    struct Output {
        std::string format = "json";
        std::string path;
        bool operator==(const Output&) const = default;
    } output;
    ChartOptions chart{};

    bool operator==(const RunConfig&) const = default;
};

/// Throws ConfigError naming the offending line.
RunConfig parse_run_config(const std::string& text);
std::string serialize_run_config(const RunConfig& config);

WormSpec make_worm_spec(const RunConfig::Worm& worm);

}  // namespace wormcr
