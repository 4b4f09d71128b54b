#pragma once

#include <iosfwd>
#include <optional>

#include <json.hpp>

#include "maxenergy/asymptotics.hpp"
#include "maxenergy/bodies.hpp"
#include "maxenergy/discrete_energy.hpp"
#include "maxenergy/embedding.hpp"
#include "maxenergy/montecarlo.hpp"

namespace maxenergy::io {

using json = nlohmann::json;

/// Point-set CSV: header `x1,...,xn[,weight]`, one point per row, '.' decimals.
struct PointTable {
    PointSet points;
    std::optional<Eigen::VectorXd> weights;
};

PointTable read_points_csv(std::istream& in);
PointTable read_points_csv_file(const std::string& path);
void write_points_csv(std::ostream& out, const PointSet& points,
                      const std::optional<Eigen::VectorXd>& weights = std::nullopt);

/// {"kind": "lq_ball"|"ellipsoid"|"interval", "n": int, "q": float?, "semi_axes": [...]?, "matrix": [[...]]?}
/// `q` may also be the string "inf".
BodySpec body_from_json(const json& j);
json to_json(const BodySpec& body);

json to_json(const SignedAtomicMeasure& mu);
SignedAtomicMeasure measure_from_json(const json& j);

json to_json(const EnergyReport& report);
json to_json(const McEstimate& est);
json to_json(const SlopeFit& fit);
json to_json(const SweepReport& report);
json to_json(const SphericalEmbedding& emb);
json to_json(const RadiusGrowthReport& report);

json to_json(const Eigen::VectorXd& v);
json to_json(const Eigen::MatrixXd& m);

} // namespace maxenergy::io
