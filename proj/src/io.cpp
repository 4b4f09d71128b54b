#include "maxenergy/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "maxenergy/error.hpp"

namespace maxenergy::io {

namespace {

std::vector<std::string> split_csv_line(const std::string& line)
{
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ','))
        cells.push_back(cell);
    if (!line.empty() && line.back() == ',')
        cells.emplace_back();
    return cells;
}

std::string trim(const std::string& s)
{
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos)
        return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_number(const std::string& text, std::size_t line_no)
{
    const std::string t = trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty() || !std::isfinite(value))
        throw FormatError("line " + std::to_string(line_no) + ": not a finite number: '" + t + "'");
    return value;
}

} // namespace

PointTable read_points_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line))
        throw FormatError("point CSV is empty (expected header x1,...,xn[,weight])");
    if (line.size() >= 3 && static_cast<unsigned char>(line[0]) == 0xEF)
        line.erase(0, 3); // UTF-8 byte-order mark
    const auto header = split_csv_line(line);
    std::size_t dim = 0;
    bool has_weight = false;
    for (std::size_t i = 0; i < header.size(); ++i) {
        const std::string name = trim(header[i]);
        if (name == "x" + std::to_string(i + 1)) {
            if (has_weight)
                throw FormatError("header: coordinate column after weight column");
            ++dim;
        } else if (name == "weight" && i + 1 == header.size()) {
            has_weight = true;
        } else {
            throw FormatError("header: unexpected column '" + name + "' (expected x1,...,xn[,weight])");
        }
    }
    if (dim == 0)
        throw FormatError("header has no coordinate columns");

    std::vector<std::vector<double>> rows;
    std::vector<double> weights;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty())
            continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != header.size())
            throw FormatError("line " + std::to_string(line_no) + ": expected " + std::to_string(header.size()) +
                              " columns, got " + std::to_string(cells.size()));
        std::vector<double> row(dim);
        for (std::size_t d = 0; d < dim; ++d)
            row[d] = parse_number(cells[d], line_no);
        rows.push_back(std::move(row));
        if (has_weight)
            weights.push_back(parse_number(cells[dim], line_no));
    }
    if (rows.empty())
        throw FormatError("point CSV has no data rows");

    PointTable table;
    table.points.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t d = 0; d < dim; ++d)
            table.points(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d)) = rows[i][d];
    if (has_weight)
        table.weights = Eigen::Map<const Eigen::VectorXd>(weights.data(), static_cast<Eigen::Index>(weights.size()));
    return table;
}

PointTable read_points_csv_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw FormatError("cannot open point file '" + path + "'");
    return read_points_csv(in);
}

void write_points_csv(std::ostream& out, const PointSet& points, const std::optional<Eigen::VectorXd>& weights)
{
    const auto old_precision = out.precision(17);
    for (Eigen::Index d = 0; d < points.cols(); ++d)
        out << (d ? "," : "") << 'x' << d + 1;
    if (weights)
        out << ",weight";
    out << '\n';
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
        for (Eigen::Index d = 0; d < points.cols(); ++d)
            out << (d ? "," : "") << points(i, d);
        if (weights)
            out << ',' << (*weights)[i];
        out << '\n';
    }
    out.precision(old_precision);
}

BodySpec body_from_json(const json& j)
{
    try {
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "interval") {
            if (j.contains("n") && j.at("n").get<int>() != 1)
                throw FormatError("interval body must have n = 1");
            return BodySpec::interval();
        }
        if (kind == "lq_ball") {
            const int n = j.at("n").get<int>();
            const json& qj = j.at("q");
            double q = 0.0;
            if (qj.is_string()) {
                const auto s = qj.get<std::string>();
                if (s != "inf" && s != "infinity")
                    throw FormatError("lq_ball q must be a number or \"inf\"");
                q = kInf;
            } else {
                q = qj.get<double>();
            }
            return BodySpec::lq_ball(n, q);
        }
        if (kind == "ellipsoid") {
            std::optional<BodySpec> body;
            if (j.contains("semi_axes")) {
                body = BodySpec::ellipsoid(j.at("semi_axes").get<std::vector<double>>());
            } else if (j.contains("matrix")) {
                const auto rows = j.at("matrix").get<std::vector<std::vector<double>>>();
                const auto n = static_cast<Eigen::Index>(rows.size());
                Eigen::MatrixXd map(n, n);
                for (Eigen::Index i = 0; i < n; ++i) {
                    if (static_cast<Eigen::Index>(rows[static_cast<std::size_t>(i)].size()) != n)
                        throw FormatError("ellipsoid matrix must be square");
                    for (Eigen::Index k = 0; k < n; ++k)
                        map(i, k) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
                }
                body = BodySpec::ellipsoid(map);
            } else {
                throw FormatError("ellipsoid body needs \"semi_axes\" or \"matrix\"");
            }
            if (j.contains("n") && j.at("n").get<int>() != body->dimension())
                throw FormatError("ellipsoid \"n\" does not match its axes");
            return *body;
        }
        throw FormatError("unknown body kind '" + kind + "'");
    } catch (const json::exception& e) {
        throw FormatError(std::string("malformed body JSON: ") + e.what());
    }
}

json to_json(const Eigen::VectorXd& v)
{
    return json(std::vector<double>(v.data(), v.data() + v.size()));
}

json to_json(const Eigen::MatrixXd& m)
{
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        const Eigen::VectorXd row = m.row(i).transpose();
        rows.push_back(to_json(row));
    }
    return rows;
}

json to_json(const BodySpec& body)
{
    json j;
    j["n"] = body.dimension();
    if (body.as_interval()) {
        j["kind"] = "interval";
    } else if (const auto* b = body.as_lq_ball()) {
        j["kind"] = "lq_ball";
        j["q"] = std::isinf(b->q) ? json("inf") : json(b->q);
    } else {
        const auto* e = body.as_ellipsoid();
        j["kind"] = "ellipsoid";
        if (e->semi_axes)
            j["semi_axes"] = *e->semi_axes;
        else
            j["matrix"] = to_json(e->map);
    }
    return j;
}

json to_json(const SignedAtomicMeasure& mu)
{
    return {{"dimension", mu.dimension()}, {"points", to_json(mu.points)}, {"weights", to_json(mu.weights)}};
}

SignedAtomicMeasure measure_from_json(const json& j)
{
    try {
        const auto pts = j.at("points").get<std::vector<std::vector<double>>>();
        const auto w = j.at("weights").get<std::vector<double>>();
        if (pts.empty())
            throw FormatError("measure has no points");
        const auto dim = static_cast<Eigen::Index>(pts.front().size());
        if (j.contains("dimension") && j.at("dimension").get<Eigen::Index>() != dim)
            throw FormatError("measure dimension does not match its points");
        SignedAtomicMeasure mu;
        mu.points.resize(static_cast<Eigen::Index>(pts.size()), dim);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (static_cast<Eigen::Index>(pts[i].size()) != dim)
                throw FormatError("measure points have inconsistent dimensions");
            for (Eigen::Index d = 0; d < dim; ++d)
                mu.points(static_cast<Eigen::Index>(i), d) = pts[i][static_cast<std::size_t>(d)];
        }
        mu.weights = Eigen::Map<const Eigen::VectorXd>(w.data(), static_cast<Eigen::Index>(w.size()));
        mu.validate();
        return mu;
    } catch (const json::exception& e) {
        throw FormatError(std::string("malformed measure JSON: ") + e.what());
    }
}

json to_json(const EnergyReport& report)
{
    json trace = json::array();
    for (const auto& t : report.trace)
        trace.push_back({{"resolution", t.resolution}, {"value", t.value}});
    json j{{"value", report.value}, {"method", std::string(to_string(report.method))}, {"trace", trace}};
    j["stderr"] = report.std_error ? json(*report.std_error) : json(nullptr);
    return j;
}

json to_json(const McEstimate& est)
{
    return {{"estimate", est.estimate}, {"stderr", est.std_error}, {"samples", est.samples},
            {"method", "monte-carlo"}};
}

json to_json(const SlopeFit& fit)
{
    return {{"slope", fit.slope},       {"intercept", fit.intercept}, {"stderr", fit.std_error},
            {"ci95_low", fit.ci_low},   {"ci95_high", fit.ci_high}};
}

json to_json(const SweepReport& report)
{
    json rows = json::array();
    for (const auto& r : report.rows)
        rows.push_back({{"n", r.n},
                        {"lower", r.lower},
                        {"lower_method", r.lower_method},
                        {"lower_stderr", r.lower_std_error},
                        {"discrete", r.discrete},
                        {"upper", r.upper},
                        {"upper_stderr", r.upper_std_error},
                        {"upper_method", r.upper_method}});
    json j{{"family", report.family}, {"p", report.p}, {"mp", report.mp}, {"rows", rows},
           {"lower_fit", to_json(report.lower_fit)}, {"upper_fit", to_json(report.upper_fit)}};
    j[report.family] = std::isinf(report.parameter) ? json("inf") : json(report.parameter);
    j["expected_slope"] = std::isfinite(report.expected_slope) ? json(report.expected_slope) : json(nullptr);
    return j;
}

json to_json(const SphericalEmbedding& emb)
{
    return {{"radius", emb.radius},
            {"alpha", emb.alpha},
            {"coordinates", to_json(emb.coordinates)},
            {"gram_spectrum", to_json(emb.gram_spectrum)},
            {"gram_min_eigenvalue", emb.gram_min_eigenvalue},
            {"max_distance_residual", emb.max_distance_residual},
            {"max_norm_residual", emb.max_norm_residual}};
}

json to_json(const RadiusGrowthReport& report)
{
    json rows = json::array();
    for (const auto& r : report.rows)
        rows.push_back({{"n", r.n},
                        {"R_lower", r.r_lower},
                        {"lower_method", r.lower_method},
                        {"R_discrete", r.r_discrete},
                        {"R_upper", r.r_upper},
                        {"R_upper_stderr", r.r_upper_std_error}});
    return {{"q", report.q},
            {"alpha", report.alpha},
            {"mp", report.mp},
            {"expected_slope", report.expected_slope},
            {"rows", rows},
            {"lower_fit", to_json(report.lower_fit)},
            {"upper_fit", to_json(report.upper_fit)}};
}

} // namespace maxenergy::io
