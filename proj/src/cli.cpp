#include "maxenergy/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "maxenergy/asymptotics.hpp"
#include "maxenergy/discrete_energy.hpp"
#include "maxenergy/embedding.hpp"
#include "maxenergy/error.hpp"
#include "maxenergy/io.hpp"
#include "maxenergy/specfun.hpp"
#include "maxenergy/stable.hpp"

namespace maxenergy::cli {

namespace {

using io::json;

constexpr std::size_t kDefaultSamples = 1'000'000;
const std::vector<std::size_t> kDefaultBodyResolutions{250, 500, 1000, 2000};
const std::vector<int> kDefaultDims{4, 8, 16, 32, 64, 128};

struct Common {
    std::optional<std::uint64_t> seed;
    std::string format = "json";
    std::string output = "-";
};

/// What a command produces: the resolved configuration, the result and a flat CSV view.
struct Outcome {
    json config;
    json result;
    std::function<void(std::ostream&)> csv;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag)
{
    if (flag)
        return *flag;
    if (const char* env = std::getenv(std::string(kSeedEnv).c_str()); env && *env) {
        const std::string text(env);
        std::size_t used = 0;
        std::uint64_t value = 0;
        try {
            value = std::stoull(text, &used, 0);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != text.size() || text.front() == '-')
            throw DomainError(std::string(kSeedEnv) + " is not an unsigned 64-bit integer: '" + text + "'");
        return value;
    }
    return kDefaultSeed;
}

std::string utc_timestamp()
{
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream ss;
    ss << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return ss.str();
}

double parse_exponent(const std::string& text, const char* name)
{
    if (text == "inf" || text == "infinity")
        return kInf;
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || text.empty())
        throw DomainError(std::string(name) + " must be a number or 'inf', got '" + text + "'");
    return value;
}

json exponent_json(double q)
{
    return std::isinf(q) ? json("inf") : json(q);
}

void add_common(CLI::App* sub, Common& common)
{
    sub->add_option("--seed", common.seed, "RNG seed (default: $" + std::string(kSeedEnv) + " or " +
                                               std::to_string(kDefaultSeed) + ")");
    sub->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("-o,--output", common.output, "Output file ('-' for standard output)");
}

void write_row(std::ostream& os, std::initializer_list<std::string> cells)
{
    bool first = true;
    for (const auto& c : cells) {
        os << (first ? "" : ",") << c;
        first = false;
    }
    os << '\n';
}

std::string num(double v)
{
    std::ostringstream ss;
    ss << std::setprecision(17) << v;
    return ss.str();
}

void csv_estimate(std::ostream& os, const McEstimate& est, std::uint64_t seed)
{
    write_row(os, {"estimate", "stderr", "samples", "seed", "method"});
    write_row(os, {num(est.estimate), num(est.std_error), std::to_string(est.samples), std::to_string(seed),
                   "monte-carlo"});
}

void csv_trace(std::ostream& os, const EnergyReport& report)
{
    write_row(os, {"resolution", "value", "method"});
    for (const auto& t : report.trace)
        write_row(os, {std::to_string(t.resolution), num(t.value), std::string(to_string(report.method))});
}

json estimate_with_seed(const McEstimate& est, std::uint64_t seed)
{
    json j = io::to_json(est);
    j["seed"] = seed;
    return j;
}

// ---- mp -------------------------------------------------------------------

struct MpArgs {
    double p = 0.0;
    std::vector<std::size_t> grids{std::begin(kDefaultMpGrids), std::end(kDefaultMpGrids)};
    bool uniform = false;
};

Outcome cmd_mp(const MpArgs& a, std::uint64_t seed)
{
    const auto family = a.uniform ? GridFamily::Uniform : GridFamily::Chebyshev;
    const OptimalMeasure opt = estimate_mp(a.p, a.grids, family);
    Outcome o;
    o.config = {{"p", a.p}, {"grids", a.grids}, {"grid_family", a.uniform ? "uniform" : "chebyshev"},
                {"seed", seed}};
    o.result = io::to_json(opt.report);
    o.result["condition"] = opt.condition;
    o.result["balance_defect"] = balance_defect(opt.measure);
    o.result["weights"] = io::to_json(opt.measure.weights);
    o.csv = [report = opt.report](std::ostream& os) { csv_trace(os, report); };
    return o;
}

// ---- max-energy -----------------------------------------------------------

struct MaxEnergyArgs {
    std::string body;
    std::string points;
    double r = 2.0;
    double p = 0.0;
    std::vector<std::size_t> resolutions;
    std::string design = "layered";
    std::optional<double> mp;
    std::size_t samples = kDefaultSamples;
    bool with_measure = false;
};

Outcome max_energy_points(const MaxEnergyArgs& a, std::uint64_t seed)
{
    const io::PointTable table = io::read_points_csv_file(a.points);
    const OptimalMeasure opt = max_energy_on_points(table.points, a.r, a.p);
    Outcome o;
    o.config = {{"points", a.points}, {"r", a.r}, {"p", a.p}, {"seed", seed}, {"point_count", table.points.rows()}};
    o.result = io::to_json(opt.report);
    o.result["condition"] = opt.condition;
    o.result["double_sum"] = opt.double_sum;
    o.result["measure"] = io::to_json(opt.measure);
    if (table.weights) {
        SignedAtomicMeasure given{table.points, *table.weights};
        given.validate();
        o.result["input_energy"] = energy_of_measure(given, a.r, a.p);
    }
    o.csv = [measure = opt.measure](std::ostream& os) {
        io::write_points_csv(os, measure.points, measure.weights);
    };
    return o;
}

Outcome max_energy_body(const MaxEnergyArgs& a, std::uint64_t seed)
{
    const BodySpec body = parse_body(a.body);
    validate_exponents(a.r, a.p);
    std::vector<std::size_t> resolutions = a.resolutions;
    if (resolutions.empty())
        resolutions = body.dimension() == 1
                          ? std::vector<std::size_t>(std::begin(kDefaultMpGrids), std::end(kDefaultMpGrids))
                          : kDefaultBodyResolutions;
    PointDesign design = PointDesign::Layered;
    if (a.design == "filtered")
        design = PointDesign::Filtered;

    const OptimalMeasure opt = max_energy_in_body(body, a.r, a.p, resolutions, seed, design);

    Outcome o;
    o.config = {{"body", io::to_json(body)}, {"r", a.r},          {"p", a.p},
                {"resolutions", resolutions}, {"design", a.design}, {"seed", seed}};
    o.result = io::to_json(opt.report);
    o.result["condition"] = opt.condition;
    if (a.with_measure)
        o.result["measure"] = io::to_json(opt.measure);

    if (a.r == 2.0) {
        const double mp = resolve_mp(a.p, a.mp);
        o.config["mp"] = mp;
        json reference;
        if (body.is_euclidean_ball()) {
            reference = {{"value", specfun::closed_form_m_ball(body.dimension(), a.p, mp)},
                         {"method", "closed-form"},
                         {"stderr", nullptr}};
        } else if (const auto* e = body.as_ellipsoid()) {
            o.config["samples"] = a.samples;
            const McEstimate pi = pi_p_ellipsoid(e->map, a.p, a.samples, RngStream{seed, 1});
            reference = {{"value", mp * pi.estimate},
                         {"method", "monte-carlo"},
                         {"stderr", mp * pi.std_error},
                         {"samples", pi.samples}};
        }
        if (!reference.is_null())
            o.result["reference"] = reference;
    }
    o.csv = [report = opt.report](std::ostream& os) { csv_trace(os, report); };
    return o;
}

// ---- pi-p, gub, sphere-moment -----------------------------------------------

struct PiPArgs {
    std::string body;
    double p = 0.0;
    std::size_t samples = kDefaultSamples;
};

Outcome cmd_pi_p(const PiPArgs& a, std::uint64_t seed)
{
    const BodySpec body = parse_body(a.body);
    Eigen::MatrixXd map;
    if (const auto* e = body.as_ellipsoid())
        map = e->map;
    else if (body.is_euclidean_ball())
        map = Eigen::MatrixXd::Identity(body.dimension(), body.dimension());
    else
        throw DomainError("pi-p needs an ellipsoid or a Euclidean ball");

    const McEstimate est = pi_p_ellipsoid(map, a.p, a.samples, RngStream{seed, 0});
    Outcome o;
    o.config = {{"body", io::to_json(body)}, {"p", a.p}, {"samples", a.samples}, {"seed", seed}};
    o.result = {{"pi_p_power", estimate_with_seed(est, seed)},
                {"pi_p", std::pow(est.estimate, 1.0 / a.p)},
                {"identity_value", specfun::b_coeff(body.dimension(), a.p)}};
    o.csv = [est, seed](std::ostream& os) { csv_estimate(os, est, seed); };
    return o;
}

struct GubArgs {
    std::string body;
    double r = 2.0;
    double p = 0.0;
    std::optional<double> mp;
    std::size_t samples = kDefaultSamples;
};

Outcome cmd_gub(const GubArgs& a, std::uint64_t seed)
{
    const BodySpec body = parse_body(a.body);
    const double mp = resolve_mp(a.p, a.mp);
    const McEstimate est = gub_upper_bound(body, a.r, a.p, mp, a.samples, RngStream{seed, 0});
    Outcome o;
    o.config = {{"body", io::to_json(body)}, {"r", a.r},           {"p", a.p},
                {"mp", mp},                  {"samples", a.samples}, {"seed", seed}};
    o.result = {{"upper_bound", estimate_with_seed(est, seed)}};
    o.csv = [est, seed](std::ostream& os) { csv_estimate(os, est, seed); };
    return o;
}

struct SphereMomentArgs {
    int n = 0;
    double r = 2.0;
    double p = 0.0;
    std::size_t samples = kDefaultSamples;
};

Outcome cmd_sphere_moment(const SphereMomentArgs& a, std::uint64_t seed)
{
    const McEstimate est = sphere_lr_moment(a.n, a.r, a.p, a.samples, RngStream{seed, 0});
    const double scale = std::pow(static_cast<double>(a.n), (0.5 - 1.0 / a.r) * a.p);
    Outcome o;
    o.config = {{"n", a.n}, {"r", a.r}, {"p", a.p}, {"samples", a.samples}, {"seed", seed}};
    o.result = {{"moment", estimate_with_seed(est, seed)},
                {"phi", est.estimate * scale},
                {"phi_stderr", est.std_error * scale}};
    o.csv = [est, seed](std::ostream& os) { csv_estimate(os, est, seed); };
    return o;
}

// ---- asymptotics, radius --------------------------------------------------

struct SweepArgs {
    std::string q;
    std::optional<double> r;
    double p = 1.0;
    std::vector<int> ns = kDefaultDims;
    std::size_t samples = kDefaultSamples;
    std::size_t resolution = SweepBudget{}.resolution;
    std::optional<double> mp;
};

void csv_sweep(std::ostream& os, const SweepReport& report)
{
    write_row(os, {"n", "lower", "lower_stderr", "lower_method", "discrete", "upper", "upper_stderr", "upper_method"});
    for (const auto& row : report.rows)
        write_row(os, {std::to_string(row.n), num(row.lower), num(row.lower_std_error), row.lower_method, num(row.discrete), num(row.upper),
                       num(row.upper_std_error), row.upper_method});
}

Outcome cmd_asymptotics(const SweepArgs& a, std::uint64_t seed)
{
    if (a.q.empty() == !a.r)
        throw DomainError("asymptotics needs exactly one of --q or --r");
    SweepBudget budget;
    budget.samples = a.samples;
    budget.resolution = a.resolution;
    budget.seed = seed;
    budget.mp = a.mp;

    const SweepReport report = !a.q.empty() ? sweep_lq_balls(parse_exponent(a.q, "--q"), a.p, a.ns, budget)
                                            : sweep_lr_distances(*a.r, a.p, a.ns, budget);
    Outcome o;
    o.config = {{"p", a.p},         {"ns", a.ns},  {"samples", a.samples}, {"resolution", a.resolution},
                {"mp", report.mp}, {"seed", seed}};
    o.config[report.family] = report.family == "q" ? exponent_json(report.parameter) : json(report.parameter);
    o.result = io::to_json(report);
    o.csv = [report](std::ostream& os) { csv_sweep(os, report); };
    return o;
}

struct RadiusArgs {
    std::optional<int> n;
    double alpha = 0.0;
    std::optional<double> mp;
    std::string q;
    std::vector<int> ns = kDefaultDims;
    std::size_t samples = kDefaultSamples;
    std::size_t resolution = SweepBudget{}.resolution;
};

Outcome cmd_radius(const RadiusArgs& a, std::uint64_t seed)
{
    if (!a.n && a.q.empty())
        throw DomainError("radius needs --n (closed form) or --q (growth sweep)");
    if (!(a.alpha > 0.0 && a.alpha < 1.0))
        throw DomainError("alpha must lie in (0, 1)");
    const double mp = resolve_mp(2.0 * a.alpha, a.mp);
    Outcome o;
    o.config = {{"alpha", a.alpha}, {"mp", mp}, {"seed", seed}};
    o.result = json::object();
    std::optional<RadiusGrowthReport> growth;
    double closed = 0.0;
    if (a.n) {
        closed = radius_closed_form_ball(*a.n, a.alpha, mp);
        o.config["n"] = *a.n;
        o.result["radius"] = closed;
        o.result["method"] = "closed-form";
    }
    if (!a.q.empty()) {
        SweepBudget budget;
        budget.samples = a.samples;
        budget.resolution = a.resolution;
        budget.seed = seed;
        budget.mp = mp;
        growth = radius_growth_report(parse_exponent(a.q, "--q"), a.alpha, a.ns, budget);
        o.config["q"] = exponent_json(growth->q);
        o.config["ns"] = a.ns;
        o.config["samples"] = a.samples;
        o.config["resolution"] = a.resolution;
        o.result["growth"] = io::to_json(*growth);
    }
    o.csv = [growth, closed, n = a.n](std::ostream& os) {
        if (growth) {
            write_row(os, {"n", "R_lower", "lower_method", "R_discrete", "R_upper", "R_upper_stderr"});
            for (const auto& row : growth->rows)
                write_row(os, {std::to_string(row.n), num(row.r_lower), row.lower_method, num(row.r_discrete),
                               num(row.r_upper), num(row.r_upper_std_error)});
        } else {
            write_row(os, {"n", "radius", "method"});
            write_row(os, {std::to_string(*n), num(closed), "closed-form"});
        }
    };
    return o;
}

// ---- embed ----------------------------------------------------------------

struct EmbedArgs {
    std::string points;
    double alpha = 0.0;
    std::optional<double> radius;
};

Outcome cmd_embed(const EmbedArgs& a, std::uint64_t seed)
{
    const io::PointTable table = io::read_points_csv_file(a.points);
    const SchoenbergRadius minimal = schoenberg_radius_points(table.points, a.alpha);
    const double radius = a.radius.value_or(minimal.radius);
    const SphericalEmbedding emb = embed_snowflake(table.points, a.alpha, radius);
    Outcome o;
    o.config = {{"points", a.points},
                {"alpha", a.alpha},
                {"radius", a.radius ? json(*a.radius) : json("schoenberg")},
                {"psd_tolerance", kPsdTolerance},
                {"seed", seed}};
    o.result = io::to_json(emb);
    o.result["schoenberg_radius"] = minimal.radius;
    o.result["energy"] = minimal.energy;
    o.csv = [coords = emb.coordinates](std::ostream& os) {
        for (Eigen::Index d = 0; d < coords.cols(); ++d)
            os << (d ? "," : "") << 'y' << d + 1;
        os << '\n';
        for (Eigen::Index i = 0; i < coords.rows(); ++i) {
            for (Eigen::Index d = 0; d < coords.cols(); ++d)
                os << (d ? "," : "") << num(coords(i, d));
            os << '\n';
        }
    };
    return o;
}

void emit(const Outcome& outcome, const std::string& command, const Common& common, std::ostream& out)
{
    std::ofstream file;
    std::ostream* os = &out;
    if (common.output != "-") {
        file.open(common.output);
        if (!file)
            throw FormatError("cannot open output file '" + common.output + "'");
        os = &file;
    }
    if (common.format == "csv") {
        outcome.csv(*os);
    } else {
        json config = outcome.config;
        config["format"] = common.format;
        json record{{"tool", kToolName},
                    {"version", kVersion},
                    {"command", command},
                    {"config", config},
                    {"result", outcome.result},
                    {"timestamp", utc_timestamp()}};
        *os << record.dump(2) << '\n';
    }
    os->flush();
}

} // namespace

BodySpec parse_body(const std::string& text)
{
    if (!text.empty() && text.front() == '{') {
        json j;
        try {
            j = json::parse(text);
        } catch (const json::exception& e) {
            throw FormatError(std::string("body JSON does not parse: ") + e.what());
        }
        return io::body_from_json(j);
    }
    const auto colon = text.find(':');
    const std::string kind = text.substr(0, colon);
    const std::string rest = colon == std::string::npos ? std::string() : text.substr(colon + 1);
    auto to_int = [&](const std::string& s) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != s.size() || s.empty())
            throw DomainError("body '" + text + "': bad dimension '" + s + "'");
        return v;
    };
    if (kind == "interval" && rest.empty())
        return BodySpec::interval();
    if (kind == "ball" && !rest.empty())
        return BodySpec::euclidean_ball(to_int(rest));
    if (kind == "lq") {
        const auto sep = rest.find(':');
        if (sep == std::string::npos)
            throw DomainError("body '" + text + "': expected lq:N:Q");
        return BodySpec::lq_ball(to_int(rest.substr(0, sep)), parse_exponent(rest.substr(sep + 1), "q"));
    }
    if (kind == "ellipsoid" && !rest.empty()) {
        std::vector<double> axes;
        std::stringstream ss(rest);
        std::string cell;
        while (std::getline(ss, cell, ','))
            axes.push_back(parse_exponent(cell, "semi-axis"));
        return BodySpec::ellipsoid(axes);
    }
    throw DomainError("unrecognised body '" + text +
                      "' (use interval, ball:N, lq:N:Q, ellipsoid:a1,...,an or a JSON object)");
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Maximal energies of convex bodies, Schoenberg radii and spherical snowflake embeddings",
                 std::string(kToolName)};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    Common common;
    std::string command;
    std::function<Outcome(std::uint64_t)> action;
    auto bind = [&](CLI::App* sub, auto fn) {
        add_common(sub, common);
        sub->callback([&, sub, fn] {
            command = sub->get_name();
            action = fn;
        });
    };

    MpArgs mp;
    auto* mp_cmd = app.add_subcommand("mp", "Grid estimate of the interval constant m_p");
    mp_cmd->add_option("--p", mp.p, "Energy exponent, 0 < p < 2")->required();
    mp_cmd->add_option("--grids", mp.grids, "Odd, increasing grid sizes")->delimiter(',')->capture_default_str();
    mp_cmd->add_flag("--uniform", mp.uniform, "Uniform grid instead of Chebyshev-Lobatto");
    bind(mp_cmd, [&](std::uint64_t seed) { return cmd_mp(mp, seed); });

    MaxEnergyArgs me;
    auto* me_cmd = app.add_subcommand("max-energy", "Certified lower bound for M_p(K, d_r)");
    auto* me_body = me_cmd->add_option("--body", me.body, "interval | ball:N | lq:N:Q | ellipsoid:a1,... | JSON");
    auto* me_points = me_cmd->add_option("--points", me.points, "Point-set CSV; maximise over exactly these points");
    me_body->excludes(me_points);
    me_cmd->add_option("--r", me.r, "Distance exponent, 1 <= r <= 2")->capture_default_str();
    me_cmd->add_option("--p", me.p, "Energy exponent")->required();
    me_cmd->add_option("--resolutions", me.resolutions, "Point counts (default 41,101,401 in 1-D, else 250,500,1000,2000)")
        ->delimiter(',');
    me_cmd->add_option("--design", me.design, "Point design")
        ->check(CLI::IsMember({"layered", "filtered"}))
        ->capture_default_str();
    me_cmd->add_option("--mp", me.mp, "m_p for the reference value (default: 1 at p = 1, else grid estimate)");
    me_cmd->add_option("--samples", me.samples, "Monte-Carlo draws for ellipsoid reference")->capture_default_str();
    me_cmd->add_flag("--with-measure", me.with_measure, "Include the maximizing measure in the record");
    bind(me_cmd, [&](std::uint64_t seed) {
        if (me.points.empty() == me.body.empty())
            throw DomainError("max-energy needs exactly one of --body or --points");
        return me.points.empty() ? max_energy_body(me, seed) : max_energy_points(me, seed);
    });

    PiPArgs pi;
    auto* pi_cmd = app.add_subcommand("pi-p", "pi_p(T)^p for the ellipsoid T(B_2^n)");
    pi_cmd->add_option("--body", pi.body, "ellipsoid:a1,... | ball:N | JSON")->required();
    pi_cmd->add_option("--p", pi.p, "0 < p < 2")->required();
    pi_cmd->add_option("--samples", pi.samples)->capture_default_str();
    bind(pi_cmd, [&](std::uint64_t seed) { return cmd_pi_p(pi, seed); });

    GubArgs gub;
    auto* gub_cmd = app.add_subcommand("gub", "Stable-measure upper bound for M_p(K, d_r)");
    gub_cmd->add_option("--body", gub.body)->required();
    gub_cmd->add_option("--r", gub.r)->capture_default_str();
    gub_cmd->add_option("--p", gub.p)->required();
    gub_cmd->add_option("--mp", gub.mp, "m_p (default: 1 at p = 1, else grid estimate)");
    gub_cmd->add_option("--samples", gub.samples)->capture_default_str();
    bind(gub_cmd, [&](std::uint64_t seed) { return cmd_gub(gub, seed); });

    SphereMomentArgs sm;
    auto* sm_cmd = app.add_subcommand("sphere-moment", "Average of ||t||_r^p over the unit sphere");
    sm_cmd->add_option("--n", sm.n)->required();
    sm_cmd->add_option("--r", sm.r)->capture_default_str();
    sm_cmd->add_option("--p", sm.p)->required();
    sm_cmd->add_option("--samples", sm.samples)->capture_default_str();
    bind(sm_cmd, [&](std::uint64_t seed) { return cmd_sphere_moment(sm, seed); });

    SweepArgs sw;
    auto* sw_cmd = app.add_subcommand("asymptotics", "Growth of M_p(B_q^n, d_2) or M_p(B_2^n, d_r) in n");
    sw_cmd->add_option("--q", sw.q, "l_q ball sweep (number or inf)");
    sw_cmd->add_option("--r", sw.r, "d_r sweep on the Euclidean ball");
    sw_cmd->add_option("--p", sw.p)->capture_default_str();
    sw_cmd->add_option("--ns", sw.ns)->delimiter(',')->capture_default_str();
    sw_cmd->add_option("--samples", sw.samples)->capture_default_str();
    sw_cmd->add_option("--resolution", sw.resolution, "Points in the discrete lower-bound run")->capture_default_str();
    sw_cmd->add_option("--mp", sw.mp);
    bind(sw_cmd, [&](std::uint64_t seed) { return cmd_asymptotics(sw, seed); });

    RadiusArgs ra;
    auto* ra_cmd = app.add_subcommand("radius", "Schoenberg radius of (B_2^n, d_2^alpha), or its growth on l_q balls");
    ra_cmd->add_option("--n", ra.n);
    ra_cmd->add_option("--alpha", ra.alpha)->required();
    ra_cmd->add_option("--mp", ra.mp, "m_{2 alpha} (default: 1 at alpha = 1/2, else grid estimate)");
    ra_cmd->add_option("--q", ra.q, "Growth sweep on B_q^n, 1 < q <= 2");
    ra_cmd->add_option("--ns", ra.ns)->delimiter(',')->capture_default_str();
    ra_cmd->add_option("--samples", ra.samples)->capture_default_str();
    ra_cmd->add_option("--resolution", ra.resolution)->capture_default_str();
    bind(ra_cmd, [&](std::uint64_t seed) { return cmd_radius(ra, seed); });

    EmbedArgs em;
    auto* em_cmd = app.add_subcommand("embed", "Isometric embedding of (X, d_2^alpha) on a sphere");
    em_cmd->add_option("--points", em.points, "Point-set CSV")->required();
    em_cmd->add_option("--alpha", em.alpha)->required();
    em_cmd->add_option("--radius", em.radius, "Sphere radius (default: the Schoenberg radius)");
    bind(em_cmd, [&](std::uint64_t seed) { return cmd_embed(em, seed); });

    std::vector<const char*> argv{kToolName.data()};
    for (const auto& a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kValidation;
    }

    try {
        const std::uint64_t seed = resolve_seed(common.seed);
        const Outcome outcome = action(seed);
        emit(outcome, command, common, out);
        return kOk;
    } catch (const RadiusError& e) {
        err << "error: " << e.what() << " (min Gram eigenvalue " << std::setprecision(6) << e.min_eigenvalue()
            << ", radius " << e.radius() << ")\n";
        return kRadiusTooSmall;
    } catch (const SolverError& e) {
        err << "error: " << e.what() << '\n';
        return kSolver;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const FormatError& e) {
        err << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUnexpected;
    }
}

} // namespace maxenergy::cli
