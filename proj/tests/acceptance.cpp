// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Pass criterion numbers as arguments to run a subset.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "maxenergy/asymptotics.hpp"
#include "maxenergy/cli.hpp"
#include "maxenergy/discrete_energy.hpp"
#include "maxenergy/embedding.hpp"
#include "maxenergy/error.hpp"
#include "maxenergy/io.hpp"
#include "maxenergy/specfun.hpp"
#include "maxenergy/stable.hpp"

using namespace maxenergy;
using io::json;

namespace {

constexpr std::uint64_t kSeed = 20240611;

// Tolerances and budgets.
constexpr double kMp1Tol = 1e-3;
constexpr double kMp1Seconds = 10.0;
constexpr double kBallFloor = 1.90;
constexpr double kBallCeilingSlack = 1e-6;
constexpr double kBallSeconds = 60.0;
constexpr std::size_t kPiSamples = 1'000'000;
constexpr double kSigmas = 3.0;
constexpr double kExactFloor = 1e-12;
constexpr std::size_t kStabilitySamples = 1'000'000;
constexpr double kStabilityTol = 0.01;
constexpr std::size_t kSandwichSamples = 1'000'000;
constexpr double kTightGap = 0.05;
constexpr std::size_t kSweepSamples = 400'000;
constexpr std::size_t kSweepResolution = 600;
constexpr double kUpperSlopeTol = 0.15;
constexpr double kLowerSlopeTol = 0.20;
constexpr double kSweepSeconds = 600.0;
constexpr std::size_t kMomentSamples = 100'000;
constexpr double kEmbedResidual = 1e-7;
constexpr double kEmbedShrink = 0.95;
constexpr double kEmbedSeconds = 30.0;
constexpr double kRadiusGap = 0.05;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

int g_failures = 0;
std::vector<int> g_only; // criteria named on the command line; empty runs all

void criterion(int id, const std::string& title, const std::function<void(Outcome&)>& body)
{
    if (!g_only.empty() && std::find(g_only.begin(), g_only.end(), id) == g_only.end())
        return;
    Outcome o;
    const auto start = Clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail << " [exception: " << e.what() << "]";
    }
    const double elapsed = seconds_since(start);
    if (!o.pass)
        ++g_failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << id << ": " << title << " |" << o.detail.str()
              << " (" << std::fixed << std::setprecision(1) << elapsed << " s)" << std::defaultfloat << std::endl;
}

json run_json(const std::vector<std::string>& args, int& code)
{
    std::ostringstream out;
    std::ostringstream err;
    code = cli::run_cli(args, out, err);
    if (code != 0)
        return json();
    return json::parse(out.str());
}

void mp_recovery(Outcome& o)
{
    const auto start = Clock::now();
    int code = 0;
    const json rec = run_json({"mp", "--p", "1", "--grids", "41,101,401", "--seed", std::to_string(kSeed)}, code);
    const double elapsed = seconds_since(start);
    o.require(code == 0, "exit code 0");
    if (code != 0)
        return;
    const double value = rec["result"]["value"];
    o.detail << std::setprecision(12) << " m_1(N=401) = " << value;
    o.require(std::abs(value - 1.0) <= kMp1Tol, "|value - 1| <= 1e-3");
    o.require(elapsed < kMp1Seconds, "runtime < 10 s");
}

void ball_closed_form(Outcome& o)
{
    const auto start = Clock::now();
    const double closed = specfun::closed_form_m_ball(3, 1.0, 1.0);
    o.detail << std::setprecision(17) << " closed form = " << closed;
    o.require(closed == 2.0, "closed form exactly 2");
    const std::size_t res[] = {250, 500, 1000, 2000};
    const OptimalMeasure opt = max_energy_in_body(BodySpec::euclidean_ball(3), 2.0, 1.0, res, kSeed);
    o.detail << std::setprecision(6) << "; trace";
    double best = 0.0;
    for (const auto& t : opt.report.trace) {
        o.detail << ' ' << t.resolution << ':' << t.value;
        o.require(t.value <= 2.0 + kBallCeilingSlack, "value <= 2 + 1e-6 at N=" + std::to_string(t.resolution));
        best = std::max(best, t.value);
    }
    o.require(best >= kBallFloor, "best >= 1.90");
    o.require(seconds_since(start) < kBallSeconds, "runtime < 60 s");
}

void pi_p_consistency(Outcome& o)
{
    double worst = 0.0;
    std::uint64_t stream = 0;
    for (int n : {2, 3, 8, 32})
        for (double p : {0.5, 1.0, 1.5}) {
            const McEstimate est =
                pi_p_ellipsoid(Eigen::MatrixXd::Identity(n, n), p, kPiSamples, RngStream{kSeed, stream++});
            const double exact = specfun::b_coeff(n, p);
            const double tol = kSigmas * est.std_error + kExactFloor * exact;
            const double dev = std::abs(est.estimate - exact);
            worst = std::max(worst, dev / exact);
            o.require(dev <= tol, "n=" + std::to_string(n) + " p=" + std::to_string(p));
        }
    o.detail << std::setprecision(3) << " 12 cases, worst relative deviation " << worst;
}

void stability_identity(Outcome& o)
{
    Engine eng = RngStream{kSeed, 400}.engine();
    std::vector<Eigen::VectorXd> xs;
    for (int k = 0; k < 10; ++k) {
        Eigen::VectorXd x(8);
        for (int i = 0; i < 8; ++i)
            x[i] = standard_normal(eng);
        xs.push_back(x);
    }
    const double cases[][2] = {{2.0, 1.0}, {1.5, 1.0}, {1.2, 0.7}};
    std::uint64_t stream = 500;
    for (const auto& rp : cases) {
        double worst = 0.0;
        for (const auto& x : xs) {
            const StabilityCheck chk = verify_stability_identity(x, rp[0], rp[1], kStabilitySamples,
                                                                 RngStream{kSeed, stream++});
            worst = std::max(worst, chk.relative_error);
        }
        o.detail << std::setprecision(3) << " (r=" << rp[0] << ",p=" << rp[1] << ") worst " << worst * 100 << "%";
        o.require(worst < kStabilityTol, "relative error < 1%");
    }
}

void sandwich(Outcome& o)
{
    struct Case {
        std::string name;
        BodySpec body;
        double r;
        double p;
        std::vector<std::size_t> res;
    };
    const std::vector<Case> cases{
        {"B_2^3 d_2 p=1", BodySpec::euclidean_ball(3), 2.0, 1.0, {2000}},
        {"interval d_2 p=1", BodySpec::interval(), 2.0, 1.0, {401}},
        {"B_2^8 d_1.5 p=1", BodySpec::euclidean_ball(8), 1.5, 1.0, {1000}},
        {"B_1.5^4 d_2 p=1", BodySpec::lq_ball(4, 1.5), 2.0, 1.0, {1000}},
        {"B_inf^3 d_1.5 p=1", BodySpec::lq_ball(3, kInf), 1.5, 1.0, {1000}},
        {"E(2,1,0.5) d_2 p=1.5", BodySpec::ellipsoid({2.0, 1.0, 0.5}), 2.0, 1.5, {1000}},
        {"B_2^5 d_1 p=0.5", BodySpec::euclidean_ball(5), 1.0, 0.5, {1000}},
    };
    std::uint64_t stream = 600;
    for (const auto& c : cases) {
        const double mp = resolve_mp(c.p, std::nullopt);
        const double lower = max_energy_in_body(c.body, c.r, c.p, c.res, kSeed).report.value;
        const McEstimate upper = gub_upper_bound(c.body, c.r, c.p, mp, kSandwichSamples, RngStream{kSeed, stream++});
        o.detail << std::setprecision(4) << ' ' << c.name << ": " << lower << " <= " << upper.estimate << " +/- "
                 << upper.std_error << ';';
        o.require(lower <= upper.estimate + kSigmas * upper.std_error, c.name + " sandwich");
        if (c.body.is_euclidean_ball() && c.r == 2.0 && c.p == 1.0 && c.body.dimension() > 1) {
            const double gap = (upper.estimate - lower) / upper.estimate;
            o.detail << " gap " << gap * 100 << "%;";
            o.require(gap < kTightGap, c.name + " gap < 5%");
        }
    }
}

void asymptotic_slopes(Outcome& o)
{
    const auto start = Clock::now();
    const int dims[] = {4, 8, 16, 32, 64, 128};
    SweepBudget budget;
    budget.samples = kSweepSamples;
    budget.resolution = kSweepResolution;
    budget.seed = kSeed;

    auto check = [&](const SweepReport& rep, bool with_lower) {
        const double e = rep.expected_slope;
        const double up = rep.upper_fit.slope;
        o.detail << std::setprecision(4) << ' ' << rep.family << '=' << rep.parameter << ",p=" << rep.p
                 << ": expected " << e << " upper " << up;
        o.require(std::abs(up - e) <= kUpperSlopeTol * e, rep.family + " upper slope within 15%");
        if (with_lower) {
            const double lo = rep.lower_fit.slope;
            o.detail << " lower " << lo;
            o.require(std::abs(lo - e) <= kLowerSlopeTol * e, rep.family + " lower slope within 20%");
        }
        o.detail << ';';
    };
    check(sweep_lq_balls(1.5, 1.0, dims, budget), true);
    check(sweep_lq_balls(2.0, 1.0, dims, budget), true);
    check(sweep_lr_distances(1.0, 0.5, dims, budget), false);
    check(sweep_lr_distances(1.5, 1.0, dims, budget), false);
    o.require(seconds_since(start) < kSweepSeconds, "runtime < 10 min");
}

void sphere_envelope(Outcome& o)
{
    std::uint64_t stream = 700;
    double max_low = 0.0;
    double min_high = 2.0;
    for (int n = 2; n <= 256; n *= 2)
        for (double r : {1.0, 1.5, 2.0, 3.0}) {
            const double p = 1.0;
            const McEstimate m = sphere_lr_moment(n, r, p, kMomentSamples, RngStream{kSeed, stream++});
            const double scale = std::pow(n, (0.5 - 1.0 / r) * p);
            const double phi = m.estimate * scale;
            const double se = m.std_error * scale;
            const std::string tag = "n=" + std::to_string(n) + " r=" + std::to_string(r);
            if (r < 2.0) {
                max_low = std::max(max_low, phi);
                o.require(phi <= 1.0 + kSigmas * se, tag + " phi <= 1");
            } else {
                min_high = std::min(min_high, phi);
                o.require(phi >= 1.0 - kSigmas * se, tag + " phi >= 1");
            }
        }
    o.detail << std::setprecision(5) << " max phi (r<2) = " << max_low << ", min phi (r>=2) = " << min_high;
}

void embedding_round_trip(Outcome& o)
{
    const auto start = Clock::now();
    Engine eng = RngStream{kSeed, 800}.engine();
    std::uniform_int_distribution<int> size(2, 32);
    std::uniform_int_distribution<int> dim(1, 6);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    const double alphas[] = {0.3, 0.5, 0.8};
    double worst_residual = 0.0;
    for (int k = 0; k < 20; ++k) {
        const int m = size(eng);
        const int n = dim(eng);
        const double alpha = alphas[k % 3];
        PointSet pts(m, n);
        for (int i = 0; i < m; ++i)
            for (int d = 0; d < n; ++d)
                pts(i, d) = coord(eng);
        const std::string tag = "set " + std::to_string(k);
        const double radius = schoenberg_radius_points(pts, alpha).radius;
        const SphericalEmbedding emb = embed_snowflake(pts, alpha, radius);
        worst_residual = std::max(worst_residual, emb.max_distance_residual);
        o.require(emb.gram_min_eigenvalue >= -kPsdTolerance * radius * radius, tag + " PSD at R");
        o.require(emb.max_distance_residual < kEmbedResidual, tag + " residual");
        bool rejected = false;
        try {
            embed_snowflake(pts, alpha, kEmbedShrink * radius);
        } catch (const RadiusError&) {
            rejected = true;
        }
        o.require(rejected, tag + " rejected at 0.95 R");
    }
    o.detail << std::setprecision(3) << " 20 sets, worst distance residual " << worst_residual;
    o.require(seconds_since(start) < kEmbedSeconds, "runtime < 30 s");
}

void radius_closed_form(Outcome& o)
{
    const double closed = radius_closed_form_ball(3, 0.5, 1.0);
    o.detail << std::setprecision(17) << " closed form = " << closed << ";" << std::setprecision(6);
    o.require(closed == 1.0, "closed form exactly 1");
    const BodySpec ball = BodySpec::euclidean_ball(3);
    double previous = 0.0;
    for (std::size_t count : {250u, 500u, 1000u, 2000u}) {
        const double r = schoenberg_radius_points(body_point_set(ball, count, kSeed), 0.5).radius;
        o.detail << ' ' << count << ':' << r;
        o.require(r > previous, "increasing at N=" + std::to_string(count));
        o.require(r <= closed + 1e-9, "below closed form at N=" + std::to_string(count));
        previous = r;
    }
    o.require((closed - previous) / closed < kRadiusGap, "within 5% at N=2000");
}

void determinism(Outcome& o)
{
    {
        std::ofstream f("acceptance_points.csv");
        Engine eng = RngStream{kSeed, 900}.engine();
        f << std::setprecision(17) << "x1,x2,x3\n";
        for (int i = 0; i < 16; ++i)
            f << standard_normal(eng) << ',' << standard_normal(eng) << ',' << standard_normal(eng) << '\n';
    }
    const std::string seed = std::to_string(kSeed);
    const std::vector<std::vector<std::string>> commands{
        {"mp", "--p", "0.8"},
        {"max-energy", "--body", "lq:3:1.5", "--p", "1", "--resolutions", "200,400"},
        {"max-energy", "--body", "ellipsoid:2,1", "--p", "0.5", "--resolutions", "300", "--samples", "100000"},
        {"max-energy", "--points", "acceptance_points.csv", "--r", "1.5", "--p", "1"},
        {"pi-p", "--body", "ellipsoid:3,1,0.5", "--p", "1.2", "--samples", "100000"},
        {"gub", "--body", "lq:6:3", "--r", "1.5", "--p", "1", "--samples", "100000"},
        {"sphere-moment", "--n", "12", "--r", "1.2", "--p", "0.9", "--samples", "100000"},
        {"asymptotics", "--q", "1.5", "--p", "1", "--ns", "2,4,8", "--samples", "20000", "--resolution", "100"},
        {"asymptotics", "--r", "1.5", "--p", "1", "--ns", "2,4,8", "--samples", "20000", "--resolution", "100"},
        {"radius", "--n", "4", "--alpha", "0.3", "--q", "1.5", "--ns", "2,4", "--samples", "20000",
         "--resolution", "80"},
        {"embed", "--points", "acceptance_points.csv", "--alpha", "0.5"},
    };
    int identical = 0;
    for (auto cmd : commands) {
        cmd.push_back("--seed");
        cmd.push_back(seed);
        int code_a = 0;
        int code_b = 0;
        json a = run_json(cmd, code_a);
        json b = run_json(cmd, code_b);
        o.require(code_a == 0 && code_b == 0, cmd.front() + " exit code");
        if (code_a != 0 || code_b != 0)
            continue;
        a.erase("timestamp");
        b.erase("timestamp");
        const bool same = a.dump() == b.dump();
        identical += same;
        o.require(same, cmd.front() + " identical JSON");
    }
    o.detail << ' ' << identical << '/' << commands.size() << " commands byte-identical";
    std::remove("acceptance_points.csv");
}

} // namespace

int main(int argc, char** argv)
{
    for (int i = 1; i < argc; ++i)
        g_only.push_back(std::atoi(argv[i]));
    std::cout << "maxenergy acceptance suite (seed " << kSeed << ")" << std::endl;
    criterion(1, "m_1 recovery from grids up to N=401", mp_recovery);
    criterion(2, "Euclidean ball closed form and discrete lower bounds", ball_closed_form);
    criterion(3, "pi_p(I)^p against b_p^(n)", pi_p_consistency);
    criterion(4, "stability identity on R^8", stability_identity);
    criterion(5, "discrete lower bound below stable-measure upper bound", sandwich);
    criterion(6, "asymptotic log-log slopes", asymptotic_slopes);
    criterion(7, "sphere-moment envelope", sphere_envelope);
    criterion(8, "snowflake embedding round trip", embedding_round_trip);
    criterion(9, "Schoenberg radius of B_2^3", radius_closed_form);
    criterion(10, "CLI determinism", determinism);
    std::cout << (g_failures == 0 ? "all criteria passed" : std::to_string(g_failures) + " criteria failed")
              << std::endl;
    return g_failures == 0 ? 0 : 1;
}
