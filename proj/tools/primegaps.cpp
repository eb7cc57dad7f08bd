// primegaps: sieve primes, accumulate gap statistics, fit the scaled curves,
// compute spectral rigidity (three modes) and export plot-ready CSVs.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "primegaps/cramer.hpp"
#include "primegaps/fitting.hpp"
#include "primegaps/gapstats.hpp"
#include "primegaps/numfmt.hpp"
#include "primegaps/predictions.hpp"
#include "primegaps/rigidity.hpp"
#include "primegaps/sieve.hpp"
#include "primegaps/specfun.hpp"
#include "primegaps/spectrum.hpp"

namespace fs = std::filesystem;
using namespace primegaps;

namespace {

constexpr const char* kVersion = "1.0.0";

struct Manifest {
    std::string command;
    std::vector<std::pair<std::string, std::string>> parameters;
    std::string seed;  // empty = no randomness involved
    std::vector<std::string> outputs;

    void param(const std::string& k, const std::string& v) { parameters.emplace_back(k, v); }
    // written last: its presence marks a completed run
    void write(const fs::path& dir) const {
        std::ofstream f(dir / "manifest.txt");
        if (!f) throw std::runtime_error("cannot write manifest in " + dir.string());
        f << "command=" << command << '\n';
        f << "tool_version=" << kVersion << '\n';
        for (const auto& [k, v] : parameters) f << "param." << k << '=' << v << '\n';
        if (!seed.empty()) f << "seed=" << seed << '\n';
        for (const auto& o : outputs) f << "output=" << o << '\n';
        if (!f) throw std::runtime_error("manifest write failed in " + dir.string());
    }
};

fs::path output_root(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("PRIMEGAPS_OUT")) return env;
    return ".";
}

std::vector<double> parse_L_grid(const std::string& text) {
    std::vector<double> out;
    for (uint64_t v : parse_checkpoints(text)) out.push_back((double)v);
    return out;
}

int cmd_scan(const std::string& out_flag, const std::string& limit_s,
             const std::string& checkpoints_s, const std::string& segbytes_s,
             unsigned threads, bool resume) {
    const uint64_t limit = parse_uint(limit_s);
    std::vector<uint64_t> checkpoints;
    if (!checkpoints_s.empty()) {
        checkpoints = parse_checkpoints(checkpoints_s);
    } else {
        for (uint64_t x = 1ULL << 15; x < limit; x <<= 1) checkpoints.push_back(x);
    }
    if (checkpoints.empty())
        throw std::invalid_argument("scan: no checkpoints below limit " + limit_s);

    const fs::path dir = output_root(out_flag);
    fs::create_directories(dir);

    if (resume && fs::exists(dir / "manifest.txt") && fs::exists(dir / "manifest.csv")) {
        const auto have = read_series(dir.string());
        bool complete = have.tables.size() == checkpoints.size();
        for (size_t i = 0; complete && i < checkpoints.size(); ++i)
            complete = have.tables[i].x == checkpoints[i];
        if (complete) {
            std::cerr << "scan: already complete in " << dir << ", nothing to do\n";
            return 0;
        }
    }

    SieveConfig cfg;
    cfg.limit = limit;
    cfg.threads = threads;
    if (!segbytes_s.empty()) cfg.segment_bytes = (size_t)parse_uint(segbytes_s);
    SegmentedSieve sieve(cfg);
    const CheckpointSeries series = accumulate(sieve, checkpoints);
    write_series(series, dir.string());

    Manifest m;
    m.command = "scan";
    m.param("limit", limit_s);
    m.param("checkpoints", checkpoints_s.empty() ? "auto" : checkpoints_s);
    m.outputs.push_back("manifest.csv");
    for (const auto& t : series.tables) m.outputs.push_back(tau_file_name(t.x));
    m.write(dir);

    for (const auto& t : series.tables)
        std::cout << "x=" << t.x << " pi=" << t.pi_x << " G=" << t.max_gap << " after "
                  << t.max_gap_prime << '\n';
    return 0;
}

int cmd_rigidity(const std::string& out_flag, const std::string& mode,
                 const std::string& x_s, const std::string& L_s,
                 const std::string& h_s, const std::string& unfold_s,
                 const std::string& limit_s, uint32_t samples, uint64_t seed,
                 bool odd_only, unsigned threads) {
    const fs::path dir = output_root(out_flag);
    fs::create_directories(dir);
    const double x = parse_real(x_s);
    Manifest m;
    m.command = "rigidity";
    m.param("mode", mode);
    m.param("x", x_s);
    m.param("L", L_s);

    if (mode == "cramer") {
        CramerConfig cfg;
        cfg.x = x;
        cfg.seed = seed;
        cfg.samples = samples;
        cfg.include_even = !odd_only;
        cfg.threads = threads;
        const auto L_grid = parse_L_grid(L_s);
        cfg.L_max = L_grid.back();
        const auto ens = ensemble_delta3(cfg, L_grid);
        write_ensemble_csv(ens, (dir / "cramer_ensemble.csv").string());
        m.seed = std::to_string(seed);
        m.param("samples", std::to_string(samples));
        m.param("odd_only", odd_only ? "1" : "0");
        m.outputs.push_back("cramer_ensemble.csv");
        m.write(dir);
        for (size_t i = 0; i < ens.mean_curve.points.size(); ++i)
            std::cout << "L=" << ens.mean_curve.points[i].first
                      << " mean=" << ens.mean_curve.points[i].second
                      << " L/15=" << ens.mean_curve.points[i].first / 15.0 << '\n';
        return 0;
    }

    if (mode == "unfolded") {
        const auto L_grid = parse_L_grid(L_s);
        const UnfoldMode um = unfold_s == "li" ? UnfoldMode::li : UnfoldMode::r;
        uint64_t limit;
        if (!limit_s.empty()) {
            limit = parse_uint(limit_s);
        } else {
            const double p_hi = invert_unfolding(x + L_grid.back(), um);
            limit = (uint64_t)(p_hi + 64.0 * std::log(p_hi) * 4 + 1000);
        }
        SieveConfig scfg;
        scfg.limit = limit;
        scfg.threads = threads;
        SegmentedSieve sieve(scfg);
        RigidityCurve curve;
        curve.method = RigidityCurve::Method::unfolded;
        curve.x = x;
        const auto levels = unfolded_levels_in(sieve, x, L_grid.back(), um);
        for (double L : L_grid)
            curve.points.emplace_back(L, delta3_unfolded(UnfoldedWindow::make(x, L, levels)));
        write_rigidity_csv(curve, (dir / "rigidity.csv").string());
        m.param("unfold", unfold_s);
        m.outputs.push_back("rigidity.csv");
        m.write(dir);
        for (const auto& [L, v] : curve.points)
            std::cout << "L=" << L << " delta3=" << v << " L/15=" << L / 15.0 << '\n';
        return 0;
    }

    if (mode != "sampled") throw CLI::ValidationError("--mode must be unfolded, sampled or cramer");
    if (h_s.empty()) throw CLI::RequiredError("--h (sampled mode)");
    const uint64_t h = parse_uint(h_s);
    const uint64_t xi = parse_uint(x_s);
    const auto L_grid = parse_L_grid(L_s);
    const uint64_t L_top = (uint64_t)L_grid.back();
    SieveConfig scfg;
    scfg.limit = parse_uint(limit_s.empty() ? std::to_string(xi + L_top + h + 1) : limit_s);
    scfg.threads = threads;
    SegmentedSieve sieve(scfg);
    const auto sample = sieve.sample_staircase(xi, h, (size_t)(L_top / h) + 1);
    RigidityCurve curve;
    curve.method = RigidityCurve::Method::sampled;
    curve.x = (double)xi;
    curve.h = h;
    for (double L : L_grid)
        curve.points.emplace_back(L, delta3_sampled(sample, xi, (uint64_t)L));
    write_rigidity_csv(curve, (dir / "rigidity.csv").string());
    m.param("h", h_s);
    m.outputs.push_back("rigidity.csv");
    m.write(dir);
    std::cout << "leading term h^2/(3 ln^2 x) = " << leading_term((double)xi, (double)h) << '\n';
    for (const auto& [L, v] : curve.points) std::cout << "L=" << L << " delta3=" << v << '\n';
    return 0;
}

int cmd_analyze(const std::string& out_flag, const std::string& series_dir,
                const std::string& x_s, uint64_t min_count, double u_lo, double u_hi,
                const std::string& dmax_s, const std::string& spectrum_m_s,
                const std::string& hist_limit_s, double hist_bin,
                const std::string& normalize, const std::string& gallagher_h_s,
                const std::string& gallagher_n_s, unsigned threads) {
    const fs::path dir = output_root(out_flag);
    fs::create_directories(dir);
    Manifest m;
    m.command = "analyze";

    if (!series_dir.empty()) {
        const auto series = read_series(series_dir);
        const uint64_t x = x_s.empty() ? series.tables.back().x : parse_uint(x_s);
        const GapTable& t = series.at_threshold(x);
        m.param("series", series_dir);
        m.param("x", std::to_string(x));

        {
            std::ofstream f(dir / "overlay.csv");
            if (!f) throw std::runtime_error("cannot open overlay.csv");
            f << "d,tau_measured,tau_predicted,residual\n";
            f.precision(17);
            for (const auto& [d, tau] : t.counts) {
                const double pred = tau_expected(d, x, t.pi_x, TauVariant::pi_based);
                f << d << ',' << tau << ',' << pred << ',' << (double)tau - pred << '\n';
            }
            m.outputs.push_back("overlay.csv");
        }

        const ScaledCurve curve = rescale(t, min_count);
        write_scaled_curve_csv(curve, (dir / "scaled.csv").string());
        m.outputs.push_back("scaled.csv");
        const ExpFit ef = exp_fit(curve, u_lo, u_hi);
        std::ofstream fr(dir / "fit_report.csv");
        fr << "x,alpha_or_a,beta_or_s,residual_ss\n";
        fr.precision(17);
        fr << x << ',' << ef.prefactor << ',' << ef.slope << ",0\n";
        const auto [alpha, beta] = cosine_basis_fit(parse_uint(dmax_s));
        fr << "cosine," << alpha << ',' << beta << ",0\n";
        m.outputs.push_back("fit_report.csv");
        std::cout << "exp fit on u in [" << ef.u_lo << ',' << ef.u_hi
                  << "]: a=" << ef.prefactor << " s=" << ef.slope << '\n';
        std::cout << "cosine fit (d <= " << dmax_s << "): alpha=" << alpha
                  << " beta=" << beta << '\n';
    }

    if (!spectrum_m_s.empty()) {
        const auto spec = power_spectrum((size_t)parse_uint(spectrum_m_s));
        write_spectrum_csv(spec, (dir / "spectrum.csv").string());
        m.param("spectrum_m", spectrum_m_s);
        m.outputs.push_back("spectrum.csv");
        const auto peaks = spectrum_peaks(spec);
        std::cout << "spectrum peaks (1/f): ";
        for (size_t i = 0; i < std::min<size_t>(5, peaks.size()); ++i)
            std::cout << peaks[i].first << ' ';
        std::cout << '\n';
    }

    if (!hist_limit_s.empty() || !gallagher_h_s.empty()) {
        uint64_t limit = 0;
        if (!hist_limit_s.empty()) limit = parse_uint(hist_limit_s);
        if (!gallagher_n_s.empty())
            limit = std::max(limit, parse_uint(gallagher_n_s) +
                                        parse_uint(gallagher_h_s) + 2);
        SieveConfig scfg;
        scfg.limit = limit;
        scfg.threads = threads;
        SegmentedSieve sieve(scfg);

        if (!hist_limit_s.empty()) {
            const auto h = unfold_histogram(sieve, parse_uint(hist_limit_s), hist_bin,
                                            UnfoldedHistogram::Source::r_unfold);
            std::ofstream f(dir / "histogram.csv");
            f << "D,count,normalized\n";
            f.precision(17);
            uint64_t max_count = 0;
            for (const auto& [bin, c] : h.bins) max_count = std::max(max_count, c);
            const double denom = normalize == "max" ? (double)max_count
                                                    : (double)h.total * h.bin_width;
            for (const auto& [bin, c] : h.bins)
                f << (bin + 0.5) * h.bin_width << ',' << c << ',' << (double)c / denom
                  << '\n';
            m.param("hist_limit", hist_limit_s);
            m.param("normalize", normalize);
            m.outputs.push_back("histogram.csv");
        }

        if (!gallagher_h_s.empty()) {
            const auto g = gallagher_counts(sieve, parse_uint(gallagher_h_s),
                                            parse_uint(gallagher_n_s));
            std::ofstream f(dir / "gallagher.csv");
            f << "k,count,poisson\n";
            f.precision(17);
            uint64_t kmax = g.counts.empty() ? 0 : g.counts.rbegin()->first;
            for (uint64_t k = 0; k <= kmax; ++k) {
                auto it = g.counts.find(k);
                const uint64_t c = it == g.counts.end() ? 0 : it->second;
                double pmf = std::exp(-g.lambda);
                for (uint64_t j = 1; j <= k; ++j) pmf *= g.lambda / (double)j;
                f << k << ',' << c << ',' << pmf * (double)g.N << '\n';
            }
            m.param("gallagher_h", gallagher_h_s);
            m.param("gallagher_n", gallagher_n_s);
            m.outputs.push_back("gallagher.csv");
        }
    }

    m.write(dir);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"prime gap statistics and spectral rigidity toolkit"};
    app.set_version_flag("--version", kVersion);
    app.set_help_flag("--help", "print help");
    app.require_subcommand(1);
    unsigned threads = 0;
    std::string out;
    app.add_option("--threads", threads, "worker threads (0 = hardware)");
    app.add_option("--out", out, "output directory (default $PRIMEGAPS_OUT or .)");

    auto* scan = app.add_subcommand("scan", "sieve and accumulate gap tables");
    std::string limit_s, checkpoints_s, segbytes_s;
    bool resume = false;
    scan->add_option("--limit", limit_s, "sieve bound, e.g. 2^30 or 1e9")->required();
    scan->add_option("--checkpoints", checkpoints_s, "2^a..2^b or comma list");
    scan->add_option("--segment-bytes", segbytes_s, "sieve segment size in bytes");
    scan->add_flag("--resume", resume, "skip if the output directory is complete");

    auto* rig = app.add_subcommand("rigidity", "spectral rigidity curves");
    rig->set_help_flag("--help", "print help");
    std::string mode = "unfolded", x_s, L_s = "2^7..2^14", h_s, unfold_s = "r", rlimit_s;
    uint32_t samples = 100;
    uint64_t seed = 0;
    bool odd_only = false;
    rig->add_option("--mode", mode, "unfolded | sampled | cramer");
    rig->add_option("--x", x_s, "window start (unfolded coordinate / grid origin)")->required();
    rig->add_option("--L", L_s, "L grid, 2^a..2^b or comma list");
    rig->add_option("--h", h_s, "staircase step (sampled mode)");
    rig->add_option("--unfold", unfold_s, "li | r");
    rig->add_option("--limit", rlimit_s, "sieve bound override");
    rig->add_option("--samples", samples, "ensemble size (cramer)");
    rig->add_option("--seed", seed, "RNG seed (cramer)");
    rig->add_flag("--odd-only", odd_only, "odd candidates with probability 2/ln k");

    auto* ana = app.add_subcommand("analyze", "fits, overlays, spectrum, histograms");
    std::string series_dir, ax_s, dmax_s = "1e6", spectrum_m_s, hist_limit_s;
    std::string normalize = "probability", gal_h_s, gal_n_s;
    uint64_t min_count = 1000;
    double u_lo = 1.0, u_hi = 4.0, hist_bin = 0.1;
    ana->add_option("--series", series_dir, "directory written by scan");
    ana->add_option("--x", ax_s, "checkpoint to analyze (default: largest)");
    ana->add_option("--min-count", min_count, "tau filter for the scaled curve");
    ana->add_option("--u-lo", u_lo, "exp fit window start");
    ana->add_option("--u-hi", u_hi, "exp fit window end");
    ana->add_option("--dmax", dmax_s, "cosine fit range");
    ana->add_option("--spectrum-m", spectrum_m_s, "emit power spectrum with M samples");
    ana->add_option("--hist-limit", hist_limit_s, "unfolded histogram over primes < limit");
    ana->add_option("--hist-bin", hist_bin, "histogram bin width");
    ana->add_option("--normalize", normalize, "probability | max");
    ana->add_option("--gallagher-h", gal_h_s, "interval length h");
    ana->add_option("--gallagher-n", gal_n_s, "interval start range N");

    try {
        app.parse(argc, argv);
        if (scan->parsed())
            return cmd_scan(out, limit_s, checkpoints_s, segbytes_s, threads, resume);
        if (rig->parsed())
            return cmd_rigidity(out, mode, x_s, L_s, h_s, unfold_s, rlimit_s, samples,
                                seed, odd_only, threads);
        return cmd_analyze(out, series_dir, ax_s, min_count, u_lo, u_hi, dmax_s,
                           spectrum_m_s, hist_limit_s, hist_bin, normalize, gal_h_s,
                           gal_n_s, threads);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    } catch (const std::bad_alloc&) {
        std::cerr << "error: out of memory\n";
        return 4;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
