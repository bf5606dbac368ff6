#include "mlgs/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace mlgs {

namespace {

using Json = nlohmann::json;
using Weights = std::array<double, kNumGraphletTypes>;

int resolve_threads(int threads) {
    if (threads > 0) return threads;
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

std::vector<std::uint64_t> make_checkpoints(const ExperimentPlan& p) {
    if (p.steps == 0 || p.checkpoint_stride == 0)
        throw std::invalid_argument("experiment needs positive steps and checkpoint_stride");
    std::vector<std::uint64_t> cps;
    for (std::uint64_t c = p.checkpoint_stride; c < p.steps; c += p.checkpoint_stride) cps.push_back(c);
    cps.push_back(p.steps); // the final step is always a checkpoint
    return cps;
}

// d_hat over types 1..14 regardless of model, so the unrestricted baseline is
// measured against the same target as the restricted walkers
Weights concentrations_14(const Weights& w) {
    Weights d{};
    double total = 0;
    for (int i = 0; i < 14; ++i) total += w[i];
    if (total > 0)
        for (int i = 0; i < 14; ++i) d[i] = w[i] / total;
    return d;
}

} // namespace

TrialRunner default_trial_runner() {
    return [](WalkModel algo, const TwoLayerGraph& g, std::uint64_t steps,
              std::span<const std::uint64_t> checkpoints, std::uint64_t seed,
              std::uint64_t burn_in) -> std::vector<Weights> {
        std::vector<Weights> snaps;
        snaps.reserve(checkpoints.size());
        EstimatorOptions opts;
        opts.burn_in = burn_in;
        run_estimator_checkpointed(algo, g, steps, seed, checkpoints,
                                   [&snaps](std::uint64_t, const Weights& w) { snaps.push_back(w); }, opts);
        return snaps;
    };
}

MetricSeries run_experiment(const TwoLayerGraph& g, const GroundTruth& truth, const ExperimentPlan& plan,
                            const TrialRunner& runner) {
    if (plan.algos.empty()) throw std::invalid_argument("experiment needs at least one algorithm");
    if (plan.trials == 0) throw std::invalid_argument("experiment needs at least one trial");

    MetricSeries out;
    out.plan = plan;
    out.checkpoints = make_checkpoints(plan);
    out.truth_counts = truth.counts;
    out.truth_d = truth.concentrations_restricted();
    out.graph_identities = g.num_identities();
    out.graph_blue_edges = double(g.num_blue_edges());
    out.graph_red_edges = double(g.num_red_edges());
    for (WalkModel m : kAllModels) out.m_by_algo[static_cast<int>(m)] = compute_M(g, m);

    const std::size_t ncp = out.checkpoints.size();
    const std::size_t per_algo = std::size_t(plan.trials) * ncp;

    // snapshots[algo_idx * per_algo + trial * ncp + cp] = weight vector
    std::vector<Weights> snapshots(plan.algos.size() * per_algo);

    // deterministic work split: tasks are (algo, trial) pairs pulled from a
    // shared counter, each writing only its own slots
    std::atomic<std::size_t> next_task{0};
    const std::size_t n_tasks = plan.algos.size() * plan.trials;
    std::string first_error;
    std::mutex error_mu;
    auto worker = [&]() {
        for (;;) {
            const std::size_t task = next_task.fetch_add(1);
            if (task >= n_tasks) return;
            const std::size_t ai = task / plan.trials;
            const std::size_t trial = task % plan.trials;
            const std::uint64_t seed = derive_seed(derive_seed(plan.base_seed, ai), trial);
            try {
                auto snaps = runner(plan.algos[ai], g, plan.steps, out.checkpoints, seed, plan.burn_in);
                if (snaps.size() != ncp) throw std::runtime_error("trial runner returned wrong snapshot count");
                std::copy(snaps.begin(), snaps.end(), snapshots.begin() + ai * per_algo + trial * ncp);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (first_error.empty()) first_error = e.what();
                return;
            }
        }
    };

    const int nt = std::min<int>(resolve_threads(plan.threads), static_cast<int>(n_tasks));
    if (nt <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (!first_error.empty()) throw std::runtime_error("experiment trial failed: " + first_error);

    // fold trials in fixed order so the output is independent of scheduling
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t ai = 0; ai < plan.algos.size(); ++ai) {
        const double m_const = out.m_by_algo[static_cast<int>(plan.algos[ai])];
        for (int type = 1; type <= 14; ++type) {
            const double target = plan.count_mode ? double(truth.counts[type - 1]) : out.truth_d[type - 1];
            for (std::size_t ci = 0; ci < ncp; ++ci) {
                MetricCell cell;
                cell.algo = plan.algos[ai];
                cell.type = type;
                cell.checkpoint = out.checkpoints[ci];
                if (target <= 0) {
                    cell.mre = nan;
                    cell.nrmse = nan;
                } else {
                    double abs_sum = 0, sq_sum = 0;
                    for (std::size_t trial = 0; trial < plan.trials; ++trial) {
                        const Weights& w = snapshots[ai * per_algo + trial * ncp + ci];
                        double est;
                        if (plan.count_mode)
                            est = w[type - 1] * m_const / double(out.checkpoints[ci]);
                        else
                            est = concentrations_14(w)[type - 1];
                        const double err = est - target;
                        abs_sum += std::abs(err);
                        sq_sum += err * err;
                    }
                    cell.mre = abs_sum / plan.trials / target;
                    cell.nrmse = std::sqrt(sq_sum / plan.trials) / target;
                }
                out.cells.push_back(cell);
            }
        }
    }
    return out;
}

void write_results_csv(const MetricSeries& s, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    f << "algo,type,checkpoint,metric,value\n";
    auto row = [&f](const MetricCell& c, const char* name, double v) {
        f << to_string(c.algo) << ',' << c.type << ',' << c.checkpoint << ',' << name << ',';
        if (std::isnan(v)) f << "nan";
        else f << v;
        f << '\n';
    };
    for (const MetricCell& c : s.cells) {
        row(c, "mre", c.mre);
        row(c, "nrmse", c.nrmse);
    }
    if (!f.flush()) throw std::runtime_error("write to '" + path + "' failed");
}

namespace {

Json cell_to_json(const MetricCell& c) {
    return Json{{"algo", to_string(c.algo)},
                {"type", c.type},
                {"checkpoint", c.checkpoint},
                {"mre", c.mre},
                {"nrmse", c.nrmse}};
}

double json_to_double(const Json& v) { return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>(); }

} // namespace

void write_results_json(const MetricSeries& s, const std::string& path) {
    Json j;
    j["schema"] = "mlgs-results-1";
    j["graph"] = {{"identities", s.graph_identities},
                  {"blue_edges", s.graph_blue_edges},
                  {"red_edges", s.graph_red_edges}};
    Json algos = Json::array();
    for (WalkModel m : s.plan.algos) algos.push_back(to_string(m));
    j["plan"] = {{"algos", algos},
                 {"trials", s.plan.trials},
                 {"steps", s.plan.steps},
                 {"checkpoint_stride", s.plan.checkpoint_stride},
                 {"base_seed", s.plan.base_seed},
                 {"burn_in", s.plan.burn_in},
                 {"count_mode", s.plan.count_mode}};
    j["checkpoints"] = s.checkpoints;
    j["truth"] = {{"counts", s.truth_counts}, {"d_restricted", s.truth_d}};
    j["m_by_algo"] = s.m_by_algo;
    Json cells = Json::array();
    for (const MetricCell& c : s.cells) cells.push_back(cell_to_json(c));
    j["metrics"] = std::move(cells);

    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    f << j.dump(2) << '\n';
    if (!f.flush()) throw std::runtime_error("write to '" + path + "' failed");
}

MetricSeries load_results_json(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "'");
    Json j;
    f >> j;
    if (j.value("schema", "") != "mlgs-results-1")
        throw std::runtime_error("'" + path + "' is not a results file (schema mismatch)");
    MetricSeries s;
    s.plan.algos.clear();
    for (const auto& a : j.at("plan").at("algos")) s.plan.algos.push_back(walk_model_from_string(a.get<std::string>()));
    s.plan.trials = j.at("plan").at("trials");
    s.plan.steps = j.at("plan").at("steps");
    s.plan.checkpoint_stride = j.at("plan").at("checkpoint_stride");
    s.plan.base_seed = j.at("plan").at("base_seed");
    s.plan.burn_in = j.at("plan").value("burn_in", 0);
    s.plan.count_mode = j.at("plan").at("count_mode");
    s.checkpoints = j.at("checkpoints").get<std::vector<std::uint64_t>>();
    const auto counts = j.at("truth").at("counts");
    const auto d = j.at("truth").at("d_restricted");
    for (int i = 0; i < kNumGraphletTypes; ++i) {
        s.truth_counts[i] = counts.at(i);
        s.truth_d[i] = json_to_double(d.at(i));
    }
    s.graph_identities = j.at("graph").at("identities");
    s.graph_blue_edges = j.at("graph").at("blue_edges");
    s.graph_red_edges = j.at("graph").at("red_edges");
    if (j.contains("m_by_algo"))
        for (int i = 0; i < 5; ++i) s.m_by_algo[i] = json_to_double(j.at("m_by_algo").at(i));
    for (const auto& c : j.at("metrics")) {
        MetricCell cell;
        cell.algo = walk_model_from_string(c.at("algo").get<std::string>());
        cell.type = c.at("type");
        cell.checkpoint = c.at("checkpoint");
        cell.mre = json_to_double(c.at("mre"));
        cell.nrmse = json_to_double(c.at("nrmse"));
        s.cells.push_back(cell);
    }
    return s;
}

// ---- SVG charts ----------------------------------------------------------

namespace {

constexpr int kW = 720, kH = 480, kMarL = 70, kMarR = 20, kMarT = 40, kMarB = 60;

struct Svg {
    std::ostringstream body;

    void line(double x1, double y1, double x2, double y2, const char* color, double width = 1.0) {
        body << "<line x1='" << x1 << "' y1='" << y1 << "' x2='" << x2 << "' y2='" << y2 << "' stroke='" << color
             << "' stroke-width='" << width << "'/>\n";
    }
    void rect(double x, double y, double w, double h, const std::string& color) {
        body << "<rect x='" << x << "' y='" << y << "' width='" << w << "' height='" << h << "' fill='" << color
             << "'/>\n";
    }
    void circle(double x, double y, double r, const std::string& color) {
        body << "<circle cx='" << x << "' cy='" << y << "' r='" << r << "' fill='" << color << "'/>\n";
    }
    void text(double x, double y, const std::string& t, int size = 12, const char* anchor = "middle",
              const char* color = "#333") {
        body << "<text x='" << x << "' y='" << y << "' font-size='" << size << "' text-anchor='" << anchor
             << "' fill='" << color << "' font-family='sans-serif'>" << t << "</text>\n";
    }
    void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& color) {
        body << "<polyline fill='none' stroke='" << color << "' stroke-width='1.5' points='";
        for (auto [x, y] : pts) body << x << ',' << y << ' ';
        body << "'/>\n";
    }

    void save(const std::string& path) const {
        std::ofstream f(path);
        if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
        f << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kW << "' height='" << kH
          << "' viewBox='0 0 " << kW << ' ' << kH << "'>\n<rect width='100%' height='100%' fill='white'/>\n"
          << body.str() << "</svg>\n";
        if (!f.flush()) throw std::runtime_error("write to '" + path + "' failed");
    }
};

const char* type_color(int type) {
    static const char* palette[14] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2",
                                      "#7f7f7f", "#bcbd22", "#17becf", "#aec7e8", "#ffbb78", "#98df8a", "#ff9896"};
    return palette[(type - 1) % 14];
}

std::string fmt(double v) {
    std::ostringstream o;
    o.precision(3);
    o << v;
    return o.str();
}

// log10 with clamping for chart scales
double safe_log10(double v, double floor_v) { return std::log10(std::max(v, floor_v)); }

void chart_mre_bars(const MetricSeries& s, WalkModel algo, const std::string& path) {
    const std::uint64_t last = s.checkpoints.back();
    std::array<double, 14> mre;
    mre.fill(std::numeric_limits<double>::quiet_NaN());
    for (const MetricCell& c : s.cells)
        if (c.algo == algo && c.checkpoint == last) mre[c.type - 1] = c.mre;
    double top = 0;
    for (double v : mre)
        if (!std::isnan(v)) top = std::max(top, v);
    if (top <= 0) top = 1;

    Svg svg;
    svg.text(kW / 2.0, 22, to_string(algo) + ": MRE by graphlet type at " + std::to_string(last) + " steps", 15);
    const double plot_w = kW - kMarL - kMarR, plot_h = kH - kMarT - kMarB;
    svg.line(kMarL, kMarT, kMarL, kMarT + plot_h, "#333");
    svg.line(kMarL, kMarT + plot_h, kMarL + plot_w, kMarT + plot_h, "#333");
    for (int tick = 0; tick <= 4; ++tick) {
        const double v = top * tick / 4.0;
        const double y = kMarT + plot_h * (1.0 - double(tick) / 4.0);
        svg.line(kMarL - 4, y, kMarL, y, "#333");
        svg.text(kMarL - 8, y + 4, fmt(v), 11, "end");
    }
    const double bw = plot_w / 14.0;
    for (int type = 1; type <= 14; ++type) {
        const double x = kMarL + (type - 1) * bw;
        svg.text(x + bw / 2, kMarT + plot_h + 16, std::to_string(type), 11);
        const double v = mre[type - 1];
        if (std::isnan(v)) {
            svg.text(x + bw / 2, kMarT + plot_h - 6, "-", 11, "middle", "#999");
            continue;
        }
        const double h = plot_h * (v / top);
        svg.rect(x + bw * 0.15, kMarT + plot_h - h, bw * 0.7, h, type_color(type));
    }
    svg.text(kW / 2.0, kH - 18, "graphlet type (absent types dashed out)", 12);
    svg.save(path);
}

void chart_nrmse_lines(const MetricSeries& s, WalkModel algo, const std::string& path) {
    // log-scale y over checkpoints, one line per present type
    double lo = std::numeric_limits<double>::infinity(), hi = 0;
    for (const MetricCell& c : s.cells)
        if (c.algo == algo && !std::isnan(c.nrmse) && c.nrmse > 0) {
            lo = std::min(lo, c.nrmse);
            hi = std::max(hi, c.nrmse);
        }
    if (!(hi > 0)) {
        lo = 1e-3;
        hi = 1;
    }
    lo = std::min(lo, hi / 10);
    const double llo = std::floor(safe_log10(lo, 1e-12)), lhi = std::ceil(safe_log10(hi, 1e-12));

    Svg svg;
    svg.text(kW / 2.0, 22, to_string(algo) + ": NRMSE vs steps (log scale, one line per type)", 15);
    const double plot_w = kW - kMarL - kMarR, plot_h = kH - kMarT - kMarB;
    svg.line(kMarL, kMarT, kMarL, kMarT + plot_h, "#333");
    svg.line(kMarL, kMarT + plot_h, kMarL + plot_w, kMarT + plot_h, "#333");
    auto xpos = [&](std::size_t ci) {
        return kMarL + plot_w * (s.checkpoints.size() == 1 ? 0.5 : double(ci) / double(s.checkpoints.size() - 1));
    };
    auto ypos = [&](double v) {
        const double t = (safe_log10(v, 1e-12) - llo) / std::max(lhi - llo, 1e-9);
        return kMarT + plot_h * (1.0 - std::clamp(t, 0.0, 1.0));
    };
    for (int e = int(llo); e <= int(lhi); ++e) {
        const double y = ypos(std::pow(10.0, e));
        svg.line(kMarL - 4, y, kMarL, y, "#333");
        svg.text(kMarL - 8, y + 4, "1e" + std::to_string(e), 11, "end");
    }
    for (std::size_t ci = 0; ci < s.checkpoints.size(); ++ci) {
        svg.line(xpos(ci), kMarT + plot_h, xpos(ci), kMarT + plot_h + 4, "#333");
        svg.text(xpos(ci), kMarT + plot_h + 16, std::to_string(s.checkpoints[ci]), 10);
    }
    for (int type = 1; type <= 14; ++type) {
        std::vector<std::pair<double, double>> pts;
        for (const MetricCell& c : s.cells)
            if (c.algo == algo && c.type == type && !std::isnan(c.nrmse)) {
                const auto ci = std::find(s.checkpoints.begin(), s.checkpoints.end(), c.checkpoint) -
                                s.checkpoints.begin();
                pts.emplace_back(xpos(std::size_t(ci)), ypos(c.nrmse));
            }
        if (pts.empty()) continue;
        svg.polyline(pts, type_color(type));
        svg.text(pts.back().first + 6, pts.back().second + 3, std::to_string(type), 10, "start", type_color(type));
    }
    svg.text(kW / 2.0, kH - 18, "steps", 12);
    svg.save(path);
}

void chart_scatter(const MetricSeries& s, WalkModel algo, const std::string& path) {
    const std::uint64_t last = s.checkpoints.back();
    std::vector<std::pair<double, double>> pts_raw; // (d_i, mre)
    std::vector<int> types;
    for (const MetricCell& c : s.cells)
        if (c.algo == algo && c.checkpoint == last && !std::isnan(c.mre) && s.truth_d[c.type - 1] > 0) {
            pts_raw.emplace_back(s.truth_d[c.type - 1], std::max(c.mre, 1e-12));
            types.push_back(c.type);
        }
    Svg svg;
    svg.text(kW / 2.0, 22, to_string(algo) + ": MRE vs exact concentration (log-log)", 15);
    const double plot_w = kW - kMarL - kMarR, plot_h = kH - kMarT - kMarB;
    svg.line(kMarL, kMarT, kMarL, kMarT + plot_h, "#333");
    svg.line(kMarL, kMarT + plot_h, kMarL + plot_w, kMarT + plot_h, "#333");
    double xlo = -7, xhi = 0, ylo = -4, yhi = 1;
    for (auto [d, m] : pts_raw) {
        xlo = std::min(xlo, std::floor(safe_log10(d, 1e-12)));
        ylo = std::min(ylo, std::floor(safe_log10(m, 1e-12)));
        yhi = std::max(yhi, std::ceil(safe_log10(m, 1e-12)));
    }
    auto xpos = [&](double d) { return kMarL + plot_w * (safe_log10(d, 1e-12) - xlo) / (xhi - xlo); };
    auto ypos = [&](double m) { return kMarT + plot_h * (1.0 - (safe_log10(m, 1e-12) - ylo) / (yhi - ylo)); };
    for (int e = int(xlo); e <= int(xhi); ++e) {
        svg.line(xpos(std::pow(10, e)), kMarT + plot_h, xpos(std::pow(10, e)), kMarT + plot_h + 4, "#333");
        svg.text(xpos(std::pow(10, e)), kMarT + plot_h + 16, "1e" + std::to_string(e), 10);
    }
    for (int e = int(ylo); e <= int(yhi); ++e) {
        svg.line(kMarL - 4, ypos(std::pow(10, e)), kMarL, ypos(std::pow(10, e)), "#333");
        svg.text(kMarL - 8, ypos(std::pow(10, e)) + 4, "1e" + std::to_string(e), 10, "end");
    }
    for (std::size_t i = 0; i < pts_raw.size(); ++i) {
        svg.circle(xpos(pts_raw[i].first), ypos(pts_raw[i].second), 4, type_color(types[i]));
        svg.text(xpos(pts_raw[i].first) + 6, ypos(pts_raw[i].second) - 4, std::to_string(types[i]), 10, "start",
                 type_color(types[i]));
    }
    svg.text(kW / 2.0, kH - 18, "exact concentration d_i", 12);
    svg.save(path);
}

} // namespace

void emit_report(const MetricSeries& s, const std::string& outdir) {
    std::filesystem::create_directories(outdir);
    const std::filesystem::path dir(outdir);
    write_results_csv(s, (dir / "results.csv").string());
    write_results_json(s, (dir / "results.json").string());
    for (WalkModel algo : s.plan.algos) {
        chart_mre_bars(s, algo, (dir / (to_string(algo) + "_mre.svg")).string());
        chart_nrmse_lines(s, algo, (dir / (to_string(algo) + "_nrmse.svg")).string());
        chart_scatter(s, algo, (dir / (to_string(algo) + "_scatter.svg")).string());
    }
}

} // namespace mlgs
