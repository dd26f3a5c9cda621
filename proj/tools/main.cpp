#include "rangeopt/disk_cover.hpp"
#include "rangeopt/energy_tsp.hpp"
#include "rangeopt/errors.hpp"
#include "rangeopt/geometry.hpp"
#include "rangeopt/multicast.hpp"
#include "rangeopt/oracles.hpp"

#include "json_writer.hpp"
#include "svg_writer.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace rangeopt;

namespace {

struct CommonOpts {
    std::string input;
    std::string output;
    std::string svg;
    double alpha = 2.0;
    int threads = 1;
    bool exact = false;
    bool no_timings = false;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool input_required) {
    auto* in = cmd->add_option("input", o.input, "point-set file (one point per line, '#' comments)");
    if (input_required) in->required();
    cmd->add_option("--alpha", o.alpha, "power gradient (>= 1)")->capture_default_str();
    cmd->add_option("--output", o.output, "write the JSON report here instead of stdout");
    cmd->add_option("--svg", o.svg, "also render the solution to this SVG file");
    cmd->add_option("--threads", o.threads, "worker threads (output bytes are unaffected)")
        ->capture_default_str();
    cmd->add_flag("--exact", o.exact, "also run the exact oracle and report the ratio");
    cmd->add_flag("--no-timings", o.no_timings, "omit timings from the report");
}

void check_common(const CommonOpts& o) {
    if (o.threads < 1) throw InputError("--threads must be at least 1");
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(path);
        if (!out) throw InputError("cannot write output file: " + path);
        out << text;
    }
}

void write_svg_file(const SvgScene& scene, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write SVG file: " + path);
    scene.write(out);
}

void timings_block(JsonWriter& w, std::initializer_list<std::pair<const char*, double>> phases) {
    w.key("timings_ms").begin_object();
    for (const auto& [name, ms] : phases) w.key(name).value(ms);
    w.end_object();
}

// ---------------------------------------------------------------- cover ----

struct CoverOpts {
    CommonOpts common;
    int k = 1;
    double epsilon = 1.0;
    int outliers = 0;
    bool discrete = false;
    bool non_discrete = false;
};

int run_cover(const CoverOpts& o) {
    check_common(o.common);
    CoverConfig cfg;
    cfg.k = o.k;
    cfg.alpha = o.common.alpha;
    cfg.epsilon = o.epsilon;
    cfg.outliers = o.outliers;
    cfg.discrete = !o.non_discrete; // --discrete is the default
    cfg.validate();
    PointSet ps = read_points_file(o.common.input);
    if (ps.empty()) throw InputError(o.common.input + ": no points");

    CoverRun run = cover_pipeline(ps, cfg);
    double opt_cost = 0.0;
    if (o.common.exact)
        opt_cost = exact_disk_cover(ps, cfg.k, cfg.outliers, cfg.alpha, cfg.discrete).cost;

    JsonWriter w;
    w.begin_object();
    w.key("problem").value("cover");
    w.key("parameters").begin_object();
    w.key("input").value(o.common.input);
    w.key("k").value(cfg.k);
    w.key("alpha").value(cfg.alpha);
    w.key("epsilon").value(cfg.epsilon);
    w.key("outliers").value(cfg.outliers);
    w.key("discrete").value(cfg.discrete);
    w.key("exact").value(o.common.exact);
    w.end_object();
    w.key("result").begin_object();
    w.key("balls").begin_array();
    for (const Ball& b : run.lifted.balls) {
        w.begin_object();
        w.key("center").begin_array();
        for (int a = 0; a < ps.dim(); ++a) w.value(b.center[a]);
        w.end_array();
        w.key("radius").value(b.radius);
        w.end_object();
    }
    w.end_array();
    w.key("cost").value(run.lifted.cost);
    w.key("uncovered").begin_array();
    for (int u : run.lifted.uncovered) w.value(u);
    w.end_array();
    w.key("coreset_size").value(run.coreset.reps.size());
    w.key("grid_delta").value(run.coreset.delta());
    w.key("opt_estimate").value(run.coreset.opt_estimate);
    if (o.common.exact) {
        w.key("opt_cost").value(opt_cost);
        w.key("ratio_vs_opt").value(opt_cost > 0.0 ? run.lifted.cost / opt_cost : 1.0);
    }
    w.end_object();
    w.key("counts").begin_object();
    w.key("coreset_size").value(run.coreset.reps.size());
    w.key("candidates").value(run.stats.candidates);
    w.end_object();
    if (!o.common.no_timings)
        timings_block(w, {{"coreset", run.coreset_ms}, {"solve", run.solve_ms}, {"lift", run.lift_ms}});
    w.end_object();
    emit(w.str() + "\n", o.common.output);

    if (!o.common.svg.empty()) {
        SvgScene scene(ps);
        for (const Ball& b : run.lifted.balls) scene.add_circle(b.center, b.radius);
        write_svg_file(scene, o.common.svg);
    }
    return 0;
}

// ------------------------------------------------------------ multicast ----

struct MulticastOpts {
    CommonOpts common;
    int source = 0;
    std::vector<int> receivers;
    int k = 1;
    double epsilon = 1.0;
    bool ladder = false;
};

int run_multicast(const MulticastOpts& o) {
    check_common(o.common);
    MulticastInstance inst;
    inst.stations = read_points_file(o.common.input);
    inst.source = o.source;
    inst.receivers = o.receivers;
    inst.hops = o.k;
    inst.alpha = o.common.alpha;
    inst.epsilon = o.epsilon;
    inst.validate();

    MulticastRun run = multicast_pipeline(inst, o.ladder);
    std::vector<int> uniq = inst.receivers;
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    auto tree = witness_tree(run.lifted.ranges, inst.stations, inst.source, uniq, inst.hops);
    double opt_cost = 0.0;
    if (o.common.exact) opt_cost = exact_multicast(inst).cost;

    JsonWriter w;
    w.begin_object();
    w.key("problem").value("multicast");
    w.key("parameters").begin_object();
    w.key("input").value(o.common.input);
    w.key("source").value(inst.source);
    w.key("receivers").begin_array();
    for (int r : inst.receivers) w.value(r);
    w.end_array();
    w.key("k").value(inst.hops);
    w.key("alpha").value(inst.alpha);
    w.key("epsilon").value(inst.epsilon);
    w.key("ladder").value(o.ladder);
    w.key("exact").value(o.common.exact);
    w.end_object();
    w.key("result").begin_object();
    w.key("ranges").begin_array();
    for (size_t i = 0; i < run.lifted.ranges.size(); ++i)
        if (run.lifted.ranges[i] > 0.0) {
            w.begin_object();
            w.key("index").value(i);
            w.key("range").value(run.lifted.ranges[i]);
            w.end_object();
        }
    w.end_array();
    w.key("cost").value(run.lifted.cost);
    w.key("tree_edges").begin_array();
    for (const auto& [p, q] : tree) {
        w.begin_array();
        w.value(p);
        w.value(q);
        w.end_array();
    }
    w.end_array();
    w.key("coreset_size").value(run.coreset.reps.size());
    w.key("delta").value(run.coreset.delta());
    w.key("scale").value(run.coreset.scale);
    if (o.common.exact) {
        w.key("opt_cost").value(opt_cost);
        w.key("ratio_vs_opt").value(opt_cost > 0.0 ? run.lifted.cost / opt_cost : 1.0);
    }
    w.end_object();
    w.key("counts").begin_object();
    w.key("coreset_size").value(run.coreset.reps.size());
    w.key("candidates").value(run.stats.candidates);
    w.key("candidate_ranges").value(run.candidate_ranges);
    w.end_object();
    if (!o.common.no_timings)
        timings_block(w, {{"coreset", run.coreset_ms}, {"solve", run.solve_ms}, {"lift", run.lift_ms}});
    w.end_object();
    emit(w.str() + "\n", o.common.output);

    if (!o.common.svg.empty()) {
        SvgScene scene(inst.stations);
        for (size_t i = 0; i < run.lifted.ranges.size(); ++i)
            if (run.lifted.ranges[i] > 0.0)
                scene.add_circle(inst.stations[i], run.lifted.ranges[i]);
        if (!tree.empty()) {
            // Single stroke covering the whole witness tree: depth-first walk
            // that returns through each parent.
            std::vector<std::vector<int>> kids(inst.stations.size());
            for (const auto& [p, q] : tree) kids[static_cast<size_t>(p)].push_back(q);
            std::vector<int> walk;
            auto dfs = [&](auto&& self, int v) -> void {
                walk.push_back(v);
                for (int c : kids[static_cast<size_t>(v)]) {
                    self(self, c);
                    walk.push_back(v);
                }
            };
            dfs(dfs, inst.source);
            scene.add_path(walk);
        }
        write_svg_file(scene, o.common.svg);
    }
    return 0;
}

// ------------------------------------------------------------------ tsp ----

struct TspOpts {
    CommonOpts common;
    int gap = 0;
};

int run_tsp(const TspOpts& o) {
    check_common(o.common);
    if (o.common.alpha < 1.0) throw InputError("--alpha must be >= 1");
    if (o.gap != 0 && !o.common.input.empty())
        throw InputError("give either an input file or --gap, not both");
    if (o.gap == 0 && o.common.input.empty())
        throw InputError("an input file or --gap N is required");
    PointSet ps = o.gap != 0 ? gap_instance(o.gap) : read_points_file(o.common.input);
    if (ps.empty()) throw InputError(o.common.input + ": no points");

    using Clock = std::chrono::steady_clock;
    auto t0 = Clock::now();
    RootedTree mst = build_mst(ps, o.common.alpha, 0);
    double mst_cost = tree_cost(mst, ps, o.common.alpha);
    auto t1 = Clock::now();
    HamPath path = pi_a(mst, 0, ps, o.common.alpha);
    Tour tour;
    tour.order = path.order;
    tour.cost = path.cost;
    if (tour.order.size() > 1)
        tour.cost += power_cost(ps[static_cast<size_t>(tour.order.back())],
                                ps[static_cast<size_t>(tour.order.front())], o.common.alpha);
    auto t2 = Clock::now();
    double opt_cost = 0.0;
    if (o.common.exact) opt_cost = exact_tsp(ps, o.common.alpha).cost;
    auto ms = [](Clock::time_point a, Clock::time_point b) {
        return std::chrono::duration<double, std::milli>(b - a).count();
    };

    JsonWriter w;
    w.begin_object();
    w.key("problem").value("tsp");
    w.key("parameters").begin_object();
    w.key("input").value(o.common.input);
    w.key("gap").value(o.gap);
    w.key("alpha").value(o.common.alpha);
    w.key("exact").value(o.common.exact);
    w.end_object();
    w.key("result").begin_object();
    w.key("order").begin_array();
    for (int i : tour.order) w.value(i);
    w.end_array();
    w.key("cost").value(tour.cost);
    w.key("mst_cost").value(mst_cost);
    w.key("ratio_vs_mst").value(mst_cost > 0.0 ? tour.cost / mst_cost : 1.0);
    if (o.common.exact) {
        w.key("opt_cost").value(opt_cost);
        w.key("ratio_vs_opt").value(opt_cost > 0.0 ? tour.cost / opt_cost : 1.0);
    }
    w.end_object();
    w.key("counts").begin_object();
    w.key("points").value(ps.size());
    w.end_object();
    if (!o.common.no_timings) timings_block(w, {{"mst", ms(t0, t1)}, {"solve", ms(t1, t2)}});
    w.end_object();
    emit(w.str() + "\n", o.common.output);

    if (!o.common.svg.empty()) {
        SvgScene scene(ps);
        std::vector<int> closed = tour.order;
        if (closed.size() > 1) closed.push_back(closed.front());
        scene.add_path(closed);
        write_svg_file(scene, o.common.svg);
    }
    return 0;
}

// ------------------------------------------------------------------ gen ----

struct GenOpts {
    long long n = 0;
    int dim = 2;
    unsigned long long seed = 0;
    std::string output;
};

int run_gen(const GenOpts& o) {
    if (o.n < 1) throw InputError("--n must be at least 1");
    if (o.dim < 1) throw InputError("--dim must be at least 1");
    std::mt19937_64 rng(o.seed);
    // Fixed bit-to-double mapping: uniform_real_distribution is not
    // reproducible across standard library implementations.
    auto uniform = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    PointSet ps(o.dim);
    for (long long i = 0; i < o.n; ++i) {
        Point p;
        p.coords.resize(static_cast<size_t>(o.dim));
        for (int a = 0; a < o.dim; ++a) p[a] = uniform();
        ps.add(std::move(p));
    }
    std::ostringstream ss;
    write_points(ss, ps);
    emit(ss.str(), o.output);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"(1+eps)-approximate wireless power assignment: k-disk cover, "
                 "bounded-hop multicast, and energy-minimal tours"};
    app.require_subcommand(1);

    CoverOpts cover;
    auto* cover_cmd = app.add_subcommand("cover", "minimum-power k-disk cover of a point set");
    add_common(cover_cmd, cover.common, true);
    cover_cmd->add_option("--k", cover.k, "number of balls")->required();
    cover_cmd->add_option("--epsilon", cover.epsilon, "approximation parameter in (0, 1]")
        ->capture_default_str();
    cover_cmd->add_option("--outliers", cover.outliers, "points the cover may skip")
        ->capture_default_str();
    auto* dflag = cover_cmd->add_flag("--discrete", cover.discrete, "centers on input points (default)");
    auto* nflag = cover_cmd->add_flag("--non-discrete", cover.non_discrete, "free ball centers");
    dflag->excludes(nflag);
    nflag->excludes(dflag);

    MulticastOpts mc;
    auto* mc_cmd = app.add_subcommand("multicast", "bounded-hop multicast range assignment");
    add_common(mc_cmd, mc.common, true);
    mc_cmd->add_option("--source", mc.source, "source station index")->required();
    mc_cmd->add_option("--receivers", mc.receivers, "receiver indices, comma separated")
        ->required()
        ->delimiter(',');
    mc_cmd->add_option("--k", mc.k, "hop bound")->capture_default_str();
    mc_cmd->add_option("--epsilon", mc.epsilon, "approximation parameter in (0, 1]")
        ->capture_default_str();
    mc_cmd->add_flag("--ladder", mc.ladder, "quantized candidate ranges instead of exact distances");

    TspOpts tsp;
    auto* tsp_cmd = app.add_subcommand("tsp", "energy-minimal tour approximation");
    add_common(tsp_cmd, tsp.common, false);
    tsp_cmd->add_option("--gap", tsp.gap, "use the n-point unit-spaced line instance");

    GenOpts gen;
    auto* gen_cmd = app.add_subcommand("gen", "generate uniform points in [0,1]^d");
    gen_cmd->add_option("--n", gen.n, "number of points")->required();
    gen_cmd->add_option("--dim", gen.dim, "dimension")->capture_default_str();
    gen_cmd->add_option("--seed", gen.seed, "generator seed")->capture_default_str();
    gen_cmd->add_option("--output", gen.output, "write points here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (cover_cmd->parsed()) return run_cover(cover);
        if (mc_cmd->parsed()) return run_multicast(mc);
        if (tsp_cmd->parsed()) return run_tsp(tsp);
        if (gen_cmd->parsed()) return run_gen(gen);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const UnsupportedError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const BudgetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
