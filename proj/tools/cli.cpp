#include "cli.hpp"

#include "qsl/composite.hpp"
#include "qsl/errors.hpp"
#include "qsl/evolution.hpp"
#include "qsl/io.hpp"
#include "qsl/latticegas.hpp"
#include "qsl/optimizer.hpp"
#include "qsl/sequences.hpp"
#include "qsl/specparse.hpp"
#include "qsl/spectrum.hpp"
#include "qsl/state.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <memory>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

namespace qsl::cli {

namespace {

std::uint64_t env_seed_or(std::uint64_t fallback) {
    const char* raw = std::getenv("QSL_SEED");
    if (!raw || !*raw) return fallback;
    char* end = nullptr;
    errno = 0;
    const unsigned long long v = std::strtoull(raw, &end, 10);
    if (errno != 0 || end == raw || *end != '\0')
        throw std::invalid_argument("QSL_SEED must be an unsigned integer");
    return static_cast<std::uint64_t>(v);
}

void emit(std::ostream& out, const std::string& content, const std::string& path) {
    if (path.empty())
        out << content;
    else
        io::write_file(path, content);
}

std::vector<std::size_t> parse_size_list(const std::string& csv) {
    std::vector<std::size_t> out;
    std::size_t start = 0;
    while (start <= csv.size()) {
        const std::size_t pos = csv.find(',', start);
        const std::string item =
            csv.substr(start, pos == std::string::npos ? pos : pos - start);
        try {
            std::size_t used = 0;
            out.push_back(std::stoull(item, &used));
            if (used != item.size()) throw std::invalid_argument("trailing junk");
        } catch (const std::exception&) {
            throw std::invalid_argument("'" + item + "' is not a size");
        }
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

// ---- sweep ----

const std::set<std::string>& sweepable() {
    static const std::set<std::string> names{
        "bounds",  "first-zero",  "trace",    "gram",       "cycle-check",
        "scaling", "compose",     "frame-count", "optimize", "latticegas"};
    return names;
}

std::string scalar_to_string(const nlohmann::json& v, const std::string& flag) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
    if (v.is_number_float()) return io::format_double(v.get<double>());
    throw std::invalid_argument("sweep: value for '" + flag + "' must be a scalar");
}

void append_flag(std::vector<std::string>& args, const std::string& flag,
                 const nlohmann::json& v) {
    if (v.is_boolean()) {
        if (v.get<bool>()) args.push_back("--" + flag);
        return;
    }
    args.push_back("--" + flag);
    args.push_back(scalar_to_string(v, flag));
}

std::string sanitize_for_filename(const std::string& s) {
    std::string out;
    for (char c : s)
        out += (std::isalnum(static_cast<unsigned char>(c)) != 0 ||
                std::strchr("._=+-", c) != nullptr)
                   ? c
                   : '-';
    return out;
}

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

struct SweepPoint {
    std::vector<std::string> args;
    std::string params; // "flag=value;flag=value"
    std::string file;
};

int run_sweep(const std::string& config_path, const std::string& out_dir, int jobs,
              std::ostream& out) {
    nlohmann::json cfg;
    try {
        cfg = nlohmann::json::parse(io::read_file(config_path));
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(config_path + ": not valid JSON (" + e.what() + ")");
    }
    if (!cfg.is_object() || !cfg.contains("subcommand") || !cfg["subcommand"].is_string())
        throw std::invalid_argument("sweep config needs a \"subcommand\" string");
    const std::string subcommand = cfg["subcommand"].get<std::string>();
    if (!sweepable().count(subcommand))
        throw std::invalid_argument("sweep: cannot sweep subcommand '" + subcommand + "'");
    if (!cfg.contains("grid") || !cfg["grid"].is_object() || cfg["grid"].empty())
        throw std::invalid_argument("sweep config needs a non-empty \"grid\" object");

    std::vector<std::string> base{subcommand};
    if (cfg.contains("fixed")) {
        if (!cfg["fixed"].is_object())
            throw std::invalid_argument("sweep: \"fixed\" must be an object");
        for (const auto& [flag, value] : cfg["fixed"].items())
            append_flag(base, flag, value);
    }

    // Grid flags in sorted order (nlohmann objects iterate sorted), values
    // in the order listed. The cartesian product is enumerated with the
    // last flag varying fastest.
    std::vector<std::string> flags;
    std::vector<const nlohmann::json*> values;
    for (const auto& [flag, list] : cfg["grid"].items()) {
        if (!list.is_array() || list.empty())
            throw std::invalid_argument("sweep: grid for '" + flag +
                                        "' must be a non-empty array");
        flags.push_back(flag);
        values.push_back(&list);
    }

    std::vector<SweepPoint> points;
    std::vector<std::size_t> cursor(flags.size(), 0);
    while (true) {
        SweepPoint point;
        point.args = base;
        std::string name = subcommand;
        for (std::size_t i = 0; i < flags.size(); ++i) {
            const nlohmann::json& v = (*values[i])[cursor[i]];
            append_flag(point.args, flags[i], v);
            const std::string vs = scalar_to_string(v, flags[i]);
            point.params += (i ? ";" : "") + flags[i] + "=" + vs;
            name += (i ? "," : "_") + flags[i] + "=" + sanitize_for_filename(vs);
        }
        point.file = name + ".json";
        point.args.push_back("--out");
        point.args.push_back((std::filesystem::path(out_dir) / point.file).string());
        points.push_back(std::move(point));

        std::size_t i = flags.size();
        while (i > 0) {
            --i;
            if (++cursor[i] < values[i]->size()) break;
            cursor[i] = 0;
            if (i == 0) goto done;
        }
        if (flags.empty()) break;
    }
done:

    std::filesystem::create_directories(out_dir);

    std::vector<int> codes(points.size(), -1);
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= points.size()) return;
            std::ostringstream sink_out, sink_err;
            codes[i] = run(points[i].args, sink_out, sink_err);
        }
    };
    const std::size_t nthreads =
        std::min<std::size_t>(static_cast<std::size_t>(jobs), points.size());
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        for (std::size_t i = 0; i < nthreads; ++i) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
    }

    std::string index = "index,params,file,exit_code\n";
    std::size_t failures = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        index += std::to_string(i) + ',' + csv_quote(points[i].params) + ',' +
                 points[i].file + ',' + std::to_string(codes[i]) + '\n';
        if (codes[i] != 0) ++failures;
    }
    const std::string index_path = (std::filesystem::path(out_dir) / "index.csv").string();
    io::write_file(index_path, index);

    io::Json summary = io::Json::object();
    summary["failures"] = io::Json::integer(static_cast<long long>(failures));
    summary["index"] = io::Json::string(index_path);
    summary["points"] = io::Json::integer(static_cast<long long>(points.size()));
    out << summary.dump();
    return 0;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"speed-of-evolution bounds: extremal states, orthogonality "
                 "times, cycles, and a lattice-gas analogue"};
    app.require_subcommand(1);

    // bounds
    {
        struct Opts {
            std::string state, outp;
            std::size_t cycle_N = 0;
            bool measure = false;
            double delta = 1e-6, tmax = 0.0;
        };
        auto o = std::make_shared<Opts>();
        auto* sub = app.add_subcommand("bounds", "Bound times for a state");
        sub->add_option("--state", o->state, "state spec")->required();
        sub->add_option("--cycle-N", o->cycle_N,
                        "also report the cycle and max-energy bounds for this length");
        sub->add_flag("--measure", o->measure, "measure the first zero as well");
        sub->add_option("--delta", o->delta, "threshold for --measure")
            ->capture_default_str();
        sub->add_option("--tmax", o->tmax, "horizon for --measure (0 = auto)")
            ->capture_default_str();
        sub->add_option("--out", o->outp, "write to this file instead of stdout");
        sub->callback([o, &out]() {
            const PureState state = parse_state_spec(o->state, env_seed_or(0));
            std::optional<std::size_t> cycle_N;
            if (o->cycle_N) cycle_N = o->cycle_N;
            BoundReport report = bounds(state, cycle_N);
            if (o->measure) {
                FirstZeroOptions fz;
                fz.delta = o->delta;
                fz.t_max = o->tmax;
                report.measured_tau = first_orthogonality_time(state, fz);
                if (!report.measured_tau)
                    report.notes.push_back("no zero found inside the horizon");
            }
            emit(out, io::bound_report_json(report).dump(), o->outp);
        });
    }

    // first-zero
    {
        struct Opts {
            std::string state, outp;
            double delta = 1e-6, tmax = 0.0;
            int grid_refine = 1;
        };
        auto o = std::make_shared<Opts>();
        auto* sub = app.add_subcommand("first-zero", "First orthogonality time");
        sub->add_option("--state", o->state, "state spec")->required();
        sub->add_option("--delta", o->delta, "threshold on |S|")->capture_default_str();
        sub->add_option("--tmax", o->tmax, "horizon (0 = auto)")->capture_default_str();
        sub->add_option("--grid-refine", o->grid_refine, "grid density multiplier")
            ->capture_default_str();
        sub->add_option("--out", o->outp, "write to this file instead of stdout");
        sub->callback([o, &out]() {
            const PureState state = parse_state_spec(o->state, env_seed_or(0));
            FirstZeroOptions fz;
            fz.delta = o->delta;
            fz.t_max = o->tmax;
            fz.grid_refine = o->grid_refine;
            const auto tau = first_orthogonality_time(state, fz);
            io::Json j = io::Json::object();
            j["delta"] = io::Json::number(o->delta);
            j["found"] = io::Json::boolean(tau.has_value());
            j["grid_refine"] = io::Json::integer(o->grid_refine);
            j["t_max"] = io::Json::number(o->tmax);
            j["tau"] = tau ? io::Json::number(*tau) : io::Json::null();
            emit(out, j.dump(), o->outp);
        });
    }

    // trace
    {
        struct Opts {
            std::string state, outp, format = "csv";
            double t0 = 0.0, t1 = 1.0;
            std::size_t points = 201;
        };
        auto o = std::make_shared<Opts>();
        auto* sub = app.add_subcommand("trace", "Sample S(t) on a uniform grid");
        sub->add_option("--state", o->state, "state spec")->required();
        sub->add_option("--t0", o->t0, "start time")->capture_default_str();
        sub->add_option("--t1", o->t1, "end time")->required();
        sub->add_option("--points", o->points, "sample count")->capture_default_str();
        sub->add_option("--format", o->format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
        sub->add_option("--out", o->outp, "write to this file instead of stdout");
        sub->callback([o, &out]() {
            const PureState state = parse_state_spec(o->state, env_seed_or(0));
            const OverlapTrace tr = trace(state, o->t0, o->t1, o->points);
            if (o->format == "csv") {
                emit(out, io::trace_csv(tr), o->outp);
                return;
            }
            io::Json j = io::Json::object();
            auto arr = [](const std::vector<double>& v) {
                io::Json a = io::Json::array();
                for (double x : v) a.push_back(io::Json::number(x));
                return a;
            };
            j["im"] = arr(tr.im);
            j["mag"] = arr(tr.mag);
            j["re"] = arr(tr.re);
            j["t"] = arr(tr.times);
            emit(out, j.dump(), o->outp);
        });
    }

    // gram
    {
        struct Opts {
            std::string state, outp;
            double step = 0.0;
            std::size_t count = 0;
        };
        auto o = std::make_shared<Opts>();
        auto* sub = app.add_subcommand(
            "gram", "Gram matrix of the step-evolved state sequence");
        sub->add_option("--state", o->state, "state spec")->required();
        sub->add_option("--step", o->step, "time step between sequence states")
            ->required();
        sub->add_option("--count", o->count, "sequence length")->required();
        sub->add_option("--out", o->outp, "write to this file instead of stdout");
        sub->callback([o, &out]() {
            const PureState state = parse_state_spec(o->state, env_seed_or(0));
            emit(out, io::gram_json(gram(state, o->step, o->count)).dump(), o->outp);
        });
    }

    // cycle-check
    {
        struct Opts {
            std::string state, outp;
            std::size_t N = 0;
            double eps1 = 0.0;
        };
        auto o = std::make_shared<Opts>();
        auto* sub = app.add_subcommand(
            "cycle-check", "Fold-weight test for an exact N-state cycle");
        sub->add_option("--state", o->state, "state spec (must live on a ladder)")
            ->required();
        sub->add_option("--N", o->N, "cycle length")->required();
        sub->add_option("--eps1", o->eps1, "ladder step (0 = infer)")
            ->capture_default_str();
        sub->add_option("--out", o->outp, "write to this file instead of stdout");
        sub->callback([o, &out]() {
            const PureState state = parse_state_spec(o->state, env_seed_or(0));
            std::optional<double> eps1;
            if (o->eps1 > 0.0) eps1 = o->eps1;
            const CycleCheck check = exact_cycle_check(state, o->N, eps1);
            io::Json j = io::cycle_json(check);
            if (check.is_cycle) {
                const CycleFloor floor =
                    cycle_energy_floor(ladder_weights(state, eps1), o->N);
                io::Json f = io::Json::object();
                f["equality"] = io::Json::boolean(floor.equality);
                f["floor"] = io::Json::number(floor.floor);
                f["mean"] = io::Json::number(floor.mean);
                j["floor"] = std::move(f);
            } else {
                j["floor"] = io::Json::null();
            }
            emit(out, j.dump(), o->outp);
        });
    }

    // scaling
    {
        struct Opts {
            std::string N, outp, kind = "residual", format = "json";
            double c = 0.0;
            long k = 1;
        };
        auto o = std::make_shared<Opts>();
        auto* sub = app.add_subcommand(
            "scaling", "Correction scalings of the interval-weighted construction");
        sub->add_option("--c", o->c, "power-law exponent in (0, 1]")->required();
        sub->add_option("--k", o->k, "Gram offset (residual kind)")
            ->capture_default_str();
        sub->add_option("--N", o->N, "comma-separated sequence lengths")->required();
        sub->add_option("--kind", o->kind, "residual or deltasq")
            ->check(CLI::IsMember({"residual", "deltasq"}))
            ->capture_default_str();
        sub->add_option("--format", o->format, "json or csv")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
        sub->add_option("--out", o->outp, "write to this file instead of stdout");
        sub->callback([o, &out]() {
            const std::vector<std::size_t> Ns = parse_size_list(o->N);
            const ScalingReport report = o->kind == "residual"
                                             ? residual_scaling(o->c, o->k, Ns)
                                             : deltasq_scaling(o->c, Ns);
            emit(out,
                 o->format == "csv" ? io::scaling_csv(report)
                                    : io::scaling_json(report).dump(),
                 o->outp);
        });
    }

    // compose
    {
        struct Opts {
            std::vector<std::string> states;
            std::string outp;
        };
        auto o = std::make_shared<Opts>();
        auto* sub = app.add_subcommand(
            "compose", "Product state of independent subsystems");
        sub->add_option("--state", o->states, "state spec (repeat, at least twice)")
            ->required();
        sub->add_option("--out", o->outp, "write to this file instead of stdout");
        sub->callback([o, &out]() {
            std::vector<PureState> parts;
            for (const auto& spec : o->states)
                parts.push_back(parse_state_spec(spec, env_seed_or(0)));
            emit(out, io::product_json(compose(parts)).dump(), o->outp);
        });
    }

    // frame-count
    {
        struct Opts {
            std::string outp;
            double E = 0.0, t = 0.0, p = 0.0, x = 0.0;
        };
        auto o = std::make_shared<Opts>();
        auto* sub = app.add_subcommand(
            "frame-count", "Frame-adjusted orthogonal-state count 2(Et - px)");
        sub->add_option("--E", o->E, "average energy")->required();
        sub->add_option("--t", o->t, "elapsed time")->required();
        sub->add_option("--p", o->p, "momentum")->capture_default_str();
        sub->add_option("--x", o->x, "displacement")->capture_default_str();
        sub->add_option("--out", o->outp, "write to this file instead of stdout");
        sub->callback([o, &out]() {
            io::Json j = io::Json::object();
            j["E"] = io::Json::number(o->E);
            j["count"] = io::Json::number(frame_adjusted_count(o->E, o->t, o->p, o->x));
            j["p"] = io::Json::number(o->p);
            j["t"] = io::Json::number(o->t);
            j["x"] = io::Json::number(o->x);
            emit(out, j.dump(), o->outp);
        });
    }

    // optimize
    {
        struct Opts {
            std::string spectrum, outp;
            double energy = 0.0;
            OptimizeOptions oo;
            bool do_certify = false;
        };
        auto o = std::make_shared<Opts>();
        auto* sub = app.add_subcommand(
            "optimize", "Search for the fastest state at fixed average energy");
        sub->add_option("--spectrum", o->spectrum, "spectrum spec or file")->required();
        sub->add_option("--energy", o->energy, "target average energy")->required();
        sub->add_option("--delta", o->oo.delta, "orthogonality threshold")
            ->capture_default_str();
        sub->add_option("--budget", o->oo.budget, "objective evaluation budget")
            ->capture_default_str();
        auto* seed_opt =
            sub->add_option("--seed", o->oo.seed, "RNG seed (default QSL_SEED or 0)");
        sub->add_option("--restarts", o->oo.restarts, "random restarts")
            ->capture_default_str();
        sub->add_option("--tmax", o->oo.t_max, "objective horizon (0 = auto)")
            ->capture_default_str();
        sub->add_flag("--certify", o->do_certify, "recheck the result on a finer grid");
        sub->add_option("--out", o->outp, "write to this file instead of stdout");
        sub->callback([o, seed_opt, &out]() {
            if (seed_opt->count() == 0) o->oo.seed = env_seed_or(0);
            const Spectrum spectrum = parse_spectrum_spec(o->spectrum);
            const OptimizationResult result = minimize_tau(spectrum, o->energy, o->oo);
            io::Json j = io::optimize_json(result);
            if (o->do_certify) j["certificate"] = io::certify_json(certify(result));
            emit(out, j.dump(), o->outp);
        });
    }

    // latticegas
    {
        struct Opts {
            std::string outp, csv;
            std::size_t width = 0, height = 0, steps = 0;
            double density = 0.0;
            std::uint64_t seed = 0;
            bool collisions = false;
        };
        auto o = std::make_shared<Opts>();
        auto* sub = app.add_subcommand(
            "latticegas", "Single-speed lattice gas and its change-count ceiling");
        sub->add_option("--width", o->width, "lattice width")->required();
        sub->add_option("--height", o->height, "lattice height")->required();
        sub->add_option("--density", o->density, "slot fill probability in [0, 1]")
            ->required();
        sub->add_option("--steps", o->steps, "number of steps")->required();
        auto* seed_opt =
            sub->add_option("--seed", o->seed, "RNG seed (default QSL_SEED or 0)");
        sub->add_flag("--collisions", o->collisions, "enable the head-on collision rule");
        sub->add_option("--csv", o->csv, "also write the per-step CSV to this file");
        sub->add_option("--out", o->outp, "write the summary to this file");
        sub->callback([o, seed_opt, &out]() {
            if (seed_opt->count() == 0) o->seed = env_seed_or(0);
            LatticeGas gas = LatticeGas::random(o->width, o->height, o->density, o->seed);
            const RunSummary summary = gas.run(o->steps, o->collisions);
            if (!o->csv.empty()) io::write_file(o->csv, io::latticegas_csv(summary));
            emit(out, io::latticegas_json(summary).dump(), o->outp);
        });
    }

    // sweep
    {
        struct Opts {
            std::string config, out_dir = "sweep";
            int jobs = 1;
        };
        auto o = std::make_shared<Opts>();
        auto* sub = app.add_subcommand(
            "sweep", "Run one subcommand over a parameter grid");
        sub->add_option("--config", o->config, "sweep config JSON")->required();
        sub->add_option("--out-dir", o->out_dir, "output directory")
            ->capture_default_str();
        sub->add_option("--jobs", o->jobs, "parallel points")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        sub->callback(
            [o, &out]() { run_sweep(o->config, o->out_dir, o->jobs, out); });
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        const auto picked = app.get_subcommands();
        out << (picked.empty() ? app.help() : picked.front()->help());
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\nRun with --help for usage.\n";
        return 1;
    } catch (const AssertionFailure& e) {
        err << "assertion failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace qsl::cli
