#include "qsl/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qsl::io {

std::string format_double(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

Json Json::boolean(bool b) {
    Json j;
    j.kind_ = Kind::Bool;
    j.bool_ = b;
    return j;
}

Json Json::number(double v) {
    Json j;
    j.kind_ = Kind::Number;
    j.number_ = v;
    return j;
}

Json Json::integer(long long v) {
    Json j;
    j.kind_ = Kind::Integer;
    j.integer_ = v;
    return j;
}

Json Json::string(std::string s) {
    Json j;
    j.kind_ = Kind::String;
    j.string_ = std::move(s);
    return j;
}

Json Json::array() {
    Json j;
    j.kind_ = Kind::Array;
    return j;
}

Json Json::object() {
    Json j;
    j.kind_ = Kind::Object;
    return j;
}

void Json::push_back(Json v) {
    if (kind_ != Kind::Array) throw std::logic_error("Json: push_back on non-array");
    items_.push_back(std::move(v));
}

Json& Json::operator[](const std::string& key) {
    if (kind_ != Kind::Object) throw std::logic_error("Json: key access on non-object");
    return fields_[key];
}

namespace {

void escape_into(std::string& out, const std::string& s) {
    out += '"';
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                out += buf;
            } else {
                out += c;
            }
        }
    }
    out += '"';
}

} // namespace

void Json::write(std::string& out, int indent, int depth) const {
    const std::string pad(static_cast<std::size_t>(indent) * (depth + 1), ' ');
    const std::string close_pad(static_cast<std::size_t>(indent) * depth, ' ');
    switch (kind_) {
    case Kind::Null:
        out += "null";
        break;
    case Kind::Bool:
        out += bool_ ? "true" : "false";
        break;
    case Kind::Number:
        out += format_double(number_);
        break;
    case Kind::Integer:
        out += std::to_string(integer_);
        break;
    case Kind::String:
        escape_into(out, string_);
        break;
    case Kind::Array:
        if (items_.empty()) {
            out += "[]";
            break;
        }
        out += "[\n";
        for (std::size_t i = 0; i < items_.size(); ++i) {
            out += pad;
            items_[i].write(out, indent, depth + 1);
            if (i + 1 < items_.size()) out += ',';
            out += '\n';
        }
        out += close_pad + "]";
        break;
    case Kind::Object:
        if (fields_.empty()) {
            out += "{}";
            break;
        }
        out += "{\n";
        {
            std::size_t i = 0;
            for (const auto& [key, value] : fields_) {
                out += pad;
                escape_into(out, key);
                out += ": ";
                value.write(out, indent, depth + 1);
                if (++i < fields_.size()) out += ',';
                out += '\n';
            }
        }
        out += close_pad + "}";
        break;
    }
}

std::string Json::dump(int indent) const {
    std::string out;
    write(out, indent, 0);
    out += '\n';
    return out;
}

namespace {

Json number_array(const std::vector<double>& values) {
    Json arr = Json::array();
    for (double v : values) arr.push_back(Json::number(v));
    return arr;
}

Json optional_number(const std::optional<double>& v) {
    return v ? Json::number(*v) : Json::null();
}

} // namespace

Json spectrum_json(const Spectrum& spectrum) {
    Json j = Json::object();
    j["energies"] = number_array(spectrum.energies());
    j["label"] = Json::string(spectrum.label());
    j["size"] = Json::integer(static_cast<long long>(spectrum.size()));
    return j;
}

Json state_json(const PureState& state) {
    const EnergyStats stats = energy_stats(state);
    Json j = Json::object();
    j["spectrum"] = spectrum_json(state.spectrum());
    j["weights"] = number_array(state.weights());
    j["phases"] = number_array(state.phases());
    j["mean"] = Json::number(stats.mean);
    j["stddev"] = Json::number(stats.stddev);
    j["e_max_used"] = Json::number(stats.e_max_used);
    return j;
}

Json bound_report_json(const BoundReport& report) {
    Json j = Json::object();
    j["ml_time"] = optional_number(report.ml_time);
    j["mt_time"] = optional_number(report.mt_time);
    j["cycle_time"] = optional_number(report.cycle_time);
    j["emax_time"] = optional_number(report.emax_time);
    j["measured_tau"] = optional_number(report.measured_tau);
    Json notes = Json::array();
    for (const auto& n : report.notes) notes.push_back(Json::string(n));
    j["notes"] = std::move(notes);
    Json ratios = Json::object();
    for (const auto& [name, value] : achievability_ratios(report))
        ratios[name] = Json::number(value);
    j["ratios"] = std::move(ratios);
    return j;
}

Json gram_json(const GramReport& report) {
    Json entries = Json::array();
    for (const auto& z : report.entries) {
        Json pair = Json::array();
        pair.push_back(Json::number(z.real()));
        pair.push_back(Json::number(z.imag()));
        entries.push_back(std::move(pair));
    }
    Json j = Json::object();
    j["entries"] = std::move(entries);
    j["max_offdiag"] = Json::number(report.max_offdiag);
    j["size"] = Json::integer(static_cast<long long>(report.size));
    j["step"] = Json::number(report.step);
    return j;
}

Json cycle_json(const CycleCheck& check) {
    Json j = Json::object();
    j["is_cycle"] = Json::boolean(check.is_cycle);
    j["max_deviation"] = Json::number(check.max_deviation);
    j["d_weights"] = number_array(check.d_weights);
    Json offending = Json::array();
    for (std::size_t r : check.offending)
        offending.push_back(Json::integer(static_cast<long long>(r)));
    j["offending"] = std::move(offending);
    return j;
}

Json scaling_json(const ScalingReport& report) {
    Json samples = Json::array();
    for (const auto& [N, value] : report.samples) {
        Json row = Json::object();
        row["N"] = Json::number(N);
        row["value"] = Json::number(value);
        samples.push_back(std::move(row));
    }
    Json j = Json::object();
    j["degenerate"] = Json::boolean(report.degenerate);
    j["exponent_fit"] = Json::number(report.exponent_fit);
    j["r2"] = Json::number(report.r2);
    j["samples"] = std::move(samples);
    j["target_exponent"] = Json::number(report.target_exponent);
    return j;
}

Json product_json(const ProductState& product) {
    Json parts = Json::array();
    double mean_sum = 0.0;
    for (const auto& part : product.parts) {
        parts.push_back(state_json(part));
        mean_sum += energy_stats(part).mean;
    }
    const double combined_mean = energy_stats(product.combined).mean;
    Json j = Json::object();
    j["combined"] = state_json(product.combined);
    j["parts"] = std::move(parts);
    j["mean_sum_of_parts"] = Json::number(mean_sum);
    j["mean_combined"] = Json::number(combined_mean);
    j["additivity_residual"] = Json::number(combined_mean - mean_sum);
    return j;
}

Json latticegas_json(const RunSummary& summary) {
    Json j = Json::object();
    j["conserved"] = Json::boolean(summary.conserved);
    j["max_utilization"] = Json::number(summary.max_utilization);
    j["mean_utilization"] = Json::number(summary.mean_utilization);
    j["min_utilization"] = Json::number(summary.min_utilization);
    j["particle_count"] = Json::integer(static_cast<long long>(summary.particle_count));
    j["steps"] = Json::integer(static_cast<long long>(summary.steps));
    return j;
}

Json optimize_json(const OptimizationResult& result) {
    Json j = Json::object();
    j["best_state"] = state_json(result.best_state);
    j["best_tau"] = Json::number(result.best_tau);
    j["bound_tau"] = Json::number(result.bound_tau);
    j["converged"] = Json::boolean(result.converged);
    j["delta"] = Json::number(result.delta);
    j["gap"] = Json::number(result.gap);
    j["iterations"] = Json::integer(static_cast<long long>(result.iterations));
    j["seed"] = Json::integer(static_cast<long long>(result.seed));
    j["t_max_used"] = Json::number(result.t_max_used);
    j["target_energy"] = Json::number(result.target_energy);
    return j;
}

Json certify_json(const CertifyReport& report) {
    Json j = Json::object();
    j["energy_ok"] = Json::boolean(report.energy_ok);
    j["ml_ok"] = Json::boolean(report.ml_ok);
    j["mt_ok"] = Json::boolean(report.mt_ok);
    j["passed"] = Json::boolean(report.passed);
    j["recomputed_tau"] = Json::number(report.recomputed_tau);
    j["rel_diff"] = Json::number(report.rel_diff);
    j["stable"] = Json::boolean(report.stable);
    return j;
}

std::string trace_csv(const OverlapTrace& trace) {
    std::string out = "t,re,im,mag\n";
    for (std::size_t i = 0; i < trace.times.size(); ++i) {
        out += format_double(trace.times[i]) + ',' + format_double(trace.re[i]) + ',' +
               format_double(trace.im[i]) + ',' + format_double(trace.mag[i]) + '\n';
    }
    return out;
}

std::string scaling_csv(const ScalingReport& report) {
    std::string out = "N,value\n";
    for (const auto& [N, value] : report.samples)
        out += format_double(N) + ',' + format_double(value) + '\n';
    return out;
}

std::string latticegas_csv(const RunSummary& summary) {
    std::string out = "step,changes,bound,utilization\n";
    for (std::size_t i = 0; i < summary.per_step.size(); ++i) {
        const StepReport& r = summary.per_step[i];
        out += std::to_string(i + 1) + ',' + std::to_string(r.changes) + ',' +
               std::to_string(r.bound) + ',' + format_double(r.utilization) + '\n';
    }
    return out;
}

namespace {

nlohmann::json parse_file(const std::string& path) {
    try {
        return nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(path + ": not valid JSON (" + e.what() + ")");
    }
}

std::vector<double> number_vector(const nlohmann::json& j, const std::string& what) {
    if (!j.is_array()) throw std::invalid_argument(what + " must be an array of numbers");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& v : j) {
        if (!v.is_number()) throw std::invalid_argument(what + " must be numeric");
        out.push_back(v.get<double>());
    }
    return out;
}

} // namespace

Spectrum load_spectrum(const std::string& path) {
    const nlohmann::json j = parse_file(path);
    if (j.is_array()) return Spectrum::from_list(number_vector(j, path));
    if (j.is_object() && j.contains("energies")) {
        std::string label;
        if (j.contains("label") && j["label"].is_string())
            label = j["label"].get<std::string>();
        return Spectrum::from_list(number_vector(j["energies"], path + ": energies"),
                                   label);
    }
    throw std::invalid_argument(path + ": expected an energy array or an object "
                                       "with an \"energies\" field");
}

PureState load_state(const std::string& path) {
    const nlohmann::json j = parse_file(path);
    if (!j.is_object() || !j.contains("weights") ||
        !(j.contains("spectrum") || j.contains("energies")))
        throw std::invalid_argument(path + ": state files need \"spectrum\" (or "
                                           "\"energies\") and \"weights\"");
    std::string label;
    nlohmann::json energies_json;
    if (j.contains("spectrum")) {
        const nlohmann::json& s = j["spectrum"];
        if (s.is_array()) {
            energies_json = s;
        } else if (s.is_object() && s.contains("energies")) {
            energies_json = s["energies"];
            if (s.contains("label") && s["label"].is_string())
                label = s["label"].get<std::string>();
        } else {
            throw std::invalid_argument(path + ": \"spectrum\" must be an energy "
                                               "array or an object with one");
        }
    } else {
        energies_json = j["energies"];
    }
    std::vector<double> energies = number_vector(energies_json, path + ": energies");
    std::vector<double> weights = number_vector(j["weights"], path + ": weights");
    std::vector<double> phases;
    if (j.contains("phases") && !j["phases"].is_null())
        phases = number_vector(j["phases"], path + ": phases");
    if (weights.size() != energies.size())
        throw std::invalid_argument(path + ": weights and energies differ in length");
    if (!phases.empty() && phases.size() != energies.size())
        throw std::invalid_argument(path + ": phases and energies differ in length");

    // Levels may arrive in any order; sort triples together so weights stay
    // attached to their energies through Spectrum's normalization.
    std::vector<std::size_t> order(energies.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return energies[a] < energies[b];
    });
    std::vector<double> e2, w2, p2;
    for (std::size_t idx : order) {
        e2.push_back(energies[idx]);
        w2.push_back(weights[idx]);
        if (!phases.empty()) p2.push_back(phases[idx]);
    }
    return PureState(Spectrum::from_list(std::move(e2), label), std::move(w2),
                     std::move(p2));
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
    if (!out) throw std::runtime_error("short write to " + path);
}

} // namespace qsl::io
