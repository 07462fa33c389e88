#include "qsl/specparse.hpp"

#include "qsl/io.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <vector>

namespace qsl {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        if (pos == std::string::npos) {
            parts.push_back(s.substr(start));
            return parts;
        }
        parts.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

// key=value pairs with a closed key set, so typos fail loudly.
class Params {
public:
    Params(const std::string& kind, const std::string& body,
           const std::set<std::string>& allowed)
        : kind_(kind) {
        if (body.empty()) return;
        for (const std::string& item : split(body, ',')) {
            const std::size_t eq = item.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument(kind_ + ": expected key=value, got '" +
                                            item + "'");
            const std::string key = item.substr(0, eq);
            if (!allowed.count(key))
                throw std::invalid_argument(kind_ + ": unknown key '" + key + "'");
            if (!values_.emplace(key, item.substr(eq + 1)).second)
                throw std::invalid_argument(kind_ + ": duplicate key '" + key + "'");
        }
    }

    bool has(const std::string& key) const { return values_.count(key) != 0; }

    std::string raw(const std::string& key) const {
        auto it = values_.find(key);
        if (it == values_.end())
            throw std::invalid_argument(kind_ + ": missing required key '" + key + "'");
        return it->second;
    }

    double num(const std::string& key) const {
        const std::string v = raw(key);
        std::size_t used = 0;
        double out = 0.0;
        try {
            out = std::stod(v, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument(kind_ + ": '" + key + "' is not a number");
        }
        if (used != v.size())
            throw std::invalid_argument(kind_ + ": '" + key + "' is not a number");
        return out;
    }

    double num_or(const std::string& key, double fallback) const {
        return has(key) ? num(key) : fallback;
    }

    std::size_t count(const std::string& key) const {
        const double v = num(key);
        if (v < 0 || v != static_cast<double>(static_cast<std::size_t>(v)))
            throw std::invalid_argument(kind_ + ": '" + key +
                                        "' must be a nonnegative integer");
        return static_cast<std::size_t>(v);
    }

    std::uint64_t seed_or(const std::string& key, std::uint64_t fallback) const {
        if (!has(key)) return fallback;
        const std::string v = raw(key);
        try {
            std::size_t used = 0;
            const std::uint64_t out = std::stoull(v, &used);
            if (used != v.size()) throw std::invalid_argument("trailing junk");
            return out;
        } catch (const std::exception&) {
            throw std::invalid_argument(kind_ + ": '" + key +
                                        "' is not an unsigned integer");
        }
    }

private:
    std::string kind_;
    std::map<std::string, std::string> values_;
};

bool take_prefix(const std::string& spec, const std::string& name, std::string& body) {
    if (spec.rfind(name + ":", 0) != 0) return false;
    body = spec.substr(name.size() + 1);
    return true;
}

} // namespace

PureState parse_state_spec(const std::string& spec, std::uint64_t default_seed) {
    if (spec.empty()) throw std::invalid_argument("state spec must not be empty");
    std::string body;

    if (take_prefix(spec, "two-level", body)) {
        Params p("two-level", body, {"E"});
        return PureState::two_level(p.num("E"));
    }
    if (take_prefix(spec, "uniform-cycle", body)) {
        Params p("uniform-cycle", body, {"N", "eps1"});
        return PureState::uniform_cycle(p.count("N"), p.num_or("eps1", 1.0));
    }
    if (take_prefix(spec, "eigenstate", body)) {
        Params p("eigenstate", body, {"E"});
        return PureState::eigenstate(p.num("E"));
    }
    if (take_prefix(spec, "big-delta", body)) {
        Params p("big-delta", body, {"E", "eps", "n"});
        return PureState::big_delta(p.num("E"), p.num("eps"), p.count("n"));
    }
    if (take_prefix(spec, "interval-weighted", body)) {
        Params p("interval-weighted", body, {"N", "c", "scale", "file"});
        const std::size_t N = p.count("N");
        if (p.has("file")) {
            return PureState::interval_weighted(io::load_spectrum(p.raw("file")), N);
        }
        const Spectrum spectrum =
            Spectrum::power_law(N + 1, p.num("c"), p.num_or("scale", 1.0));
        return PureState::interval_weighted(spectrum, N);
    }
    if (take_prefix(spec, "sample", body)) {
        Params p("sample", body, {"E", "seed", "N", "eps1", "file"});
        const double E = p.num("E");
        const std::uint64_t seed = p.seed_or("seed", default_seed);
        if (p.has("file")) return sample_fixed_energy(io::load_spectrum(p.raw("file")), E, seed);
        const Spectrum spectrum = Spectrum::harmonic(p.count("N"), p.num_or("eps1", 1.0));
        return sample_fixed_energy(spectrum, E, seed);
    }
    if (take_prefix(spec, "file", body)) return io::load_state(body);
    return io::load_state(spec);
}

Spectrum parse_spectrum_spec(const std::string& spec) {
    if (spec.empty()) throw std::invalid_argument("spectrum spec must not be empty");
    std::string body;

    if (take_prefix(spec, "harmonic", body)) {
        Params p("harmonic", body, {"N", "eps1"});
        return Spectrum::harmonic(p.count("N"), p.num_or("eps1", 1.0), spec);
    }
    if (take_prefix(spec, "power-law", body)) {
        Params p("power-law", body, {"N", "c", "scale"});
        return Spectrum::power_law(p.count("N"), p.num("c"), p.num_or("scale", 1.0),
                                   spec);
    }
    if (take_prefix(spec, "list", body)) {
        std::vector<double> values;
        for (const std::string& item : split(body, ',')) {
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(item, &used);
            } catch (const std::exception&) {
                throw std::invalid_argument("list: '" + item + "' is not a number");
            }
            if (used != item.size())
                throw std::invalid_argument("list: '" + item + "' is not a number");
            values.push_back(v);
        }
        return Spectrum::from_list(std::move(values), spec);
    }
    if (take_prefix(spec, "file", body)) return io::load_spectrum(body);
    return io::load_spectrum(spec);
}

} // namespace qsl
