// io.hpp — deterministic JSON/CSV emission and file loaders.
//
// Output determinism is a contract: object keys are emitted in sorted
// order and every floating-point value is printed with 17 significant
// digits, so identical inputs give byte-identical files.

#pragma once

#include "qsl/composite.hpp"
#include "qsl/evolution.hpp"
#include "qsl/latticegas.hpp"
#include "qsl/optimizer.hpp"
#include "qsl/sequences.hpp"
#include "qsl/spectrum.hpp"
#include "qsl/state.hpp"

#include <map>
#include <string>
#include <vector>

namespace qsl::io {

// %.17g, round-trip safe; non-finite values map to "null".
std::string format_double(double v);

// Minimal JSON value for writing. Objects keep their keys sorted, which is
// what makes dump() deterministic.
class Json {
public:
    Json() : kind_(Kind::Null) {}

    static Json null() { return Json(); }
    static Json boolean(bool b);
    static Json number(double v);
    static Json integer(long long v);
    static Json string(std::string s);
    static Json array();
    static Json object();

    bool is_object() const { return kind_ == Kind::Object; }
    bool is_array() const { return kind_ == Kind::Array; }

    void push_back(Json v);                   // array only
    Json& operator[](const std::string& key); // object only

    std::string dump(int indent = 2) const;

private:
    enum class Kind { Null, Bool, Number, Integer, String, Array, Object };

    void write(std::string& out, int indent, int depth) const;

    Kind kind_;
    bool bool_ = false;
    double number_ = 0.0;
    long long integer_ = 0;
    std::string string_;
    std::vector<Json> items_;
    std::map<std::string, Json> fields_;
};

Json spectrum_json(const Spectrum& spectrum);
Json state_json(const PureState& state);
Json bound_report_json(const BoundReport& report);
Json gram_json(const GramReport& report);
Json cycle_json(const CycleCheck& check);
Json scaling_json(const ScalingReport& report);
Json product_json(const ProductState& product);
Json latticegas_json(const RunSummary& summary);
Json optimize_json(const OptimizationResult& result);
Json certify_json(const CertifyReport& report);

std::string trace_csv(const OverlapTrace& trace);
std::string scaling_csv(const ScalingReport& report);
std::string latticegas_csv(const RunSummary& summary);

// Spectrum file: JSON array of energies, or object {"energies": [...],
// "label": optional}.
Spectrum load_spectrum(const std::string& path);

// State file: object {"spectrum": <spectrum JSON or energy array>,
// "weights": [...], "phases": optional}. A flat "energies" key is accepted
// in place of "spectrum"; levels may appear in any order. Reads state_json
// output back.
PureState load_state(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace qsl::io
