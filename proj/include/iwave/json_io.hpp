#ifndef IWAVE_JSON_IO_HPP
#define IWAVE_JSON_IO_HPP

#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "iwave/errors.hpp"
#include "iwave/params.hpp"

namespace iwave {

/** Parse the run configuration: exactly the nine physical keys, all finite
 * numbers, unknown keys rejected. */
inline physical_params parse_config(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw config_error(std::string("config: malformed JSON: ") + e.what());
    }
    if (!j.is_object()) throw config_error("config: top level must be an object");
    const char* keys[] = {"rho_plus", "rho_minus", "d_plus",  "d_minus", "omega_plus",
                          "omega_minus", "sigma", "g", "c"};
    physical_params p;
    double* fields[] = {&p.rho_plus, &p.rho_minus, &p.d_plus, &p.d_minus, &p.omega_plus,
                        &p.omega_minus, &p.sigma, &p.g, &p.c};
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* k : keys)
            if (it.key() == k) known = true;
        if (!known) throw config_error("config: unknown key '" + it.key() + "'");
    }
    for (size_t i = 0; i < 9; i++) {
        if (!j.contains(keys[i])) throw config_error(std::string("config: missing key '") + keys[i] + "'");
        if (!j[keys[i]].is_number()) throw config_error(std::string("config: key '") + keys[i] + "' must be a number");
        *fields[i] = j[keys[i]].get<double>();
        if (!std::isfinite(*fields[i])) throw config_error(std::string("config: key '") + keys[i] + "' must be finite");
    }
    p.validate();
    return p;
}

inline physical_params load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("config: cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

/** Deterministic JSON writer: insertion-ordered keys, doubles at 17
 * significant digits, no locale dependence.  Reruns are byte-identical. */
class json_writer {
public:
    json_writer& key(const std::string& k) {
        sep();
        out_ += '"' + k + "\":";
        pending_value_ = true;
        return *this;
    }
    json_writer& value(double v) {
        emit(format(v));
        return *this;
    }
    json_writer& value(int v) {
        emit(std::to_string(v));
        return *this;
    }
    json_writer& value(bool v) {
        emit(v ? "true" : "false");
        return *this;
    }
    json_writer& value(const std::string& s) {
        emit('"' + s + '"');
        return *this;
    }
    json_writer& begin_object() {
        emit_open('{');
        return *this;
    }
    json_writer& end_object() {
        close('}');
        return *this;
    }
    json_writer& begin_array() {
        emit_open('[');
        return *this;
    }
    json_writer& end_array() {
        close(']');
        return *this;
    }
    const std::string& str() const { return out_; }

    static std::string format(double v) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return buf;
    }

private:
    std::string out_;
    std::vector<bool> first_stack_{};
    bool pending_value_ = false;

    void sep() {
        if (!first_stack_.empty()) {
            if (!first_stack_.back()) out_ += ',';
            first_stack_.back() = false;
        }
    }
    void emit(const std::string& s) {
        if (!pending_value_) sep();
        pending_value_ = false;
        out_ += s;
    }
    void emit_open(char c) {
        if (!pending_value_) sep();
        pending_value_ = false;
        out_ += c;
        first_stack_.push_back(true);
    }
    void close(char c) {
        out_ += c;
        if (!first_stack_.empty()) first_stack_.pop_back();
    }
};

} // namespace iwave

#endif
