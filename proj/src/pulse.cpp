// Copyright 2026 The curvegate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "curvegate/pulse.hpp"

#include <json.hpp>

#include <cmath>
#include <numbers>
#include <sstream>

#include "curvegate/error.hpp"
#include "curvegate/io.hpp"
#include "curvegate/numerics.hpp"

namespace curvegate {

namespace {

void check_finite(std::span<const double> v, const char* what) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i])) throw InputError(std::string("pulse: non-finite ") + what + " at sample " + std::to_string(i));
    }
}

}  // namespace

void PulseWaveform::validate() const {
    if (!(dt_ > 0.0) || !std::isfinite(dt_)) throw InputError("pulse: time step must be positive and finite");
    if (omega_.size() < 2) throw InputError("pulse: need at least two samples");
    if (phi_.size() != omega_.size() || omega_x_.size() != omega_.size() || omega_y_.size() != omega_.size() ||
        (detuning_ && detuning_->size() != omega_.size())) {
        throw InputError("pulse: channel lengths differ");
    }
    check_finite(omega_, "omega");
    check_finite(phi_, "phi");
    if (detuning_) check_finite(*detuning_, "detuning");
    for (std::size_t i = 0; i < omega_.size(); ++i) {
        if (omega_[i] < 0.0) throw InputError("pulse: negative amplitude at sample " + std::to_string(i));
    }
}

PulseWaveform PulseWaveform::from_polar(double dt, std::vector<double> omega, std::vector<double> phi,
                                        std::optional<std::vector<double>> detuning, PulseMetadata meta) {
    PulseWaveform p;
    p.dt_ = dt;
    p.omega_ = std::move(omega);
    p.phi_ = std::move(phi);
    p.detuning_ = std::move(detuning);
    p.metadata = std::move(meta);
    p.omega_x_.resize(p.omega_.size());
    p.omega_y_.resize(p.omega_.size());
    if (p.phi_.size() == p.omega_.size()) {
        for (std::size_t i = 0; i < p.omega_.size(); ++i) {
            p.omega_x_[i] = p.omega_[i] * std::cos(p.phi_[i]);
            p.omega_y_[i] = p.omega_[i] * std::sin(p.phi_[i]);
        }
    }
    p.validate();
    return p;
}

PulseWaveform PulseWaveform::from_cartesian(double dt, std::vector<double> omega_x, std::vector<double> omega_y,
                                            std::optional<std::vector<double>> detuning, PulseMetadata meta) {
    if (omega_x.size() != omega_y.size()) throw InputError("pulse: channel lengths differ");
    check_finite(omega_x, "omega_x");
    check_finite(omega_y, "omega_y");
    const std::size_t n = omega_x.size();
    PulseWaveform p;
    p.dt_ = dt;
    p.omega_.resize(n);
    p.phi_.resize(n);
    std::vector<double> raw(n, 0.0);
    std::optional<std::size_t> first;
    for (std::size_t i = 0; i < n; ++i) {
        p.omega_[i] = std::hypot(omega_x[i], omega_y[i]);
        if (p.omega_[i] > 0.0) {
            raw[i] = std::atan2(omega_y[i], omega_x[i]);
            if (!first) first = i;
        }
    }
    if (first) {
        for (std::size_t i = 0; i < *first; ++i) raw[i] = raw[*first];
        for (std::size_t i = *first + 1; i < n; ++i) {
            if (p.omega_[i] == 0.0) raw[i] = raw[i - 1];
        }
        p.phi_ = numerics::unwrap(raw);
    }
    p.omega_x_ = std::move(omega_x);
    p.omega_y_ = std::move(omega_y);
    p.detuning_ = std::move(detuning);
    p.metadata = std::move(meta);
    p.validate();
    return p;
}

std::vector<double> PulseWaveform::detuning() const {
    return detuning_ ? *detuning_ : std::vector<double>(omega_.size(), 0.0);
}

PulseSamples read_pulse_samples(const std::string& path) {
    PulseSamples s;
    if (io::extension(path) == ".json") {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(io::read_text_file(path));
        } catch (const nlohmann::json::parse_error& e) {
            throw InputError(path + ": invalid JSON: " + e.what());
        }
        if (!doc.is_object()) throw InputError(path + ": expected a JSON object");
        auto column = [&](const char* key, bool required) -> std::optional<std::vector<double>> {
            if (!doc.contains(key)) {
                if (required) throw InputError(path + ": missing '" + key + "' array");
                return std::nullopt;
            }
            const auto& arr = doc[key];
            if (!arr.is_array()) throw InputError(path + ": '" + key + "' must be an array");
            std::vector<double> v;
            v.reserve(arr.size());
            for (std::size_t i = 0; i < arr.size(); ++i) {
                if (!arr[i].is_number()) {
                    throw InputError(path + ": '" + key + "'[" + std::to_string(i) + "] is not a number");
                }
                v.push_back(arr[i].get<double>());
            }
            return v;
        };
        s.t = *column("t", true);
        s.omega_x = *column("omega_x", true);
        s.omega_y = *column("omega_y", true);
        s.detuning = column("detuning", false);
        const std::size_t n = s.t.size();
        if (s.omega_x.size() != n || s.omega_y.size() != n || (s.detuning && s.detuning->size() != n)) {
            throw InputError(path + ": pulse arrays differ in length");
        }
    } else {
        const auto csv = io::read_numeric_csv(path);
        const std::vector<std::string> base{"t", "omega_x", "omega_y"};
        const std::vector<std::string> with{"t", "omega_x", "omega_y", "detuning"};
        if (csv.header != base && csv.header != with) {
            throw InputError(path + ":1: pulse CSV header must be 't,omega_x,omega_y[,detuning]'");
        }
        const bool det = csv.header.size() == 4;
        if (det) s.detuning.emplace();
        for (const auto& r : csv.rows) {
            s.t.push_back(r[0]);
            s.omega_x.push_back(r[1]);
            s.omega_y.push_back(r[2]);
            if (det) s.detuning->push_back(r[3]);
        }
        s.line_numbers = csv.line_numbers;
    }
    return s;
}

void save_pulse_csv(const PulseWaveform& p, const std::string& path) {
    std::ostringstream os;
    os << (p.has_detuning() ? "t,omega_x,omega_y,detuning\n" : "t,omega_x,omega_y\n");
    const auto det = p.detuning();
    for (std::size_t i = 0; i < p.size(); ++i) {
        os << io::format_double(p.time(i)) << ',' << io::format_double(p.omega_x()[i]) << ','
           << io::format_double(p.omega_y()[i]);
        if (p.has_detuning()) os << ',' << io::format_double(det[i]);
        os << '\n';
    }
    io::write_text_file(path, os.str());
}

void save_pulse_json(const PulseWaveform& p, const std::string& path) {
    nlohmann::ordered_json doc;
    std::vector<double> t(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) t[i] = p.time(i);
    doc["t"] = t;
    doc["omega_x"] = std::vector<double>(p.omega_x().begin(), p.omega_x().end());
    doc["omega_y"] = std::vector<double>(p.omega_y().begin(), p.omega_y().end());
    if (p.has_detuning()) doc["detuning"] = p.detuning();
    doc["omega"] = std::vector<double>(p.omega().begin(), p.omega().end());
    doc["phi"] = std::vector<double>(p.phi().begin(), p.phi().end());
    auto& m = doc["metadata"];
    m["source_tag"] = p.metadata.source_tag;
    m["phi0"] = p.metadata.phi0 ? nlohmann::ordered_json(*p.metadata.phi0) : nlohmann::ordered_json(nullptr);
    m["phi0_convention"] = p.metadata.phi0_convention;
    m["warnings"] = p.metadata.warnings;
    if (!p.metadata.file_sha256.empty()) m["file_sha256"] = p.metadata.file_sha256;
    if (p.metadata.resample_error_bound) m["resample_error_bound"] = *p.metadata.resample_error_bound;
    io::write_text_file(path, doc.dump(1) + "\n");
}

}  // namespace curvegate
