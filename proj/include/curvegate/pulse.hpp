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
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace curvegate {

struct PulseMetadata {
    std::string source_tag;
    std::optional<double> phi0;
    std::string phi0_convention;
    std::vector<std::string> warnings;
    // provenance of imported pulses
    std::string file_sha256;
    std::string import_time;  // kept in memory only, never written, so outputs stay deterministic
    std::optional<double> resample_error_bound;
};

/// Drive envelope on a uniform grid t_i = i * dt, i = 0..n. The Hamiltonian is
/// H = (omega_x/2) sx + (omega_y/2) sy + (detuning/2 + delta_beta) sz.
class PulseWaveform {
public:
    PulseWaveform() = default;

    /// omega >= 0 and phi per sample; Cartesian components follow.
    static PulseWaveform from_polar(double dt, std::vector<double> omega, std::vector<double> phi,
                                    std::optional<std::vector<double>> detuning = {}, PulseMetadata meta = {});
    /// Cartesian components; phi is the unwrapped argument, held over zero-amplitude samples.
    static PulseWaveform from_cartesian(double dt, std::vector<double> omega_x, std::vector<double> omega_y,
                                        std::optional<std::vector<double>> detuning = {}, PulseMetadata meta = {});

    [[nodiscard]] double dt() const { return dt_; }
    [[nodiscard]] std::size_t size() const { return omega_.size(); }
    [[nodiscard]] std::size_t intervals() const { return omega_.empty() ? 0 : omega_.size() - 1; }
    [[nodiscard]] double duration() const { return dt_ * static_cast<double>(intervals()); }
    [[nodiscard]] double time(std::size_t i) const { return dt_ * static_cast<double>(i); }

    [[nodiscard]] std::span<const double> omega() const { return omega_; }
    [[nodiscard]] std::span<const double> phi() const { return phi_; }
    [[nodiscard]] std::span<const double> omega_x() const { return omega_x_; }
    [[nodiscard]] std::span<const double> omega_y() const { return omega_y_; }
    [[nodiscard]] bool has_detuning() const { return detuning_.has_value(); }
    /// Zeros when no detuning channel is stored.
    [[nodiscard]] std::vector<double> detuning() const;

    PulseMetadata metadata;

private:
    void validate() const;

    double dt_ = 0.0;
    std::vector<double> omega_, phi_, omega_x_, omega_y_;
    std::optional<std::vector<double>> detuning_;
};

/// Raw columns of a pulse file before validation of the time grid.
struct PulseSamples {
    std::vector<double> t, omega_x, omega_y;
    std::optional<std::vector<double>> detuning;
    std::vector<std::size_t> line_numbers;  // CSV source lines, empty for JSON
};

/// Reads `t,omega_x,omega_y[,detuning]` CSV or the JSON mirror.
PulseSamples read_pulse_samples(const std::string& path);

void save_pulse_csv(const PulseWaveform& pulse, const std::string& path);
void save_pulse_json(const PulseWaveform& pulse, const std::string& path);

}  // namespace curvegate
