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

#include <json.hpp>

#include <sstream>

#include "curvegate/curve.hpp"
#include "curvegate/error.hpp"
#include "curvegate/io.hpp"

namespace curvegate {

std::vector<CurveSample> load_curve_samples(const std::string& path) {
    std::vector<CurveSample> out;
    if (io::extension(path) == ".json") {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(io::read_text_file(path));
        } catch (const nlohmann::json::parse_error& e) {
            throw InputError(path + ": invalid JSON: " + e.what());
        }
        if (!doc.is_object() || !doc.contains("samples") || !doc["samples"].is_array()) {
            throw InputError(path + ": expected an object with a 'samples' array");
        }
        std::size_t idx = 0;
        for (const auto& row : doc["samples"]) {
            if (!row.is_array() || row.size() != 4) {
                throw InputError(path + ": sample " + std::to_string(idx) + " must be [t, x, y, z]");
            }
            for (const auto& v : row) {
                if (!v.is_number()) throw InputError(path + ": sample " + std::to_string(idx) + " has a non-numeric entry");
            }
            out.push_back({row[0].get<double>(), {row[1].get<double>(), row[2].get<double>(), row[3].get<double>()}});
            ++idx;
        }
    } else {
        const auto csv = io::read_numeric_csv(path);
        if (csv.header != std::vector<std::string>{"t", "x", "y", "z"}) {
            throw InputError(path + ":1: curve CSV header must be 't,x,y,z'");
        }
        for (std::size_t i = 0; i < csv.rows.size(); ++i) {
            const auto& r = csv.rows[i];
            if (!out.empty() && !(r[0] > out.back().t)) {
                throw InputError(path + ":" + std::to_string(csv.line_numbers[i]) + ": t must be strictly increasing");
            }
            out.push_back({r[0], {r[1], r[2], r[3]}});
        }
    }
    for (std::size_t i = 1; i < out.size(); ++i) {
        if (!(out[i].t > out[i - 1].t)) throw InputError(path + ": t must be strictly increasing (sample " + std::to_string(i) + ")");
    }
    if (out.size() < 8) throw InputError(path + ": a curve file needs at least 8 samples");
    return out;
}

SpaceCurve load_curve(const std::string& path, const ReparamOptions& opts) {
    return reparameterize_by_arclength(sampler_from_samples(load_curve_samples(path), "file"), opts);
}

void save_curve_csv(const SpaceCurve& curve, const std::string& path) {
    std::ostringstream os;
    os << "t,x,y,z\n";
    for (std::size_t i = 0; i < curve.size(); ++i) {
        const Vec3& p = curve[i];
        os << io::format_double(curve.time(i)) << ',' << io::format_double(p.x) << ',' << io::format_double(p.y)
           << ',' << io::format_double(p.z) << '\n';
    }
    io::write_text_file(path, os.str());
}

void save_curve_json(const SpaceCurve& curve, const std::string& path) {
    nlohmann::json doc;
    doc["source_tag"] = curve.source_tag();
    auto& samples = doc["samples"] = nlohmann::json::array();
    for (std::size_t i = 0; i < curve.size(); ++i) {
        const Vec3& p = curve[i];
        samples.push_back({curve.time(i), p.x, p.y, p.z});
    }
    io::write_text_file(path, doc.dump(1) + "\n");
}

}  // namespace curvegate
