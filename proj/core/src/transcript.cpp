// Copyright 2026 The fvqe Authors
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

#include "fvqe/transcript.hpp"

#include <ostream>

#include <json.hpp>

namespace fvqe {

void write_transcript(std::ostream& out, const VqeRun& run, const std::string& label) {
    for (std::size_t i = 0; i < run.iterations.size(); ++i) {
        const auto& it = run.iterations[i];
        nlohmann::json j;
        j["label"] = label;
        j["iteration"] = i;
        j["energy"] = it.energy;
        j["theta"] = std::vector<double>(it.theta.data(), it.theta.data() + it.theta.size());
        j["rho_diag"] = std::vector<double>(it.rho.rho.diagonal().data(),
                                            it.rho.rho.diagonal().data() + it.rho.rho.rows());
        nlohmann::json pairs = nlohmann::json::array();
        for (const auto& [k, l] : run.measured_pairs) pairs.push_back({k, l, it.rho.rho(k, l)});
        j["rho_pairs"] = pairs;
        out << j.dump() << '\n';
    }
    nlohmann::json s;
    s["label"] = label;
    s["final"] = true;
    s["energy"] = run.energy.value;
    s["stat_sigma"] = run.energy.stat_sigma;
    s["sys_sigma"] = run.energy.sys_sigma;
    s["iterations"] = run.iterations.size();
    s["evaluations"] = run.evaluations;
    s["rounds_per_iteration"] = run.rounds_per_iteration;
    s["measured_pairs"] = run.measured_pairs.size();
    s["systematic_shift"] = run.systematic_shift;
    s["converged"] = run.converged;
    out << s.dump() << '\n';
}

}  // namespace fvqe
