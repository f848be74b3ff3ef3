// Copyright 2026 The qcorral Authors
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

#include "qcorral/io/plan_file.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "qcorral/error.hpp"

namespace qcorral::io {

namespace {

using nlohmann::json;

// Locates a field in the source text for error messages. JSON values do not
// carry positions, so the first occurrence of the key is the best anchor.
class Context {
   public:
    Context(std::string_view text, std::string_view origin) : text_(text), origin_(origin) {
    }

    [[noreturn]] void fail(const std::string &field, const std::string &message) const {
        std::string where(origin_);
        const std::string leaf = field.substr(field.find_last_of('.') + 1);
        const std::string key = leaf.substr(0, leaf.find('['));
        if (auto line = line_of("\"" + key + "\"")) {
            where += ":" + std::to_string(*line);
        }
        throw ParseError(where + ": field '" + field + "': " + message);
    }

    std::optional<std::size_t> line_of(const std::string &needle) const {
        const auto pos = text_.find(needle);
        if (pos == std::string_view::npos) {
            return std::nullopt;
        }
        return 1 + static_cast<std::size_t>(std::count(text_.begin(), text_.begin() + pos, '\n'));
    }

    std::string_view origin() const {
        return origin_;
    }

   private:
    std::string_view text_;
    std::string_view origin_;
};

void require_object(const Context &ctx, const json &j, const std::string &field) {
    if (!j.is_object()) {
        ctx.fail(field, "expected an object");
    }
}

void reject_unknown(const Context &ctx, const json &j, const std::string &field,
                    std::initializer_list<std::string_view> allowed) {
    for (const auto &[key, value] : j.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            ctx.fail(field.empty() ? key : field + "." + key, "unknown key");
        }
    }
}

int get_int(const Context &ctx, const json &j, const std::string &field) {
    if (!j.is_number_integer()) {
        ctx.fail(field, "expected an integer");
    }
    const auto v = j.get<long long>();
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
        ctx.fail(field, "integer out of range");
    }
    return static_cast<int>(v);
}

double get_number(const Context &ctx, const json &j, const std::string &field) {
    if (!j.is_number()) {
        ctx.fail(field, "expected a number");
    }
    return j.get<double>();
}

bool get_bool(const Context &ctx, const json &j, const std::string &field) {
    if (!j.is_boolean()) {
        ctx.fail(field, "expected true or false");
    }
    return j.get<bool>();
}

std::string get_string(const Context &ctx, const json &j, const std::string &field) {
    if (!j.is_string()) {
        ctx.fail(field, "expected a string");
    }
    return j.get<std::string>();
}

}  // namespace

PlanFile parse_plan_text(std::string_view text, std::string_view origin) {
    const Context ctx(text, origin);
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error &e) {
        const auto offset = std::min<std::size_t>(e.byte, text.size());
        const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<long>(offset), '\n');
        throw ParseError(std::string(origin) + ":" + std::to_string(line) + ": malformed JSON: " + e.what());
    }
    require_object(ctx, doc, "<root>");
    reject_unknown(ctx, doc, "", {"lattice", "initial", "stations", "timing", "odd_time_correction", "disorder", "output"});

    PlanFile out;
    CorralPlan &plan = out.plan;

    if (doc.contains("lattice")) {
        const json &l = doc["lattice"];
        require_object(ctx, l, "lattice");
        reject_unknown(ctx, l, "lattice", {"j_min", "j_max"});
        if (!l.contains("j_min") || !l.contains("j_max")) {
            ctx.fail("lattice", "needs j_min and j_max");
        }
        const int lo = get_int(ctx, l["j_min"], "lattice.j_min");
        const int hi = get_int(ctx, l["j_max"], "lattice.j_max");
        try {
            plan.lattice = Lattice(lo, hi);
        } catch (const Error &e) {
            ctx.fail("lattice", e.what());
        }
    }

    if (!doc.contains("initial")) {
        ctx.fail("initial", "missing");
    }
    {
        const json &ini = doc["initial"];
        require_object(ctx, ini, "initial");
        reject_unknown(ctx, ini, "initial", {"s", "center", "alpha", "beta", "grid", "grid_step"});
        if (!ini.contains("s")) {
            ctx.fail("initial.s", "missing");
        }
        plan.gaussian.s = get_number(ctx, ini["s"], "initial.s");
        if (!(plan.gaussian.s > 0.0)) {
            ctx.fail("initial.s", "must be positive");
        }
        plan.gaussian.center = ini.contains("center") ? get_int(ctx, ini["center"], "initial.center") : 0;
        if (ini.contains("alpha") != ini.contains("beta")) {
            ctx.fail("initial", "alpha and beta must be given together");
        }
        if (ini.contains("alpha")) {
            plan.spin.alpha = get_number(ctx, ini["alpha"], "initial.alpha");
            plan.spin.beta = get_number(ctx, ini["beta"], "initial.beta");
            if (plan.spin.alpha < 0.0 || plan.spin.alpha > std::numbers::pi / 2.0 + 1e-12) {
                ctx.fail("initial.alpha", "must lie in [0, pi/2]");
            }
            if (plan.spin.beta < 0.0 || plan.spin.beta > 2.0 * std::numbers::pi + 1e-12) {
                ctx.fail("initial.beta", "must lie in [0, 2 pi]");
            }
        }
        if (ini.contains("grid")) {
            out.grid = get_bool(ctx, ini["grid"], "initial.grid");
        }
        if (ini.contains("grid_step")) {
            out.grid_step = get_number(ctx, ini["grid_step"], "initial.grid_step");
            try {
                BlochGrid probe(out.grid_step);
            } catch (const Error &e) {
                ctx.fail("initial.grid_step", e.what());
            }
        }
    }

    if (!doc.contains("stations")) {
        ctx.fail("stations", "missing");
    }
    {
        const json &st = doc["stations"];
        if (!st.is_array()) {
            ctx.fail("stations", "expected an array");
        }
        if (st.empty()) {
            ctx.fail("stations", "needs at least one station");
        }
        for (std::size_t k = 0; k < st.size(); k++) {
            const std::string field = "stations[" + std::to_string(k) + "]";
            require_object(ctx, st[k], field);
            reject_unknown(ctx, st[k], field, {"left", "right", "hold"});
            if (!st[k].contains("left") || !st[k].contains("right")) {
                ctx.fail(field, "needs left and right");
            }
            Station s{get_int(ctx, st[k]["left"], field + ".left"), get_int(ctx, st[k]["right"], field + ".right"), 0};
            if (st[k].contains("hold")) {
                s.hold = get_int(ctx, st[k]["hold"], field + ".hold");
            }
            plan.stations.push_back(s);
        }
    }

    if (doc.contains("timing")) {
        const std::string t = get_string(ctx, doc["timing"], "timing");
        if (t == "refine") {
            plan.timing = TimingPolicy::refine;
        } else if (t == "analytic") {
            plan.timing = TimingPolicy::analytic;
        } else {
            ctx.fail("timing", "expected \"refine\" or \"analytic\"");
        }
    }
    if (doc.contains("odd_time_correction")) {
        plan.odd_time_correction = get_bool(ctx, doc["odd_time_correction"], "odd_time_correction");
    }

    if (doc.contains("disorder")) {
        const json &d = doc["disorder"];
        require_object(ctx, d, "disorder");
        reject_unknown(ctx, d, "disorder", {"kind", "p", "tau", "variant", "seed"});
        DisorderSpec spec;
        spec.tau = 0;
        try {
            if (d.contains("kind")) {
                spec.kind = parse_disorder_kind(get_string(ctx, d["kind"], "disorder.kind"));
            }
            if (d.contains("variant")) {
                spec.variant = parse_disorder_variant(get_string(ctx, d["variant"], "disorder.variant"));
            }
        } catch (const ParseError &e) {
            ctx.fail("disorder", e.what());
        }
        if (d.contains("p")) {
            spec.p = get_number(ctx, d["p"], "disorder.p");
            if (!(spec.p >= 0.0)) {
                ctx.fail("disorder.p", "must be non-negative");
            }
        }
        if (d.contains("tau")) {
            spec.tau = get_int(ctx, d["tau"], "disorder.tau");
            if (spec.tau < 0) {
                ctx.fail("disorder.tau", "must be non-negative (0 = 10% of t_M)");
            }
        }
        if (d.contains("seed")) {
            if (!d["seed"].is_number_unsigned()) {
                ctx.fail("disorder.seed", "expected a non-negative integer");
            }
            spec.master_seed = d["seed"].get<std::uint64_t>();
        }
        out.disorder = spec;
    }

    if (doc.contains("output")) {
        const json &o = doc["output"];
        require_object(ctx, o, "output");
        reject_unknown(ctx, o, "output", {"heatmap_stride", "frames", "report"});
        if (o.contains("heatmap_stride")) {
            out.output.heatmap_stride = get_int(ctx, o["heatmap_stride"], "output.heatmap_stride");
            if (out.output.heatmap_stride < 0) {
                ctx.fail("output.heatmap_stride", "must be non-negative");
            }
        }
        if (o.contains("frames")) {
            out.output.frames = get_bool(ctx, o["frames"], "output.frames");
        }
        if (o.contains("report")) {
            out.output.report = get_string(ctx, o["report"], "output.report");
            if (out.output.report.empty()) {
                ctx.fail("output.report", "must not be empty");
            }
        }
    }

    try {
        validate_plan(plan);
    } catch (const PlanError &e) {
        ctx.fail("stations", e.what());
    }
    return out;
}

PlanFile parse_plan(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open plan file " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
        throw IoError("failed reading plan file " + path.string());
    }
    return parse_plan_text(buf.str(), path.string());
}

std::string serialize_plan(const PlanFile &file) {
    const CorralPlan &plan = file.plan;
    nlohmann::ordered_json doc;
    if (plan.lattice) {
        doc["lattice"] = {{"j_min", plan.lattice->j_min()}, {"j_max", plan.lattice->j_max()}};
    }
    doc["initial"] = {
        {"s", plan.gaussian.s},
        {"center", plan.gaussian.center},
        {"alpha", plan.spin.alpha},
        {"beta", plan.spin.beta},
        {"grid", file.grid},
        {"grid_step", file.grid_step},
    };
    doc["stations"] = nlohmann::ordered_json::array();
    for (const auto &s : plan.stations) {
        doc["stations"].push_back({{"left", s.left}, {"right", s.right}, {"hold", s.hold}});
    }
    doc["timing"] = plan.timing == TimingPolicy::refine ? "refine" : "analytic";
    doc["odd_time_correction"] = plan.odd_time_correction;
    if (file.disorder) {
        const DisorderSpec &d = *file.disorder;
        doc["disorder"] = {
            {"kind", disorder_kind_name(d.kind)},
            {"p", d.p},
            {"tau", d.tau},
            {"variant", disorder_variant_name(d.variant)},
            {"seed", d.master_seed},
        };
    }
    doc["output"] = {
        {"heatmap_stride", file.output.heatmap_stride},
        {"frames", file.output.frames},
        {"report", file.output.report},
    };
    return doc.dump(2) + "\n";
}

}  // namespace qcorral::io
