#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "quatreg/identities.hpp"
#include "quatreg/regularity.hpp"

namespace quatreg {

using ordered_json = nlohmann::ordered_json;

/// One check request: the special-shape pair plus where and how to test it.
/// Evaluation points are the explicit `points` followed by the expanded
/// `grid` (inclusive linspace per axis, x1 varying slowest; a count of 1
/// pins the axis at its min).
struct CheckJob {
    std::string f0_text;
    std::string f1_text;
    std::vector<Vec4> points;

    struct Grid {
        Vec4 min{}, max{};
        std::array<int, 4> count{1, 1, 1, 1};
    };
    std::optional<Grid> grid;

    std::string mode = "all";  // "pde" | "forms" | "dq" | "all"
    std::optional<std::uint64_t> seed;
    std::optional<double> tol_pde, tol_form, tol_exists;
};

/// Raised for structurally invalid jobs (missing keys, bad shapes, no points).
class JobError : public std::runtime_error {
public:
    explicit JobError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline Vec4 vec4_from_json(const nlohmann::json& j, const char* what) {
    if (!j.is_array() || j.size() != 4) throw JobError(std::string(what) + " must be an array of 4 numbers");
    Vec4 v;
    for (int k = 0; k < 4; ++k) {
        if (!j[k].is_number()) throw JobError(std::string(what) + " must be an array of 4 numbers");
        v[k] = j[k].get<double>();
    }
    return v;
}

}  // namespace detail

inline CheckJob job_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw JobError("job must be a JSON object");
    CheckJob job;
    if (!j.contains("f0") || !j["f0"].is_string()) throw JobError("job needs a string field \"f0\"");
    if (!j.contains("f1") || !j["f1"].is_string()) throw JobError("job needs a string field \"f1\"");
    job.f0_text = j["f0"].get<std::string>();
    job.f1_text = j["f1"].get<std::string>();

    if (j.contains("points")) {
        if (!j["points"].is_array()) throw JobError("\"points\" must be an array of points");
        for (const auto& p : j["points"]) job.points.push_back(detail::vec4_from_json(p, "point"));
    }
    if (j.contains("grid")) {
        const auto& g = j["grid"];
        if (!g.is_object()) throw JobError("\"grid\" must be an object with min/max/count");
        CheckJob::Grid grid;
        grid.min = detail::vec4_from_json(g.value("min", nlohmann::json()), "grid.min");
        grid.max = detail::vec4_from_json(g.value("max", nlohmann::json()), "grid.max");
        if (!g.contains("count") || !g["count"].is_array() || g["count"].size() != 4)
            throw JobError("grid.count must be an array of 4 integers");
        for (int k = 0; k < 4; ++k) {
            if (!g["count"][k].is_number_integer() || g["count"][k].get<int>() < 1)
                throw JobError("grid.count entries must be integers >= 1");
            grid.count[k] = g["count"][k].get<int>();
        }
        job.grid = grid;
    }
    if (j.contains("mode")) {
        job.mode = j["mode"].get<std::string>();
        if (job.mode != "pde" && job.mode != "forms" && job.mode != "dq" && job.mode != "all")
            throw JobError("mode must be one of \"pde\", \"forms\", \"dq\", \"all\"");
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_integer() || j["seed"].get<std::int64_t>() < 0)
            throw JobError("seed must be a non-negative integer");
        job.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("tolerances")) {
        const auto& t = j["tolerances"];
        if (!t.is_object()) throw JobError("\"tolerances\" must be an object");
        if (t.contains("pde")) job.tol_pde = t["pde"].get<double>();
        if (t.contains("form")) job.tol_form = t["form"].get<double>();
        if (t.contains("exists")) job.tol_exists = t["exists"].get<double>();
    }
    if (job.points.empty() && !job.grid) throw JobError("job needs \"points\" or a \"grid\"");
    return job;
}

/// Explicit points followed by the grid expansion, x1 varying slowest.
inline std::vector<Vec4> evaluation_points(const CheckJob& job) {
    std::vector<Vec4> pts = job.points;
    if (job.grid) {
        const auto& g = *job.grid;
        auto coord = [&](int axis, int step) {
            const int n = g.count[axis];
            if (n == 1) return g.min[axis];
            return g.min[axis] + (g.max[axis] - g.min[axis]) * double(step) / double(n - 1);
        };
        for (int a = 0; a < g.count[0]; ++a)
            for (int b = 0; b < g.count[1]; ++b)
                for (int c = 0; c < g.count[2]; ++c)
                    for (int d = 0; d < g.count[3]; ++d)
                        pts.push_back({coord(0, a), coord(1, b), coord(2, c), coord(3, d)});
    }
    if (pts.empty()) throw JobError("job produced no evaluation points");
    return pts;
}

inline ordered_json to_json(const Vec4& v) { return ordered_json::array({v[0], v[1], v[2], v[3]}); }

inline ordered_json to_json(const Quaternion& q) {
    return ordered_json::array({q.c[0], q.c[1], q.c[2], q.c[3]});
}

inline ordered_json to_json(const PdeResiduals& r) {
    ordered_json j;
    j["main"] = r.main;
    j["r2"] = r.r2;
    j["r3"] = r.r3;
    j["r4"] = r.r4;
    j["r23"] = r.r23;
    j["r24"] = r.r24;
    j["r34"] = r.r34;
    j["max"] = r.max_abs();
    j["scale"] = r.scale;
    return j;
}

inline ordered_json to_json(const FormResiduals& r) {
    ordered_json j;
    j["left"] = to_json(r.left);
    j["right"] = to_json(r.right);
    j["max"] = r.max_abs();
    j["scale"] = r.scale;
    return j;
}

inline ordered_json to_json(const ResidualReport& rep) {
    ordered_json j;
    j["point"] = to_json(rep.point);
    j["pde"] = to_json(rep.pde);
    j["forms"] = to_json(rep.forms);
    j["pde_regular"] = rep.pde_regular;
    j["form_regular"] = rep.form_regular;
    return j;
}

inline ordered_json to_json(const LimitDiagnostics& d) {
    ordered_json j;
    j["side"] = d.side == QuotientSide::Left ? "left" : "right";
    j["directions"] = d.directions.size();
    j["stages"] = d.magnitudes.size();
    j["smallest_magnitude"] = d.magnitudes.back();
    j["limit"] = to_json(d.limit);
    j["spread"] = d.spread;
    j["extrapolated_spread"] = d.extrapolated_spread;
    j["exists_tolerance"] = d.exists_tolerance;
    j["exists"] = d.exists;
    return j;
}

inline ordered_json to_json(const IdentityCheck& c) {
    ordered_json j;
    j["name"] = c.name;
    j["cases"] = c.cases;
    j["max_violation"] = c.max_violation;
    j["tolerance"] = c.tolerance;
    j["pass"] = c.pass();
    return j;
}

inline ordered_json job_to_json(const CheckJob& job) {
    ordered_json j;
    j["f0"] = job.f0_text;
    j["f1"] = job.f1_text;
    j["mode"] = job.mode;
    if (!job.points.empty()) {
        ordered_json pts = ordered_json::array();
        for (const Vec4& p : job.points) pts.push_back(to_json(p));
        j["points"] = pts;
    }
    if (job.grid) {
        ordered_json g;
        g["min"] = to_json(job.grid->min);
        g["max"] = to_json(job.grid->max);
        g["count"] = ordered_json::array(
            {job.grid->count[0], job.grid->count[1], job.grid->count[2], job.grid->count[3]});
        j["grid"] = g;
    }
    if (job.seed) j["seed"] = *job.seed;
    return j;
}

}  // namespace quatreg
