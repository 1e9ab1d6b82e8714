// Command-line front end: check user-supplied special-shape functions for
// regularity, run the randomized identity suite, and differentiate pairs.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "quatreg/quatreg.hpp"
#include "quatreg/serialize.hpp"

namespace {

using namespace quatreg;

constexpr int kExitRegular = 0;
constexpr int kExitNonRegular = 1;
constexpr int kExitInputError = 2;

struct CliError {
    std::string kind;     // "io" | "job" | "parse" | "eval"
    std::string message;
    std::optional<std::string> where;       // "f0" | "f1"
    std::optional<std::size_t> offset;
};

struct OutputSink {
    bool json = false;

    int fail(const CliError& e) const {
        if (json) {
            ordered_json j;
            ordered_json err;
            err["kind"] = e.kind;
            if (e.where) err["where"] = *e.where;
            if (e.offset) err["offset"] = *e.offset;
            err["message"] = e.message;
            j["error"] = err;
            std::cout << j.dump(2) << '\n';
        } else {
            std::cerr << "error";
            if (e.where) std::cerr << " in " << *e.where;
            if (e.offset) std::cerr << " at offset " << *e.offset;
            std::cerr << ": " << e.message << '\n';
        }
        return kExitInputError;
    }
};

nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw JobError("cannot open job file '" + path + "'");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw JobError("job file is not valid JSON: " + std::string(e.what()));
    }
}

Expr parse_labeled(const std::string& text, const char* label) {
    try {
        return parse_expr(text);
    } catch (const ParseError& e) {
        CliError err{"parse", e.what(), label, e.offset};
        throw err;
    }
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag,
                           const std::optional<std::uint64_t>& job) {
    if (flag) return *flag;
    if (job) return *job;
    if (const char* env = std::getenv("QUATREG_SEED")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0') throw JobError("QUATREG_SEED must be a non-negative integer");
        return v;
    }
    return 0;
}

std::string point_str(const Vec4& p) {
    return "(" + fmt_double(p[0]) + ", " + fmt_double(p[1]) + ", " + fmt_double(p[2]) + ", " +
           fmt_double(p[3]) + ")";
}

// ---------------------------------------------------------------------------

struct CheckSettings {
    std::string job_path;
    std::optional<double> tol;
    std::optional<std::uint64_t> seed;
    std::string mode;  // empty = take from job
    OutputSink out;
};

int run_check(const CheckSettings& s) {
    CheckJob job = job_from_json(load_json_file(s.job_path));
    if (!s.mode.empty()) job.mode = s.mode;
    if (s.seed) job.seed = *s.seed;

    const Expr f0 = parse_labeled(job.f0_text, "f0");
    const Expr f1 = parse_labeled(job.f1_text, "f1");
    const SpecialFunction F{f0, f1};

    const double tol_pde = s.tol ? *s.tol : job.tol_pde.value_or(kPdeTolerance);
    const double tol_form = s.tol ? *s.tol : job.tol_form.value_or(kFormTolerance);
    const double tol_exists = job.tol_exists.value_or(1e-6);
    const std::uint64_t seed = resolve_seed(s.seed, job.seed);
    const std::vector<Vec4> pts = evaluation_points(job);

    const bool want_pde = job.mode == "pde" || job.mode == "all";
    const bool want_forms = job.mode == "forms" || job.mode == "all";
    const bool want_dq = job.mode == "dq" || job.mode == "all";

    DqLimitOptions dq_opt;
    dq_opt.seed = seed;
    dq_opt.exists_tolerance = tol_exists;

    ordered_json jpoints = ordered_json::array();
    std::ostringstream text;
    int regular_count = 0;

    for (const Vec4& p : pts) {
        bool regular = true;
        ordered_json jp;
        jp["point"] = to_json(p);
        std::ostringstream line;
        line << "point " << point_str(p) << ":";

        if (want_pde) {
            const PdeResiduals r = pde_residuals(F, p);
            const bool ok = within_tol(r.max_abs(), tol_pde, r.scale);
            regular = regular && ok;
            jp["pde"] = to_json(r);
            jp["pde_regular"] = ok;
            line << "  pde " << fmt_double(r.max_abs()) << (ok ? " ok" : " FAIL");
        }
        if (want_forms) {
            const FormResiduals r = form_residuals(F, p);
            const bool ok = within_tol(r.max_abs(), tol_form, r.scale);
            regular = regular && ok;
            jp["forms"] = to_json(r);
            jp["form_regular"] = ok;
            line << "  forms " << fmt_double(r.max_abs()) << (ok ? " ok" : " FAIL");
        }
        if (want_dq) {
            const LimitDiagnostics left = dq_limit(F, p, QuotientSide::Left, dq_opt);
            const LimitDiagnostics right = dq_limit(F, p, QuotientSide::Right, dq_opt);
            const bool ok = left.exists && right.exists;
            regular = regular && ok;
            ordered_json jd;
            jd["left"] = to_json(left);
            jd["right"] = to_json(right);
            jd["reference"] = to_json(derivative_value(F, p));
            jp["dq"] = jd;
            jp["dq_regular"] = ok;
            line << "  dq " << (left.exists ? "exists" : "DIVERGES") << "/"
                 << (right.exists ? "exists" : "DIVERGES");
        }

        jp["regular"] = regular;
        jpoints.push_back(jp);
        if (regular) ++regular_count;
        line << "  -> " << (regular ? "regular" : "non-regular");
        text << line.str() << '\n';
    }

    const bool all_regular = regular_count == int(pts.size());
    if (s.out.json) {
        ordered_json j;
        j["job"] = job_to_json(job);
        ordered_json tols;
        tols["pde"] = tol_pde;
        tols["form"] = tol_form;
        tols["exists"] = tol_exists;
        j["tolerances"] = tols;
        j["seed"] = seed;
        j["points"] = jpoints;
        ordered_json sum;
        sum["points"] = pts.size();
        sum["regular"] = regular_count;
        sum["non_regular"] = int(pts.size()) - regular_count;
        sum["all_regular"] = all_regular;
        j["summary"] = sum;
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << "f0 = " << job.f0_text << '\n';
        std::cout << "f1 = " << job.f1_text << '\n';
        std::cout << "mode = " << job.mode << "  seed = " << seed << '\n';
        std::cout << "tolerances: pde " << fmt_double(tol_pde) << "  form " << fmt_double(tol_form)
                  << "  exists " << fmt_double(tol_exists) << '\n';
        std::cout << text.str();
        std::cout << "summary: " << regular_count << "/" << pts.size() << " points regular\n";
    }
    return all_regular ? kExitRegular : kExitNonRegular;
}

// ---------------------------------------------------------------------------

struct IdentitySettings {
    std::optional<std::uint64_t> seed;
    int samples = 100;
    OutputSink out;
};

int run_identities(const IdentitySettings& s) {
    IdentitySuiteOptions opt;
    opt.seed = resolve_seed(s.seed, std::nullopt);
    opt.form_cases = s.samples;
    opt.fueter_functions = s.samples / 5;
    opt.fueter_points = s.samples > 0 ? 50 : 0;
    opt.equivalence_points = s.samples / 2;

    const std::vector<IdentityCheck> checks = run_identity_suite(opt);
    bool all_pass = true;
    int total_cases = 0;
    for (const IdentityCheck& c : checks) {
        all_pass = all_pass && c.pass();
        total_cases += c.cases;
    }
    const bool vacuous = total_cases == 0;

    if (s.out.json) {
        ordered_json j;
        j["seed"] = opt.seed;
        j["samples"] = s.samples;
        if (vacuous) j["warning"] = "samples = 0: every identity passes vacuously";
        ordered_json arr = ordered_json::array();
        for (const IdentityCheck& c : checks) arr.push_back(to_json(c));
        j["identities"] = arr;
        j["all_pass"] = all_pass;
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << "identity suite  seed = " << opt.seed << "  samples = " << s.samples << '\n';
        if (vacuous) std::cout << "warning: samples = 0, every identity passes vacuously\n";
        for (const IdentityCheck& c : checks) {
            std::cout << (c.pass() ? "  pass  " : "  FAIL  ") << c.name << "  (" << c.cases
                      << " cases, max violation " << fmt_double(c.max_violation) << ", tolerance "
                      << fmt_double(c.tolerance) << ")\n";
        }
        std::cout << (all_pass ? "all identities hold\n" : "identity violations found\n");
    }
    return all_pass ? kExitRegular : kExitNonRegular;
}

// ---------------------------------------------------------------------------

struct DerivativeSettings {
    std::string job_path;
    std::optional<double> tol;
    std::optional<std::uint64_t> seed;
    OutputSink out;
};

int run_derivative(const DerivativeSettings& s) {
    CheckJob job = job_from_json(load_json_file(s.job_path));
    const Expr f0 = parse_labeled(job.f0_text, "f0");
    const Expr f1 = parse_labeled(job.f1_text, "f1");
    const SpecialFunction F{f0, f1};
    const SpecialFunction dF = quaternion_derivative(F);
    const double tol_pde = s.tol ? *s.tol : job.tol_pde.value_or(kPdeTolerance);
    const std::vector<Vec4> pts = evaluation_points(job);

    ordered_json jpoints = ordered_json::array();
    int regular_count = 0;
    for (const Vec4& p : pts) {
        const PdeResiduals r = pde_residuals(dF, p);
        const bool ok = within_tol(r.max_abs(), tol_pde, r.scale);
        if (ok) ++regular_count;
        ordered_json jp;
        jp["point"] = to_json(p);
        jp["pde"] = to_json(r);
        jp["pde_regular"] = ok;
        jpoints.push_back(jp);
    }
    const bool all_regular = regular_count == int(pts.size());

    if (s.out.json) {
        ordered_json j;
        ordered_json d;
        d["f0"] = to_string(dF.f0);
        d["f1"] = to_string(dF.f1);
        j["derivative"] = d;
        j["tolerance"] = tol_pde;
        j["points"] = jpoints;
        ordered_json sum;
        sum["points"] = pts.size();
        sum["regular"] = regular_count;
        sum["all_regular"] = all_regular;
        j["summary"] = sum;
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << "d/dx1 of (f0, f1):\n";
        std::cout << "  f0' = " << to_string(dF.f0) << '\n';
        std::cout << "  f1' = " << to_string(dF.f1) << '\n';
        std::cout << "differential characterization of the derivative: " << regular_count << "/"
                  << pts.size() << " points pass (tolerance " << fmt_double(tol_pde) << ")\n";
    }
    return all_regular ? kExitRegular : kExitNonRegular;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"workbench for quaternionic regularity of special-shape functions"};
    app.require_subcommand(1);

    std::string format = "text";
    const auto add_format = [&format](CLI::App* cmd) {
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"text", "json"}))
            ->capture_default_str();
    };

    CheckSettings check;
    CLI::App* cmd_check = app.add_subcommand(
        "check", "evaluate the regularity characterizations of a job's (f0, f1) pair");
    cmd_check->add_option("--job", check.job_path, "JSON job file")->required();
    std::optional<double> check_tol;
    std::optional<std::uint64_t> check_seed;
    std::string check_mode;
    cmd_check->add_option("--tol", check_tol,
                          "override the differential-equation and form tolerances");
    cmd_check->add_option("--seed", check_seed, "seed for the difference-quotient directions");
    cmd_check->add_option("--mode", check_mode, "which characterizations to run")
        ->check(CLI::IsMember({"pde", "forms", "dq", "all"}));
    add_format(cmd_check);

    IdentitySettings ident;
    CLI::App* cmd_ident =
        app.add_subcommand("identities", "run the randomized wedge/derivative/operator identity suite");
    std::optional<std::uint64_t> ident_seed;
    cmd_ident->add_option("--seed", ident_seed, "seed for the random cases");
    cmd_ident->add_option("--samples", ident.samples, "cases per identity (0 passes vacuously)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    add_format(cmd_ident);

    DerivativeSettings deriv;
    CLI::App* cmd_deriv = app.add_subcommand(
        "derivative", "differentiate (f0, f1) along x1 and verify the result stays regular");
    cmd_deriv->add_option("--job", deriv.job_path, "JSON job file")->required();
    std::optional<double> deriv_tol;
    std::optional<std::uint64_t> deriv_seed;
    cmd_deriv->add_option("--tol", deriv_tol, "differential-equation tolerance");
    cmd_deriv->add_option("--seed", deriv_seed, "accepted for interface symmetry");
    add_format(cmd_deriv);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInputError;
    }

    OutputSink out{format == "json"};
    try {
        if (cmd_check->parsed()) {
            check.tol = check_tol;
            check.seed = check_seed;
            check.mode = check_mode;
            check.out = out;
            return run_check(check);
        }
        if (cmd_ident->parsed()) {
            ident.seed = ident_seed;
            ident.out = out;
            return run_identities(ident);
        }
        deriv.tol = deriv_tol;
        deriv.seed = deriv_seed;
        deriv.out = out;
        return run_derivative(deriv);
    } catch (const CliError& e) {
        return out.fail(e);
    } catch (const JobError& e) {
        return out.fail({"job", e.what(), std::nullopt, std::nullopt});
    } catch (const ParseError& e) {
        return out.fail({"parse", e.what(), std::nullopt, e.offset});
    } catch (const EvalError& e) {
        return out.fail({"eval", e.what(), std::nullopt, e.offset});
    } catch (const std::exception& e) {
        return out.fail({"eval", e.what(), std::nullopt, std::nullopt});
    }
}
