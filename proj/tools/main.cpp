#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "heun/evaluator.hpp"
#include "heun/gridrun.hpp"
#include "heun/reference.hpp"

using heun::Complex;
using nlohmann::json;

namespace {

// "a,b" means a+bi, bare "a" means real a.
Complex parse_complex(const std::string& s) {
    auto parse_one = [](const std::string& part) {
        double v = 0.0;
        auto res = std::from_chars(part.data(), part.data() + part.size(), v);
        if (res.ec != std::errc{} || res.ptr != part.data() + part.size())
            throw CLI::ValidationError("complex", "cannot parse '" + part + "'");
        return v;
    };
    auto comma = s.find(',');
    if (comma == std::string::npos)
        return {parse_one(s), 0.0};
    return {parse_one(s.substr(0, comma)), parse_one(s.substr(comma + 1))};
}

heun::FunctionKind parse_kind(const std::string& s) {
    if (s == "cl") return heun::FunctionKind::Cl;
    if (s == "cs") return heun::FunctionKind::Cs;
    if (s == "ainf") return heun::FunctionKind::AInf;
    if (s == "binf") return heun::FunctionKind::BInf;
    throw CLI::ValidationError("kind", "expected cl, cs, ainf or binf");
}

struct ParamFlags {
    std::string q = "0", alpha = "0", gamma = "1", delta = "0", epsilon = "0";

    void attach(CLI::App* app) const {
        auto* self = const_cast<ParamFlags*>(this);
        app->add_option("--q", self->q, "accessory parameter q (a or a,b)");
        app->add_option("--alpha", self->alpha, "parameter alpha");
        app->add_option("--gamma", self->gamma, "parameter gamma");
        app->add_option("--delta", self->delta, "parameter delta");
        app->add_option("--epsilon", self->epsilon, "parameter epsilon");
    }
    heun::Params params() const {
        return {parse_complex(q), parse_complex(alpha), parse_complex(gamma),
                parse_complex(delta), parse_complex(epsilon)};
    }
};

struct ConfigFlags {
    heun::Config cfg;

    void attach(CLI::App* app) {
        app->add_option("--kappa", cfg.kappa, "local-series radius fraction")
            ->envname("HEUN_KAPPA");
        app->add_option("--n-diamond", cfg.n_diamond, "target terms per step")
            ->envname("HEUN_NDIAMOND");
        app->add_option("--near-one-radius", cfg.near_one_radius,
                        "radius of the z=1 connection region")
            ->envname("HEUN_NEAR_ONE_R");
        app->add_option("--far-field-r", cfg.far_field_R,
                        "far-field |eps z| threshold (<=0: auto)")
            ->envname("HEUN_FARFIELD_R");
        app->add_option("--max-terms", cfg.max_terms, "series term limit")
            ->envname("HEUN_MAX_TERMS");
        app->add_option("--max-steps", cfg.max_steps, "continuation step limit")
            ->envname("HEUN_MAX_STEPS");
    }
};

// "min,max,count"
heun::gridrun::AxisSpec parse_axis(const std::string& s) {
    heun::gridrun::AxisSpec a;
    auto c1 = s.find(',');
    auto c2 = s.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw CLI::ValidationError("axis", "expected min,max,count");
    a.min = std::stod(s.substr(0, c1));
    a.max = std::stod(s.substr(c1 + 1, c2 - c1 - 1));
    a.count = std::stoi(s.substr(c2 + 1));
    if (a.count < 2)
        throw CLI::ValidationError("axis", "count must be at least 2");
    return a;
}

std::vector<int> parse_cases(const std::string& s) {
    std::vector<int> out;
    if (s == "all") {
        for (int i = 1; i <= 9; ++i)
            out.push_back(i);
        return out;
    }
    std::size_t pos = 0;
    while (pos < s.size()) {
        auto comma = s.find(',', pos);
        std::string tok = s.substr(pos, comma == std::string::npos ? comma : comma - pos);
        auto dash = tok.find('-');
        if (dash != std::string::npos) {
            int lo = std::stoi(tok.substr(0, dash));
            int hi = std::stoi(tok.substr(dash + 1));
            for (int i = lo; i <= hi; ++i)
                out.push_back(i);
        } else if (!tok.empty()) {
            out.push_back(std::stoi(tok));
        }
        if (comma == std::string::npos)
            break;
        pos = comma + 1;
    }
    return out;
}

int emit_error(const heun::Error& e) {
    json j{{"error", {{"code", heun::errc_name(e.code())}, {"message", e.what()}}}};
    std::cout << j.dump() << std::endl;
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"confluent Heun function evaluator"};
    app.require_subcommand(1);

    ParamFlags pf;
    ConfigFlags cf;
    bool no_improvements = false;

    // ---- eval ----
    auto* eval = app.add_subcommand("eval", "evaluate one point");
    std::string z_str, kind_str = "cl";
    pf.attach(eval);
    cf.attach(eval);
    eval->add_option("--z", z_str, "evaluation point (a or a,b)")->required();
    eval->add_option("--kind", kind_str, "cl | cs | ainf | binf");
    eval->add_flag("--no-improvements", no_improvements,
                   "disable the near-one and far-field connection evaluators");

    // ---- grid ----
    auto* grid = app.add_subcommand("grid", "sweep a rectangle, emit heatmap data");
    std::string re_str = "-5,5,41", im_str = "-5,5,41", out_path = "-",
                format_str = "csv", gkind_str = "cl";
    pf.attach(grid);
    cf.attach(grid);
    grid->add_option("--re", re_str, "re axis: min,max,count");
    grid->add_option("--im", im_str, "im axis: min,max,count");
    grid->add_option("--kind", gkind_str, "cl | cs | ainf | binf");
    grid->add_option("--out", out_path, "output path ('-' for stdout)");
    grid->add_option("--format", format_str, "csv | jsonl");
    grid->add_flag("--no-improvements", no_improvements, "basic algorithm only");

    // ---- verify ----
    auto* verify = app.add_subcommand("verify", "run the identity suite");
    std::string cases_str = "all", vre_str = "-40,40,101", vim_str = "-40,40,101",
                dump_path;
    cf.attach(verify);
    verify->add_option("--cases", cases_str, "subset of 1..9, e.g. 1,3,7-9 or all");
    verify->add_option("--re", vre_str, "re axis: min,max,count");
    verify->add_option("--im", vim_str, "im axis: min,max,count");
    verify->add_option("--dump", dump_path, "per-point CSV dump path");
    verify->add_flag("--no-improvements", no_improvements, "basic algorithm only");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*eval) {
            auto res = heun::evaluate_with_trace(parse_kind(kind_str), pf.params(),
                                                 parse_complex(z_str), cf.cfg,
                                                 !no_improvements);
            json j{{"f", {res.quad.f.real(), res.quad.f.imag()}},
                   {"df", {res.quad.df.real(), res.quad.df.imag()}},
                   {"err", res.quad.r},
                   {"n_terms", res.quad.n_terms},
                   {"dispatch", heun::region_name(res.dispatch.region)},
                   {"steps", res.trace.steps}};
            std::cout << j.dump() << std::endl;
            return 0;
        }
        if (*grid) {
            heun::gridrun::GridJob job;
            job.re = parse_axis(re_str);
            job.im = parse_axis(im_str);
            job.kind = parse_kind(gkind_str);
            job.params = pf.params();
            job.use_improvements = !no_improvements;
            job.format = format_str == "jsonl" ? heun::gridrun::OutputFormat::JsonLines
                                               : heun::gridrun::OutputFormat::Csv;
            if (format_str != "csv" && format_str != "jsonl")
                throw CLI::ValidationError("format", "expected csv or jsonl");
            auto rows = heun::gridrun::run_grid(job, cf.cfg);
            if (out_path == "-") {
                if (job.format == heun::gridrun::OutputFormat::Csv)
                    heun::gridrun::write_csv(std::cout, rows);
                else
                    heun::gridrun::write_jsonl(std::cout, rows);
            } else {
                std::ofstream os(out_path, std::ios::binary);
                if (!os)
                    throw heun::Error(heun::Errc::invalid_argument,
                                      "cannot open output file " + out_path);
                if (job.format == heun::gridrun::OutputFormat::Csv)
                    heun::gridrun::write_csv(os, rows);
                else
                    heun::gridrun::write_jsonl(os, rows);
            }
            return 0;
        }
        if (*verify) {
            heun::gridrun::VerifySpec spec;
            spec.cases = parse_cases(cases_str);
            if (spec.cases.empty())
                throw CLI::ValidationError("cases", "no cases selected");
            spec.re = parse_axis(vre_str);
            spec.im = parse_axis(vim_str);
            spec.use_improvements = !no_improvements;
            std::vector<heun::gridrun::VerifyPoint> dump;
            auto summaries = heun::gridrun::run_verify(
                spec, cf.cfg, dump_path.empty() ? nullptr : &dump);
            if (!dump_path.empty()) {
                std::ofstream os(dump_path, std::ios::binary);
                os << "case,re,im,lambda,n_terms,status\n";
                for (const auto& p : dump)
                    os << p.case_index << ',' << p.re << ',' << p.im << ','
                       << p.lambda << ',' << p.n_terms << ',' << p.status << '\n';
            }
            json out = json::array();
            bool all_pass = true;
            for (const auto& s : summaries) {
                all_pass = all_pass && s.pass;
                out.push_back({{"case", s.case_index},
                               {"points", s.points},
                               {"excluded", s.excluded},
                               {"failures", s.failures},
                               {"median_lambda", s.median_lambda},
                               {"p95_lambda", s.p95_lambda},
                               {"max_lambda_far", s.max_lambda_far},
                               {"n_terms_total", s.n_terms_total},
                               {"pass", s.pass}});
            }
            std::cout << json{{"cases", out}, {"all_pass", all_pass}}.dump()
                      << std::endl;
            return all_pass ? 0 : 1;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << std::endl;
        return 2;
    } catch (const heun::Error& e) {
        return emit_error(e);
    } catch (const std::exception& e) {
        json j{{"error", {{"code", "internal"}, {"message", e.what()}}}};
        std::cout << j.dump() << std::endl;
        return 1;
    }
    return 2;
}
