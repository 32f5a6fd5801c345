#include "huecomp/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "huecomp/hdr.hpp"
#include "huecomp/io.hpp"

namespace huecomp::cli {

namespace fs = std::filesystem;

nlohmann::json to_json(const RunConfig& cfg) {
    return {
        {"lambda", cfg.crf.lambda},
        {"samples", cfg.crf.samples},
        {"seed", cfg.crf.seed},
        {"weights", {cfg.fusion.contrast, cfg.fusion.saturation, cfg.fusion.exposedness}},
        {"sigma", cfg.fusion.sigma},
        {"depth", cfg.fusion.depth},
        {"hdr_gamma", cfg.compensate.domain == HueDomain::display_gamma},
        {"gamma", cfg.render_gamma},
        {"metric_variant", std::string(to_string(cfg.metric.variant))},
        {"clip_mask", cfg.metric.clip_mask},
    };
}

namespace {

void check(const RunConfig& cfg) {
    if (!(cfg.crf.lambda >= 0.0) || !std::isfinite(cfg.crf.lambda)) throw InputError("lambda must be >= 0");
    if (cfg.crf.samples < 1) throw InputError("samples must be >= 1");
    if (!(cfg.render_gamma > 0.0) || !std::isfinite(cfg.render_gamma)) throw InputError("gamma must be > 0");
    const auto& w = cfg.fusion;
    if (w.contrast < 0.0 || w.saturation < 0.0 || w.exposedness < 0.0 ||
        (w.contrast == 0.0 && w.saturation == 0.0 && w.exposedness == 0.0)) {
        throw InputError("weights must be >= 0 with at least one positive");
    }
    if (!(w.sigma > 0.0)) throw InputError("sigma must be > 0");
}

std::array<double, 3> parse_weights(std::string_view text) {
    std::array<double, 3> out{};
    std::stringstream ss{std::string(text)};
    std::string tok;
    int k = 0;
    while (std::getline(ss, tok, ',')) {
        if (k == 3) throw InputError("--weights takes exactly three values c,s,e");
        try {
            std::size_t used = 0;
            out[k] = std::stod(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::logic_error&) {
            throw InputError("--weights: '" + tok + "' is not a number");
        }
        ++k;
    }
    if (k != 3) throw InputError("--weights takes exactly three values c,s,e");
    return out;
}

}  // namespace

RunConfig apply_json(RunConfig cfg, const nlohmann::json& doc) {
    if (!doc.is_object()) throw InputError("config must be a JSON object");
    try {
        for (const auto& [key, value] : doc.items()) {
            if (key == "lambda") {
                cfg.crf.lambda = value.get<double>();
            } else if (key == "samples") {
                cfg.crf.samples = value.get<int>();
            } else if (key == "seed") {
                cfg.crf.seed = value.get<std::uint64_t>();
            } else if (key == "weights") {
                const auto w = value.get<std::vector<double>>();
                if (w.size() != 3) throw InputError("config 'weights' needs three values");
                cfg.fusion.contrast = w[0];
                cfg.fusion.saturation = w[1];
                cfg.fusion.exposedness = w[2];
            } else if (key == "sigma") {
                cfg.fusion.sigma = value.get<double>();
            } else if (key == "depth") {
                cfg.fusion.depth = value.get<int>();
            } else if (key == "hdr_gamma") {
                cfg.compensate.domain = value.get<bool>() ? HueDomain::display_gamma : HueDomain::linear;
            } else if (key == "gamma") {
                cfg.render_gamma = value.get<double>();
            } else if (key == "metric_variant") {
                cfg.metric.variant = parse_hue_variant(value.get<std::string>());
            } else if (key == "clip_mask") {
                cfg.metric.clip_mask = value.get<bool>();
            } else {
                throw InputError("unknown config key '" + key + "'");
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("config: ") + e.what());
    }
    cfg.compensate.gamma = cfg.render_gamma;
    check(cfg);
    return cfg;
}

std::vector<double> parse_ev_list(std::string_view text) {
    std::vector<double> evs;
    std::stringstream ss{std::string(text)};
    std::string tok;
    auto number = [&](const std::string& s) {
        try {
            std::size_t used = 0;
            const double v = std::stod(s, &used);
            if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
            return v;
        } catch (const std::logic_error&) {
            throw InputError("bad EV list entry '" + s + "' in '" + std::string(text) + "'");
        }
    };
    while (std::getline(ss, tok, ',')) {
        tok.erase(0, tok.find_first_not_of(" \t"));
        tok.erase(tok.find_last_not_of(" \t") + 1);
        if (tok.empty()) throw InputError("empty entry in EV list '" + std::string(text) + "'");
        std::string body;
        if (tok.rfind("\xC2\xB1", 0) == 0) {
            body = tok.substr(2);
        } else if (tok.rfind("+-", 0) == 0) {
            body = tok.substr(2);
        }
        if (!body.empty()) {
            const double v = std::abs(number(body));
            evs.push_back(v);
            if (v != 0.0) evs.push_back(-v);
        } else {
            evs.push_back(number(tok));
        }
    }
    if (evs.empty()) throw InputError("EV list is empty");
    std::sort(evs.begin(), evs.end());
    if (std::adjacent_find(evs.begin(), evs.end()) != evs.end()) {
        throw InputError("EV list '" + std::string(text) + "' repeats a value");
    }
    return evs;
}

namespace {

// Flags shared by the subcommands. Only flags actually given override the config.
struct Flags {
    std::string config;
    double lambda = 0.0;
    int samples = 0;
    std::uint64_t seed = 0;
    std::string weights;
    double gamma = 0.0;
    bool hdr_gamma = false;
    std::string metric_variant;
    bool clip_mask = false;

};

enum FlagSet : unsigned {
    kCrfFlags = 1,
    kFuseFlags = 2,
    kHueFlags = 4,
    kMetricFlags = 8,
    kRenderFlags = 16,
};

void add_flags(CLI::App* cmd, Flags& f, unsigned which) {
    cmd->add_option("--config", f.config, "JSON config file; flags override its values")->check(CLI::ExistingFile);
    if (which & kCrfFlags) {
        cmd->add_option("--lambda", f.lambda, "CRF smoothness weight (default 50)")
                         ->check(CLI::NonNegativeNumber);
        cmd->add_option("--samples", f.samples, "pixels sampled for the CRF solve (default 100)")
                          ->check(CLI::PositiveNumber);
        cmd->add_option("--seed", f.seed, "tie-break seed for CRF sampling (default 0)");
    }
    if (which & kFuseFlags) {
        cmd->add_option("--weights", f.weights, "fusion exponents c,s,e (default 1,1,1)");
    }
    if (which & (kHueFlags | kRenderFlags)) {
        cmd->add_option("--gamma", f.gamma, "render / display gamma (default 2.2)")
                        ->check(CLI::PositiveNumber);
    }
    if (which & kHueFlags) {
        cmd->add_flag("--hdr-gamma", f.hdr_gamma,
                                      "take the HDR hue from gamma-encoded radiance instead of linear");
    }
    if (which & kMetricFlags) {
        cmd->add_option("--metric-variant", f.metric_variant, "raw_dHp (default) or scaled_dHp");
        cmd->add_flag("--clip-mask", f.clip_mask, "exclude pixels clipped in either image");
    }
}

// `cmd` is the subcommand that was parsed; the option objects live on it.
RunConfig resolve(const Flags& f, const CLI::App& cmd) {
    RunConfig cfg;
    if (!f.config.empty()) cfg = apply_json(cfg, io::read_json(f.config));
    auto given = [&](const char* name) {
        const CLI::Option* o = cmd.get_option_no_throw(name);
        return o != nullptr && o->count() > 0;
    };
    if (given("--lambda")) cfg.crf.lambda = f.lambda;
    if (given("--samples")) cfg.crf.samples = f.samples;
    if (given("--seed")) cfg.crf.seed = f.seed;
    if (given("--weights")) {
        const auto w = parse_weights(f.weights);
        cfg.fusion.contrast = w[0];
        cfg.fusion.saturation = w[1];
        cfg.fusion.exposedness = w[2];
    }
    if (given("--gamma")) cfg.render_gamma = f.gamma;
    if (given("--hdr-gamma")) cfg.compensate.domain = HueDomain::display_gamma;
    if (given("--metric-variant")) cfg.metric.variant = parse_hue_variant(f.metric_variant);
    if (given("--clip-mask")) cfg.metric.clip_mask = true;
    cfg.compensate.gamma = cfg.render_gamma;
    check(cfg);
    return cfg;
}

// ---------------------------------------------------------------- commands

void do_fuse(const fs::path& manifest, const fs::path& out_png, const RunConfig& cfg, std::ostream& log) {
    const ExposureStack stack = io::load_stack(io::read_manifest(manifest));
    FuseStats stats;
    const LdrImage fused = fuse(stack, cfg.fusion, &stats);
    io::write_ldr(fused, out_png);
    log << "fused " << stack.count() << " exposures -> " << out_png.string() << " (clamped " << stats.clamped
        << " values, max " << stats.max_clamp << ")\n";
}

void do_estimate_crf(const fs::path& manifest, const fs::path& out_json, const RunConfig& cfg, std::ostream& log) {
    const ExposureStack stack = io::load_stack(io::read_manifest(manifest));
    const CrfTable crf = estimate_inverse_crf(stack, cfg.crf);
    nlohmann::json doc = io::crf_to_json(crf);
    doc["config"] = to_json(cfg);
    io::write_json(doc, out_json);
    log << "inverse CRF -> " << out_json.string() << "\n";
}

void do_merge_hdr(const fs::path& manifest, const fs::path* crf_json, const fs::path& out_hdr, const RunConfig& cfg,
                  std::ostream& log) {
    const ExposureStack stack = io::load_stack(io::read_manifest(manifest));
    const CrfTable crf = crf_json ? io::read_crf(*crf_json) : estimate_inverse_crf(stack, cfg.crf);
    io::write_hdr(recover_radiance(stack, crf), out_hdr);
    log << "radiance map -> " << out_hdr.string() << "\n";
}

void do_compensate(const fs::path& fused_png, const fs::path& hdr, const fs::path& out_png, const RunConfig& cfg,
                   std::ostream& log) {
    const LdrImage fused = io::read_ldr(fused_png);
    const RadianceMap radiance = io::read_hdr(hdr);
    io::write_ldr(compensate_image(fused, radiance, cfg.compensate), out_png);
    log << "compensated -> " << out_png.string() << "\n";
}

void do_evaluate(const fs::path& a, const fs::path& b, const fs::path& report, const RunConfig& cfg,
                 std::ostream& log) {
    const HueDiffReport r = image_hue_diff(io::read_ldr(a), io::read_ldr(b), cfg.metric);
    nlohmann::json doc = io::report_to_json(r);
    doc["config"] = to_json(cfg);
    io::write_json(doc, report);
    log << "mean dH = " << r.mean_dH << " over " << r.pixels << " pixels -> " << report.string() << "\n";
}

void do_synth(const fs::path& ground, const std::vector<double>& evs, const fs::path& outdir,
              const fs::path* reference_png, const RunConfig& cfg, std::ostream& log) {
    const RadianceMap scene = io::read_hdr(ground);
    const double scale = exposure_anchor(scene, cfg.render_gamma);
    fs::create_directories(outdir);
    io::StackManifest manifest;
    for (std::size_t k = 0; k < evs.size(); ++k) {
        const std::string name = "exposure_" + std::to_string(k) + ".png";
        io::write_ldr(render_exposure(scene, evs[k], scale, cfg.render_gamma), outdir / name);
        manifest.images.push_back({name, evs[k]});
    }
    io::write_manifest(manifest, outdir / "manifest.json");
    if (reference_png) io::write_ldr(render_reference(scene, cfg.render_gamma), *reference_png);
    log << "wrote " << evs.size() << " exposures and manifest.json to " << outdir.string() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exposure fusion with hue compensation from a recovered HDR radiance map", "huecomp"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "show help for every subcommand");

    Flags f;
    std::string a1, a2, a3;
    std::vector<std::string> merge_args;
    std::string evs_text, reference;
    bool auto_crf = false;

    auto* fuse_cmd = app.add_subcommand("fuse", "fuse an exposure stack (manifest) into one PNG");
    fuse_cmd->add_option("manifest", a1, "stack manifest JSON")->required();
    fuse_cmd->add_option("out", a2, "output PNG")->required();
    add_flags(fuse_cmd, f, kFuseFlags);

    auto* crf_cmd = app.add_subcommand("estimate-crf", "estimate the inverse camera response as JSON");
    crf_cmd->add_option("manifest", a1, "stack manifest JSON")->required();
    crf_cmd->add_option("out", a2, "output CRF table JSON")->required();
    add_flags(crf_cmd, f, kCrfFlags);

    auto* merge_cmd = app.add_subcommand("merge-hdr", "recover the radiance map (.hdr or .pfm)");
    merge_cmd->add_option("files", merge_args, "manifest [crf.json] out.hdr")->required()->expected(2, 3);
    merge_cmd->add_flag("--auto-crf", auto_crf, "estimate the CRF inline instead of reading crf.json");
    add_flags(merge_cmd, f, kCrfFlags);

    auto* comp_cmd = app.add_subcommand("compensate", "replace the fused image's hue with the radiance map's");
    comp_cmd->add_option("fused", a1, "fused PNG")->required();
    comp_cmd->add_option("radiance", a2, "radiance map (.hdr or .pfm)")->required();
    comp_cmd->add_option("out", a3, "output PNG")->required();
    add_flags(comp_cmd, f, kHueFlags);

    auto* synth_cmd = app.add_subcommand("synth-stack", "render a synthetic exposure stack from an HDR image");
    synth_cmd->add_option("ground", a1, "ground-truth radiance (.hdr or .pfm)")->required();
    synth_cmd->add_option("outdir", a2, "output directory")->required();
    synth_cmd->add_option("--evs", evs_text, "EV list, e.g. 0,0.5,-0.5,2,-2 or 0,±1,±2")->required();
    synth_cmd->add_option("--reference", reference, "also write the display-rendered ground truth PNG");
    add_flags(synth_cmd, f, kRenderFlags);

    auto* eval_cmd = app.add_subcommand("evaluate", "mean CIEDE2000 hue difference between two PNGs as JSON");
    eval_cmd->add_option("image", a1, "image under test")->required();
    eval_cmd->add_option("reference", a2, "display-rendered ground truth")->required();
    eval_cmd->add_option("report", a3, "output report JSON")->required();
    add_flags(eval_cmd, f, kMetricFlags);

    auto* pipe_cmd = app.add_subcommand("pipeline", "fuse, estimate CRF, merge, compensate and evaluate");
    pipe_cmd->add_option("manifest", a1, "stack manifest JSON")->required();
    pipe_cmd->add_option("outdir", a2, "output directory")->required();
    pipe_cmd->add_option("--reference", reference, "ground truth PNG; enables the two reports");
    add_flags(pipe_cmd, f, kCrfFlags | kFuseFlags | kHueFlags | kMetricFlags);

    try {
        app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    }

    try {
        const RunConfig cfg = resolve(f, *app.get_subcommands().front());
        out << "config " << to_json(cfg).dump() << "\n";
        if (fuse_cmd->parsed()) {
            do_fuse(a1, a2, cfg, out);
        } else if (crf_cmd->parsed()) {
            do_estimate_crf(a1, a2, cfg, out);
        } else if (merge_cmd->parsed()) {
            if (auto_crf && merge_args.size() != 2) throw InputError("merge-hdr --auto-crf takes: manifest out.hdr");
            if (!auto_crf && merge_args.size() != 3) {
                throw InputError("merge-hdr takes: manifest crf.json out.hdr (or --auto-crf manifest out.hdr)");
            }
            const fs::path crf_path = auto_crf ? fs::path() : fs::path(merge_args[1]);
            do_merge_hdr(merge_args[0], auto_crf ? nullptr : &crf_path, merge_args.back(), cfg, out);
        } else if (comp_cmd->parsed()) {
            do_compensate(a1, a2, a3, cfg, out);
        } else if (synth_cmd->parsed()) {
            const std::vector<double> evs = parse_ev_list(evs_text);
            const fs::path ref(reference);
            do_synth(a1, evs, a2, reference.empty() ? nullptr : &ref, cfg, out);
        } else if (eval_cmd->parsed()) {
            do_evaluate(a1, a2, a3, cfg, out);
        } else if (pipe_cmd->parsed()) {
            // Each stage goes through its files so the result equals running the commands one by one.
            const fs::path dir(a2);
            fs::create_directories(dir);
            do_fuse(a1, dir / "fused.png", cfg, out);
            do_estimate_crf(a1, dir / "crf.json", cfg, out);
            const fs::path crf_path = dir / "crf.json";
            do_merge_hdr(a1, &crf_path, dir / "radiance.hdr", cfg, out);
            do_compensate(dir / "fused.png", dir / "radiance.hdr", dir / "compensated.png", cfg, out);
            if (!reference.empty()) {
                do_evaluate(dir / "fused.png", reference, dir / "fused_report.json", cfg, out);
                do_evaluate(dir / "compensated.png", reference, dir / "compensated_report.json", cfg, out);
            }
        }
    } catch (const SolverError& e) {
        err << "error: " << e.what() << "\n";
        return kSolver;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        // filesystem errors and anything else escaping a module
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kOk;
}

}  // namespace huecomp::cli
