// gqw — command-line workbench for generalized quantifiers over finite
// Henkin models: evaluation, implicit-definability checking, extraction of
// first-order definitions, model enumeration, the quantifier catalog and the
// comprehension-schema checker.
//
// Exit codes: 0 pass/true, 1 fail/false, 2 inconclusive, 3 error.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gqw/gqw.hpp"

namespace {

struct Options {
    std::string model_path;
    std::string formula_path;
    std::string sigma_path;
    std::string theta_path;
    std::string quantifier;
    std::string interpretation_path;
    int max_size = 2;
    int verify_max_size = 3;
    std::string strategy = "exhaustive";
    std::optional<std::uint64_t> seed;
    std::uint64_t samples = 100;
    std::string mode;
    bool verify = false;
    bool equality = false;
    std::string format = "text";
    bool trace = false;
    int size = 1;
    std::vector<int> arities = {1};
    std::vector<std::string> instance_paths;
};

std::uint64_t size_guard_from_env() {
    const char* env = std::getenv("GQW_SIZE_GUARD");
    if (!env) return gqw::kDefaultSizeGuard;
    std::string text(env);
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
        throw gqw::ArgumentError("GQW_SIZE_GUARD must be a nonnegative integer");
    return std::stoull(text);
}

gqw::Formula load_formula(const std::string& path, bool equality) {
    gqw::ParseOptions opts;
    opts.allow_equality = equality;
    return gqw::parse(gqw::read_text_file(path), opts);
}

gqw::GeneralizedQuantifier quantifier_from_option(const std::string& spec) {
    if (spec.empty()) throw gqw::ArgumentError("--quantifier is required here");
    return gqw::builtin_from_spec(spec);
}

void print_report(const gqw::Report& report, const std::string& format) {
    if (format == "json") {
        std::cout << report.to_json().dump(2) << "\n";
        return;
    }
    std::cout << gqw::to_string(report.verdict) << " (models checked: " << report.models_checked
              << ", strategy: " << report.strategy << ")\n";
    for (const auto& note : report.notes) std::cout << "note: " << note << "\n";
    if (report.counterexample)
        std::cout << "counterexample: " << report.counterexample->dump(2) << "\n";
}

int cmd_eval(const Options& opt, std::uint64_t guard) {
    gqw::HenkinModel model = gqw::model_from_json(gqw::read_json_file(opt.model_path));
    gqw::Formula f = load_formula(opt.formula_path, opt.equality);
    if (!gqw::free_ind_vars(f).empty() || !gqw::free_pred_vars(f).empty())
        throw gqw::ArgumentError("eval expects a closed formula (sentences only)");

    gqw::FragmentInfo info = gqw::classify(f);
    bool value = false;
    gqw::EvalTrace trace;
    if (info.fragment == gqw::Fragment::FO || info.fragment == gqw::Fragment::LQ) {
        value = gqw::eval_lq(model.domain, gqw::Assignment{}, gqw::builtin_registry(), f,
                             opt.trace ? &trace : nullptr);
    } else {
        std::optional<gqw::QuantifierInterpretation> interp;
        if (!opt.interpretation_path.empty())
            interp = gqw::interpretation_from_json(gqw::read_json_file(opt.interpretation_path),
                                                   model);
        else if (!opt.quantifier.empty())
            interp = gqw::restrict_to(quantifier_from_option(opt.quantifier), model);
        value = gqw::eval_l2q(model, interp, gqw::Assignment{}, f);
    }

    if (opt.format == "json") {
        gqw::Json out;
        out["value"] = value;
        if (opt.trace) {
            gqw::Json entries = gqw::Json::array();
            for (const auto& e : trace.entries) {
                gqw::Json je;
                je["binder"] = e.binder;
                gqw::Json exts = gqw::Json::array();
                for (const auto& r : e.extensions)
                    exts.push_back(gqw::relation_to_json(r, model.domain));
                je["extensions"] = std::move(exts);
                entries.push_back(std::move(je));
            }
            out["trace"] = std::move(entries);
        }
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << (value ? "true" : "false") << "\n";
        if (opt.trace)
            for (const auto& e : trace.entries) {
                std::cout << "trace: " << e.binder << " ->";
                for (const auto& r : e.extensions)
                    std::cout << " " << gqw::relation_to_text(r, model.domain);
                std::cout << "\n";
            }
    }
    (void)guard;
    return value ? 0 : 1;
}

int cmd_check_implicit(const Options& opt, std::uint64_t guard) {
    gqw::Formula sigma = load_formula(opt.sigma_path, opt.equality);
    gqw::GeneralizedQuantifier q = quantifier_from_option(opt.quantifier);
    gqw::CheckOptions copts;
    copts.max_size = opt.max_size;
    copts.guard = guard;
    if (opt.strategy == "sampled") {
        if (!opt.seed) throw gqw::ArgumentError("--strategy sampled requires --seed");
        copts.strategy = gqw::Strategy::sampled;
        copts.seed = *opt.seed;
        copts.samples = opt.samples;
    } else if (opt.strategy == "exhaustive") {
        copts.strategy = gqw::Strategy::exhaustive;
    } else {
        throw gqw::ArgumentError("--strategy must be exhaustive or sampled");
    }
    gqw::Report report = gqw::check_implicit(sigma, q, copts);
    print_report(report, opt.format);
    return report.exit_code();
}

int cmd_extract(const Options& opt, std::uint64_t guard) {
    gqw::Formula theta = load_formula(opt.theta_path, opt.equality);
    gqw::ExtractMode mode;
    if (opt.mode == "prenex")
        mode = gqw::ExtractMode::prenex;
    else if (opt.mode == "structural")
        mode = gqw::ExtractMode::structural;
    else
        throw gqw::ArgumentError("--mode must be prenex or structural");

    gqw::Formula phi = gqw::extract_first_order(theta, mode);
    std::optional<gqw::Report> report;
    if (opt.verify) {
        gqw::GeneralizedQuantifier q = quantifier_from_option(opt.quantifier);
        report = gqw::verify_extraction(theta, phi, q, opt.verify_max_size, guard);
    }

    if (opt.format == "json") {
        gqw::Json out;
        out["formula"] = gqw::print(phi);
        out["mode"] = opt.mode;
        if (report) out["report"] = report->to_json();
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << gqw::print(phi) << "\n";
        if (mode == gqw::ExtractMode::structural)
            std::cerr << "note: structural mode generalizes the prefix construction, collapsing "
                         "predicate quantifiers in place\n";
        if (report) print_report(*report, opt.format);
    }
    return report ? report->exit_code() : 0;
}

int cmd_models(const Options& opt, std::uint64_t guard) {
    std::set<int> arities(opt.arities.begin(), opt.arities.end());
    std::uint64_t count = 0;
    gqw::for_each_henkin_model(opt.size, arities, guard, [&](const gqw::HenkinModel& m) {
        ++count;
        if (opt.format == "json")
            std::cout << gqw::model_to_json(m).dump() << "\n";
        else
            std::cout << gqw::model_to_text(m) << "\n";
        return true;
    });
    if (opt.format != "json") std::cout << "models: " << count << "\n";
    return 0;
}

int cmd_catalog(const Options& opt) {
    auto entries = gqw::catalog();
    if (opt.format == "json") {
        gqw::Json out = gqw::Json::array();
        for (const auto& e : entries) {
            gqw::Json je;
            je["name"] = e.name;
            je["type"] = e.type;
            je["definition"] = e.definition;
            je["provenance"] = e.provenance;
            out.push_back(std::move(je));
        }
        std::cout << out.dump(2) << "\n";
    } else {
        for (const auto& e : entries)
            std::cout << e.name << "  " << e.type << "  " << e.definition << "  [" << e.provenance
                      << "]\n";
    }
    return 0;
}

int cmd_check_comprehension(const Options& opt, std::uint64_t guard) {
    gqw::HenkinModel model = gqw::model_from_json(gqw::read_json_file(opt.model_path));
    std::vector<gqw::Formula> instances;
    for (const auto& path : opt.instance_paths)
        instances.push_back(load_formula(path, opt.equality));
    gqw::Report report = gqw::check_comprehension(model, instances, guard);
    print_report(report, opt.format);
    return report.exit_code();
}

void add_format_flag(CLI::App* cmd, Options& opt) {
    cmd->add_option("--format", opt.format, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"workbench for generalized quantifiers over finite Henkin models"};
    app.require_subcommand(1);
    Options opt;

    CLI::App* eval = app.add_subcommand("eval", "evaluate a sentence against a model");
    eval->add_option("--model", opt.model_path, "Henkin model file (JSON)")->required();
    eval->add_option("--formula", opt.formula_path, "formula file")->required();
    eval->add_option("--interpretation", opt.interpretation_path,
                     "interpretation of the quantifier symbol (JSON)");
    eval->add_option("--quantifier", opt.quantifier,
                     "catalog quantifier NAME[:k]; its restriction to the model interprets "
                     "the quantifier symbol");
    eval->add_flag("--equality", opt.equality, "enable equality atoms");
    eval->add_flag("--trace", opt.trace, "print the extension sets at binder nodes");
    add_format_flag(eval, opt);

    CLI::App* chk = app.add_subcommand("check-implicit",
                                       "does the sentence implicitly define the quantifier?");
    chk->add_option("--sigma", opt.sigma_path, "defining sentence file")->required();
    chk->add_option("--quantifier", opt.quantifier, "catalog quantifier NAME[:k]")->required();
    chk->add_option("--max-size", opt.max_size, "largest domain size to enumerate");
    chk->add_option("--strategy", opt.strategy, "exhaustive or sampled")
        ->check(CLI::IsMember({"exhaustive", "sampled"}));
    chk->add_option("--seed", opt.seed, "random seed (required for sampled)");
    chk->add_option("--samples", opt.samples, "number of sampled models");
    chk->add_flag("--equality", opt.equality, "enable equality atoms");
    add_format_flag(chk, opt);

    CLI::App* ext = app.add_subcommand("extract",
                                       "extract a first-order definition from a second-order one");
    ext->add_option("--theta", opt.theta_path, "implicitly defining sentence file")->required();
    ext->add_option("--mode", opt.mode, "prenex or structural")
        ->required()
        ->check(CLI::IsMember({"prenex", "structural"}));
    ext->add_flag("--verify", opt.verify, "verify the extraction against --quantifier");
    ext->add_option("--quantifier", opt.quantifier, "catalog quantifier NAME[:k]");
    ext->add_option("--max-size", opt.verify_max_size, "largest domain size for verification");
    ext->add_flag("--equality", opt.equality, "enable equality atoms");
    add_format_flag(ext, opt);

    CLI::App* mdl = app.add_subcommand("models", "enumerate Henkin models up to bounds");
    mdl->add_option("--size", opt.size, "largest domain size")->required();
    mdl->add_option("--arity", opt.arities, "relation family arities (repeatable)");
    add_format_flag(mdl, opt);

    CLI::App* cat = app.add_subcommand("catalog", "list the quantifier catalog");
    add_format_flag(cat, opt);

    CLI::App* comp = app.add_subcommand("check-comprehension",
                                        "check comprehension instances against a model");
    comp->add_option("--model", opt.model_path, "Henkin model file (JSON)")->required();
    comp->add_option("instances", opt.instance_paths, "instance formula files")
        ->required()
        ->expected(-1);
    comp->add_flag("--equality", opt.equality, "enable equality atoms");
    add_format_flag(comp, opt);

    CLI11_PARSE(app, argc, argv);

    try {
        std::uint64_t guard = size_guard_from_env();
        if (eval->parsed()) return cmd_eval(opt, guard);
        if (chk->parsed()) return cmd_check_implicit(opt, guard);
        if (ext->parsed()) return cmd_extract(opt, guard);
        if (mdl->parsed()) return cmd_models(opt, guard);
        if (cat->parsed()) return cmd_catalog(opt);
        if (comp->parsed()) return cmd_check_comprehension(opt, guard);
    } catch (const gqw::NotPrenexableError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const gqw::NotPrenexError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const gqw::PolyadicDetectedError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const gqw::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 3;
}
