#include "girl/cli.hpp"

#include "girl/diagnostic.hpp"
#include "girl/instance_io.hpp"
#include "girl/json_io.hpp"
#include "girl/solve.hpp"
#include "girl/syntax.hpp"
#include "girl/transpile.hpp"
#include "girl/validate.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace girl::cli {

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

struct Config {
    std::string command;
    std::string input;
    std::string output;
    std::string dot_dir;
    std::string instance;
    std::string save_instance;
    std::string format = "text";
    int scope = kDefaultScope;
    std::vector<std::string> bounds;
    std::size_t max_instances = 1;
    std::optional<std::uint64_t> max_candidates;
};

std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("IO", "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path &path, const std::string &text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << text) || !out.flush())
        throw Error("IO", "cannot write '" + path.string() + "'");
}

json diagnostic_json(const Diagnostic &d)
{
    json j = {{"severity", d.severity == Severity::Error ? "error" : "warning"},
              {"rule", d.rule},
              {"message", d.message}};
    if (d.span) {
        j["file"] = d.span->file;
        j["line"] = d.span->start_line;
        j["column"] = d.span->start_col;
    }
    if (!d.path.empty())
        j["path"] = d.path;
    return j;
}

std::uint64_t parse_count(const std::string &text, const std::string &what)
{
    std::uint64_t v = 0;
    std::istringstream is(text);
    if (text.empty() || text[0] == '-' || !(is >> v) || !is.eof() || v == 0)
        throw Error("usage", what + " must be a positive integer, got '" + text + "'");
    return v;
}

std::string summary(const TypedModel &model, const Instance &inst)
{
    std::ostringstream os;
    const auto &u = inst.universe;
    os << "atoms:\n";
    for (EntityId root : model.roots) {
        os << "  " << model.entities[root].name << ':';
        bool any = false;
        for (const auto &a : u.atoms)
            if (a.root == root) {
                os << (any ? ", " : " ") << a.name << " (" << model.entities[a.entity].name << ')';
                any = true;
            }
        os << (any ? "\n" : " (none)\n");
    }
    if (model.relationships.empty())
        return os.str();
    os << "relations:\n";
    for (RelationshipId r = 0; r < model.relationships.size(); ++r) {
        os << "  " << relation_key(model, r) << ':';
        auto tuples = inst.tuples(r);
        for (std::size_t i = 0; i < tuples.size(); ++i)
            os << (i ? ", " : " ") << u.atoms[tuples[i].first].name << " -> " << u.atoms[tuples[i].second].name;
        os << (tuples.empty() ? " (none)\n" : "\n");
    }
    return os.str();
}

class Command {
public:
    Command(Config cfg, std::ostream &out, std::ostream &err) : cfg_(std::move(cfg)), out_(out), err_(err)
    {
        report_ = {{"version", kReportSchema},
                   {"command", cfg_.command},
                   {"input", cfg_.input},
                   {"diagnostics", json::array()},
                   {"artifacts", json::array()}};
    }

    int run()
    {
        try {
            return dispatch();
        } catch (const Error &e) {
            int code = kUsage;
            std::string status = "error";
            if (e.code() == "S1") {
                code = kInconclusive;
                status = "inconclusive";
            } else if (e.code() == "J1" || e.code() == "J2") {
                code = kParseError;
                status = "parse-error";
            }
            err_ << "girl: error [" << e.code() << "]: " << e.what() << '\n';
            report_["error"] = {{"code", e.code()}, {"message", e.what()}};
            return finish(code, status);
        }
    }

private:
    bool json_out() const { return cfg_.format == "json"; }

    int finish(int code, const std::string &status)
    {
        auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
        report_["status"] = status;
        report_["exitCode"] = code;
        report_["timingMs"] = std::round(ms * 1000.0) / 1000.0;
        if (json_out())
            out_ << report_.dump(2) << '\n';
        return code;
    }

    void report_diagnostics(const std::vector<Diagnostic> &diags)
    {
        for (const auto &d : diags) {
            err_ << format(d) << '\n';
            report_["diagnostics"].push_back(diagnostic_json(d));
        }
    }

    void artifact(const fs::path &path, const std::string &text)
    {
        write_file(path, text);
        report_["artifacts"].push_back(path.generic_string());
        if (!json_out())
            err_ << "wrote " << path.generic_string() << '\n';
    }

    fs::path dot_path(const std::string &suffix) const
    {
        fs::create_directories(cfg_.dot_dir);
        return fs::path(cfg_.dot_dir) / (fs::path(cfg_.input).stem().string() + suffix + ".dot");
    }

    Scope scope() const
    {
        Scope s;
        s.default_bound = cfg_.scope;
        for (const auto &b : cfg_.bounds) {
            auto eq = b.find('=');
            if (eq == std::string::npos || eq == 0)
                throw Error("usage", "--bound expects NAME=N, got '" + b + "'");
            s.per_entity[b.substr(0, eq)] = static_cast<int>(parse_count(b.substr(eq + 1), "--bound " + b));
        }
        return s;
    }

    SearchOptions search_options() const
    {
        SearchOptions opt;
        if (const char *env = std::getenv("GIRL_MAX_CANDIDATES"); env && *env)
            opt.max_candidates = parse_count(env, "GIRL_MAX_CANDIDATES");
        if (cfg_.max_candidates)
            opt.max_candidates = *cfg_.max_candidates;
        return opt;
    }

    int dispatch()
    {
        if (cfg_.format == "dot" && cfg_.command != "solve" && cfg_.command != "enumerate")
            throw Error("usage", "--format dot applies to solve and enumerate only");
        std::string text = read_file(cfg_.input);
        bool from_json = fs::path(cfg_.input).extension() == ".json";
        LoadResult loaded = from_json ? load_json(text) : parse(text, cfg_.input);
        if (loaded.ok() && !from_json)
            loaded.model->name = model_name_from_path(cfg_.input);
        report_diagnostics(loaded.diagnostics);
        if (!loaded.ok() || has_errors(loaded.diagnostics))
            return finish(kParseError, "parse-error");

        auto diags = validate(*loaded.model);
        report_diagnostics(diags);
        if (has_errors(diags)) {
            if (!json_out())
                out_ << "invalid\n";
            return finish(kInvalid, "invalid");
        }
        if (cfg_.command == "validate") {
            if (!json_out())
                out_ << "valid\n";
            return finish(kOk, "valid");
        }

        TypedModel model = resolve(*loaded.model);
        if (cfg_.command == "transpile")
            return transpile_cmd(model);
        if (cfg_.command == "solve")
            return solve_cmd(model);
        if (cfg_.command == "enumerate")
            return enumerate_cmd(model);
        return check_cmd(model);
    }

    int transpile_cmd(const TypedModel &model)
    {
        std::string als = alloy::emit(transpile(model, cfg_.scope));
        report_["scope"] = cfg_.scope;
        if (!cfg_.output.empty())
            artifact(cfg_.output, als);
        else if (json_out())
            report_["alloy"] = als;
        else
            out_ << als;
        return finish(kOk, "ok");
    }

    int solve_cmd(const TypedModel &model)
    {
        Scope sc = scope();
        Verdict v = solve(model, sc, search_options());
        bool sat = v.status == Status::Sat;
        report_["scope"] = cfg_.scope;
        report_["explored"] = v.explored;
        report_["verdict"] = sat ? "sat" : "unsat";
        if (sat) {
            report_["witness"] = json::parse(instance_to_json(model, *v.witness));
            if (!cfg_.dot_dir.empty())
                artifact(dot_path("-witness"), export_dot(model, *v.witness));
            if (!cfg_.save_instance.empty())
                artifact(cfg_.save_instance, instance_to_json(model, *v.witness));
        }
        if (cfg_.format == "text")
            out_ << (sat ? "sat\n" + summary(model, *v.witness) : std::string("unsat\n"));
        else if (cfg_.format == "dot" && sat)
            out_ << export_dot(model, *v.witness);
        else if (cfg_.format == "dot")
            err_ << "unsat\n";
        return finish(sat ? kOk : kUnsat, sat ? "sat" : "unsat");
    }

    int enumerate_cmd(const TypedModel &model)
    {
        Enumeration e = enumerate(model, scope(), cfg_.max_instances, search_options());
        report_["scope"] = cfg_.scope;
        report_["explored"] = e.explored;
        report_["instances"] = json::array();
        if (cfg_.format == "text")
            out_ << e.instances.size() << (e.instances.size() == 1 ? " instance\n" : " instances\n");
        for (std::size_t i = 0; i < e.instances.size(); ++i) {
            const auto &inst = e.instances[i];
            report_["instances"].push_back(json::parse(instance_to_json(model, inst)));
            if (cfg_.format == "text")
                out_ << "-- instance " << i + 1 << '\n' << summary(model, inst);
            else if (cfg_.format == "dot")
                out_ << export_dot(model, inst);
            if (!cfg_.dot_dir.empty()) {
                std::ostringstream suffix;
                suffix << "-instance-" << std::setw(3) << std::setfill('0') << i + 1;
                artifact(dot_path(suffix.str()), export_dot(model, inst));
            }
        }
        bool any = !e.instances.empty();
        report_["verdict"] = any ? "sat" : "unsat";
        return finish(any ? kOk : kUnsat, any ? "sat" : "unsat");
    }

    int check_cmd(const TypedModel &model)
    {
        Instance inst = instance_from_json(model, read_file(cfg_.instance));
        auto verdicts = check_instance(model, inst);
        bool all = true;
        report_["constraints"] = json::array();
        for (const auto &c : verdicts) {
            all = all && c.holds;
            report_["constraints"].push_back({{"kind", to_string(c.kind)}, {"label", c.label}, {"holds", c.holds}});
            if (!json_out())
                out_ << (c.holds ? "holds  " : "FAILS  ") << std::left << std::setw(13)
                     << std::string(to_string(c.kind)) << c.label << '\n';
        }
        return finish(all ? kOk : kUnsat, all ? "pass" : "fail");
    }

    Config cfg_;
    std::ostream &out_;
    std::ostream &err_;
    json report_;
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    Config cfg;
    CLI::App app{"GIRL structural invariants: validate, translate to Alloy, and find instances", "girl"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "girl 1.0.0");

    const auto formats = CLI::IsMember({"text", "json", "dot"});
    auto common = [&](CLI::App *sub) {
        sub->add_option("input", cfg.input, "model file (.girl, or girl-ast/1 .json)")->required();
        sub->add_option("--format", cfg.format, "output format: text, json or dot")->check(formats);
    };
    auto search = [&](CLI::App *sub) {
        sub->add_option("--scope", cfg.scope, "atoms per top-level entity")->check(CLI::PositiveNumber);
        sub->add_option("--bound", cfg.bounds, "per-entity scope override, NAME=N (repeatable)");
        sub->add_option("--dot", cfg.dot_dir, "directory for Graphviz files");
        sub->add_option_function<std::uint64_t>(
               "--max-candidates", [&](std::uint64_t v) { cfg.max_candidates = v; },
               "search budget (default 10000000, env GIRL_MAX_CANDIDATES)")
            ->check(CLI::PositiveNumber);
    };

    auto *validate_cmd = app.add_subcommand("validate", "parse and check well-formedness");
    common(validate_cmd);

    auto *transpile_cmd = app.add_subcommand("transpile", "translate to an Alloy module");
    common(transpile_cmd);
    transpile_cmd->add_option("-o,--output", cfg.output, "output .als file (default stdout)");
    transpile_cmd->add_option("--scope", cfg.scope, "scope of the run command")->check(CLI::PositiveNumber);

    auto *solve_cmd = app.add_subcommand("solve", "decide satisfiability within the scope");
    common(solve_cmd);
    search(solve_cmd);
    solve_cmd->add_option("--save-instance", cfg.save_instance, "write the witness as girl-instance/1 JSON");

    auto *enumerate_cmd = app.add_subcommand("enumerate", "list non-isomorphic instances");
    common(enumerate_cmd);
    search(enumerate_cmd);
    enumerate_cmd->add_option("--max-instances", cfg.max_instances, "instances to produce")->check(CLI::PositiveNumber);

    auto *check_cmd = app.add_subcommand("check", "evaluate every constraint on an instance");
    common(check_cmd);
    check_cmd->add_option("--instance", cfg.instance, "girl-instance/1 JSON file")->required();

    std::vector<const char *> argv{"girl"};
    for (const auto &a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }
    cfg.command = app.get_subcommands().front()->get_name();
    return Command(std::move(cfg), out, err).run();
}

} // namespace girl::cli
