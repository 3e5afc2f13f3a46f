#include "funcon/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <sstream>

#include "funcon/engine.hpp"
#include "funcon/format.hpp"
#include "funcon/imp.hpp"
#include "funcon/parse.hpp"
#include "funcon/simple.hpp"

namespace funcon::cli {

namespace {

std::optional<std::string> read_file(const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return "cannot open file: " + path;
    std::ostringstream buf;
    buf << in.rdbuf();
    out = buf.str();
    return std::nullopt;
}

std::optional<Mode> mode_from_extension(const std::string& path) {
    auto dot = path.rfind('.');
    if (dot == std::string::npos) return std::nullopt;
    std::string ext = path.substr(dot);
    if (ext == ".fct") return Mode::Funcon;
    if (ext == ".imp") return Mode::Imp;
    if (ext == ".spl") return Mode::Simple;
    return std::nullopt;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    std::string source;
    if (auto problem = read_file(config.input, source)) {
        err << "error: " << *problem << "\n";
        return 4;
    }
    std::optional<Mode> mode = config.mode;
    if (!mode) mode = mode_from_extension(config.input);
    if (!mode) {
        err << "error: cannot infer the input language from '" << config.input
            << "' (use --mode)\n";
        return 64;
    }

    Registry registry = make_standard_registry();
    TermPtr term;
    try {
        switch (*mode) {
            case Mode::Funcon:
                term = parse_term(source, registry);
                break;
            case Mode::Imp:
                term = imp::translate_imp(imp::parse_imp(source));
                break;
            case Mode::Simple:
                term = simple::translate_simple(simple::parse_simple(source));
                break;
        }
    } catch (const ParseError& e) {
        err << "error: " << config.input << ":" << e.line << ":" << e.column << ": " << e.what()
            << "\n";
        return 4;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    }

    if (config.emit_funcons) {
        out << print_term(term) << "\n";
        return 0;
    }

    EntityState state;
    if (config.stdin_file) {
        std::string input_text;
        if (auto problem = read_file(*config.stdin_file, input_text)) {
            err << "error: " << *problem << "\n";
            return 4;
        }
        std::istringstream lines(input_text);
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(lines, line)) {
            ++lineno;
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            try {
                TermPtr value_term = parse_term(line, registry);
                ValueSeq values;
                if (!term_values(value_term, values) || values.size() != 1) {
                    err << "error: " << *config.stdin_file << ":" << lineno
                        << ": input lines must be single value literals\n";
                    return 4;
                }
                state.standard_in.push_back(values[0]);
            } catch (const ParseError& e) {
                err << "error: " << *config.stdin_file << ":" << lineno << ": " << e.what()
                    << "\n";
                return 4;
            }
        }
    }

    EngineOptions options;
    options.seed = config.seed;
    options.max_steps = config.max_steps;
    if (config.trace) options.trace = &out;
    Engine engine(registry, options);

    RunResult result = engine.run(term, state);
    if (!config.trace) {
        for (const auto& v : result.output) out << print_value(v) << "\n";
    }
    switch (result.kind) {
        case RunResult::Kind::Normal:
            out << "result: " << print_values(result.result) << "\n";
            return 0;
        case RunResult::Kind::Abrupted:
            out << "abrupted: " << print_value(result.reason) << "\n";
            return 1;
        case RunResult::Kind::Stuck:
            out << "stuck: " << result.diagnostic << "\n";
            return 2;
        case RunResult::Kind::Diverged:
            out << "diverged: step limit " << config.max_steps << " reached\n";
            return 3;
    }
    return 2;
}

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"funcon term interpreter"};
    RunConfig config;
    std::string mode_name;

    app.add_option("file", config.input, "program to run (.fct, .imp, or .spl)")->required();
    app.add_option("--mode", mode_name, "input language: funcon, imp, or simple");
    app.add_flag("--emit-funcons", config.emit_funcons,
                 "print the translated funcon term and exit");
    app.add_flag("--trace", config.trace, "print one line per execution step");
    app.add_option("--max-steps", config.max_steps, "step limit before reporting divergence")
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", config.seed,
                   "scheduler seed; 0 is the deterministic leftmost scheduler");
    app.add_option("--stdin", config.stdin_file,
                   "file of value literals, one per line, fed to the standard-in entity");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n" << app.help();
        return 64;
    }

    if (!mode_name.empty()) {
        if (mode_name == "funcon")
            config.mode = Mode::Funcon;
        else if (mode_name == "imp")
            config.mode = Mode::Imp;
        else if (mode_name == "simple")
            config.mode = Mode::Simple;
        else {
            err << "usage error: unknown mode '" << mode_name << "'\n";
            return 64;
        }
    }
    return run(config, out, err);
}

}  // namespace funcon::cli
