// gradal CLI: run session scripts, emit deterministic reports.

#include <CLI11.hpp>
#include <gradal/session.hpp>

#include <fstream>
#include <iostream>

namespace {

gradal::RealValue parse_eps(const std::string& s) {
    using namespace gradal;
    auto caret = s.find('^');
    if (caret != std::string::npos) {
        Rat base(s.substr(0, caret));
        long e = std::stol(s.substr(caret + 1));
        return RealValue::from_rat(base).pow(Rat(e));
    }
    return RealValue::from_rat(Rat(s));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gradal: graded reductions, Tate algebras and sympathique presentations"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "run a session script");
    std::string script, eps_str = "2^-20", json_out;
    long deg_bound = 6;
    run->add_option("script", script, "session file (.grd)")->required();
    run->add_option("--eps", eps_str, "precision floor (rational or base^exp)");
    run->add_option("--json", json_out, "write the JSON report here");
    run->add_option("--deg-bound", deg_bound, "degree bound for geometric verdicts");

    CLI11_PARSE(app, argc, argv);

    std::ifstream in(script);
    if (!in) {
        std::cerr << "gradal: cannot open " << script << "\n";
        return 2;
    }
    std::string src((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    try {
        auto session = gradal::parse_session(src);
        gradal::RunSettings settings;
        settings.eps = parse_eps(eps_str);
        settings.deg_bound = deg_bound;
        gradal::SessionRunner runner(session, settings, src);
        auto rep = runner.run();
        if (!json_out.empty()) {
            std::ofstream out(json_out);
            out << rep.dump(2) << "\n";
        }
        for (auto& r : rep["records"]) {
            std::string head = r.contains("command") ? r["command"].get<std::string>()
                                                     : ("declare " + r["declaration"].get<std::string>());
            std::cout << head << "  [" << r["status"].get<std::string>() << "]\n";
            if (r.contains("conditions"))
                for (auto& c : r["conditions"])
                    std::cout << "  condition " << c["condition"].get<int>() << ": "
                              << c["verdict"].get<std::string>()
                              << (c["witness"].get<std::string>().empty()
                                      ? ""
                                      : "  (" + c["witness"].get<std::string>() + ")")
                              << "\n";
            if (r.contains("message")) std::cout << "  " << r["message"].get<std::string>() << "\n";
        }
        return runner.exit_code();
    } catch (const gradal::ParseError& e) {
        std::cerr << "gradal: parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "gradal: " << e.what() << "\n";
        return 2;
    }
}
