#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "corpus.hpp"
#include "doctest.h"
#include "smq/cli.hpp"
#include "smq/io.hpp"
#include "smq/parser.hpp"

using namespace smq;

namespace {

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    Run r;
    r.code = run_cli(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

// Runs the installed binary so exit codes go through main().
Run run_process(const std::string& args) {
    Run r;
    const std::string cmd = std::string(SMQ_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

const std::string kData = SMQ_TEST_DATA;

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("star of the canonical pair") {
        const Run r = run({"star", "--m", "2", "--n", "0", "--theta", "1/2", "--alpha", "1", "x1", "w1"});
        REQUIRE(r.code == exit_ok);
        const Json j = Json::parse(r.out);
        CHECK(j["command"] == "star");
        CHECK(j["params"]["theta"] == "1/2");
        const VariableNames names = VariableNames::standard(2, 0);
        CHECK(parse_polynomial(j["result"]["expression"].get<std::string>(), names) == parse_polynomial("x1*w1 + 1/4i", names));
        CHECK(polysuper_from_json(j["result"]) == parse_polynomial("x1*w1 + 1/4i", names));
    }

    TEST_CASE("subcommands") {
        CHECK(run({"poisson", "--m", "2", "--n", "1", "x1", "w1", "--format", "text"}).out == "1\n");
        CHECK(run({"antipode", "--m", "2", "--n", "1", "x1*th1 + w1", "--format", "text"}).out == "-w1 + x1*th1\n");
        const Run cop = run({"coproduct", "--hopf", "heisenberg", "--m", "2", "--n", "1", "a"});
        REQUIRE(cop.code == exit_ok);
        CHECK(Json::parse(cop.out)["result"]["legs"] == 2);
        const Run q = run({"quantize", "--m", "2", "--n", "0", "--levels", "4", "gauss(4, 4)"});
        REQUIRE(q.code == exit_ok);
        CHECK(Json::parse(q.out)["result"]["dim"] == 4);
        CHECK(run({"udf", "--m", "2", "--n", "1", "--axiom", "comodule-deformed", "x1*th1", "w1"}).code == exit_ok);
        CHECK(run({"osp-check", "--m", "2", "--n", "1", "--alpha", "1", kData + "/identity_osp.json"}).code == exit_ok);
        CHECK(run({"verify", "--suite", "hopf", "--m", "2", "--n", "2"}).code == exit_ok);
        CHECK(run({"oracle-xcheck", "--m", "2", "--n", "1", "--points", "1", "gauss(1,1)*x1", "gauss(1,1)*th1"}).code == exit_ok);
    }

    TEST_CASE("exit codes") {
        CHECK(run({"star", "--m", "2", "--bogus", "x1", "w1"}).code == exit_usage);
        CHECK(run({"nonsense"}).code == exit_usage);
        CHECK(run({"star", "--m", "2", "--n", "1", "x3", "w1"}).code == exit_usage);
        CHECK(run({"star", "--m", "2", "--theta", "0", "x1", "w1"}).code == exit_usage);
        CHECK(run({"star", "--m", "2", "--theta", "abc", "x1", "w1"}).code == exit_usage);
        const Run e = run({"star", "--m", "2", "--n", "1", "x1 +\n  * w1", "w1"});
        CHECK(e.code == exit_usage);
        CHECK(e.err.find("line 2, column 3") != std::string::npos);
        CHECK(run({"osp-check", "--m", "2", "--n", "1", kData + "/does_not_exist.json"}).code == exit_usage);

        CHECK(run_process("star --m 2 --n 0 --theta 1/2 --alpha 1 x1 w1").code == 0);
        CHECK(run_process("star --m 2 --frobnicate x1 w1").code == 2);
        CHECK(run_process("star --m 2 --n 1 'th1 +' w1").code == 2);
    }

    TEST_CASE("non-member fails osp-check with exit 1") {
        Json A;
        A["entries"] = {{"2", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1"}};
        const std::string path = "cli_nonmember.json";
        {
            std::ofstream f(path);
            f << A.dump();
        }
        const Run r = run({"osp-check", "--m", "2", "--n", "1", path});
        CHECK(r.code == exit_verification_failed);
        std::remove(path.c_str());
    }

    TEST_CASE("identical flags and seed give byte-identical output") {
        const std::vector<std::vector<std::string>> commands{
            {"verify", "--suite", "star", "--m", "2", "--n", "1", "--seed", "7", "--samples", "3"},
            {"verify", "--suite", "symmetry", "--m", "2", "--n", "1", "--seed", "7", "--samples", "2"},
            {"oracle-xcheck", "--m", "2", "--n", "1", "--seed", "5", "--points", "2", "gauss(1,1)*x1", "gauss(1,1)*th1"},
            {"star", "--m", "2", "--n", "2", "--backend", "float", "x1*th1", "w1*th1 + 2"},
            {"coproduct", "--hopf", "heisenberg", "--m", "2", "--n", "2", "a*th1 + x1^2"},
        };
        for (const auto& c : commands) {
            const Run a = run(c), b = run(c);
            INFO(c[0]);
            CHECK(a.code == exit_ok);
            CHECK(a.out == b.out);
        }
        // Thread count does not change the output.
        std::vector<std::string> q{"quantize", "--m", "2", "--n", "1", "--levels", "4", "gauss(1,1)*th1"};
        std::vector<std::string> q1 = q, q4 = q;
        q1.insert(q1.end(), {"--threads", "1"});
        q4.insert(q4.end(), {"--threads", "4"});
        CHECK(run(q1).out == run(q4).out);
    }

    TEST_CASE("printed expressions reparse to the same value") {
        const VariableNames names = VariableNames::standard(2, 3);
        REQUIRE(corpus::polynomial_sources().size() + corpus::gauss_sources().size() >= 50);
        for (const auto& src : corpus::polynomial_sources()) {
            INFO(src);
            const auto f = parse_polynomial(src, names);
            CHECK(parse_polynomial(print_expression(f, names), names) == f);
            // Through the CLI: f ⋆ 1 = f.
            const Run r = run({"star", "--m", "2", "--n", "3", "--", src, "1"});
            REQUIRE(r.code == exit_ok);
            CHECK(parse_polynomial(Json::parse(r.out)["result"]["expression"].get<std::string>(), names) == f);
        }
        for (const auto& src : corpus::gauss_sources()) {
            INFO(src);
            const auto f = parse_gausspoly(src, names);
            CHECK(parse_gausspoly(print_expression(f, names), names) == f);
        }
    }

    TEST_CASE("config file sets quadrature defaults and flags override it") {
        const std::string path = "cli_config.json";
        {
            std::ofstream f(path);
            f << R"({"quadrature": {"L": 6, "P": 64}, "seed": 3})";
        }
        const std::vector<std::string> base{"quantize", "--m", "2", "--n", "0", "--levels", "4", "gauss(1,1)", "--config", path};
        const Json a = Json::parse(run(base).out);
        CHECK(a["quadrature"] == "L=6,P=64,trapezoid");
        std::vector<std::string> over = base;
        over.insert(over.end(), {"--quad", "8,96"});
        CHECK(Json::parse(run(over).out)["quadrature"] == "L=8,P=96,trapezoid");
        std::remove(path.c_str());
    }
}
