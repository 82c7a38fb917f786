#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <gtest/gtest.h>

#include <hvms/cli.hpp>

using namespace hvms;
using namespace hvms::cli;
using hvms::json_io::Json;

namespace
{

namespace fs = std::filesystem;

const std::string samples = HVMS_SAMPLES_DIR;

struct Run
{
    int code;
    std::string out;
    std::string err;
    Json report() const { return json_io::parse_text(out); }
};

Run run_job(const JobConfig& cfg)
{
    std::ostringstream out, err;
    const int code = run(cfg, out, err);
    return {code, out.str(), err.str()};
}

JobConfig job(Command c, const std::string& input = {})
{
    JobConfig cfg;
    cfg.command = c;
    cfg.input   = input;
    return cfg;
}

fs::path scratch(const std::string& name)
{
    const fs::path dir = fs::path(::testing::TempDir()) / "hvms_cli";
    fs::create_directories(dir);
    return dir / name;
}

std::string write_json(const std::string& name, const Json& j)
{
    const auto p = scratch(name);
    json_io::write_file(p.string(), j);
    return p.string();
}

/// Writes the Gram pair of the single-term example and returns its path.
std::string single_term_pair_file()
{
    const ExampleSpec s{{{1.0, 1.0, 1.0 / std::numbers::sqrt2}}};
    return write_json("single_term_pair.json", json_io::to_json(gram_of(build_example(s, 2))));
}

int shell(const std::string& args, const std::string& out_file)
{
    const std::string cmd = std::string(HVMS_CLI_PATH) + " " + args + " > " + out_file + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST(Cli, CommandNames)
{
    for (const auto& [name, c] : command_names)
    {
        EXPECT_EQ(parse_command(name), c);
        EXPECT_EQ(command_name(c), name);
    }
    EXPECT_THROW(parse_command("frobnicate"), std::invalid_argument);
}

TEST(Cli, ParseRaysAndPoints)
{
    const auto r = parse_rays("1:1, 1:2,2:1");
    ASSERT_EQ(r.size(), 3u);
    EXPECT_EQ(r[1], (std::pair<double, double>{1.0, 2.0}));
    EXPECT_THROW(parse_rays("1-2"), std::invalid_argument);
    EXPECT_THROW(parse_rays(""), std::invalid_argument);

    const auto z = parse_point("0.5,1,-2,3");
    EXPECT_EQ(z.z1, Complex(0.5, 1.0));
    EXPECT_EQ(z.z2, Complex(-2.0, 3.0));
    EXPECT_THROW(parse_point("1,2,3"), std::invalid_argument);
}

TEST(Cli, VerifyExamplePair)
{
    const auto r = run_job(job(Command::verify, single_term_pair_file()));
    EXPECT_EQ(r.code, exit_pass) << r.err;
    const auto j = r.report();
    EXPECT_EQ(j["command"], "verify");
    EXPECT_TRUE(j["verdict"]["passed"].get<bool>());
    ASSERT_EQ(j["verdict"]["conditions"].size(), 4u);
    for (const auto& c : j["verdict"]["conditions"])
        EXPECT_TRUE(c.contains("margin"));
}

TEST(Cli, HamburgerKernelViolation)
{
    const auto r = run_job(job(Command::hamburger1d, samples + "/kernel_violation.json"));
    EXPECT_EQ(r.code, exit_failure);
    const auto j = r.report();
    EXPECT_EQ(j["verdict"]["conditions"][1]["witness"]["kind"], "kernel_vector");

    EXPECT_EQ(run_job(job(Command::hamburger1d, samples + "/point_mass.json")).code, exit_pass);
}

TEST(Cli, EvalOnZeroRealization)
{
    const auto in = write_json("zero.json", json_io::to_json(Realization::zero(1)));
    auto cfg      = job(Command::eval, in);
    const auto r  = run_job(cfg);
    EXPECT_EQ(r.code, exit_pass);
    const auto h = r.report()["values"][0]["h"];
    EXPECT_EQ(h[0].get<double>(), 0.0);
    EXPECT_EQ(h[1].get<double>(), 0.0);
}

TEST(Cli, EvalAtGivenPoints)
{
    auto cfg = job(Command::eval);
    const auto spec = json_io::example_spec_from_json(json_io::read_file(samples + "/single_term.json"));
    cfg.input  = write_json("single_term_realization.json", json_io::to_json(build_example(spec, 2)));
    cfg.points = {parse_point("0,1,0,1")};
    const auto r = run_job(cfg);
    ASSERT_EQ(r.code, exit_pass);
    const auto h = r.report()["values"][0]["h"];
    EXPECT_NEAR(h[0].get<double>(), 1.0, 1e-14);
    EXPECT_NEAR(h[1].get<double>(), 1.0, 1e-14);
}

TEST(Cli, ExampleIsDeterministic)
{
    auto cfg = job(Command::example);
    cfg.seed = 7;
    const auto a = run_job(cfg), b = run_job(cfg);
    EXPECT_EQ(a.code, exit_pass);
    EXPECT_EQ(a.out, b.out);
    cfg.seed = 8;
    EXPECT_NE(run_job(cfg).out, a.out);
}

TEST(Cli, RealizeThenGramRoundTrip)
{
    const auto pair_file = single_term_pair_file();
    auto cfg   = job(Command::realize, pair_file);
    cfg.output = scratch("realized.json").string();
    ASSERT_EQ(run_job(cfg).code, exit_pass);

    const auto g = run_job(job(Command::gram, cfg.output));
    ASSERT_EQ(g.code, exit_pass);
    const auto p = json_io::hankel_pair_from_json(g.report());
    const auto q = json_io::hankel_pair_from_json(json_io::read_file(pair_file));
    EXPECT_LT((p.a1 - q.a1).cwiseAbs().maxCoeff(), 1e-8);
    EXPECT_LT((p.a2 - q.a2).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Cli, RealizeRejectsCorruptedPair)
{
    Matrix a1 = Matrix::Zero(2, 2);
    a1(0, 0)  = 1.0;
    a1(1, 1)  = 0.5;
    const auto in = write_json("corner.json", json_io::to_json(HankelPair(1, a1, Matrix::Zero(2, 2))));
    const auto r  = run_job(job(Command::realize, in));
    EXPECT_EQ(r.code, exit_failure);
    EXPECT_EQ(r.report()["failed_condition"], condition::corners);
}

TEST(Cli, CertifyClosedForm)
{
    auto cfg = job(Command::certify, samples + "/three_terms.json");
    cfg.csv  = scratch("decay.csv").string();
    const auto r = run_job(cfg);
    EXPECT_EQ(r.code, exit_pass) << r.err;
    EXPECT_TRUE(r.report()["report"]["certified"].get<bool>());
    std::ifstream csv(cfg.csv);
    std::string header;
    std::getline(csv, header);
    EXPECT_EQ(header, "b1,b2,s,scaled_error");
}

TEST(Cli, CertifyWithPerturbedResiduesFails)
{
    const auto spec = json_io::example_spec_from_json(json_io::read_file(samples + "/single_term.json"));
    auto rho = closed_form_residues(spec);
    rho({1, 1}) += 0.1;
    auto cfg     = job(Command::certify, samples + "/single_term.json");
    cfg.residues = write_json("perturbed.json", json_io::to_json(rho));
    EXPECT_EQ(run_job(cfg).code, exit_failure);
}

TEST(Cli, ExtractSingleTerm)
{
    const auto r = run_job(job(Command::extract, samples + "/single_term.json"));
    ASSERT_EQ(r.code, exit_pass) << r.err;
    const auto res = r.report()["report"]["residues"];
    EXPECT_NEAR(res["[1,1]"].get<double>(), -2.0, 1e-6);
    EXPECT_NEAR(res["[2,1]"].get<double>(), -1.0, 1e-6);
}

TEST(Cli, TypeOne)
{
    const auto r = run_job(job(Command::type1, samples + "/three_terms.json"));
    ASSERT_EQ(r.code, exit_pass);
    EXPECT_NEAR(r.report()["report"]["limit"][1].get<double>(), 2.0, 2e-4);
}

TEST(Cli, PipelineOnSingleTermPair)
{
    const auto r = run_job(job(Command::pipeline, single_term_pair_file()));
    EXPECT_EQ(r.code, exit_pass) << r.err;
    const auto j = r.report();
    EXPECT_TRUE(j["verdict"]["passed"].get<bool>());
    EXPECT_TRUE(j.contains("realization"));
    EXPECT_TRUE(j["certification"]["certified"].get<bool>());
}

TEST(Cli, InputErrors)
{
    EXPECT_EQ(run_job(job(Command::verify)).code, exit_input_error);
    EXPECT_EQ(run_job(job(Command::verify, samples + "/missing.json")).code, exit_input_error);
    EXPECT_EQ(run_job(job(Command::verify, samples + "/single_term.json")).code, exit_input_error);
    auto cfg    = job(Command::verify, single_term_pair_file());
    cfg.tol_psd = -1.0;
    EXPECT_EQ(run_job(cfg).code, exit_input_error);
}

TEST(CliBinary, ExitCodes)
{
    const auto out = scratch("binary_out.json").string();
    EXPECT_EQ(shell("verify -i " + single_term_pair_file(), out), 0);
    EXPECT_EQ(json_io::read_file(out)["verdict"]["conditions"].size(), 4u);
    EXPECT_EQ(shell("hamburger1d -i " + samples + "/kernel_violation.json", out), 1);
    EXPECT_EQ(shell("frobnicate", out), 2);
    EXPECT_EQ(shell("verify", out), 2);
    EXPECT_EQ(shell("verify -i " + samples + "/single_term.json --bogus", out), 2);
}

TEST(CliBinary, EvalZeroRealization)
{
    const auto in  = write_json("zero_bin.json", json_io::to_json(Realization::zero(2)));
    const auto out = scratch("eval_out.json").string();
    ASSERT_EQ(shell("eval -i " + in + " --point 0,1,0,1", out), 0);
    const auto j = json_io::read_file(out);
    EXPECT_EQ(j["values"][0]["h"], Json::array({0.0, 0.0}));
}

TEST(CliBinary, Deterministic)
{
    const auto a = scratch("det_a.json").string(), b = scratch("det_b.json").string();
    ASSERT_EQ(shell("certify -i " + samples + "/single_term.json", a), 0);
    ASSERT_EQ(shell("certify -i " + samples + "/single_term.json", b), 0);
    EXPECT_EQ(slurp(a), slurp(b));
}
