// Job configuration and dispatch behind the `hvms` command-line tool. Each
// command reads one JSON document, calls a single library operation and
// writes one JSON report.
//
// Exit status: 0 pass, 1 verification or certification failure, 2 input error.

#ifndef HVMS_CLI_HPP
#define HVMS_CLI_HPP

#include <array>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <hvms/asymptotics.hpp>
#include <hvms/example_family.hpp>
#include <hvms/hankel_pair.hpp>
#include <hvms/json_io.hpp>
#include <hvms/realization.hpp>

namespace hvms::cli
{

enum class Command
{
    verify,
    realize,
    gram,
    eval,
    residues,
    extract,
    certify,
    compress,
    example,
    hamburger1d,
    type1,
    pipeline
};

inline constexpr std::array<std::pair<const char*, Command>, 12> command_names{{
    {"verify", Command::verify},
    {"realize", Command::realize},
    {"gram", Command::gram},
    {"eval", Command::eval},
    {"residues", Command::residues},
    {"extract", Command::extract},
    {"certify", Command::certify},
    {"compress", Command::compress},
    {"example", Command::example},
    {"hamburger1d", Command::hamburger1d},
    {"type1", Command::type1},
    {"pipeline", Command::pipeline},
}};

inline Command parse_command(const std::string& name)
{
    for (const auto& [n, c] : command_names)
        if (name == n)
            return c;
    throw std::invalid_argument("unknown command '" + name + "'");
}

inline std::string command_name(Command c)
{
    for (const auto& [n, cc] : command_names)
        if (cc == c)
            return n;
    return "?";
}

enum ExitCode : int
{
    exit_pass         = 0,
    exit_failure      = 1,
    exit_input_error  = 2,
};

struct JobConfig
{
    Command command = Command::verify;
    std::string input;
    std::string output;   ///< empty: standard output
    std::string csv;      ///< decay table destination for extract/certify/pipeline
    std::string residues; ///< residue table for certify
    std::optional<double> tol_psd;
    std::optional<double> tol_rank;
    std::optional<double> tol_decay;
    std::vector<std::pair<double, double>> rays;
    GridSpec grid;
    bool smax_given = false; ///< otherwise smax follows the input kind
    std::optional<int> order;
    std::optional<int> N;
    std::vector<Point> points;
    std::uint64_t seed = 0;

    void validate() const
    {
        for (auto t : {tol_psd, tol_rank, tol_decay})
            if (t && !(*t > 0.0))
                throw std::invalid_argument("tolerances must be strictly positive");
        if (order && *order < 1)
            throw std::invalid_argument("--order must be positive");
        if (N && *N < 1)
            throw std::invalid_argument("--N must be positive");
        GridSpec probe = grid;
        if (!smax_given)
            probe.smax = std::max(probe.smin, GridSpec::for_realization().smax);
        probe.values();
        for (const auto& [b1, b2] : rays)
            if (!(b1 > 0.0 && b2 > 0.0))
                throw std::invalid_argument("ray directions must be strictly positive");
        const bool needs_input = command != Command::example;
        if (needs_input && input.empty())
            throw std::invalid_argument("command '" + command_name(command) + "' needs --input");
    }
};

/// "b1:b2,b1:b2,..."
inline std::vector<std::pair<double, double>> parse_rays(const std::string& text)
{
    std::vector<std::pair<double, double>> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        const auto colon = item.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("ray '" + item + "' is not of the form b1:b2");
        std::size_t p1 = 0, p2 = 0;
        double b1 = 0, b2 = 0;
        try
        {
            b1 = std::stod(item.substr(0, colon), &p1);
            b2 = std::stod(item.substr(colon + 1), &p2);
        }
        catch (const std::exception&)
        {
            throw std::invalid_argument("ray '" + item + "' is not of the form b1:b2");
        }
        if (p1 != colon || p2 != item.size() - colon - 1)
            throw std::invalid_argument("ray '" + item + "' is not of the form b1:b2");
        if (!(b1 > 0.0 && b2 > 0.0))
            throw std::invalid_argument("ray '" + item + "' must have positive entries");
        out.emplace_back(b1, b2);
    }
    if (out.empty())
        throw std::invalid_argument("empty ray list");
    return out;
}

/// "re1,im1,re2,im2"
inline Point parse_point(const std::string& text)
{
    std::vector<double> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        std::size_t pos = 0;
        try
        {
            v.push_back(std::stod(item, &pos));
        }
        catch (const std::exception&)
        {
            pos = std::string::npos;
        }
        if (pos != item.size())
            throw std::invalid_argument("point '" + text + "' is not re1,im1,re2,im2");
    }
    if (v.size() != 4)
        throw std::invalid_argument("point '" + text + "' is not re1,im1,re2,im2");
    return {{v[0], v[1]}, {v[2], v[3]}};
}

namespace detail
{

using json_io::Json;

/// A black-box function read from file: a realization or an example spec.
using Function = std::variant<Realization, ExampleSpec>;

inline Function load_function(const Json& j)
{
    if (j.is_object() && j.contains("terms"))
        return json_io::example_spec_from_json(j);
    return json_io::realization_from_json(j);
}

inline int natural_size(const Function& f)
{
    return std::holds_alternative<Realization>(f) ? std::get<Realization>(f).N : 2;
}

template <typename Visitor>
auto with_evaluator(const Function& f, Visitor&& vis)
{
    if (const auto* r = std::get_if<Realization>(&f))
        return vis(ResolventEvaluator<ExtReal>(*r));
    const ExampleSpec spec = std::get<ExampleSpec>(f);
    return vis([spec](const ExtPoint& z) { return closed_form_h<ExtReal>(spec, z); });
}

inline HankelPair apply_overrides(HankelPair p, const JobConfig& cfg)
{
    if (cfg.tol_psd)
        p.tol.psd = *cfg.tol_psd;
    if (cfg.tol_rank)
        p.tol.rank = *cfg.tol_rank;
    if (cfg.tol_decay)
        p.tol.decay = *cfg.tol_decay;
    return p;
}

inline Tolerances tolerances(const JobConfig& cfg)
{
    Tolerances t;
    if (cfg.tol_psd)
        t.psd = *cfg.tol_psd;
    if (cfg.tol_rank)
        t.rank = *cfg.tol_rank;
    if (cfg.tol_decay)
        t.decay = *cfg.tol_decay;
    return t;
}

inline GridSpec grid_for(const JobConfig& cfg, bool realization)
{
    GridSpec g = cfg.grid;
    if (!cfg.smax_given)
        g.smax = realization ? GridSpec::for_realization().smax : GridSpec{}.smax;
    return g;
}

inline bool is_realization(const Function& f) { return std::holds_alternative<Realization>(f); }

inline std::vector<ApproachRegion> regions_for(const JobConfig& cfg, int default_count,
                                               bool realization)
{
    const GridSpec g = grid_for(cfg, realization);
    if (!cfg.rays.empty())
        return make_regions(cfg.rays, g);
    return default_regions(default_count, g);
}

inline Json envelope(Command c)
{
    return Json{{"schema_version", json_io::schema_version}, {"command", command_name(c)}};
}

inline void write_csv(const std::string& path, const ExpansionReport& rep)
{
    if (path.empty())
        return;
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::invalid_argument("cannot open CSV output '" + path + "'");
    write_decay_csv(out, rep);
}

/// Residues used by certify when no table is supplied: the realization-side
/// residues, or the negated closed-form moments of an example spec.
inline ExtCoefficientTable reference_residues(const Function& f)
{
    if (const auto* r = std::get_if<Realization>(&f))
        return residues(*r).rho.cast<ExtReal>();
    return closed_form_residues<ExtReal>(std::get<ExampleSpec>(f));
}

struct Outcome
{
    int code = exit_pass;
    Json report;
};

inline Outcome dispatch(const JobConfig& cfg, std::ostream& err)
{
    const Command c = cfg.command;
    Json in;
    if (!cfg.input.empty())
        in = json_io::read_file(cfg.input);

    switch (c)
    {
    case Command::verify:
    {
        const auto p = apply_overrides(json_io::hankel_pair_from_json(in), cfg);
        const auto v = verify_hankel_pair(p);
        Json rep     = envelope(c);
        rep["N"]       = p.N;
        rep["verdict"] = json_io::to_json(v);
        return {v.passed ? exit_pass : exit_failure, rep};
    }
    case Command::realize:
    {
        const auto p = apply_overrides(json_io::hankel_pair_from_json(in), cfg);
        return {exit_pass, json_io::to_json(realize(p))};
    }
    case Command::gram:
        return {exit_pass, json_io::to_json(gram_of(json_io::realization_from_json(in), tolerances(cfg)))};
    case Command::compress:
        return {exit_pass, json_io::to_json(compress(json_io::realization_from_json(in), tolerances(cfg)))};
    case Command::eval:
    {
        const auto r = json_io::realization_from_json(in);
        auto points  = cfg.points;
        if (points.empty())
            points.push_back({{0.0, 1.0}, {0.0, 1.0}});
        const ResolventEvaluator<double> h(r);
        Json values = Json::array();
        for (const auto& z : points)
        {
            const auto e = h.detailed(z);
            if (e.ill_conditioned)
                err << "warning: A - z_Y has condition estimate " << e.condition << "\n";
            values.push_back(Json{{"z", Json::array({json_io::to_json(z.z1), json_io::to_json(z.z2)})},
                                  {"h", json_io::to_json(e.value)},
                                  {"condition", e.condition},
                                  {"ill_conditioned", e.ill_conditioned}});
        }
        Json rep      = envelope(c);
        rep["values"] = std::move(values);
        return {exit_pass, rep};
    }
    case Command::residues:
    {
        const auto r = json_io::realization_from_json(in);
        Json rep     = envelope(c);
        rep["N"]     = r.N;
        rep["report"] = json_io::to_json(residues(r));
        return {exit_pass, rep};
    }
    case Command::extract:
    {
        const auto f  = load_function(in);
        const int N   = cfg.N.value_or(natural_size(f));
        const auto rg = regions_for(cfg, 2 * N, is_realization(f));
        const auto ex = with_evaluator(f, [&](const auto& h) {
            return extract_residues(h, N, rg, tolerances(cfg).decay);
        });
        write_csv(cfg.csv, ex);
        Json rep      = envelope(c);
        rep["N"]      = N;
        rep["report"] = json_io::to_json(ex);
        return {ex.certified ? exit_pass : exit_failure, rep};
    }
    case Command::certify:
    {
        const auto f = load_function(in);
        const ExtCoefficientTable rho =
            cfg.residues.empty()
                ? reference_residues(f)
                : json_io::coefficient_table_from_json(json_io::read_file(cfg.residues), "residues")
                      .cast<ExtReal>();
        const int order = cfg.order.value_or(rho.max_order());
        const auto rg   = regions_for(cfg, 3, is_realization(f));
        const auto cert = with_evaluator(f, [&](const auto& h) {
            return certify_expansion(h, rho, order, rg, tolerances(cfg).decay);
        });
        write_csv(cfg.csv, cert);
        Json rep      = envelope(c);
        rep["report"] = json_io::to_json(cert);
        return {cert.certified ? exit_pass : exit_failure, rep};
    }
    case Command::example:
    {
        ExampleSpec spec;
        if (!cfg.input.empty())
            spec = json_io::example_spec_from_json(in);
        else
            spec = ExampleGenerator(cfg.seed).spec(3);
        return {exit_pass, json_io::to_json(build_example(spec, cfg.N.value_or(2)))};
    }
    case Command::hamburger1d:
    {
        const auto m = json_io::moments1d_from_json(in);
        const auto v = hamburger_1d(m, tolerances(cfg));
        Json rep       = envelope(c);
        rep["N"]       = m.size();
        rep["verdict"] = json_io::to_json(v);
        return {v.passed ? exit_pass : exit_failure, rep};
    }
    case Command::type1:
    {
        const auto f = load_function(in);
        const GridSpec g = grid_for(cfg, is_realization(f));
        const auto t     = with_evaluator(f, [&](const auto& h) { return type1_limit(h, g); });
        Json rep      = envelope(c);
        rep["report"] = json_io::to_json(t);
        return {t.type_one ? exit_pass : exit_failure, rep};
    }
    case Command::pipeline:
    {
        const auto p = apply_overrides(json_io::hankel_pair_from_json(in), cfg);
        Json rep     = envelope(c);
        const auto v = verify_hankel_pair(p);
        rep["verdict"] = json_io::to_json(v);
        if (!v.passed)
            return {exit_failure, rep};
        const auto r   = realize(p);
        const auto res = residues(r);
        const int order = cfg.order.value_or(2 * r.N - 1);
        const auto cert = certify_expansion(ResolventEvaluator<ExtReal>(r), res.rho, order,
                                            regions_for(cfg, 3, true), p.tol.decay);
        write_csv(cfg.csv, cert);
        rep["realization"]   = json_io::to_json(r);
        rep["invariants"]    = json_io::to_json(r.invariants());
        rep["residues"]      = json_io::to_json(res);
        rep["certification"] = json_io::to_json(cert);
        return {cert.certified ? exit_pass : exit_failure, rep};
    }
    }
    throw std::invalid_argument("unhandled command");
}

} // namespace detail

/// Runs a job; the report goes to cfg.output or `out`, diagnostics to `err`.
inline int run(const JobConfig& cfg, std::ostream& out, std::ostream& err)
{
    detail::Outcome outcome;
    try
    {
        cfg.validate();
        outcome = detail::dispatch(cfg, err);
    }
    catch (const verification_error& e)
    {
        err << "verification failed: " << e.what() << "\n";
        outcome.code   = exit_failure;
        outcome.report = detail::envelope(cfg.command);
        outcome.report["error"]            = e.what();
        outcome.report["failed_condition"] = e.failed_condition();
    }
    catch (const numerical_error& e)
    {
        err << "numerical failure: " << e.what() << "\n";
        outcome.code   = exit_failure;
        outcome.report = detail::envelope(cfg.command);
        outcome.report["error"] = e.what();
    }
    catch (const nlohmann::json::exception& e)
    {
        err << "input error: " << e.what() << "\n";
        return exit_input_error;
    }
    catch (const std::invalid_argument& e)
    {
        err << "input error: " << e.what() << "\n";
        return exit_input_error;
    }
    catch (const std::out_of_range& e)
    {
        err << "input error: " << e.what() << "\n";
        return exit_input_error;
    }

    try
    {
        if (cfg.output.empty())
            out << json_io::dump(outcome.report);
        else
            json_io::write_file(cfg.output, outcome.report);
    }
    catch (const std::invalid_argument& e)
    {
        err << "output error: " << e.what() << "\n";
        return exit_input_error;
    }
    return outcome.code;
}

inline int run(const JobConfig& cfg) { return run(cfg, std::cout, std::cerr); }

} // namespace hvms::cli

#endif // HVMS_CLI_HPP
