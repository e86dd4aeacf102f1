#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cyclelab/error.hpp"
#include "cyclelab/input.hpp"
#include "cyclelab/settings.hpp"
#include "cyclelab/transfer_lab.hpp"

using namespace cyclelab;
using nlohmann::json;

namespace {

enum Exit { Ok = 0, InputError = 1, LimitError = 2, VerdictFailure = 3 };

struct JobConfig {
    std::string command;
    std::string input;
    Settings settings;
    std::string order = "grevlex";
    std::string route = "auto";
    std::uint64_t above = 3;
    std::size_t count = 50;
    bool text = false;
    std::string output;
};

void apply_config_file(const std::string& path, JobConfig& job)
{
    std::ifstream in(path);
    if (!in) raise(ErrorCode::ValidationError, "cannot read config " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        raise(ErrorCode::ParseError, "config " + path + ": " + e.what());
    }
    Settings& s = job.settings;
    s.pair_cap = j.value("pair_cap", s.pair_cap);
    s.factor_degree_cap = j.value("factor_degree_cap", s.factor_degree_cap);
    s.saturation_cap = j.value("saturation_cap", s.saturation_cap);
    s.quantifier_depth = j.value("quantifier_depth", s.quantifier_depth);
    s.brute_force_prime_bound = j.value("prime_bound", s.brute_force_prime_bound);
    s.exception_cap = j.value("exception_cap", s.exception_cap);
    s.seed = j.value("seed", s.seed);
    job.order = j.value("order", job.order);
    job.above = j.value("above", job.above);
    job.count = j.value("count", job.count);
    job.text = j.value("text", job.text);
}

void validate(const JobConfig& job)
{
    const Settings& s = job.settings;
    if (s.pair_cap == 0 || s.factor_degree_cap <= 0 || s.saturation_cap <= 0 || s.quantifier_depth <= 0 || s.exception_cap < 0 || job.count == 0)
        raise(ErrorCode::ValidationError, "resource limits must be positive");
    if (job.order != "grevlex" && job.order != "lex") raise(ErrorCode::ValidationError, "order must be grevlex or lex");
    if (job.route != "auto" && job.route != "diagonal") raise(ErrorCode::ValidationError, "route must be auto or diagonal");
}

json strings(const std::vector<Poly>& ps)
{
    json a = json::array();
    for (const auto& p : ps) a.push_back(p.to_string());
    return a;
}

json cycle_json(const Cycle& c)
{
    json terms = json::array();
    for (const auto& [p, m] : c.terms)
        terms.push_back({{"ideal", strings(p.ideal.generators())},
                         {"multiplicity", m},
                         {"dimension", p.dimension},
                         {"degree", p.degree},
                         {"certificate", certificate_name(p.certificate)}});
    json j{{"ambient", c.ambient.to_string()}, {"codimension", c.codimension}, {"cycle", c.to_string()}, {"terms", terms}};
    if (c.ambient.is_projective()) j["degree"] = cycle_degree(c);
    return j;
}

const Ambient& need_ambient(const InputFile& in)
{
    if (!in.ambient) raise(ErrorCode::ValidationError, "input declares no ring");
    return *in.ambient;
}

const Ideal& need_ideal(const InputFile& in, std::size_t k)
{
    if (in.ideals.size() <= k) raise(ErrorCode::ValidationError, "input needs at least " + std::to_string(k + 1) + " ideal(s)");
    return in.ideals[k].ideal;
}

PrimeComponent single_prime(const NamedIdeal& n)
{
    auto comps = minimal_primes(n.ideal);
    if (comps.size() != 1 || local_length(n.ideal, comps[0]) != 1)
        raise(ErrorCode::ValidationError, "ideal " + n.name + " must be prime for mult");
    return comps[0];
}

Correspondence correspondence(const InputFile& in, const CorrespondenceDecl& d)
{
    const auto& x = in.space(d.source).variety;
    const auto& y = in.space(d.target).variety;
    return make_correspondence(x, y, associated_cycle(d.ideal, Ambient::affine(d.ideal.ring())).cycle);
}

json read_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in) raise(ErrorCode::ValidationError, "cannot read " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        raise(ErrorCode::ParseError, path + ": " + e.what());
    }
}

struct Result {
    json data;
    std::string text;
    int exit = Ok;
};

Result cmd_gb(const JobConfig& job, const InputFile& in)
{
    need_ambient(in);
    MonomialOrder order = job.order == "lex" ? MonomialOrder::lex() : MonomialOrder::grevlex();
    Result r{json::array(), ""};
    for (const auto& [name, ideal] : in.ideals) {
        const auto& basis = ideal.basis(order);
        r.data.push_back({{"ideal", name}, {"order", job.order}, {"basis", strings(basis)}});
        r.text += name + ":\n";
        for (const auto& g : basis) r.text += "  " + g.to_string() + "\n";
    }
    return r;
}

Result cmd_hilbert(const JobConfig&, const InputFile& in)
{
    need_ambient(in);
    Result r{json::array(), ""};
    for (const auto& [name, ideal] : in.ideals) {
        HilbertData h = hilbert(ideal);
        r.data.push_back({{"ideal", name},
                          {"polynomial", h.polynomial_string()},
                          {"degree", h.degree},
                          {"dimension", h.krull_dim - 1},
                          {"numerator", h.numerator}});
        r.text += name + ": HP(t) = " + h.polynomial_string() + ", degree " + std::to_string(h.degree) + ", dimension " + std::to_string(h.krull_dim - 1) + "\n";
    }
    return r;
}

Result cmd_cycle(const JobConfig&, const InputFile& in)
{
    const Ambient& amb = need_ambient(in);
    Result r{json::array(), ""};
    for (const auto& [name, ideal] : in.ideals) {
        auto ac = associated_cycle(ideal, amb);
        json j = cycle_json(ac.cycle);
        j["ideal"] = name;
        j["discarded"] = json::array();
        for (const auto& p : ac.discarded) j["discarded"].push_back(strings(p.ideal.generators()));
        r.data.push_back(j);
        r.text += name + ": " + ac.cycle.to_string() + "\n";
    }
    return r;
}

Result cmd_mult(const JobConfig& job, const InputFile& in)
{
    const Ambient& amb = need_ambient(in);
    if (amb.is_projective()) raise(ErrorCode::ValidationError, "mult works in an affine ambient");
    need_ideal(in, 1);
    PrimeComponent v = single_prime(in.ideals[0]), w = single_prime(in.ideals[1]);
    auto route = job.route == "diagonal" ? MultiplicityRoute::Diagonal : MultiplicityRoute::Auto;
    Result r{json::array(), ""};
    for (const auto& p : minimal_primes(ideal_sum(v.ideal, w.ideal))) {
        auto m = intersection_multiplicity(v, w, p, route);
        r.data.push_back({{"component", strings(p.ideal.generators())}, {"multiplicity", m.euler_characteristic}, {"lengths", m.lengths}, {"route", m.route}});
        r.text += "V" + p.ideal.to_string() + ": " + std::to_string(m.euler_characteristic) + " (" + m.route + ")\n";
    }
    return r;
}

Result cmd_product(const JobConfig&, const InputFile& in)
{
    const Ambient& amb = need_ambient(in);
    Cycle c = associated_cycle(need_ideal(in, 0), amb).cycle;
    for (std::size_t k = 1; k < in.ideals.size(); ++k) c = intersection_product(c, associated_cycle(in.ideals[k].ideal, amb).cycle);
    if (in.ideals.size() < 2) need_ideal(in, 1);
    return {cycle_json(c), c.to_string() + (amb.is_projective() ? "\ndegree " + std::to_string(cycle_degree(c)) : "") + "\n"};
}

Result cmd_pushforward(const JobConfig&, const InputFile& in)
{
    const Ambient& amb = need_ambient(in);
    if (!in.target) raise(ErrorCode::ValidationError, "pushforward needs a target declaration");
    std::vector<std::size_t> keep;
    for (const auto& v : in.target->vars) {
        auto it = std::find(amb.ring->vars.begin(), amb.ring->vars.end(), v);
        if (it == amb.ring->vars.end()) raise(ErrorCode::ValidationError, "target variable " + v + " is not in the source ring");
        keep.push_back(static_cast<std::size_t>(it - amb.ring->vars.begin()));
    }
    Cycle c = pushforward(associated_cycle(need_ideal(in, 0), amb).cycle, Ambient::affine(in.target), keep);
    return {cycle_json(c), c.to_string() + "\n"};
}

Result cmd_compose(const JobConfig&, const InputFile& in)
{
    if (in.correspondences.size() < 2) raise(ErrorCode::ValidationError, "compose needs at least two correspondences");
    Correspondence c = correspondence(in, in.correspondences[0]);
    for (std::size_t k = 1; k < in.correspondences.size(); ++k) c = compose(c, correspondence(in, in.correspondences[k]));
    return {cycle_json(c.cycle), c.to_string() + "\n"};
}

Result cmd_laws(const JobConfig&, const InputFile& in)
{
    std::vector<Correspondence> sample;
    for (const auto& d : in.correspondences) sample.push_back(correspondence(in, d));
    if (sample.empty()) raise(ErrorCode::ValidationError, "laws needs correspondences");
    auto rep = category_laws_check(sample);
    Result r{{{"checks", rep.checks}, {"failures", rep.failures}, {"ok", rep.ok()}}, ""};
    r.text = std::to_string(rep.checks) + " checks, " + std::to_string(rep.failures.size()) + " failures\n";
    for (const auto& f : rep.failures) r.text += "  " + f + "\n";
    r.exit = rep.ok() ? Ok : VerdictFailure;
    return r;
}

Result cmd_los(const JobConfig& job, const InputFile& in)
{
    if (!in.sentence) raise(ErrorCode::ValidationError, "input declares no sentence");
    auto rep = los_verdict(*in.sentence, PrimeSample::first_above(job.above, job.count));
    json outcomes = json::array();
    for (const auto& [p, ok] : rep.outcomes) outcomes.push_back({{"p", p}, {"holds", ok}});
    Result r{{{"sentence", in.sentence->to_string()},
              {"depth", in.sentence->quantifier_depth()},
              {"verdict", verdict_name(rep.verdict)},
              {"exceptions", rep.exceptions},
              {"density_holds", rep.density_holds},
              {"density_fails", rep.density_fails},
              {"sample", rep.sample},
              {"outcomes", outcomes}},
             ""};
    std::ostringstream os;
    os << in.sentence->to_string() << "\n" << verdict_name(rep.verdict) << " over " << rep.sample << "; holds at " << rep.density_holds * 100
       << "%; exceptions:";
    for (auto p : rep.exceptions) os << ' ' << p;
    r.text = os.str() + "\n";
    return r;
}

Result cmd_transfer(const JobConfig&, const std::string& path)
{
    json corpus = read_json(path);
    if (corpus.is_object()) corpus = corpus.at("instances");
    Result r{{{"reports", json::array()}}, ""};
    int holds = 0, total = 0;
    std::ostringstream os;
    for (const auto& item : corpus) {
        auto rep = check_commutation(instance_from_json(item));
        ++total;
        if (rep.passed()) ++holds;
        r.data["reports"].push_back(report_to_json(rep));
        int agree = 0;
        for (const auto& o : rep.per_prime) agree += o.outcome == Outcome::Agree;
        os << (rep.passed() ? "ok   " : "FAIL ") << kind_name(rep.kind) << "  " << rep.instance << "  " << verdict_name(rep.verdict.verdict) << "  agree "
           << agree << "/" << rep.per_prime.size() << "  bad primes " << rep.bad_primes.size() << "\n";
    }
    std::string summary = "cofinite-holds: " + std::to_string(holds) + "/" + std::to_string(total);
    r.data["summary"] = summary;
    r.text = os.str() + summary + "\n";
    r.exit = holds == total ? Ok : VerdictFailure;
    return r;
}

Result cmd_survey(const JobConfig& job, const std::string& path)
{
    json j = read_json(path);
    std::vector<SurveyPair> pairs;
    try {
        for (const auto& item : j.at("pairs")) {
            RingPtr ring = make_ring(Field::rationals(), item.at("vars").get<std::vector<std::string>>());
            auto ideal = [&](const json& gens) {
                std::vector<Poly> g;
                for (const auto& s : gens) g.push_back(parse_poly(s.get<std::string>(), ring));
                return Ideal(ring, g);
            };
            pairs.push_back({item.value("name", ""), ideal(item.at("a")), ideal(item.at("b")), static_cast<int>(ring->nvars()) - 1});
        }
    } catch (const json::exception& e) {
        raise(ErrorCode::ValidationError, std::string("malformed survey corpus: ") + e.what());
    }
    PrimeSample primes = j.contains("primes") ? PrimeSample{j["primes"].get<std::vector<std::uint64_t>>(), {}} : PrimeSample::first_above(job.above, 5);
    auto rep = complexity_survey(pairs, j.value("ds", std::vector<int>{2, 3}), j.value("ns", std::vector<int>{2, 3}), primes);
    Result r{survey_to_json(rep), rep.text()};
    r.exit = rep.identical && rep.monotone ? Ok : VerdictFailure;
    return r;
}

int exit_code(const Error& e)
{
    switch (e.code()) {
    case ErrorCode::ResourceLimit:
    case ErrorCode::DegreeTooLarge:
    case ErrorCode::ExponentOverflow:
    case ErrorCode::DepthExceeded:
    case ErrorCode::PrimeTooLarge: return LimitError;
    default: return InputError;
    }
}

int run(const JobConfig& job)
{
    validate(job);
    ScopedSettings scope(job.settings);
    Result r;
    const std::string& c = job.command;
    if (c == "transfer")
        r = cmd_transfer(job, job.input);
    else if (c == "survey")
        r = cmd_survey(job, job.input);
    else {
        InputFile in = read_input(job.input);
        if (c == "gb") r = cmd_gb(job, in);
        else if (c == "hilbert") r = cmd_hilbert(job, in);
        else if (c == "cycle") r = cmd_cycle(job, in);
        else if (c == "mult") r = cmd_mult(job, in);
        else if (c == "product") r = cmd_product(job, in);
        else if (c == "pushforward") r = cmd_pushforward(job, in);
        else if (c == "compose") r = cmd_compose(job, in);
        else if (c == "laws") r = cmd_laws(job, in);
        else if (c == "los") r = cmd_los(job, in);
        else raise(ErrorCode::ValidationError, "unknown command " + c);
    }
    std::string body = job.text ? r.text : r.data.dump(2) + "\n";
    if (job.output.empty()) {
        std::cout << body;
    } else {
        std::ofstream out(job.output);
        if (!out) raise(ErrorCode::ValidationError, "cannot write " + job.output);
        out << body;
    }
    return r.exit;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"cyclelab: exact intersection theory over Q and F_p, with a mod-p transfer harness"};
    app.require_subcommand(1);
    JobConfig job;
    std::string config;
    if (const char* env = std::getenv("CYCLELAB_CONFIG")) config = env;
    app.add_option("--config", config, "JSON config file (default from CYCLELAB_CONFIG)");
    // flags are recorded separately so they override the config file
    std::optional<std::size_t> pair_cap;
    std::optional<int> degree_cap, depth, exception_cap;
    std::optional<std::uint64_t> prime_bound, seed, above;
    std::optional<std::size_t> count;
    std::optional<std::string> order, route;
    bool text = false;
    app.add_option("--pair-cap", pair_cap, "Buchberger pairs per basis");
    app.add_option("--degree-cap", degree_cap, "factorization degree bound");
    app.add_option("--quantifier-depth", depth, "maximum quantifier depth");
    app.add_option("--prime-bound", prime_bound, "largest prime for brute-force evaluation");
    app.add_option("--exception-cap", exception_cap, "exceptions allowed in a cofinite verdict");
    app.add_option("--seed", seed, "seed for randomized fast paths");
    app.add_option("--above", above, "prime sample starts above this bound");
    app.add_option("--count", count, "prime sample size");
    app.add_option("--order", order, "monomial order for gb: grevlex or lex");
    app.add_option("--route", route, "multiplicity route: auto or diagonal");
    app.add_flag("--text", text, "human-readable tables instead of JSON");
    app.add_option("-o,--output", job.output, "write the report here instead of stdout");
    const std::pair<const char*, const char*> commands[] = {
        {"gb", "reduced Groebner basis of each ideal"},
        {"hilbert", "Hilbert polynomial and degree"},
        {"cycle", "associated cycle of each ideal"},
        {"mult", "intersection multiplicities of two prime ideals"},
        {"product", "intersection product of the associated cycles"},
        {"pushforward", "pushforward to the declared target"},
        {"compose", "composite of the declared correspondences"},
        {"laws", "category laws on the declared correspondences"},
        {"los", "Los verdict of the declared sentence"},
        {"transfer", "commutation reports for a JSON corpus"},
        {"survey", "complexity survey for a JSON corpus"},
    };
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("input", job.input, "input file")->required();
        sub->callback([&job, n = std::string(name)] { job.command = n; });
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? Ok : InputError;
    }
    try {
        if (!config.empty()) apply_config_file(config, job);
        if (pair_cap) job.settings.pair_cap = *pair_cap;
        if (degree_cap) job.settings.factor_degree_cap = *degree_cap;
        if (depth) job.settings.quantifier_depth = *depth;
        if (prime_bound) job.settings.brute_force_prime_bound = *prime_bound;
        if (exception_cap) job.settings.exception_cap = *exception_cap;
        if (seed) job.settings.seed = *seed;
        if (above) job.above = *above;
        if (count) job.count = *count;
        if (order) job.order = *order;
        if (route) job.route = *route;
        if (text) job.text = true;
        return run(job);
    } catch (const Error& e) {
        std::cerr << "error: " << e.qualified_code() << ": " << e.what() << "\n";
        return exit_code(e);
    }
}
