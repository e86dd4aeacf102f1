#include "cyclelab/transfer_lab.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "cyclelab/error.hpp"
#include "cyclelab/parse.hpp"
#include "cyclelab/scalar.hpp"

namespace cyclelab {

namespace {

const std::pair<InstanceKind, const char*> kind_names[] = {
    {InstanceKind::AssociatedCycle, "AssociatedCycle"},
    {InstanceKind::LocalLength, "LocalLength"},
    {InstanceKind::KoszulData, "KoszulData"},
    {InstanceKind::IntersectionProduct, "IntersectionProduct"},
    {InstanceKind::Pushforward, "Pushforward"},
    {InstanceKind::Compose, "Compose"},
    {InstanceKind::HilbertDegree, "HilbertDegree"},
};

}  // namespace

std::string kind_name(InstanceKind k)
{
    for (const auto& [kind, name] : kind_names)
        if (kind == k) return name;
    return "?";
}

InstanceKind kind_from_name(const std::string& s)
{
    for (const auto& [kind, name] : kind_names)
        if (s == name) return kind;
    raise(ErrorCode::ValidationError, "unknown instance kind " + s);
}

const std::vector<InstanceKind>& all_kinds()
{
    static const std::vector<InstanceKind> kinds = [] {
        std::vector<InstanceKind> v;
        for (const auto& [kind, name] : kind_names) v.push_back(kind);
        return v;
    }();
    return kinds;
}

std::string outcome_name(Outcome o)
{
    switch (o) {
    case Outcome::Agree: return "agree";
    case Outcome::Disagree: return "disagree";
    case Outcome::BadPrime: return "bad-prime";
    }
    return "?";
}

namespace {

Ideal reduce_ideal(const Ideal& a, std::uint64_t p)
{
    RingPtr ring = reduce_ring(a.ring(), p);
    std::vector<Poly> gens;
    for (const auto& g : a.generators()) gens.push_back(g.reduce_mod_p(p));
    return Ideal(ring, gens);
}

Ambient reduce_ambient(const Ambient& a, std::uint64_t p) { return {a.kind, reduce_ring(a.ring, p)}; }

// Kind-specific results: cycles compare after re-splitting, entries after coefficient
// reduction, and the scalar text as is.
struct Result {
    std::vector<Cycle> cycles;
    std::vector<Poly> entries;
    std::string scalar;
};

std::string serialize(const Result& r)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < r.cycles.size(); ++i) os << (i ? " ; " : "") << r.cycles[i].to_string();
    if (!r.entries.empty()) {
        os << " | entries:";
        for (const auto& e : r.entries) os << ' ' << e.to_string() << ',';
    }
    if (!r.scalar.empty()) os << " | " << r.scalar;
    return os.str();
}

Result reduce_result(const Result& r, std::uint64_t p)
{
    Result out;
    for (const auto& c : r.cycles) out.cycles.push_back(resplit(c, p));
    for (const auto& e : r.entries) out.entries.push_back(e.reduce_mod_p(p));
    out.scalar = r.scalar;
    return out;
}

std::vector<PrimeComponent> top_components(const Ideal& a, const Ambient& amb)
{
    auto comps = minimal_primes(a, amb);
    if (comps.empty()) return comps;
    int top = 0;
    for (const auto& c : comps) top = std::max(top, c.dimension);
    std::erase_if(comps, [&](const PrimeComponent& c) { return c.dimension != top; });
    return comps;
}

Cycle weighted(const std::vector<PrimeComponent>& comps, const Ambient& amb, auto&& weight)
{
    if (comps.empty()) return Cycle::empty(amb, amb.dimension());
    Cycle c = Cycle::empty(amb, amb.dimension() - comps.front().dimension);
    for (const auto& p : comps) c = c + Cycle::of(p, amb, static_cast<long>(weight(p)));
    c.canonicalize();
    return c;
}

Result compute(const TransferInstance& inst)
{
    Result r;
    const Ambient& amb = inst.ambient;
    switch (inst.kind) {
    case InstanceKind::AssociatedCycle: r.cycles.push_back(associated_cycle(inst.ideals.at(0), amb).cycle); break;
    case InstanceKind::LocalLength: {
        const Ideal& i = inst.ideals.at(0);
        r.cycles.push_back(weighted(minimal_primes(inst.ideals.at(1), amb), amb, [&](const PrimeComponent& p) { return local_length(i, p); }));
        break;
    }
    case InstanceKind::KoszulData: {
        const Ideal& j = inst.ideals.at(0);
        KoszulComplex k = build_koszul(amb.ring, inst.sequence, j);
        std::vector<Poly> gens = j.generators();
        gens.insert(gens.end(), inst.sequence.begin(), inst.sequence.end());
        auto comps = top_components(Ideal(amb.ring, gens), amb);
        for (std::size_t h = 0; h <= k.length(); ++h)
            r.cycles.push_back(weighted(comps, amb, [&](const PrimeComponent& p) { return homology_length_at(k, h, p.ideal); }));
        for (std::size_t d = 1; d <= k.length(); ++d)
            for (const auto& col : k.differentials[d].columns)
                for (const auto& e : col) r.entries.push_back(j.reduce(e));
        break;
    }
    case InstanceKind::IntersectionProduct:
        r.cycles.push_back(intersection_product(associated_cycle(inst.ideals.at(0), amb).cycle, associated_cycle(inst.ideals.at(1), amb).cycle));
        break;
    case InstanceKind::Pushforward:
        r.cycles.push_back(pushforward(associated_cycle(inst.ideals.at(0), amb).cycle, Ambient::affine(inst.target), inst.keep));
        break;
    case InstanceKind::Compose: {
        auto x = affine_space(inst.factors.at(0)), y = affine_space(inst.factors.at(1)), z = affine_space(inst.factors.at(2));
        const Ideal &a = inst.ideals.at(0), &b = inst.ideals.at(1);
        auto alpha = make_correspondence(x, y, associated_cycle(a, Ambient::affine(a.ring())).cycle);
        auto beta = make_correspondence(y, z, associated_cycle(b, Ambient::affine(b.ring())).cycle);
        r.cycles.push_back(compose(alpha, beta).cycle);
        break;
    }
    case InstanceKind::HilbertDegree: {
        HilbertData h = hilbert(inst.ideals.at(0));
        r.scalar = "HP = " + h.polynomial_string() + "; degree " + std::to_string(h.degree);
        break;
    }
    }
    return r;
}

void record_coefficients(DivisorRecorder& rec, const Poly& f)
{
    if (!f.field().is_rational()) return;
    for (const auto& t : f.terms()) rec.record(t.coeff.rational());
}

void record_inputs(DivisorRecorder& rec, const TransferInstance& inst)
{
    for (const auto& i : inst.ideals)
        for (const auto& g : i.generators()) record_coefficients(rec, g);
    for (const auto& f : inst.sequence) record_coefficients(rec, f);
}

void record_outputs(DivisorRecorder& rec, const Result& r)
{
    for (const auto& c : r.cycles)
        for (const auto& [p, m] : c.terms)
            for (const auto& g : p.ideal.basis()) record_coefficients(rec, g);
    for (const auto& e : r.entries) record_coefficients(rec, e);
}

Result rational_side(const TransferInstance& inst, std::vector<std::uint64_t>& bad)
{
    DivisorRecorder rec(inst.sample.primes);
    record_inputs(rec, inst);
    Result r = compute(inst);
    record_outputs(rec, r);
    bad.assign(rec.hits().begin(), rec.hits().end());
    return r;
}

}  // namespace

Cycle resplit(const Cycle& c, std::uint64_t p)
{
    Ambient amb = reduce_ambient(c.ambient, p);
    Cycle out = Cycle::empty(amb, c.codimension);
    for (const auto& [comp, m] : c.terms) out = out + m * associated_cycle(reduce_ideal(comp.ideal, p), amb, c.codimension).cycle;
    out.canonicalize();
    return out;
}

void prepare_instance(TransferInstance& inst) { rational_side(inst, inst.bad_primes); }

TransferInstance reduce_instance(const TransferInstance& inst, std::uint64_t p)
{
    TransferInstance out = inst;
    out.ambient = reduce_ambient(inst.ambient, p);
    out.ideals.clear();
    for (const auto& i : inst.ideals) out.ideals.push_back(reduce_ideal(i, p));
    out.sequence.clear();
    for (const auto& f : inst.sequence) out.sequence.push_back(f.reduce_mod_p(p));
    if (inst.target) out.target = reduce_ring(inst.target, p);
    out.factors.clear();
    for (const auto& f : inst.factors) out.factors.push_back(reduce_ring(f, p));
    return out;
}

std::vector<std::uint64_t> CommutationReport::disagreements_at_good_primes() const
{
    std::vector<std::uint64_t> out;
    for (const auto& o : per_prime)
        if (o.outcome == Outcome::Disagree && !std::binary_search(bad_primes.begin(), bad_primes.end(), o.prime)) out.push_back(o.prime);
    return out;
}

bool CommutationReport::exceptions_within_bad_primes() const
{
    return std::all_of(verdict.exceptions.begin(), verdict.exceptions.end(),
                       [&](std::uint64_t p) { return std::binary_search(bad_primes.begin(), bad_primes.end(), p); });
}

bool CommutationReport::passed() const
{
    return verdict.verdict == Verdict::CofiniteHolds && exceptions_within_bad_primes() && disagreements_at_good_primes().empty();
}

CommutationReport check_commutation(TransferInstance inst)
{
    CommutationReport rep;
    rep.instance = inst.name;
    rep.kind = inst.kind;
    Result rational = rational_side(inst, inst.bad_primes);
    rep.bad_primes = inst.bad_primes;
    std::vector<std::pair<std::uint64_t, bool>> outcomes;
    std::vector<std::uint64_t> unusable;
    for (auto p : inst.sample.primes) {
        const bool bad = std::binary_search(rep.bad_primes.begin(), rep.bad_primes.end(), p);
        PrimeOutcome o;
        o.prime = p;
        try {
            o.op_then_reduce = serialize(reduce_result(rational, p));
            o.reduce_then_op = serialize(compute(reduce_instance(inst, p)));
            o.outcome = o.op_then_reduce == o.reduce_then_op ? Outcome::Agree : Outcome::Disagree;
            if (bad) o.note = "bad prime";
        } catch (const Error& e) {
            if (!bad && e.code() != ErrorCode::BadPrime) throw;
            o.outcome = Outcome::BadPrime;
            o.note = e.qualified_code() + ": " + e.what();
        }
        if (o.outcome == Outcome::BadPrime)
            unusable.push_back(p);
        else
            outcomes.push_back({p, o.outcome == Outcome::Agree});
        rep.per_prime.push_back(std::move(o));
    }
    rep.verdict = classify(outcomes, inst.sample.without(unusable));
    return rep;
}

// ------------------------------------------------------------------ json

namespace {

nlohmann::json vars_json(const RingPtr& r) { return r->vars; }

nlohmann::json ideal_json(const Ideal& i)
{
    nlohmann::json a = nlohmann::json::array();
    for (const auto& g : i.generators()) a.push_back(g.to_string());
    return a;
}

Field field_from_json(const nlohmann::json& j)
{
    std::string f = j.value("field", "Q");
    if (f == "Q") return Field::rationals();
    if (f.starts_with("F")) return Field::prime(std::stoull(f.substr(1)));
    raise(ErrorCode::ValidationError, "unknown field " + f);
}

std::string field_name(const Field& f) { return f.is_rational() ? "Q" : "F" + std::to_string(f.characteristic()); }

Ideal ideal_from_json(const nlohmann::json& j, const RingPtr& ring)
{
    std::vector<Poly> gens;
    for (const auto& s : j) gens.push_back(parse_poly(s.get<std::string>(), ring));
    return Ideal(ring, gens);
}

}  // namespace

nlohmann::json instance_to_json(const TransferInstance& inst)
{
    nlohmann::json j;
    j["kind"] = kind_name(inst.kind);
    j["name"] = inst.name;
    j["field"] = field_name(inst.ambient.ring->field);
    j["vars"] = vars_json(inst.ambient.ring);
    j["projective"] = inst.ambient.is_projective();
    j["ideals"] = nlohmann::json::array();
    for (const auto& i : inst.ideals) j["ideals"].push_back(ideal_json(i));
    if (!inst.sequence.empty()) {
        j["sequence"] = nlohmann::json::array();
        for (const auto& f : inst.sequence) j["sequence"].push_back(f.to_string());
    }
    if (inst.target) {
        j["target_vars"] = vars_json(inst.target);
        j["keep"] = inst.keep;
    }
    if (!inst.factors.empty()) {
        j["factors"] = nlohmann::json::array();
        for (const auto& f : inst.factors) j["factors"].push_back(vars_json(f));
    }
    j["primes"] = inst.sample.primes;
    return j;
}

TransferInstance instance_from_json(const nlohmann::json& j)
{
    try {
        TransferInstance inst;
        inst.kind = kind_from_name(j.at("kind").get<std::string>());
        inst.name = j.value("name", kind_name(inst.kind));
        Field field = field_from_json(j);
        RingPtr ring = make_ring(field, j.at("vars").get<std::vector<std::string>>());
        inst.ambient = j.value("projective", false) ? Ambient::projective(ring) : Ambient::affine(ring);
        if (j.contains("factors"))
            for (const auto& f : j["factors"]) inst.factors.push_back(make_ring(field, f.get<std::vector<std::string>>()));
        const auto& ideals = j.at("ideals");
        for (std::size_t k = 0; k < ideals.size(); ++k) {
            RingPtr r = ring;
            if (inst.kind == InstanceKind::Compose) {
                if (inst.factors.size() != 3) raise(ErrorCode::ValidationError, "Compose needs three factors");
                r = product_ring({inst.factors.at(k), inst.factors.at(k + 1)});
            }
            inst.ideals.push_back(ideal_from_json(ideals[k], r));
        }
        if (j.contains("sequence"))
            for (const auto& s : j["sequence"]) inst.sequence.push_back(parse_poly(s.get<std::string>(), ring));
        if (j.contains("target_vars")) {
            inst.target = make_ring(field, j["target_vars"].get<std::vector<std::string>>());
            inst.keep = j.at("keep").get<std::vector<std::size_t>>();
        }
        if (j.contains("primes")) {
            inst.sample.primes = j["primes"].get<std::vector<std::uint64_t>>();
        } else {
            auto s = j.value("sample", nlohmann::json::object());
            inst.sample = PrimeSample::first_above(s.value("above", 3ULL), s.value("count", std::size_t{50}));
        }
        std::size_t need = 1;
        if (inst.kind == InstanceKind::LocalLength || inst.kind == InstanceKind::IntersectionProduct || inst.kind == InstanceKind::Compose) need = 2;
        if (inst.ideals.size() != need) raise(ErrorCode::ValidationError, kind_name(inst.kind) + " needs " + std::to_string(need) + " ideals");
        if (inst.kind == InstanceKind::Pushforward && !inst.target) raise(ErrorCode::ValidationError, "Pushforward needs target_vars and keep");
        if (inst.kind == InstanceKind::KoszulData && inst.sequence.empty()) raise(ErrorCode::ValidationError, "KoszulData needs a sequence");
        return inst;
    } catch (const nlohmann::json::exception& e) {
        raise(ErrorCode::ValidationError, std::string("malformed instance: ") + e.what());
    }
}

nlohmann::json report_to_json(const CommutationReport& r)
{
    nlohmann::json j;
    j["instance"] = r.instance;
    j["kind"] = kind_name(r.kind);
    j["verdict"] = verdict_name(r.verdict.verdict);
    j["exceptions"] = r.verdict.exceptions;
    j["bad_primes"] = r.bad_primes;
    j["passed"] = r.passed();
    j["per_prime"] = nlohmann::json::array();
    for (const auto& o : r.per_prime) {
        nlohmann::json e{{"p", o.prime}, {"outcome", outcome_name(o.outcome)}};
        if (!o.note.empty()) e["note"] = o.note;
        if (o.outcome == Outcome::Disagree) {
            e["op_then_reduce"] = o.op_then_reduce;
            e["reduce_then_op"] = o.reduce_then_op;
        }
        j["per_prime"].push_back(e);
    }
    return j;
}

// ------------------------------------------------------------------ survey

namespace {

// Cone over a, and b cut by the new coordinate hyperplanes.
std::pair<Ideal, Ideal> lift_pair(const Ideal& a, const Ideal& b, int levels)
{
    RingPtr ring = a.ring();
    std::vector<std::string> extra;
    for (int k = 0; k < levels; ++k) {
        extra.push_back(fresh_name(ring, "w" + std::to_string(k)));
        ring = extend_ring(ring, {extra.back()});
    }
    std::vector<Poly> ga, gb;
    for (const auto& g : a.generators()) ga.push_back(lift(g, ring));
    for (const auto& g : b.generators()) gb.push_back(lift(g, ring));
    for (std::size_t k = 0; k < extra.size(); ++k) gb.push_back(Poly::variable(ring, a.ring()->nvars() + k));
    return {Ideal(ring, ga), Ideal(ring, gb)};
}

SurveyTable survey_over(const std::vector<SurveyPair>& corpus, const std::vector<int>& ds, const std::vector<int>& ns, std::uint64_t p)
{
    SurveyTable t;
    t.field = p == 0 ? "Q" : "F" + std::to_string(p);
    for (int d : ds)
        for (int n : ns) t.max_complexity[{d, n}] = 0, t.pairs[{d, n}] = 0;
    for (const auto& pair : corpus) {
        for (int n : ns) {
            if (n < pair.n) continue;
            auto [a, b] = lift_pair(pair.a, pair.b, n - pair.n);
            if (p != 0) a = reduce_ideal(a, p), b = reduce_ideal(b, p);
            Ambient amb = Ambient::projective(a.ring());
            Cycle ca = associated_cycle(a, amb).cycle, cb = associated_cycle(b, amb).cycle;
            long input = std::max(complexity(ca).c, complexity(cb).c);
            long product = complexity(intersection_product(ca, cb)).c;
            for (int d : ds) {
                if (input > d) continue;
                auto& slot = t.max_complexity[{d, n}];
                slot = std::max(slot, product);
                ++t.pairs[{d, n}];
            }
        }
    }
    return t;
}

}  // namespace

SurveyReport complexity_survey(const std::vector<SurveyPair>& corpus, const std::vector<int>& ds, const std::vector<int>& ns,
                               const PrimeSample& primes)
{
    SurveyReport rep;
    rep.ds = ds;
    rep.ns = ns;
    std::sort(rep.ds.begin(), rep.ds.end());
    std::sort(rep.ns.begin(), rep.ns.end());
    for (const auto& pair : corpus)
        if (pair.a.ring()->nvars() != static_cast<std::size_t>(pair.n + 1) || !same_ring(pair.a.ring(), pair.b.ring()))
            raise(ErrorCode::AmbientMismatch, "survey pair " + pair.name + " does not live in P^" + std::to_string(pair.n));
    rep.rational = survey_over(corpus, rep.ds, rep.ns, 0);
    for (auto p : primes.primes) {
        rep.prime_tables.push_back(survey_over(corpus, rep.ds, rep.ns, p));
        if (rep.prime_tables.back().max_complexity != rep.rational.max_complexity) rep.identical = false;
    }
    auto check = [&](const SurveyTable& t) {
        for (std::size_t i = 0; i < rep.ds.size(); ++i)
            for (std::size_t k = 0; k < rep.ns.size(); ++k) {
                long v = t.max_complexity.at({rep.ds[i], rep.ns[k]});
                if (i + 1 < rep.ds.size() && t.max_complexity.at({rep.ds[i + 1], rep.ns[k]}) < v) rep.monotone = false;
                if (k + 1 < rep.ns.size() && t.max_complexity.at({rep.ds[i], rep.ns[k + 1]}) < v) rep.monotone = false;
            }
    };
    check(rep.rational);
    for (const auto& t : rep.prime_tables) check(t);
    return rep;
}

std::string SurveyReport::text() const
{
    std::ostringstream os;
    auto table = [&](const SurveyTable& t) {
        os << t.field << "\n  n\\d";
        for (int d : ds) os << '\t' << d;
        os << '\n';
        for (int n : ns) {
            os << "  " << n;
            for (int d : ds) os << '\t' << t.max_complexity.at({d, n});
            os << '\n';
        }
    };
    table(rational);
    for (const auto& t : prime_tables) table(t);
    os << "identical across fields: " << (identical ? "yes" : "no") << "\nmonotone in d and n: " << (monotone ? "yes" : "no") << '\n';
    return os.str();
}

nlohmann::json survey_to_json(const SurveyReport& r)
{
    auto table = [&](const SurveyTable& t) {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& [key, v] : t.max_complexity)
            rows.push_back({{"d", key.first}, {"n", key.second}, {"max_complexity", v}, {"pairs", t.pairs.at(key)}});
        return nlohmann::json{{"field", t.field}, {"rows", rows}};
    };
    nlohmann::json j{{"ds", r.ds}, {"ns", r.ns}, {"identical", r.identical}, {"monotone", r.monotone}};
    j["tables"] = nlohmann::json::array({table(r.rational)});
    for (const auto& t : r.prime_tables) j["tables"].push_back(table(t));
    return j;
}

}  // namespace cyclelab
