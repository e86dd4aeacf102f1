#include "cyclelab/ultraproduct.hpp"

#include <algorithm>
#include <set>

#include "cyclelab/error.hpp"
#include "cyclelab/lexer.hpp"
#include "cyclelab/settings.hpp"

namespace cyclelab {

std::vector<std::uint64_t> prime_divisors(mpz_class n)
{
    std::vector<std::uint64_t> out;
    n = abs(n);
    if (n == 0) raise(ErrorCode::ValidationError, "prime divisors of zero");
    for (unsigned long d = 2; n > 1 && mpz_class(d) * d <= n; ++d) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
            out.push_back(d);
            while (mpz_divisible_ui_p(n.get_mpz_t(), d)) mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), d);
        }
        if (d > 1'000'000) raise(ErrorCode::UnsupportedShape, "integer too large to factor by trial division");
    }
    if (n > 1) out.push_back(n.get_ui());
    return out;
}

PrimeSample PrimeSample::first_above(std::uint64_t above, std::size_t count)
{
    PrimeSample s;
    for (std::uint64_t n = above + 1; s.primes.size() < count; ++n)
        if (is_prime(n)) s.primes.push_back(n);
    return s;
}

PrimeSample PrimeSample::without(const std::vector<std::uint64_t>& bad) const
{
    PrimeSample s;
    s.excluded = excluded;
    for (auto p : primes) {
        if (std::find(bad.begin(), bad.end(), p) != bad.end())
            s.excluded.push_back(p);
        else
            s.primes.push_back(p);
    }
    std::sort(s.excluded.begin(), s.excluded.end());
    if (s.primes.empty()) raise(ErrorCode::ValidationError, "prime sample is empty after exclusions");
    return s;
}

std::string PrimeSample::describe() const
{
    std::string s = std::to_string(primes.size()) + " primes";
    if (!primes.empty()) s += " in [" + std::to_string(primes.front()) + ", " + std::to_string(primes.back()) + "]";
    if (!excluded.empty()) s += ", " + std::to_string(excluded.size()) + " excluded";
    return s;
}

// ------------------------------------------------------------------ elements

namespace {

using ZPoly = std::vector<mpz_class>;

void trim(ZPoly& a)
{
    while (a.size() > 1 && a.back() == 0) a.pop_back();
}

ZPoly padd(const ZPoly& a, const ZPoly& b, int sign)
{
    ZPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += sign * b[i];
    trim(r);
    return r;
}

ZPoly pmul(const ZPoly& a, const ZPoly& b)
{
    ZPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

std::uint64_t mod(const mpz_class& v, std::uint64_t p)
{
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), p);
    return r.get_ui();
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p)
{
    mpz_class r, aa(static_cast<unsigned long>(a)), pp(static_cast<unsigned long>(p));
    mpz_invert(r.get_mpz_t(), aa.get_mpz_t(), pp.get_mpz_t());
    return r.get_ui();
}

std::string poly_string(const ZPoly& a)
{
    std::string s;
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] == 0 && !(i == 0 && s.empty())) continue;
        mpz_class c = a[i];
        if (!s.empty()) {
            s += c < 0 ? " - " : " + ";
            c = abs(c);
        }
        if (i == 0 || c != 1) s += c.get_str() + (i > 0 ? "*" : "");
        if (i > 0) s += i == 1 ? "p" : "p^" + std::to_string(i);
    }
    return s;
}

}  // namespace

UltraElement UltraElement::rational(const mpq_class& q)
{
    UltraElement e;
    e.num_ = {q.get_num()};
    e.den_ = {q.get_den()};
    return e;
}

UltraElement UltraElement::polynomial(std::vector<mpz_class> coeffs)
{
    UltraElement e;
    if (coeffs.empty()) coeffs.push_back(0);
    trim(coeffs);
    e.num_ = std::move(coeffs);
    return e;
}

UltraElement& UltraElement::except(std::uint64_t p, std::optional<std::uint64_t> value)
{
    if (value) *value %= p;
    exceptions_[p] = value;
    return *this;
}

bool UltraElement::rule_defined_at(std::uint64_t p) const { return mod(den_[0], p) != 0; }

bool UltraElement::rule_vanishes() const { return num_[0] == 0; }

std::optional<std::uint64_t> UltraElement::at(std::uint64_t p) const
{
    if (auto it = exceptions_.find(p); it != exceptions_.end()) return it->second;
    // p = 0 in F_p, so only constant terms survive
    std::uint64_t d = mod(den_[0], p);
    if (d == 0) return std::nullopt;
    return mod(num_[0], p) * inv_mod(d, p) % p;
}

std::string UltraElement::to_string() const
{
    std::string s = poly_string(num_);
    if (!(den_.size() == 1 && den_[0] == 1)) s = "(" + s + ")/(" + poly_string(den_) + ")";
    if (!exceptions_.empty()) {
        s += " except {";
        bool first = true;
        for (const auto& [p, v] : exceptions_) {
            if (!first) s += ", ";
            first = false;
            s += std::to_string(p) + ": " + (v ? std::to_string(*v) : "undefined");
        }
        s += "}";
    }
    return s;
}

namespace {

template <class Op>
UltraElement combine(const UltraElement& a, const UltraElement& b, UltraElement rule, Op op)
{
    std::set<std::uint64_t> primes;
    for (const auto& [p, v] : a.exceptions()) primes.insert(p);
    for (const auto& [p, v] : b.exceptions()) primes.insert(p);
    for (auto p : primes) {
        auto x = a.at(p), y = b.at(p);
        rule.except(p, x && y ? std::optional<std::uint64_t>(op(*x, *y, p)) : std::nullopt);
    }
    return rule;
}

}  // namespace

UltraElement operator+(const UltraElement& a, const UltraElement& b)
{
    UltraElement r;
    r.num_ = padd(pmul(a.num_, b.den_), pmul(b.num_, a.den_), 1);
    r.den_ = pmul(a.den_, b.den_);
    return combine(a, b, r, [](auto x, auto y, auto p) { return (x + y) % p; });
}

UltraElement operator-(const UltraElement& a, const UltraElement& b)
{
    UltraElement r;
    r.num_ = padd(pmul(a.num_, b.den_), pmul(b.num_, a.den_), -1);
    r.den_ = pmul(a.den_, b.den_);
    return combine(a, b, r, [](auto x, auto y, auto p) { return (x + p - y) % p; });
}

UltraElement operator*(const UltraElement& a, const UltraElement& b)
{
    UltraElement r;
    r.num_ = pmul(a.num_, b.num_);
    r.den_ = pmul(a.den_, b.den_);
    return combine(a, b, r, [](auto x, auto y, auto p) { return x * y % p; });
}

UltraElement UltraElement::inverse() const
{
    if (rule_vanishes()) raise(ErrorCode::DivisionByZeroAlmostEverywhere, "inverse of " + to_string() + ", which is zero at almost every prime");
    UltraElement r;
    r.num_ = den_;
    r.den_ = num_;
    for (const auto& [p, v] : exceptions_) r.except(p, v && *v != 0 ? std::optional<std::uint64_t>(inv_mod(*v, p)) : std::nullopt);
    return r;
}

UltraElement ultra_arith(const UltraElement& a, const UltraElement& b, UltraOp op)
{
    switch (op) {
    case UltraOp::Add: return a + b;
    case UltraOp::Sub: return a - b;
    case UltraOp::Mul: return a * b;
    case UltraOp::Inv: return a.inverse();
    }
    raise(ErrorCode::ValidationError, "unknown operation");
}

std::vector<std::uint64_t> disagreements(const UltraElement& a, const UltraElement& b, const PrimeSample& sample)
{
    std::vector<std::uint64_t> out;
    for (auto p : sample.primes) {
        auto x = a.at(p), y = b.at(p);
        if (!x || !y || *x != *y) out.push_back(p);
    }
    return out;
}

// ------------------------------------------------------------------ sentences

std::string normalize_symbols(std::string s)
{
    static const std::pair<const char*, const char*> table[] = {
        {"∀", " forall "}, {"∃", " exists "}, {"¬", " ~ "}, {"∧", " & "}, {"∨", " | "}, {"→", " -> "},
        {"·", " * "},      {"−", " - "},      {"≠", " != "}, {"²", "^2"},  {"³", "^3"},
    };
    for (const auto& [from, to] : table) {
        std::string f(from);
        for (std::size_t pos = s.find(f); pos != std::string::npos; pos = s.find(f, pos)) {
            s.replace(pos, f.size(), to);
            pos += std::string(to).size();
        }
    }
    return s;
}

namespace {

bool is_keyword(const Token& t, std::string_view word) { return t.kind == TokenKind::Identifier && t.text == word; }

class SentenceParser {
public:
    explicit SentenceParser(TokenStream& ts) : ts_(ts) {}

    FormulaPtr formula()
    {
        FormulaPtr lhs = disjunction();
        if (ts_.accept("->")) return make(Formula::Kind::Implies, lhs, formula());
        return lhs;
    }

private:
    TokenStream& ts_;

    bool starts_quantifier_body() const
    {
        const Token& t = ts_.peek();
        return ts_.is("(") || ts_.is("~") || ts_.is("!") || is_keyword(t, "forall") || is_keyword(t, "exists") || is_keyword(t, "not");
    }

    static FormulaPtr make(Formula::Kind k, FormulaPtr a = nullptr, FormulaPtr b = nullptr)
    {
        auto f = std::make_shared<Formula>();
        f->kind = k;
        f->a = std::move(a);
        f->b = std::move(b);
        return f;
    }

    FormulaPtr disjunction()
    {
        FormulaPtr f = conjunction();
        while (ts_.accept("|") || (is_keyword(ts_.peek(), "or") && (ts_.next(), true))) f = make(Formula::Kind::Or, f, conjunction());
        return f;
    }

    FormulaPtr conjunction()
    {
        FormulaPtr f = unary();
        while (ts_.accept("&") || (is_keyword(ts_.peek(), "and") && (ts_.next(), true))) f = make(Formula::Kind::And, f, unary());
        return f;
    }

    FormulaPtr unary()
    {
        if (ts_.accept("~") || ts_.accept("!") || (is_keyword(ts_.peek(), "not") && (ts_.next(), true))) return make(Formula::Kind::Not, unary());
        const Token& t = ts_.peek();
        if (is_keyword(t, "forall") || is_keyword(t, "exists")) {
            auto kind = t.text == "forall" ? Formula::Kind::Forall : Formula::Kind::Exists;
            ts_.next();
            std::vector<std::string> vars{ts_.expect_identifier().text};
            while (ts_.accept(",")) vars.push_back(ts_.expect_identifier().text);
            if (!ts_.accept(".") && !ts_.accept(":") && !starts_quantifier_body()) ts_.fail("expected '.' or ':' after quantified variables");
            FormulaPtr body = formula();
            for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
                auto q = std::make_shared<Formula>();
                q->kind = kind;
                q->variable = *it;
                q->a = body;
                body = q;
            }
            return body;
        }
        return atom();
    }

    FormulaPtr atom()
    {
        if (is_keyword(ts_.peek(), "true")) {
            ts_.next();
            return make(Formula::Kind::True);
        }
        if (is_keyword(ts_.peek(), "false")) {
            ts_.next();
            return make(Formula::Kind::False);
        }
        if (ts_.is("(")) {
            std::size_t save = ts_.position();
            try {
                ts_.next();
                FormulaPtr f = formula();
                ts_.expect(")");
                if (!(ts_.is("=") || ts_.is("!=") || ts_.is("+") || ts_.is("-") || ts_.is("*") || ts_.is("^"))) return f;
            } catch (const Error&) {
            }
            ts_.reset(save);
        }
        ExprPtr lhs = sum();
        Formula::Kind k;
        if (ts_.accept("="))
            k = Formula::Kind::Eq;
        else if (ts_.accept("!="))
            k = Formula::Kind::Neq;
        else
            ts_.fail("expected '=' or '!='");
        auto f = std::make_shared<Formula>();
        f->kind = k;
        f->lhs = lhs;
        f->rhs = sum();
        return f;
    }

    static ExprPtr term(Expr::Kind k, ExprPtr l, ExprPtr r = nullptr)
    {
        auto t = std::make_shared<Expr>();
        t->kind = k;
        t->left = std::move(l);
        t->right = std::move(r);
        return t;
    }

    ExprPtr sum()
    {
        ExprPtr t = product();
        while (true) {
            if (ts_.accept("+"))
                t = term(Expr::Kind::Add, t, product());
            else if (ts_.accept("-"))
                t = term(Expr::Kind::Sub, t, product());
            else
                return t;
        }
    }

    ExprPtr product()
    {
        ExprPtr t = negated();
        while (ts_.accept("*")) t = term(Expr::Kind::Mul, t, negated());
        return t;
    }

    ExprPtr negated()
    {
        if (ts_.accept("-")) return term(Expr::Kind::Neg, negated());
        return power();
    }

    ExprPtr power()
    {
        ExprPtr base = primary();
        if (ts_.accept("^")) {
            const Token& e = ts_.next();
            if (e.kind != TokenKind::Integer) ts_.fail("expected an integer exponent");
            auto t = term(Expr::Kind::Pow, base);
            const_cast<Expr&>(*t).exponent = static_cast<unsigned>(std::stoul(e.text));
            return t;
        }
        return base;
    }

    ExprPtr primary()
    {
        const Token& t = ts_.peek();
        auto out = std::make_shared<Expr>();
        if (t.kind == TokenKind::Integer) {
            out->kind = Expr::Kind::Const;
            out->value = mpz_class(ts_.next().text);
            return out;
        }
        if (t.kind == TokenKind::Identifier) {
            static const char* reserved[] = {"forall", "exists", "not", "and", "or", "true", "false"};
            for (auto r : reserved)
                if (t.text == r) ts_.fail("unexpected keyword '" + t.text + "' in a term");
            out->kind = Expr::Kind::Var;
            out->name = ts_.next().text;
            return out;
        }
        if (ts_.accept("(")) {
            ExprPtr inner = sum();
            ts_.expect(")");
            return inner;
        }
        ts_.fail("expected a term");
    }
};

int depth(const FormulaPtr& f)
{
    if (!f) return 0;
    int d = std::max(depth(f->a), depth(f->b));
    return (f->kind == Formula::Kind::Forall || f->kind == Formula::Kind::Exists) ? d + 1 : d;
}

void term_vars(const ExprPtr& t, std::vector<std::string>& bound, std::set<std::string>& out)
{
    if (!t) return;
    if (t->kind == Expr::Kind::Var && std::find(bound.begin(), bound.end(), t->name) == bound.end()) out.insert(t->name);
    term_vars(t->left, bound, out);
    term_vars(t->right, bound, out);
}

void formula_vars(const FormulaPtr& f, std::vector<std::string>& bound, std::set<std::string>& out)
{
    if (!f) return;
    bool q = f->kind == Formula::Kind::Forall || f->kind == Formula::Kind::Exists;
    if (q) bound.push_back(f->variable);
    term_vars(f->lhs, bound, out);
    term_vars(f->rhs, bound, out);
    formula_vars(f->a, bound, out);
    formula_vars(f->b, bound, out);
    if (q) bound.pop_back();
}

std::string term_string(const ExprPtr& t)
{
    switch (t->kind) {
    case Expr::Kind::Var: return t->name;
    case Expr::Kind::Const: return t->value.get_str();
    case Expr::Kind::Add: return "(" + term_string(t->left) + " + " + term_string(t->right) + ")";
    case Expr::Kind::Sub: return "(" + term_string(t->left) + " - " + term_string(t->right) + ")";
    case Expr::Kind::Mul: return term_string(t->left) + "*" + term_string(t->right);
    case Expr::Kind::Neg: return "-" + term_string(t->left);
    case Expr::Kind::Pow: return term_string(t->left) + "^" + std::to_string(t->exponent);
    }
    return "?";
}

std::string formula_string(const FormulaPtr& f)
{
    switch (f->kind) {
    case Formula::Kind::True: return "true";
    case Formula::Kind::False: return "false";
    case Formula::Kind::Eq: return term_string(f->lhs) + " = " + term_string(f->rhs);
    case Formula::Kind::Neq: return term_string(f->lhs) + " != " + term_string(f->rhs);
    case Formula::Kind::Not: return "~(" + formula_string(f->a) + ")";
    case Formula::Kind::And: return "(" + formula_string(f->a) + " & " + formula_string(f->b) + ")";
    case Formula::Kind::Or: return "(" + formula_string(f->a) + " | " + formula_string(f->b) + ")";
    case Formula::Kind::Implies: return "(" + formula_string(f->a) + " -> " + formula_string(f->b) + ")";
    case Formula::Kind::Forall: return "forall " + f->variable + ". " + formula_string(f->a);
    case Formula::Kind::Exists: return "exists " + f->variable + ". " + formula_string(f->a);
    }
    return "?";
}

using Env = std::vector<std::pair<std::string, std::uint64_t>>;

std::uint64_t eval_term(const ExprPtr& t, std::uint64_t p, const Env& env)
{
    switch (t->kind) {
    case Expr::Kind::Var:
        for (auto it = env.rbegin(); it != env.rend(); ++it)
            if (it->first == t->name) return it->second;
        raise(ErrorCode::ValidationError, "free variable " + t->name);
    case Expr::Kind::Const: return mod(t->value, p);
    case Expr::Kind::Add: return (eval_term(t->left, p, env) + eval_term(t->right, p, env)) % p;
    case Expr::Kind::Sub: return (eval_term(t->left, p, env) + p - eval_term(t->right, p, env)) % p;
    case Expr::Kind::Mul: return eval_term(t->left, p, env) * eval_term(t->right, p, env) % p;
    case Expr::Kind::Neg: return (p - eval_term(t->left, p, env)) % p;
    case Expr::Kind::Pow: {
        std::uint64_t b = eval_term(t->left, p, env), r = 1 % p;
        for (unsigned k = 0; k < t->exponent; ++k) r = r * b % p;
        return r;
    }
    }
    return 0;
}

bool eval_formula(const FormulaPtr& f, std::uint64_t p, Env& env)
{
    switch (f->kind) {
    case Formula::Kind::True: return true;
    case Formula::Kind::False: return false;
    case Formula::Kind::Eq: return eval_term(f->lhs, p, env) == eval_term(f->rhs, p, env);
    case Formula::Kind::Neq: return eval_term(f->lhs, p, env) != eval_term(f->rhs, p, env);
    case Formula::Kind::Not: return !eval_formula(f->a, p, env);
    case Formula::Kind::And: return eval_formula(f->a, p, env) && eval_formula(f->b, p, env);
    case Formula::Kind::Or: return eval_formula(f->a, p, env) || eval_formula(f->b, p, env);
    case Formula::Kind::Implies: return !eval_formula(f->a, p, env) || eval_formula(f->b, p, env);
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
        bool want = f->kind == Formula::Kind::Exists;
        env.push_back({f->variable, 0});
        bool result = !want;
        for (std::uint64_t v = 0; v < p; ++v) {
            env.back().second = v;
            if (eval_formula(f->a, p, env) == want) {
                result = want;
                break;
            }
        }
        env.pop_back();
        return result;
    }
    }
    return false;
}

}  // namespace

int Sentence::quantifier_depth() const { return depth(root); }

std::vector<std::string> Sentence::free_variables() const
{
    std::vector<std::string> bound;
    std::set<std::string> out;
    formula_vars(root, bound, out);
    return {out.begin(), out.end()};
}

std::string Sentence::to_string() const { return formula_string(root); }

Sentence parse_sentence(const std::string& text)
{
    std::string norm = normalize_symbols(text);
    TokenStream ts(norm, tokenize(norm));
    SentenceParser parser(ts);
    Sentence s;
    s.root = parser.formula();
    ts.accept(";");
    if (!ts.at_end()) ts.fail("unexpected trailing input");
    s.text = text;
    return s;
}

Sentence negation(const Sentence& s)
{
    auto f = std::make_shared<Formula>();
    f->kind = Formula::Kind::Not;
    f->a = s.root;
    Sentence out{f, ""};
    out.text = out.to_string();
    return out;
}

Sentence conjunction(const Sentence& s, const Sentence& t)
{
    auto f = std::make_shared<Formula>();
    f->kind = Formula::Kind::And;
    f->a = s.root;
    f->b = t.root;
    Sentence out{f, ""};
    out.text = out.to_string();
    return out;
}

bool evaluate_sentence(const Sentence& s, std::uint64_t p)
{
    if (p > settings().brute_force_prime_bound)
        raise(ErrorCode::PrimeTooLarge, std::to_string(p) + " exceeds the brute-force bound " + std::to_string(settings().brute_force_prime_bound));
    if (!is_prime(p)) raise(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
    if (s.quantifier_depth() > settings().quantifier_depth)
        raise(ErrorCode::DepthExceeded, "quantifier depth " + std::to_string(s.quantifier_depth()) + " exceeds " + std::to_string(settings().quantifier_depth));
    if (auto free = s.free_variables(); !free.empty()) raise(ErrorCode::ValidationError, "sentence has free variable " + free.front());
    Env env;
    return eval_formula(s.root, p, env);
}

std::string verdict_name(Verdict v)
{
    switch (v) {
    case Verdict::CofiniteHolds: return "cofinite-holds";
    case Verdict::CofiniteFails: return "cofinite-fails";
    case Verdict::FilterDependent: return "filter-dependent";
    }
    return "?";
}

TransferReport classify(const std::vector<std::pair<std::uint64_t, bool>>& outcomes, const PrimeSample& sample)
{
    TransferReport rep;
    rep.outcomes = outcomes;
    std::sort(rep.outcomes.begin(), rep.outcomes.end());
    rep.sample = sample.describe();
    const std::size_t n = rep.outcomes.size();
    if (n == 0) raise(ErrorCode::ValidationError, "verdict over an empty sample");
    std::vector<std::uint64_t> holds, fails;
    for (const auto& [p, ok] : rep.outcomes) (ok ? holds : fails).push_back(p);
    rep.density_holds = static_cast<double>(holds.size()) / static_cast<double>(n);
    rep.density_fails = static_cast<double>(fails.size()) / static_cast<double>(n);
    const std::uint64_t median = rep.outcomes[(n - 1) / 2].first;
    const auto cap = static_cast<std::size_t>(settings().exception_cap);
    auto small = [&](const std::vector<std::uint64_t>& v) {
        return std::all_of(v.begin(), v.end(), [&](std::uint64_t p) { return p <= median; });
    };
    if (fails.size() <= cap && fails.size() < holds.size() && small(fails)) {
        rep.verdict = Verdict::CofiniteHolds;
        rep.exceptions = fails;
    } else if (holds.size() <= cap && holds.size() < fails.size() && small(holds)) {
        rep.verdict = Verdict::CofiniteFails;
        rep.exceptions = holds;
    }
    return rep;
}

TransferReport los_verdict(const Sentence& s, const PrimeSample& sample)
{
    std::vector<std::pair<std::uint64_t, bool>> outcomes;
    for (auto p : sample.primes) outcomes.push_back({p, evaluate_sentence(s, p)});
    return classify(outcomes, sample);
}

}  // namespace cyclelab
