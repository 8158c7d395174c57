#ifndef GRADAL_SESSION_HPP
#define GRADAL_SESSION_HPP

// The session DSL: declarations (group/field/corpoid/val/tate/present) and
// commands (reduce/check/cover/model/basis), a recursive-descent parser with
// line/column errors, and a deterministic JSON report runner.

#include "sympathique.hpp"

#include <json.hpp>

#include <cctype>
#include <cstdio>

namespace gradal {

inline constexpr const char* kToolVersion = "gradal 0.3";

// --- tokens -----------------------------------------------------------------------

struct Token {
    enum class Kind { Ident, Number, Punct, End };
    Kind kind = Kind::End;
    std::string text;
    int line = 0, col = 0;
};

struct ParseError : std::runtime_error {
    int line, col;
    ParseError(const std::string& msg, int l, int c)
        : std::runtime_error(msg + " at line " + std::to_string(l) + ", column " + std::to_string(c)),
          line(l),
          col(c) {}
};

namespace detail_dsl {

inline std::vector<Token> tokenize(const std::string& src) {
    std::vector<Token> out;
    int line = 1, col = 1;
    size_t i = 0;
    auto push = [&](Token::Kind k, std::string t, int l, int c) { out.push_back({k, std::move(t), l, c}); };
    while (i < src.size()) {
        char ch = src[i];
        if (ch == '\n') {
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++col;
            ++i;
            continue;
        }
        if (ch == '#') {  // comment to end of line
            while (i < src.size() && src[i] != '\n') ++i;
            continue;
        }
        int l = line, c = col;
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_' || ch == '@') {
            std::string t;
            while (i < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_' || src[i] == '@')) {
                t += src[i++];
                ++col;
            }
            push(Token::Kind::Ident, t, l, c);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::string t;
            while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) {
                t += src[i++];
                ++col;
            }
            push(Token::Kind::Number, t, l, c);
            continue;
        }
        static const std::string puncts = "<>(){}[]=,;:/*^+-";
        if (puncts.find(ch) != std::string::npos) {
            std::string t(1, ch);
            // two-character arrow
            if (ch == '-' && i + 1 < src.size() && src[i + 1] == '>') {
                t = "->";
                ++i;
                ++col;
            }
            ++i;
            ++col;
            push(Token::Kind::Punct, t, l, c);
            continue;
        }
        throw ParseError(std::string("unexpected character '") + ch + "'", line, col);
    }
    out.push_back({Token::Kind::End, "", line, col});
    return out;
}

}  // namespace detail_dsl

// --- AST --------------------------------------------------------------------------

struct SessionDecl {
    std::string kind;  // group/field/corpoid/val/tate/present
    std::string name;
    std::string printed;  // canonical source form
    int line = 0, col = 0;

    // payloads (filled per kind)
    std::vector<Rat> group_gens;
    size_t lex_height = 0;  // group H = Q^h lex;

    // field: valued base field + gamma
    std::string field_kind;  // trivial/padic/tadic/tthenu
    std::string field_base;  // Q / Fp / Fq(q) spelled form
    Int field_p = 0;
    Rat field_abs = 0;
    std::vector<RealValue> gamma;

    // corpoid
    std::string corpoid_base;
    std::vector<RealValue> corpoid_degrees;

    // val (gauss descriptor)
    std::string val_base_field;
    std::vector<std::pair<std::string, RealValue>> val_vars;  // var -> degree
    std::vector<RealValue> val_gammas;

    // tate / present
    std::string over;  // base field name (tate) or base tate name (present)
    std::vector<std::string> vars;
    std::vector<RealValue> radii;
    std::vector<std::string> relator_src;
    std::vector<std::pair<std::string, Rat>> fiber_samples;  // var=value lists flattened
};

struct SessionCommand {
    std::string verb;     // reduce/check/cover/model/basis
    std::string subverb;  // sympathique/distinguished/strong for check
    std::string target;
    std::map<std::string, std::string> options;
    std::string printed;
    int line = 0, col = 0;
};

struct Session {
    std::vector<SessionDecl> decls;
    std::vector<SessionCommand> commands;

    std::string print() const {
        std::ostringstream os;
        for (auto& d : decls) os << d.printed << "\n";
        for (auto& c : commands) os << c.printed << "\n";
        return os.str();
    }
};

// --- parser -----------------------------------------------------------------------

class SessionParser {
public:
    explicit SessionParser(const std::string& src) : toks_(detail_dsl::tokenize(src)) {}

    Session parse() {
        Session s;
        std::map<std::string, std::pair<int, int>> names;
        while (!at_end()) {
            const Token& t = peek();
            if (t.kind != Token::Kind::Ident) throw err("expected a declaration or command");
            if (t.text == "group" || t.text == "field" || t.text == "corpoid" || t.text == "val" ||
                t.text == "tate" || t.text == "present") {
                auto d = parse_decl();
                auto it = names.find(d.name);
                if (it != names.end())
                    throw ParseError("duplicate name '" + d.name + "' (first declared at line " +
                                         std::to_string(it->second.first) + ", column " +
                                         std::to_string(it->second.second) + ")",
                                     d.line, d.col);
                names[d.name] = {d.line, d.col};
                s.decls.push_back(std::move(d));
            } else if (t.text == "reduce" || t.text == "check" || t.text == "cover" || t.text == "model" ||
                       t.text == "basis") {
                s.commands.push_back(parse_command());
            } else {
                throw err("unknown statement '" + t.text + "'");
            }
        }
        return s;
    }

private:
    std::vector<Token> toks_;
    size_t pos_ = 0;

    const Token& peek(size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
    bool at_end() const { return peek().kind == Token::Kind::End; }
    Token next() { return toks_[pos_++]; }
    ParseError err(const std::string& msg) const { return ParseError(msg, peek().line, peek().col); }
    void expect_punct(const std::string& p) {
        if (peek().kind != Token::Kind::Punct || peek().text != p) throw err("expected '" + p + "'");
        next();
    }
    bool accept_punct(const std::string& p) {
        if (peek().kind == Token::Kind::Punct && peek().text == p) {
            next();
            return true;
        }
        return false;
    }
    std::string expect_ident() {
        if (peek().kind != Token::Kind::Ident) throw err("expected an identifier");
        return next().text;
    }
    Int expect_integer() {
        bool neg = accept_punct("-");
        if (peek().kind != Token::Kind::Number) throw err("expected a number");
        Int v(next().text);
        return neg ? -v : v;
    }
    Rat parse_rational() {
        Int num = expect_integer();
        if (accept_punct("/")) {
            Int den = expect_integer();
            if (den == 0) throw err("zero denominator");
            Rat q(num, den);
            q.canonicalize();
            return q;
        }
        return Rat(num);
    }
    // positive real literal: product of rational^(_rational_) factors
    RealValue parse_value() {
        RealValue v = RealValue::one();
        while (true) {
            bool paren = accept_punct("(");
            Rat base = parse_rational();
            if (paren) expect_punct(")");
            Rat e(1);
            if (accept_punct("^")) {
                bool ep = accept_punct("(");
                e = parse_rational();
                if (ep) expect_punct(")");
            }
            if (base <= 0) throw err("values must be positive");
            v = v * RealValue::from_rat(base).pow(e);
            if (!accept_punct("*")) break;
        }
        return v;
    }
    std::vector<RealValue> parse_value_list_angle() {
        expect_punct("<");
        std::vector<RealValue> out;
        if (!accept_punct(">")) {
            out.push_back(parse_value());
            while (accept_punct(",")) out.push_back(parse_value());
            expect_punct(">");
        }
        return out;
    }

    SessionDecl parse_decl() {
        SessionDecl d;
        d.line = peek().line;
        d.col = peek().col;
        d.kind = expect_ident();
        d.name = expect_ident();
        expect_punct("=");
        std::ostringstream pr;
        pr << d.kind << " " << d.name << " = ";
        if (d.kind == "group") {
            if (peek().kind == Token::Kind::Ident && peek().text == "Q") {
                next();
                expect_punct("^");
                d.lex_height = static_cast<size_t>(mpz_get_ui(expect_integer().get_mpz_t()));
                auto kw = expect_ident();
                if (kw != "lex") throw err("expected 'lex'");
                pr << "Q^" << d.lex_height << " lex";
            } else {
                expect_punct("<");
                if (!accept_punct(">")) {
                    d.group_gens.push_back(parse_rational());
                    while (accept_punct(",")) d.group_gens.push_back(parse_rational());
                    expect_punct(">");
                }
                pr << "<";
                for (size_t i = 0; i < d.group_gens.size(); ++i) pr << (i ? ", " : "") << d.group_gens[i].get_str();
                pr << ">";
            }
        } else if (d.kind == "field") {
            d.field_kind = expect_ident();
            expect_punct("(");
            if (d.field_kind == "trivial") {
                d.field_base = expect_ident();
                if (d.field_base == "Fq") {
                    expect_punct("(");
                    d.field_p = expect_integer();
                    expect_punct(")");
                }
            } else if (d.field_kind == "padic") {
                d.field_p = expect_integer();
                expect_punct(",");
                d.field_abs = parse_rational();
            } else if (d.field_kind == "tadic") {
                d.field_base = expect_ident();
                if (d.field_base == "Fq") {
                    expect_punct("(");
                    d.field_p = expect_integer();
                    expect_punct(")");
                }
                expect_punct(",");
                d.field_abs = parse_rational();
            } else
                throw err("unknown field kind '" + d.field_kind + "'");
            expect_punct(")");
            pr << d.field_kind << "(";
            if (d.field_kind == "padic")
                pr << d.field_p.get_str() << ", " << d.field_abs.get_str();
            else {
                pr << d.field_base;
                if (d.field_base == "Fq") pr << "(" << d.field_p.get_str() << ")";
                if (d.field_kind == "tadic") pr << ", " << d.field_abs.get_str();
            }
            pr << ")";
            if (accept_ident("gamma")) {
                d.gamma = parse_value_list_angle();
                pr << " gamma <";
                for (size_t i = 0; i < d.gamma.size(); ++i) pr << (i ? ", " : "") << d.gamma[i].str();
                pr << ">";
            }
        } else if (d.kind == "corpoid") {
            auto fn = expect_ident();
            if (fn != "split") throw err("corpoid declarations use split(BASE, <degrees>)");
            expect_punct("(");
            d.corpoid_base = expect_ident();
            if (d.corpoid_base == "Fq") {
                expect_punct("(");
                d.field_p = expect_integer();
                expect_punct(")");
            }
            expect_punct(",");
            d.corpoid_degrees = parse_value_list_angle();
            expect_punct(")");
            pr << "split(" << d.corpoid_base;
            if (d.corpoid_base == "Fq") pr << "(" << d.field_p.get_str() << ")";
            pr << ", <";
            for (size_t i = 0; i < d.corpoid_degrees.size(); ++i)
                pr << (i ? ", " : "") << d.corpoid_degrees[i].str();
            pr << ">)";
        } else if (d.kind == "val") {
            auto fn = expect_ident();
            if (fn != "gauss") throw err("val declarations use gauss(base=..., VAR:deg -> gamma, ...)");
            expect_punct("(");
            auto kw = expect_ident();
            if (kw != "base") throw err("expected base=...");
            expect_punct("=");
            d.val_base_field = expect_ident();
            expect_punct("(");
            d.field_base = expect_ident();
            expect_punct(")");
            while (accept_punct(",")) {
                auto var = expect_ident();
                expect_punct(":");
                RealValue deg = parse_value();
                expect_punct("->");
                RealValue gm = parse_value();
                d.val_vars.emplace_back(var, deg);
                d.val_gammas.push_back(gm);
            }
            expect_punct(")");
            pr << "gauss(base=" << d.val_base_field << "(" << d.field_base << ")";
            for (size_t i = 0; i < d.val_vars.size(); ++i)
                pr << ", " << d.val_vars[i].first << ":" << d.val_vars[i].second.str() << " -> "
                   << d.val_gammas[i].str();
            pr << ")";
        } else if (d.kind == "tate" || d.kind == "present") {
            d.over = expect_ident();
            expect_punct("{");
            while (true) {
                auto var = expect_ident();
                expect_punct(":");
                d.vars.push_back(var);
                d.radii.push_back(parse_value());
                if (!accept_punct(",")) break;
            }
            expect_punct("}");
            pr << d.over << "{";
            for (size_t i = 0; i < d.vars.size(); ++i)
                pr << (i ? ", " : "") << d.vars[i] << ":" << d.radii[i].str();
            pr << "}";
            if (accept_punct("/")) {
                expect_punct("(");
                int depth = 1;
                std::string cur;
                std::vector<std::string> rels;
                while (depth > 0) {
                    if (at_end()) throw err("unterminated relator list");
                    const Token& t = peek();
                    if (t.kind == Token::Kind::Punct && t.text == "(") ++depth;
                    if (t.kind == Token::Kind::Punct && t.text == ")") {
                        --depth;
                        if (depth == 0) {
                            next();
                            break;
                        }
                    }
                    if (depth == 1 && t.kind == Token::Kind::Punct && t.text == ",") {
                        rels.push_back(cur);
                        cur.clear();
                        next();
                        continue;
                    }
                    cur += next().text;
                    cur += " ";
                }
                if (!cur.empty()) rels.push_back(cur);
                for (auto& r : rels) {
                    while (!r.empty() && r.back() == ' ') r.pop_back();
                    d.relator_src.push_back(r);
                }
                pr << " / (";
                for (size_t i = 0; i < d.relator_src.size(); ++i) pr << (i ? ", " : "") << d.relator_src[i];
                pr << ")";
            }
            if (d.kind == "present" && accept_ident("with")) {
                auto kw = expect_ident();
                if (kw != "fibers") throw err("expected 'fibers'");
                expect_punct("(");
                pr << " with fibers (";
                bool firstgrp = true;
                while (true) {
                    auto var = expect_ident();
                    expect_punct("=");
                    Rat val = parse_rational();
                    d.fiber_samples.emplace_back(var, val);
                    pr << (firstgrp ? "" : "; ") << var << " = " << val.get_str();
                    firstgrp = false;
                    if (accept_punct(";")) continue;
                    break;
                }
                expect_punct(")");
                pr << ")";
            }
        } else {
            throw err("unknown declaration kind");
        }
        expect_punct(";");
        pr << ";";
        d.printed = pr.str();
        return d;
    }

    bool accept_ident(const std::string& word) {
        if (peek().kind == Token::Kind::Ident && peek().text == word) {
            next();
            return true;
        }
        return false;
    }

    SessionCommand parse_command() {
        SessionCommand c;
        c.line = peek().line;
        c.col = peek().col;
        c.verb = expect_ident();
        std::ostringstream pr;
        pr << c.verb;
        if (c.verb == "check") {
            c.subverb = expect_ident();
            pr << " " << c.subverb;
        }
        c.target = expect_ident();
        pr << " " << c.target;
        while (peek().kind == Token::Kind::Ident) {
            auto key = expect_ident();
            std::string val;
            if (peek().kind == Token::Kind::Number || (peek().kind == Token::Kind::Punct && peek().text == "-")) {
                val = parse_rational().get_str();
            } else if (peek().kind == Token::Kind::Ident) {
                val = expect_ident();
            } else
                throw err("expected an option value");
            c.options[key] = val;
            pr << " " << key << " " << val;
        }
        expect_punct(";");
        pr << ";";
        c.printed = pr.str();
        return c;
    }
};

inline Session parse_session(const std::string& src) { return SessionParser(src).parse(); }

// --- series expression parser over a TateRing -----------------------------------------

namespace detail_dsl {

// series grammar: sum of signed products of factors
//   factor := rational | t | VAR, each with optional ^INT
class SeriesParser {
public:
    SeriesParser(const std::string& src, TateRingPtr ring) : toks_(tokenize(src)), R_(std::move(ring)) {}

    TateSeries parse() {
        TateSeries acc = parse_term(true);
        while (true) {
            if (accept("+"))
                acc = acc + parse_term(true);
            else if (accept("-"))
                acc = acc - parse_term(true);
            else
                break;
        }
        if (toks_[pos_].kind != Token::Kind::End) throw ParseError("trailing tokens in series", 0, 0);
        return acc;
    }

private:
    std::vector<Token> toks_;
    size_t pos_ = 0;
    TateRingPtr R_;

    bool accept(const std::string& p) {
        if (toks_[pos_].kind == Token::Kind::Punct && toks_[pos_].text == p) {
            ++pos_;
            return true;
        }
        return false;
    }

    TateSeries parse_term(bool allow_sign) {
        bool neg = false;
        if (allow_sign) {
            while (true) {
                if (accept("-"))
                    neg = !neg;
                else if (accept("+")) {
                } else
                    break;
            }
        }
        TateSeries acc = TateSeries::one(R_);
        bool first = true;
        while (true) {
            const Token& t = toks_[pos_];
            if (t.kind == Token::Kind::Number) {
                ++pos_;
                Rat base(Int(t.text));
                if (accept("/")) {
                    const Token& dt = toks_[pos_];
                    if (dt.kind != Token::Kind::Number) throw ParseError("expected denominator", dt.line, dt.col);
                    ++pos_;
                    base /= Rat(Int(dt.text));
                }
                long e = parse_exponent();
                FElem c = FElem::from_rat(R_->base.k.field(), base);
                acc = acc * TateSeries::constant(R_, c.pow(Int(e)));
            } else if (t.kind == Token::Kind::Ident) {
                ++pos_;
                long e = parse_exponent();
                if (t.text == "t" && R_->base.k.kind() == ValuedField::Kind::TAdic) {
                    FElem tv = FElem::generator(R_->base.k.field());
                    acc = acc * TateSeries::constant(R_, tv.pow(Int(e)));
                } else {
                    auto it = std::find(R_->vars.begin(), R_->vars.end(), t.text);
                    if (it == R_->vars.end())
                        throw ParseError("unknown variable '" + t.text + "' in series", t.line, t.col);
                    size_t idx = static_cast<size_t>(it - R_->vars.begin());
                    if (e < 0) throw ParseError("negative variable exponent", t.line, t.col);
                    TateSeries v = TateSeries::variable(R_, idx);
                    TateSeries pw = TateSeries::one(R_);
                    for (long i = 0; i < e; ++i) pw = pw * v;
                    acc = acc * pw;
                }
            } else {
                if (first) throw ParseError("expected a series term", t.line, t.col);
                break;
            }
            first = false;
            if (!accept("*")) {
                const Token& nt = toks_[pos_];
                bool more = nt.kind == Token::Kind::Number || nt.kind == Token::Kind::Ident;
                if (!more) break;
            }
        }
        if (neg) acc = -acc;
        return acc;
    }

    long parse_exponent() {
        if (!accept("^")) return 1;
        bool paren = accept("(");
        bool neg = accept("-");
        const Token& t = toks_[pos_];
        if (t.kind != Token::Kind::Number) throw ParseError("expected exponent", t.line, t.col);
        ++pos_;
        long e = std::stol(t.text);
        if (paren) {
            if (!accept(")")) throw ParseError("expected ')'", t.line, t.col);
        }
        return neg ? -e : e;
    }
};

inline uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace detail_dsl

// --- runner ----------------------------------------------------------------------------

struct RunSettings {
    RealValue eps = RealValue::from_rat(Rat(1, 1048576));  // 2^-20
    long deg_bound = 6;
};

class SessionRunner {
public:
    SessionRunner(Session s, RunSettings settings, std::string source_text)
        : session_(std::move(s)), settings_(std::move(settings)), source_(std::move(source_text)) {}

    nlohmann::ordered_json run() {
        nlohmann::ordered_json rep;
        rep["schema"] = 1;
        rep["tool"] = kToolVersion;
        char hexbuf[17];
        std::snprintf(hexbuf, sizeof hexbuf, "%016llx",
                      static_cast<unsigned long long>(detail_dsl::fnv1a(source_)));
        rep["input_fnv64"] = hexbuf;
        rep["eps"] = settings_.eps.str();
        rep["deg_bound"] = settings_.deg_bound;
        rep["records"] = nlohmann::ordered_json::array();

        for (auto& d : session_.decls) {
            try {
                declare(d);
            } catch (const std::exception& e) {
                nlohmann::ordered_json r;
                r["declaration"] = d.name;
                r["status"] = "error";
                r["message"] = e.what();
                rep["records"].push_back(r);
                had_error_ = true;
            }
        }
        for (auto& c : session_.commands) {
            nlohmann::ordered_json r;
            r["command"] = c.printed;
            try {
                execute(c, r);
            } catch (const std::exception& e) {
                r["status"] = "error";
                r["message"] = e.what();
                had_error_ = true;
            }
            rep["records"].push_back(r);
        }
        rep["exit"] = exit_code();
        return rep;
    }

    int exit_code() const { return had_error_ ? 2 : (had_fail_ ? 1 : 0); }

private:
    Session session_;
    RunSettings settings_;
    std::string source_;
    bool had_fail_ = false, had_error_ = false;

    std::map<std::string, TateBase> fields_;
    std::map<std::string, TateRingPtr> tates_;
    std::map<std::string, std::vector<TateSeries>> tate_rels_;
    std::map<std::string, RelativePresentation> presents_;
    std::map<std::string, std::vector<RealValue>> groups_;
    std::map<std::string, OrderedValueGroup> lex_groups_;
    std::map<std::string, CorpoidPtr> corpoids_;

    // built-in names: Q (trivial, gamma <2>), Qp (p-adic with |p| = 1/p),
    // Fp (trivial over the prime field)
    static std::optional<TateBase> builtin_field(const std::string& name) {
        if (name == "Q")
            return TateBase(ValuedField::trivial(Field::rationals()), {RealValue::from_rat(Rat(2))});
        if (name.size() > 1 && name[0] == 'Q') {
            Int p(name.substr(1));
            if (p >= 2 && mpz_probab_prime_p(p.get_mpz_t(), 30)) {
                RealValue pa = RealValue::from_rat(Rat(1) / Rat(p));
                return TateBase(ValuedField::padic(p, pa), {pa});
            }
        }
        if (name.size() > 1 && name[0] == 'F') {
            Int p(name.substr(1));
            if (p >= 2 && mpz_probab_prime_p(p.get_mpz_t(), 30))
                return TateBase(ValuedField::trivial(Field::prime_field(p)), {RealValue::from_rat(Rat(2))});
        }
        return std::nullopt;
    }

    static FieldPtr base_field_of(const std::string& name, const Int& q) {
        if (name == "Q") return Field::rationals();
        if (name == "Fp" || name == "Fq") {
            if (mpz_probab_prime_p(q.get_mpz_t(), 30)) return Field::prime_field(q);
            // prime power: factor q = p^e
            for (Int p = 2; p * p <= q; ++p) {
                if (q % p != 0) continue;
                Int qq = q;
                long e = 0;
                while (qq % p == 0) {
                    qq /= p;
                    ++e;
                }
                if (qq != 1) break;
                return finite_extension(Field::prime_field(p), e, "w");
            }
            throw std::domain_error("Fq(" + q.get_str() + "): not a prime power");
        }
        throw std::domain_error("unknown base field " + name);
    }

    void declare(const SessionDecl& d) {
        if (d.kind == "group") {
            if (d.lex_height > 0) {
                lex_groups_.emplace(d.name, OrderedValueGroup::lex_rational(d.lex_height));
            } else {
                std::vector<RealValue> gens;
                for (auto& g : d.group_gens) gens.push_back(RealValue::from_rat(g));
                groups_[d.name] = gens;
            }
        } else if (d.kind == "field") {
            ValuedField v = ValuedField::trivial(Field::rationals());
            if (d.field_kind == "trivial")
                v = ValuedField::trivial(base_field_of(d.field_base, d.field_p));
            else if (d.field_kind == "padic")
                v = ValuedField::padic(d.field_p, RealValue::from_rat(d.field_abs));
            else if (d.field_kind == "tadic") {
                auto F = base_field_of(d.field_base, d.field_p);
                v = ValuedField::tadic(Field::rational_functions(F, "t"), RealValue::from_rat(d.field_abs));
            }
            std::vector<RealValue> gamma = d.gamma;
            if (gamma.empty() && v.kind() != ValuedField::Kind::Trivial) gamma = {v.uniformizer_abs()};
            fields_.emplace(d.name, TateBase(v, gamma));
        } else if (d.kind == "corpoid") {
            auto F = base_field_of(d.corpoid_base, d.field_p);
            std::vector<BiDegree> gens;
            std::vector<std::string> names;
            for (size_t i = 0; i < d.corpoid_degrees.size(); ++i) {
                gens.push_back(BiDegree::of(d.corpoid_degrees[i]));
                names.push_back("e" + std::to_string(i));
            }
            corpoids_[d.name] = Corpoid::make(F, gens, names);
        } else if (d.kind == "val") {
            // a gauss-valuation descriptor: validated on declaration
            if (d.val_base_field != "trivial") throw std::domain_error("val: only trivial base supported");
            base_field_of(d.field_base, Int(0));
        } else if (d.kind == "tate") {
            auto it = fields_.find(d.over);
            if (it == fields_.end()) {
                if (auto builtin = builtin_field(d.over))
                    it = fields_.emplace(d.over, *builtin).first;
                else
                    throw std::domain_error("tate " + d.name + ": unknown field " + d.over);
            }
            auto R = TateRing::make(it->second, d.vars, d.radii);
            std::vector<TateSeries> rels;
            for (auto& src : d.relator_src) rels.push_back(detail_dsl::SeriesParser(src, R).parse());
            tates_[d.name] = R;
            tate_rels_[d.name] = rels;
        } else if (d.kind == "present") {
            auto it = tates_.find(d.over);
            if (it == tates_.end()) throw std::domain_error("present " + d.name + ": unknown tate algebra " + d.over);
            if (!tate_rels_[d.over].empty())
                throw std::domain_error("present " + d.name + ": base algebra must be free at desk scale");
            const auto& B = it->second;
            std::vector<std::string> vars = B->vars;
            std::vector<RealValue> radii = B->radii;
            for (size_t i = 0; i < d.vars.size(); ++i) {
                vars.push_back(d.vars[i]);
                radii.push_back(d.radii[i]);
            }
            auto total = TateRing::make(B->base, vars, radii);
            std::vector<TateSeries> rels;
            for (auto& src : d.relator_src) rels.push_back(detail_dsl::SeriesParser(src, total).parse());
            auto P = RelativePresentation::make(total, B->nvars(), rels);
            // samples come as var=value groups; group them per base variable list
            if (!d.fiber_samples.empty()) {
                size_t nb = B->nvars();
                if (d.fiber_samples.size() % nb != 0)
                    throw std::domain_error("present " + d.name + ": fiber samples must assign every base variable");
                for (size_t off = 0; off < d.fiber_samples.size(); off += nb) {
                    std::vector<FElem> vals;
                    std::string label;
                    for (size_t i = 0; i < nb; ++i) {
                        auto& [var, q] = d.fiber_samples[off + i];
                        if (var != B->vars[i])
                            throw std::domain_error("present " + d.name + ": sample variable order mismatch");
                        vals.push_back(FElem::from_rat(total->base.k.field(), q));
                        label += (i ? "," : "") + var + "=" + q.get_str();
                    }
                    P.add_sample(vals, label);
                }
            }
            presents_.emplace(d.name, std::move(P));
        } else {
            throw std::domain_error("unknown declaration kind " + d.kind);
        }
    }

    void execute(const SessionCommand& c, nlohmann::ordered_json& r) {
        if (c.verb == "reduce") {
            auto it = tates_.find(c.target);
            if (it == tates_.end()) throw std::domain_error("reduce: unknown tate algebra " + c.target);
            auto P = TatePresentation::make(it->second, tate_rels_[c.target]);
            auto red = reduce_presentation(P);
            r["status"] = "pass";
            r["ring"] = describe_reduction_ring(red.ring());
            auto arr = nlohmann::ordered_json::array();
            for (auto& g : red.gens()) arr.push_back(g.str());
            r["reduced_generators"] = arr;
            r["provenance"] = "graded reduction of the relators at their Gauss norms";
        } else if (c.verb == "check" && c.subverb == "sympathique") {
            auto it = presents_.find(c.target);
            if (it == presents_.end()) throw std::domain_error("check sympathique: unknown presentation " + c.target);
            auto rep = check_sympathique(it->second, settings_.eps);
            auto arr = nlohmann::ordered_json::array();
            for (auto& cond : rep.conditions) {
                nlohmann::ordered_json cj;
                cj["condition"] = cond.condition;
                cj["verdict"] = verdict_str(cond.verdict);
                cj["witness"] = cond.witness;
                arr.push_back(cj);
            }
            r["conditions"] = arr;
            r["status"] = rep.overall_pass() ? "pass" : "fail";
            if (!rep.overall_pass()) had_fail_ = true;
        } else if (c.verb == "check" && c.subverb == "distinguished") {
            auto it = tates_.find(c.target);
            if (it == tates_.end()) throw std::domain_error("check distinguished: unknown tate algebra " + c.target);
            auto P = TatePresentation::make(it->second, tate_rels_[c.target]);
            bool ok = is_distinguished(P);
            r["status"] = ok ? "pass" : "fail";
            if (!ok) had_fail_ = true;
            r["provenance"] = "reducedness of the graded reduction (distingue-criterion)";
        } else if (c.verb == "check" && c.subverb == "strong") {
            auto it = tates_.find(c.target);
            if (it == tates_.end()) throw std::domain_error("check strong: unknown tate algebra " + c.target);
            auto P = TatePresentation::make(it->second, tate_rels_[c.target]);
            auto v = is_strongly_generating(P, P.relators, settings_.eps);
            r["verdict"] = verdict_str(v);
            r["status"] = v == Verdict::False ? "fail" : "pass";
            if (v == Verdict::False) had_fail_ = true;
        } else if (c.verb == "cover") {
            auto it = presents_.find(c.target);
            if (it == presents_.end()) throw std::domain_error("cover: unknown presentation " + c.target);
            SplittingCover cover;
            auto cond = build_splitting_cover(it->second, &cover);
            r["verdict"] = verdict_str(cond.verdict);
            r["witness"] = cond.witness;
            r["opens"] = cover.idempotents.size();
            auto arr = nlohmann::ordered_json::array();
            for (auto& e : cover.idempotents) arr.push_back(e.str());
            r["idempotents"] = arr;
            r["status"] = cond.verdict == Verdict::False ? "fail" : "pass";
            if (cond.verdict == Verdict::False) had_fail_ = true;
        } else if (c.verb == "model") {
            auto it = tates_.find(c.target);
            if (it == tates_.end()) throw std::domain_error("model: unknown tate algebra " + c.target);
            auto P = TatePresentation::make(it->second, tate_rels_[c.target]);
            auto M = build_formal_model(P);
            bool ok = verify_formal_model(P, M);
            auto arr = nlohmann::ordered_json::array();
            for (auto& b : M.torsion_kill) arr.push_back(b.str());
            r["torsion_kill"] = arr;
            r["verified"] = ok;
            r["status"] = ok ? "pass" : "fail";
            if (!ok) had_fail_ = true;
        } else if (c.verb == "basis") {
            auto it = fields_.find(c.target);
            if (it == fields_.end()) throw std::domain_error("basis: unknown field " + c.target);
            long bound = settings_.deg_bound;
            if (auto o = c.options.find("bound"); o != c.options.end()) bound = std::stol(o->second);
            RealValue radius = RealValue::one();
            if (auto o = c.options.find("radius"); o != c.options.end())
                radius = RealValue::from_rat(Rat(o->second));
            auto elems = schauder_basis(it->second, radius, bound);
            auto arr = nlohmann::ordered_json::array();
            for (auto& e : elems) arr.push_back(e.label);
            r["elements"] = arr;
            r["count"] = elems.size();
            r["status"] = "pass";
        } else {
            throw std::domain_error("unknown command " + c.verb);
        }
    }

    static std::string describe_reduction_ring(const GradedRingPtr& R) {
        std::ostringstream os;
        os << "k~[";
        for (size_t i = 0; i < R->nvars(); ++i)
            os << (i ? ", " : "") << R->vars()[i].deg.str() << "\\" << R->vars()[i].name;
        os << "] over " << R->corpoid()->f1()->describe();
        return os.str();
    }
};

}  // namespace gradal

#endif
