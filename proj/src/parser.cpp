#include "ctmc/parser.hpp"

#include <cassert>

#include "ctmc/lexer.hpp"
#include "ctmc/validate.hpp"

namespace ctmc {

namespace {

class TokenStream {
public:
    explicit TokenStream(std::vector<Token> toks) : toks_(std::move(toks)) {}

    const Token& peek(std::size_t ahead = 0) const {
        std::size_t i = pos_ + ahead;
        return i < toks_.size() ? toks_[i] : toks_.back();
    }
    const Token& next() {
        const Token& t = peek();
        if (t.type != Tok::End) ++pos_;
        return t;
    }
    bool at(Tok t) const { return peek().type == t; }
    bool at_ident(const char* s) const {
        return peek().type == Tok::Ident && peek().text == s;
    }
    bool accept(Tok t) {
        if (!at(t)) return false;
        next();
        return true;
    }
    bool accept_ident(const char* s) {
        if (!at_ident(s)) return false;
        next();
        return true;
    }
    const Token& expect(Tok t, const char* what) {
        if (!at(t))
            throw SyntaxError(peek().pos, std::string("expected ") + what + ", found " +
                                              token_name(peek().type));
        return next();
    }
    void expect_ident(const char* s) {
        if (!at_ident(s))
            throw SyntaxError(peek().pos, std::string("expected '") + s + "', found " +
                                              token_name(peek().type));
        next();
    }
    SourcePos here() const { return peek().pos; }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

// ---------------------------------------------------------------- expressions

ExprPtr parse_expr(TokenStream& ts);

ExprPtr parse_primary(TokenStream& ts) {
    const Token& t = ts.peek();
    switch (t.type) {
        case Tok::Number: {
            ts.next();
            return Expr::make_number(t.number, t.pos);
        }
        case Tok::Ident: {
            if (t.text == "true") { ts.next(); return Expr::make_bool(true, t.pos); }
            if (t.text == "false") { ts.next(); return Expr::make_bool(false, t.pos); }
            ts.next();
            return Expr::make_ident(t.text, t.pos);
        }
        case Tok::LParen: {
            ts.next();
            ExprPtr e = parse_expr(ts);
            ts.expect(Tok::RParen, "')'");
            return e;
        }
        case Tok::Minus: {
            ts.next();
            return Expr::make_unary(ExprKind::Neg, parse_primary(ts), t.pos);
        }
        default:
            throw SyntaxError(t.pos, std::string("expected expression, found ") +
                                         token_name(t.type));
    }
}

ExprPtr parse_mul(TokenStream& ts) {
    ExprPtr e = parse_primary(ts);
    while (ts.at(Tok::Star)) {
        SourcePos p = ts.here();
        ts.next();
        e = Expr::make_binary(ExprKind::Mul, e, parse_primary(ts), p);
    }
    return e;
}

ExprPtr parse_add(TokenStream& ts) {
    ExprPtr e = parse_mul(ts);
    while (ts.at(Tok::Plus) || ts.at(Tok::Minus)) {
        SourcePos p = ts.here();
        ExprKind k = ts.next().type == Tok::Plus ? ExprKind::Add : ExprKind::Sub;
        e = Expr::make_binary(k, e, parse_mul(ts), p);
    }
    return e;
}

ExprPtr parse_rel(TokenStream& ts) {
    ExprPtr e = parse_add(ts);
    ExprKind k;
    switch (ts.peek().type) {
        case Tok::Eq: k = ExprKind::Eq; break;
        case Tok::Ne: k = ExprKind::Ne; break;
        case Tok::Lt: k = ExprKind::Lt; break;
        case Tok::Le: k = ExprKind::Le; break;
        case Tok::Gt: k = ExprKind::Gt; break;
        case Tok::Ge: k = ExprKind::Ge; break;
        default: return e;
    }
    SourcePos p = ts.here();
    ts.next();
    return Expr::make_binary(k, e, parse_add(ts), p);
}

ExprPtr parse_not(TokenStream& ts) {
    if (ts.at(Tok::Bang)) {
        SourcePos p = ts.here();
        ts.next();
        return Expr::make_unary(ExprKind::Not, parse_not(ts), p);
    }
    return parse_rel(ts);
}

ExprPtr parse_and(TokenStream& ts) {
    ExprPtr e = parse_not(ts);
    while (ts.at(Tok::Amp)) {
        SourcePos p = ts.here();
        ts.next();
        e = Expr::make_binary(ExprKind::And, e, parse_not(ts), p);
    }
    return e;
}

ExprPtr parse_expr(TokenStream& ts) {
    ExprPtr e = parse_and(ts);
    while (ts.at(Tok::Pipe)) {
        SourcePos p = ts.here();
        ts.next();
        e = Expr::make_binary(ExprKind::Or, e, parse_and(ts), p);
    }
    return e;
}

// --------------------------------------------------------------------- model

// An update list is either `true` (no-op) or `(x'=e) & (y'=e) ...`.
std::vector<Update> parse_updates(TokenStream& ts) {
    std::vector<Update> ups;
    if (ts.accept_ident("true")) return ups;
    for (;;) {
        ts.expect(Tok::LParen, "'('");
        const Token& var = ts.expect(Tok::Ident, "variable name");
        ts.expect(Tok::Prime, "''' (primed variable)");
        ts.expect(Tok::Eq, "'='");
        ExprPtr value = parse_expr(ts);
        ts.expect(Tok::RParen, "')'");
        ups.push_back({var.text, value});
        if (!ts.accept(Tok::Amp)) break;
    }
    return ups;
}

// True when the upcoming tokens start an update atom rather than a rate.
bool updates_ahead(const TokenStream& ts) {
    if (ts.peek().type == Tok::Ident && ts.peek().text == "true") return true;
    return ts.peek().type == Tok::LParen && ts.peek(1).type == Tok::Ident &&
           ts.peek(2).type == Tok::Prime;
}

Command parse_command(TokenStream& ts, std::optional<int> reaction_id) {
    Command cmd;
    cmd.pos = ts.here();
    cmd.reaction_id = reaction_id;
    ts.expect(Tok::LBracket, "'['");
    if (ts.at(Tok::Ident)) cmd.action = ts.next().text;
    ts.expect(Tok::RBracket, "']'");
    cmd.guard = parse_expr(ts);
    ts.expect(Tok::Arrow, "'->'");
    if (!updates_ahead(ts)) {
        cmd.rate = parse_expr(ts);
        ts.expect(Tok::Colon, "':'");
    }
    cmd.updates = parse_updates(ts);
    ts.expect(Tok::Semicolon, "';'");
    return cmd;
}

VarDecl parse_var_decl(TokenStream& ts) {
    VarDecl v;
    v.pos = ts.here();
    v.name = ts.expect(Tok::Ident, "variable name").text;
    ts.expect(Tok::Colon, "':'");
    ts.expect(Tok::LBracket, "'['");
    bool neg = ts.accept(Tok::Minus);
    const Token& lo = ts.expect(Tok::Number, "integer");
    if (!lo.number.is_integer()) throw SyntaxError(lo.pos, "range bound must be an integer");
    v.lo = neg ? -lo.number.num() : lo.number.num();
    ts.expect(Tok::DotDot, "'..'");
    neg = ts.accept(Tok::Minus);
    const Token& hi = ts.expect(Tok::Number, "integer");
    if (!hi.number.is_integer()) throw SyntaxError(hi.pos, "range bound must be an integer");
    v.hi = neg ? -hi.number.num() : hi.number.num();
    ts.expect(Tok::RBracket, "']'");
    ts.expect_ident("init");
    neg = ts.accept(Tok::Minus);
    const Token& init = ts.expect(Tok::Number, "integer");
    if (!init.number.is_integer()) throw SyntaxError(init.pos, "init value must be an integer");
    v.init = neg ? -init.number.num() : init.number.num();
    ts.expect(Tok::Semicolon, "';'");
    return v;
}

ModuleDef parse_module(TokenStream& ts) {
    ModuleDef m;
    m.pos = ts.here();
    ts.expect_ident("module");
    m.name = ts.expect(Tok::Ident, "module name").text;
    std::optional<int> pending_reaction;
    while (!ts.at_ident("endmodule")) {
        if (ts.at(Tok::End))
            throw SyntaxError(ts.here(), "unterminated module '" + m.name + "'");
        if (ts.at(Tok::ReactionAnno)) {
            const Token& t = ts.next();
            pending_reaction = static_cast<int>(t.number.num());
            continue;
        }
        if (ts.at(Tok::LBracket)) {
            m.commands.push_back(parse_command(ts, pending_reaction));
            pending_reaction.reset();
        } else {
            if (pending_reaction)
                throw SyntaxError(ts.here(), "//@reaction annotation must precede a command");
            m.variables.push_back(parse_var_decl(ts));
        }
    }
    if (pending_reaction)
        throw SyntaxError(ts.here(), "//@reaction annotation must precede a command");
    ts.expect_ident("endmodule");
    return m;
}

ConstDecl parse_const(TokenStream& ts) {
    ConstDecl c;
    c.pos = ts.here();
    ts.expect_ident("const");
    // optional type keyword
    bool declared_bool = false;
    if (ts.at_ident("double") || ts.at_ident("int")) {
        ts.next();
    } else if (ts.at_ident("bool")) {
        ts.next();
        declared_bool = true;
    }
    c.name = ts.expect(Tok::Ident, "constant name").text;
    ts.expect(Tok::Eq, "'='");
    if (ts.at_ident("true") || ts.at_ident("false")) {
        c.is_bool = true;
        c.bval = ts.next().text == "true";
    } else {
        if (declared_bool)
            throw SyntaxError(ts.here(), "boolean constant requires true or false");
        bool neg = ts.accept(Tok::Minus);
        const Token& n = ts.expect(Tok::Number, "number or boolean literal");
        c.number = neg ? -n.number : n.number;
    }
    if (declared_bool && !c.is_bool)
        throw SyntaxError(c.pos, "boolean constant requires true or false");
    ts.expect(Tok::Semicolon, "';'");
    return c;
}

RewardBlock parse_rewards(TokenStream& ts) {
    RewardBlock r;
    r.pos = ts.here();
    ts.expect_ident("rewards");
    r.name = ts.expect(Tok::String, "reward block name (quoted)").text;
    while (!ts.at_ident("endrewards")) {
        if (ts.at(Tok::End))
            throw SyntaxError(ts.here(), "unterminated rewards block '" + r.name + "'");
        SourcePos p = ts.here();
        if (ts.accept(Tok::LBracket)) {
            TransRewardItem item;
            item.pos = p;
            if (ts.at(Tok::Ident)) item.action = ts.next().text;
            ts.expect(Tok::RBracket, "']'");
            item.guard = parse_expr(ts);
            ts.expect(Tok::Colon, "':'");
            item.value = parse_expr(ts);
            ts.expect(Tok::Semicolon, "';'");
            r.trans_items.push_back(std::move(item));
        } else {
            StateRewardItem item;
            item.pos = p;
            item.guard = parse_expr(ts);
            ts.expect(Tok::Colon, "':'");
            item.value = parse_expr(ts);
            ts.expect(Tok::Semicolon, "';'");
            r.state_items.push_back(std::move(item));
        }
    }
    ts.expect_ident("endrewards");
    return r;
}

void parse_program_into(TokenStream& ts, ModelAst& ast) {
    while (!ts.at(Tok::End)) {
        if (ts.at_ident("const")) {
            ast.constants.push_back(parse_const(ts));
        } else if (ts.at_ident("module")) {
            ast.modules.push_back(parse_module(ts));
        } else if (ts.at_ident("rewards")) {
            ast.rewards.push_back(parse_rewards(ts));
        } else {
            throw SyntaxError(ts.here(),
                              std::string("expected 'const', 'module' or 'rewards', found ") +
                                  token_name(ts.peek().type));
        }
    }
}

// ---------------------------------------------------------------- properties

// State formulas are parsed into either a pure boolean expression (kept fused
// for canonical printing) or a formula node once a P/S/R operator shows up.
struct StateTerm {
    ExprPtr expr;      // exactly one of the two is set
    FormulaPtr formula;

    FormulaPtr to_formula() const {
        return formula ? formula : Formula::make_atom(expr, expr->pos);
    }
};

FormulaPtr parse_state_formula(TokenStream& ts);
StateTerm parse_state_or(TokenStream& ts);

bool is_operator_ident(const Token& t) {
    return t.type == Tok::Ident && (t.text == "P" || t.text == "S" || t.text == "R");
}

Rational parse_time_value(TokenStream& ts) {
    const Token& t = ts.expect(Tok::Number, "time bound");
    return t.number;
}

TimeInterval parse_interval(TokenStream& ts) {
    // U[a,b] | U<=t | U>=t | U    (same forms for F)
    if (ts.accept(Tok::LBracket)) {
        SourcePos p = ts.here();
        Rational lo = parse_time_value(ts);
        ts.expect(Tok::Comma, "','");
        Rational hi = parse_time_value(ts);
        ts.expect(Tok::RBracket, "']'");
        if (hi < lo) throw ValidationError(p, "reversed time interval");
        return {lo, hi};
    }
    if (ts.accept(Tok::Le)) {
        Rational hi = parse_time_value(ts);
        return {Rational(0), hi};
    }
    if (ts.accept(Tok::Ge)) {
        Rational lo = parse_time_value(ts);
        return {lo, std::nullopt};
    }
    return {Rational(0), std::nullopt};
}

std::optional<Bound> parse_bound(TokenStream& ts, bool probability) {
    if (ts.accept(Tok::EqQuery)) return std::nullopt;
    BoundOp op;
    switch (ts.peek().type) {
        case Tok::Lt: op = BoundOp::Lt; break;
        case Tok::Le: op = BoundOp::Le; break;
        case Tok::Gt: op = BoundOp::Gt; break;
        case Tok::Ge: op = BoundOp::Ge; break;
        default:
            throw SyntaxError(ts.here(), std::string("expected bound or '=?', found ") +
                                             token_name(ts.peek().type));
    }
    ts.next();
    SourcePos p = ts.here();
    const Token& n = ts.expect(Tok::Number, "bound value");
    if (probability && (n.number < Rational(0) || Rational(1) < n.number))
        throw ValidationError(p, "probability bound outside [0,1]");
    return Bound{op, n.number};
}

FormulaPtr parse_path_body(TokenStream& ts, std::optional<Bound> bound, SourcePos start) {
    // F^I phi  |  phi1 U^I phi2
    if (ts.at_ident("F")) {
        SourcePos p = ts.here();
        ts.next();
        TimeInterval iv = parse_interval(ts);
        FormulaPtr right = parse_state_formula(ts);
        return Formula::make_prob(bound, Formula::make_atom(Expr::make_bool(true, p), p),
                                  right, iv, start);
    }
    FormulaPtr left = parse_state_formula(ts);
    ts.expect_ident("U");
    TimeInterval iv = parse_interval(ts);
    FormulaPtr right = parse_state_formula(ts);
    return Formula::make_prob(bound, left, right, iv, start);
}

FormulaPtr parse_operator_formula(TokenStream& ts) {
    const Token& op = ts.next();   // P, S or R
    SourcePos start = op.pos;
    if (op.text == "P") {
        std::optional<Bound> bound = parse_bound(ts, true);
        ts.expect(Tok::LBracket, "'['");
        FormulaPtr f = parse_path_body(ts, bound, start);
        ts.expect(Tok::RBracket, "']'");
        return f;
    }
    if (op.text == "S") {
        std::optional<Bound> bound = parse_bound(ts, true);
        ts.expect(Tok::LBracket, "'['");
        FormulaPtr arg = parse_state_formula(ts);
        ts.expect(Tok::RBracket, "']'");
        return Formula::make_steady(bound, arg, start);
    }
    // R{"name"}~r[ I=t | C<=t | F phi | S ]
    ts.expect(Tok::LBrace, "'{'");
    const Token& name = ts.expect(Tok::String, "reward block name (quoted)");
    ts.expect(Tok::RBrace, "'}'");
    std::optional<Bound> bound = parse_bound(ts, false);
    if (bound && bound->value < Rational(0))
        throw ValidationError(start, "reward bound must be non-negative");
    ts.expect(Tok::LBracket, "'['");
    FormulaPtr f;
    if (ts.accept_ident("C")) {
        ts.expect(Tok::Le, "'<='");
        Rational t = parse_time_value(ts);
        f = Formula::make_reward(bound, name.text, RewardKind::Cumulative, t, nullptr, start);
    } else if (ts.accept_ident("I")) {
        ts.expect(Tok::Eq, "'='");
        Rational t = parse_time_value(ts);
        f = Formula::make_reward(bound, name.text, RewardKind::Instant, t, nullptr, start);
    } else if (ts.accept_ident("S")) {
        f = Formula::make_reward(bound, name.text, RewardKind::LongRun, Rational(0), nullptr, start);
    } else if (ts.accept_ident("F")) {
        FormulaPtr target = parse_state_formula(ts);
        f = Formula::make_reward(bound, name.text, RewardKind::Reach, Rational(0), target, start);
    } else {
        throw SyntaxError(ts.here(), "expected reward query form C<=t, I=t, F phi or S");
    }
    ts.expect(Tok::RBracket, "']'");
    return f;
}

StateTerm parse_state_primary(TokenStream& ts) {
    if (is_operator_ident(ts.peek())) return {nullptr, parse_operator_formula(ts)};
    if (ts.at(Tok::Bang)) {
        SourcePos p = ts.here();
        ts.next();
        StateTerm t = parse_state_primary(ts);
        if (t.expr) return {Expr::make_unary(ExprKind::Not, t.expr, p), nullptr};
        return {nullptr, Formula::make_not(t.formula, p)};
    }
    if (ts.at(Tok::LParen)) {
        // try a parenthesized state formula; plain expressions also land here
        std::size_t depth = 0;
        // Peek: if anywhere at depth 1 an operator ident follows '(', this is
        // a formula group.  Otherwise let the expression parser have it so
        // arithmetic like (x+1)=2 works.
        for (std::size_t k = 0;; ++k) {
            const Token& t = ts.peek(k);
            if (t.type == Tok::End) break;
            if (t.type == Tok::LParen) ++depth;
            if (t.type == Tok::RParen) {
                if (--depth == 0) break;
            }
            if (depth >= 1 && is_operator_ident(t)) {
                ts.next();   // '('
                StateTerm inner = parse_state_or(ts);
                ts.expect(Tok::RParen, "')'");
                return inner;
            }
        }
        return {parse_rel(ts), nullptr};
    }
    // plain boolean expression atom (comparisons, literals, constants)
    return {parse_rel(ts), nullptr};
}

StateTerm parse_state_and(TokenStream& ts) {
    StateTerm acc = parse_state_primary(ts);
    while (ts.at(Tok::Amp)) {
        SourcePos p = ts.here();
        ts.next();
        StateTerm rhs = parse_state_primary(ts);
        if (acc.expr && rhs.expr) {
            acc.expr = Expr::make_binary(ExprKind::And, acc.expr, rhs.expr, p);
        } else {
            acc = {nullptr, Formula::make_and(acc.to_formula(), rhs.to_formula(), p)};
        }
    }
    return acc;
}

StateTerm parse_state_or(TokenStream& ts) {
    StateTerm acc = parse_state_and(ts);
    while (ts.at(Tok::Pipe)) {
        SourcePos p = ts.here();
        ts.next();
        StateTerm rhs = parse_state_and(ts);
        if (acc.expr && rhs.expr) {
            acc.expr = Expr::make_binary(ExprKind::Or, acc.expr, rhs.expr, p);
        } else {
            acc = {nullptr, Formula::make_or(acc.to_formula(), rhs.to_formula(), p)};
        }
    }
    return acc;
}

FormulaPtr parse_state_formula(TokenStream& ts) {
    return parse_state_or(ts).to_formula();
}

} // namespace

ModelAst parse_model_unchecked(const std::string& text, const std::string& filename) {
    TokenStream ts(lex(text, filename));
    ModelAst ast;
    parse_program_into(ts, ast);
    return ast;
}

ModelAst parse_model(const std::string& text, const std::string& filename) {
    ModelAst ast = parse_model_unchecked(text, filename);
    validate_model(ast);
    return ast;
}

ModelAst parse_model_sources(const std::vector<std::pair<std::string, std::string>>& sources) {
    ModelAst ast;
    for (const auto& [text, name] : sources) {
        ModelAst part = parse_model_unchecked(text, name);
        for (auto& c : part.constants) ast.constants.push_back(std::move(c));
        for (auto& m : part.modules) ast.modules.push_back(std::move(m));
        for (auto& r : part.rewards) ast.rewards.push_back(std::move(r));
    }
    validate_model(ast);
    return ast;
}

FormulaPtr parse_property(const std::string& text, const ModelAst* model,
                          const std::string& filename) {
    TokenStream ts(lex(text, filename));
    FormulaPtr f = parse_state_formula(ts);
    if (!ts.at(Tok::End))
        throw SyntaxError(ts.here(), std::string("trailing input after formula: ") +
                                         token_name(ts.peek().type));
    validate_property(*f, model);
    return f;
}

std::vector<FormulaPtr> parse_property_file(const std::string& text, const ModelAst* model,
                                            const std::string& filename) {
    std::vector<FormulaPtr> out;
    std::size_t start = 0;
    int lineno = 1;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        std::string line = text.substr(start, end == std::string::npos ? end : end - start);
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
        if (!blank) {
            std::string name = filename + ":" + std::to_string(lineno);
            out.push_back(parse_property(line, model, name));
        }
        if (end == std::string::npos) break;
        start = end + 1;
        ++lineno;
    }
    return out;
}

} // namespace ctmc
